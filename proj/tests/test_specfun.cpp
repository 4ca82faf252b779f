// SPDX-License-Identifier: Apache-2.0
//
// lsasc - single-carrier uplink simulation for large-scale antenna arrays
// Copyright (C) 2026 The lsasc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "catch_amalgamated.hpp"

#include "lsasc/channel.hpp"
#include "lsasc/errors.hpp"
#include "lsasc/specfun.hpp"

#include <cmath>
#include <numbers>

using namespace lsasc;
using Catch::Approx;

// Covered tests:
// - J0 / J1 against a 200-term long-double power series and std::cyl_bessel_j
// - zeros of J0 and J1 located by bisection on the series oracle
// - J0^2 + J1^2 <= 1
// - Gauss-Kronrod quadrature: constants, triangle, trapezoid oracle, additivity, depth exhaustion
// - Cholesky: closed forms, reconstruction on correlation matrices, rank-deficient and indefinite input
// - Gaussian source: moments, determinism

namespace
{
    // sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!) in long double, 200 terms
    long double series_oracle(int n, long double x)
    {
        long double term = (n == 0) ? 1.0L : x / 2.0L;
        long double sum = term;
        const long double q = x * x / 4.0L;
        for (int k = 1; k < 200; ++k)
        {
            term *= -q / (static_cast<long double>(k) * static_cast<long double>(k + n));
            sum += term;
        }
        return sum;
    }

    double bisect_zero(int n, double lo, double hi)
    {
        long double flo = series_oracle(n, lo);
        for (int i = 0; i < 200; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            const long double fm = series_oracle(n, mid);
            if ((fm < 0) == (flo < 0))
            {
                lo = mid;
                flo = fm;
            }
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    double trapezoid(const std::function<double(double)> &f, double a, double b, std::size_t intervals)
    {
        const double h = (b - a) / static_cast<double>(intervals);
        double sum = 0.5 * (f(a) + f(b));
        for (std::size_t i = 1; i < intervals; ++i)
            sum += f(a + h * static_cast<double>(i));
        return sum * h;
    }
} // namespace

TEST_CASE("specfun - Bessel J0 examples")
{
    CHECK(bessel_j0(0.0) == 1.0);

    const double zero = bisect_zero(0, 2.0, 3.0);
    CHECK(zero == Approx(2.404825557695773).margin(1e-12));
    CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-9);

    CHECK(std::abs(static_cast<double>(series_oracle(0, std::numbers::pi)) - (-0.304242)) < 1e-6);
    CHECK(std::abs(bessel_j0(std::numbers::pi) - (-0.304242)) < 1e-6);
}

TEST_CASE("specfun - Bessel J1 examples")
{
    CHECK(bessel_j1(0.0) == 0.0);
    CHECK(std::abs(bessel_j1(1.0) - 0.4400505857) < 1e-9);

    const double zero = bisect_zero(1, 3.5, 4.0);
    CHECK(zero == Approx(3.8317059702075123).margin(1e-12));
    CHECK(std::abs(bessel_j1(3.8317059702075123)) < 1e-9);

    // parity
    CHECK(bessel_j1(-2.5) == -bessel_j1(2.5));
    CHECK(bessel_j0(-2.5) == bessel_j0(2.5));
}

TEST_CASE("specfun - Bessel accuracy against series oracle below the split")
{
    double worst0 = 0.0, worst1 = 0.0;
    for (double x = 0.0; x < 12.0; x += 0.01)
    {
        worst0 = std::max(worst0, std::abs(bessel_j0(x) - static_cast<double>(series_oracle(0, x))));
        worst1 = std::max(worst1, std::abs(bessel_j1(x) - static_cast<double>(series_oracle(1, x))));
    }
    CHECK(worst0 < 1e-10);
    CHECK(worst1 < 1e-10);
}

TEST_CASE("specfun - Bessel accuracy against std::cyl_bessel_j up to 1e4")
{
    double worst0 = 0.0, worst1 = 0.0;
    auto probe = [&](double x) {
        worst0 = std::max(worst0, std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
        worst1 = std::max(worst1, std::abs(bessel_j1(x) - std::cyl_bessel_j(1.0, x)));
    };
    for (double x = 0.0; x < 40.0; x += 0.003)
        probe(x);
    for (double x = 40.0; x <= 1e4; x *= 1.0007)
        probe(x);
    probe(11.999999);
    probe(12.0);
    probe(12.000001);
    CHECK(worst0 < 1e-10);
    CHECK(worst1 < 1e-10);
}

TEST_CASE("specfun - J0^2 + J1^2 <= 1 with equality only at 0")
{
    CHECK(bessel_j0(0.0) * bessel_j0(0.0) + bessel_j1(0.0) * bessel_j1(0.0) == 1.0);
    for (double x = 0.01; x < 200.0; x += 0.037)
    {
        const double s = bessel_j0(x) * bessel_j0(x) + bessel_j1(x) * bessel_j1(x);
        REQUIRE(s < 1.0);
    }
}

TEST_CASE("specfun - Bessel rejects non-finite input")
{
    CHECK_THROWS_AS(bessel_j0(std::nan("")), DomainError);
    CHECK_THROWS_AS(bessel_j1(INFINITY), DomainError);
}

TEST_CASE("specfun - quadrature examples")
{
    CHECK(integrate([](double) { return 1.0; }, -1.0, 1.0, 1e-10) == Approx(2.0).margin(1e-12));
    CHECK(integrate([](double x) { return 1.0 - std::abs(x); }, -1.0, 1.0, 1e-10) == Approx(1.0).margin(1e-10));

    auto f = [](double x) {
        const double j = bessel_j0(2.0 * std::numbers::pi * x);
        return j * j * (1.0 - std::abs(x));
    };
    const double oracle = trapezoid(f, -1.0, 1.0, 1000000);
    const double value = integrate(f, -1.0, 1.0, 1e-9);
    CHECK(std::abs(value - oracle) < 1e-7);
}

TEST_CASE("specfun - quadrature is additive over a split point")
{
    Catch::SimplePcg32 gen(17);
    auto f = [](double x) { return std::sin(5.0 * x) * std::exp(-x * x) + std::abs(x - 0.3); };
    const double tol = 1e-9;
    const double whole = integrate(f, -2.0, 3.0, tol);
    for (int i = 0; i < 20; ++i)
    {
        const double c = -2.0 + 5.0 * (gen() / 4294967296.0);
        if (c <= -2.0 || c >= 3.0)
            continue;
        const double parts = integrate(f, -2.0, c, tol) + integrate(f, c, 3.0, tol);
        CHECK(std::abs(whole - parts) <= 2.0 * tol);
    }
}

TEST_CASE("specfun - quadrature reports exhausted depth with its best estimate")
{
    auto step = [](double x) { return x < 1.0 / 3.0 ? 0.0 : 1.0; };
    try
    {
        integrate(step, 0.0, 1.0, 1e-14, 4);
        FAIL("expected ConvergenceError");
    }
    catch (const ConvergenceError &e)
    {
        CHECK(e.estimate() == Approx(2.0 / 3.0).margin(0.05));
        CHECK(e.error_estimate() > 0.0);
    }
    CHECK_THROWS_AS(integrate(step, 1.0, 0.0, 1e-6), std::invalid_argument);
}

TEST_CASE("specfun - Cholesky closed forms")
{
    const auto I4 = HermitianMatrix(SquareMatrix::identity(4));
    CHECK(cholesky(I4).max_abs_diff(SquareMatrix::identity(4)) == 0.0);

    const HermitianMatrix R2(SquareMatrix(2, {1.0, 0.5, 0.5, 1.0}));
    const SquareMatrix G = cholesky(R2);
    CHECK(std::abs(G(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(G(0, 1)) == 0.0);
    CHECK(std::abs(G(1, 0) - 0.5) < 1e-15);
    CHECK(std::abs(G(1, 1) - std::sqrt(0.75)) < 1e-15);
}

TEST_CASE("specfun - Cholesky reconstruction on correlation matrices")
{
    {
        const auto R = build_correlation_matrix(ArrayGeometry::jakes(8, 2.0));
        const SquareMatrix G = cholesky(R);
        CHECK((G * G.adjoint()).max_abs_diff(R.matrix()) < 1e-10);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = i + 1; j < 8; ++j)
                CHECK(G(i, j) == 0.0);
    }
    // includes numerically rank-deficient cases (dense arrays, short apertures)
    for (std::size_t M : {2, 8, 32, 64, 100})
        for (double D : {0.0, 0.5, 2.0, 5.0, 10.0, 25.0, 50.0})
        {
            const auto R = build_correlation_matrix(ArrayGeometry::jakes(M, D));
            const SquareMatrix G = cholesky(R);
            INFO("M=" << M << " D/lambda=" << D);
            CHECK((G * G.adjoint()).max_abs_diff(R.matrix()) < 1e-10);
        }
}

TEST_CASE("specfun - Cholesky rejects indefinite matrices")
{
    const HermitianMatrix bad(SquareMatrix(2, {1.0, 2.0, 2.0, 1.0}));
    CHECK_THROWS_AS(cholesky(bad), NotPositiveSemidefiniteError);
    CHECK_THROWS_AS(HermitianMatrix(SquareMatrix(2, {1.0, cdouble(0.0, 1.0), cdouble(0.0, 1.0), 1.0})),
                    std::invalid_argument);

    const HermitianMatrix complex_r(SquareMatrix(2, {2.0, cdouble(0.5, 0.5), cdouble(0.5, -0.5), 1.0}));
    const SquareMatrix G = cholesky(complex_r);
    CHECK((G * G.adjoint()).max_abs_diff(complex_r.matrix()) < 1e-14);
}

TEST_CASE("specfun - complex Gaussian moments")
{
    Rng rng(2024);
    const std::size_t n = 1000000;
    cdouble mean = 0.0;
    double power = 0.0, re2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const cdouble z = rng.gaussian_pair();
        mean += z;
        power += std::norm(z);
        re2 += z.real() * z.real();
    }
    mean /= static_cast<double>(n);
    power /= static_cast<double>(n);
    re2 /= static_cast<double>(n);
    CHECK(std::abs(mean) < 5e-3);
    CHECK(std::abs(power - 1.0) < 0.01);
    CHECK(std::abs(re2 - 0.5) < 0.01);
}

TEST_CASE("specfun - random streams are reproducible")
{
    CHECK(Rng(42).gaussian_pair() == Rng(42).gaussian_pair());

    Rng a(99), b(99), c(100);
    bool differs = false;
    for (int i = 0; i < 10000; ++i)
    {
        const cdouble za = a.gaussian_pair();
        REQUIRE(za == b.gaussian_pair());
        differs |= za != c.gaussian_pair();
    }
    CHECK(differs);

    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}
