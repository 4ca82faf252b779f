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

#include "lsasc/specfun.hpp"
#include "lsasc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace lsasc
{
    namespace
    {
        constexpr double series_limit = 12.0;

        // sum_k (-1)^k (x^2/4)^k / (k! (k+order)!) for order 0 or 1
        double bessel_series(double x, int order)
        {
            const double q = 0.25 * x * x;
            double term = 1.0; // for order 1 the caller applies the x/2 prefactor
            double sum = term;
            for (int k = 1; k < 200; ++k)
            {
                term *= -q / (static_cast<double>(k) * static_cast<double>(k + order));
                sum += term;
                if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)))
                    break;
            }
            return sum;
        }

        // Hankel expansion: J_nu(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi), x > 0
        double bessel_asymptotic(double x, int order)
        {
            const double mu = 4.0 * order * order;
            double P = 0.0, Q = 0.0;
            double term = 1.0; // a_k(nu) / x^k
            double last = std::numeric_limits<double>::infinity();
            for (int k = 0; k < 100; ++k)
            {
                if (k > 0)
                {
                    const double odd = 2.0 * k - 1.0;
                    term *= (mu - odd * odd) / (k * 8.0 * x);
                }
                const double mag = std::abs(term);
                if (mag > last) // divergent tail
                    break;
                last = mag;
                // a_k enters P for even k, Q for odd k, with alternating signs per pair
                const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
                if (k % 2 == 0)
                    P += sign * term;
                else
                    Q += sign * term;
                if (mag < 1e-17)
                    break;
            }
            const double chi = x - (0.5 * order + 0.25) * std::numbers::pi;
            return std::sqrt(2.0 / (std::numbers::pi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
        }

        void require_finite(double x, const char *name)
        {
            if (!std::isfinite(x))
                throw DomainError(std::string(name) + ": argument must be finite");
        }
    } // namespace

    double bessel_j0(double x)
    {
        require_finite(x, "bessel_j0");
        const double ax = std::abs(x);
        if (ax < series_limit)
            return bessel_series(ax, 0);
        return bessel_asymptotic(ax, 0);
    }

    double bessel_j1(double x)
    {
        require_finite(x, "bessel_j1");
        const double ax = std::abs(x);
        const double value = ax < series_limit ? 0.5 * ax * bessel_series(ax, 1)
                                               : bessel_asymptotic(ax, 1);
        return x < 0.0 ? -value : value;
    }

    // ---------------------------------------------------------------------
    // Adaptive Gauss-Kronrod 7/15
    // ---------------------------------------------------------------------

    namespace
    {
        constexpr double xgk[8] = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

        constexpr double wgk[8] = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

        // Gauss weights for the odd-indexed Kronrod nodes xgk[1], xgk[3], xgk[5], xgk[7]
        constexpr double wg[4] = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        struct Panel
        {
            double kronrod;
            double error;
        };

        Panel gk15(const std::function<double(double)> &f, double a, double b)
        {
            const double center = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            const double fc = f(center);
            double k = wgk[7] * fc;
            double g = wg[3] * fc;
            for (int i = 0; i < 7; ++i)
            {
                const double dx = half * xgk[i];
                const double pair = f(center - dx) + f(center + dx);
                k += wgk[i] * pair;
                if (i % 2 == 1)
                    g += wg[i / 2] * pair;
            }
            return {k * half, std::abs((k - g) * half)};
        }

        struct Accumulator
        {
            double value = 0.0;
            double error = 0.0;
            bool converged = true;
        };

        void refine(const std::function<double(double)> &f, double a, double b, double tol,
                    const Panel &whole, int depth, Accumulator &acc)
        {
            const double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(whole.kronrod);
            if (whole.error <= std::max(tol, floor))
            {
                acc.value += whole.kronrod;
                acc.error += whole.error;
                return;
            }
            if (depth == 0)
            {
                acc.value += whole.kronrod;
                acc.error += whole.error;
                acc.converged = false;
                return;
            }
            const double mid = 0.5 * (a + b);
            const Panel left = gk15(f, a, mid);
            const Panel right = gk15(f, mid, b);
            refine(f, a, mid, 0.5 * tol, left, depth - 1, acc);
            refine(f, mid, b, 0.5 * tol, right, depth - 1, acc);
        }
    } // namespace

    double integrate(const std::function<double(double)> &f, double a, double b, double tol, int max_depth)
    {
        if (!(a < b))
            throw std::invalid_argument("integrate: requires a < b");
        if (!(tol > 0.0))
            throw std::invalid_argument("integrate: tolerance must be positive");

        Accumulator acc;
        refine(f, a, b, tol, gk15(f, a, b), max_depth, acc);
        if (!acc.converged)
            throw ConvergenceError("integrate: subdivision depth exhausted before reaching tolerance",
                                   acc.value, acc.error);
        return acc.value;
    }

    // ---------------------------------------------------------------------
    // Matrices
    // ---------------------------------------------------------------------

    SquareMatrix::SquareMatrix(std::size_t order) : order_(order), entries_(order * order) {}

    SquareMatrix::SquareMatrix(std::size_t order, std::vector<cdouble> entries)
        : order_(order), entries_(std::move(entries))
    {
        if (entries_.size() != order_ * order_)
            throw std::invalid_argument("SquareMatrix: entry count does not match order");
    }

    SquareMatrix SquareMatrix::identity(std::size_t order)
    {
        SquareMatrix m(order);
        for (std::size_t i = 0; i < order; ++i)
            m(i, i) = 1.0;
        return m;
    }

    SquareMatrix SquareMatrix::operator*(const SquareMatrix &rhs) const
    {
        if (rhs.order_ != order_)
            throw std::invalid_argument("SquareMatrix: order mismatch in product");
        SquareMatrix out(order_);
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t k = 0; k < order_; ++k)
            {
                const cdouble a = (*this)(i, k);
                if (a == 0.0)
                    continue;
                for (std::size_t j = 0; j < order_; ++j)
                    out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    SquareMatrix SquareMatrix::adjoint() const
    {
        SquareMatrix out(order_);
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; j < order_; ++j)
                out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    double SquareMatrix::max_abs_diff(const SquareMatrix &rhs) const
    {
        if (rhs.order_ != order_)
            throw std::invalid_argument("SquareMatrix: order mismatch in comparison");
        double worst = 0.0;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            worst = std::max(worst, std::abs(entries_[i] - rhs.entries_[i]));
        return worst;
    }

    HermitianMatrix::HermitianMatrix(SquareMatrix m) : m_(std::move(m))
    {
        if (m_.order() == 0)
            throw std::invalid_argument("HermitianMatrix: order must be positive");
        for (std::size_t i = 0; i < m_.order(); ++i)
            for (std::size_t j = i; j < m_.order(); ++j)
                if (std::abs(m_(i, j) - std::conj(m_(j, i))) > 1e-12)
                    throw std::invalid_argument("HermitianMatrix: matrix is not Hermitian");
    }

    namespace
    {
        // Plain lower-triangular factorization; empty result when a pivot
        // falls below the jitter threshold.
        std::optional<SquareMatrix> cholesky_unpivoted(const HermitianMatrix &R, double jitter)
        {
            const std::size_t n = R.order();
            SquareMatrix G(n);
            for (std::size_t j = 0; j < n; ++j)
            {
                double pivot = R(j, j).real();
                for (std::size_t k = 0; k < j; ++k)
                    pivot -= std::norm(G(j, k));
                if (pivot <= jitter)
                    return std::nullopt;
                const double diag = std::sqrt(pivot);
                G(j, j) = diag;
                for (std::size_t i = j + 1; i < n; ++i)
                {
                    cdouble acc = R(i, j);
                    for (std::size_t k = 0; k < j; ++k)
                        acc -= G(i, k) * std::conj(G(j, k));
                    G(i, j) = acc / diag;
                }
            }
            return G;
        }

        // Diagonal pivoting: always eliminates the largest remaining Schur
        // diagonal and stops once every remaining one is within the jitter, so
        // the residual R - G G^H is bounded by the jitter entrywise. G is lower
        // triangular up to a row permutation.
        SquareMatrix cholesky_pivoted(const HermitianMatrix &R, double jitter)
        {
            const std::size_t n = R.order();
            std::vector<std::size_t> perm(n);
            std::vector<double> d(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                perm[i] = i;
                d[i] = R(i, i).real();
            }

            SquareMatrix G(n);
            for (std::size_t j = 0; j < n; ++j)
            {
                std::size_t best = j;
                for (std::size_t i = j + 1; i < n; ++i)
                    if (d[perm[i]] > d[perm[best]])
                        best = i;
                std::swap(perm[j], perm[best]);

                const std::size_t pj = perm[j];
                if (d[pj] <= jitter)
                {
                    for (std::size_t i = j; i < n; ++i)
                        if (d[perm[i]] < -jitter)
                            throw NotPositiveSemidefiniteError("cholesky: negative pivot " +
                                                               std::to_string(d[perm[i]]) + " at row " +
                                                               std::to_string(perm[i]));
                    break;
                }

                const double diag = std::sqrt(d[pj]);
                G(pj, j) = diag;
                for (std::size_t i = j + 1; i < n; ++i)
                {
                    const std::size_t pi = perm[i];
                    cdouble acc = R(pi, pj);
                    for (std::size_t k = 0; k < j; ++k)
                        acc -= G(pi, k) * std::conj(G(pj, k));
                    G(pi, j) = acc / diag;
                    d[pi] -= std::norm(G(pi, j));
                }
            }
            return G;
        }
    } // namespace

    SquareMatrix cholesky(const HermitianMatrix &R)
    {
        const std::size_t n = R.order();
        const double jitter = 1e-12 * static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            if (R(i, i).real() < -jitter)
                throw NotPositiveSemidefiniteError("cholesky: negative diagonal at row " + std::to_string(i));

        if (auto G = cholesky_unpivoted(R, jitter))
        {
            // tiny but positive pivots amplify rounding noise; verify before trusting
            if ((*G * G->adjoint()).max_abs_diff(R.matrix()) <= 0.1 * jitter)
                return std::move(*G);
        }
        return cholesky_pivoted(R, jitter);
    }

    // ---------------------------------------------------------------------
    // Random numbers
    // ---------------------------------------------------------------------

    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }
    } // namespace

    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
    {
        return splitmix64(splitmix64(master) ^ splitmix64(~index));
    }

    cdouble Rng::gaussian_pair()
    {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }
} // namespace lsasc
