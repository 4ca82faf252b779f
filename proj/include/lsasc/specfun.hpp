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

#ifndef LSASC_SPECFUN_HPP
#define LSASC_SPECFUN_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

// Numerical kernels shared by the rest of the library: Bessel functions of
// order 0 and 1, adaptive quadrature, Cholesky factorization of Hermitian
// PSD matrices and a seeded complex Gaussian source.

namespace lsasc
{
    using cdouble = std::complex<double>;

    // J0(x). Maclaurin series for |x| < 12, Hankel asymptotic expansion above.
    // Throws DomainError for non-finite x.
    double bessel_j0(double x);

    // J1(x), same evaluation split as bessel_j0.
    double bessel_j1(double x);

    // Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b] to absolute
    // tolerance tol. Throws ConvergenceError with the best estimate when the
    // subdivision depth is exhausted before the tolerance is met.
    double integrate(const std::function<double(double)> &f, double a, double b, double tol,
                     int max_depth = 50);

    // Dense square complex matrix, row-major
    class SquareMatrix
    {
    public:
        SquareMatrix() = default;
        explicit SquareMatrix(std::size_t order);
        SquareMatrix(std::size_t order, std::vector<cdouble> entries);

        static SquareMatrix identity(std::size_t order);

        std::size_t order() const noexcept { return order_; }
        cdouble &operator()(std::size_t row, std::size_t col) { return entries_[row * order_ + col]; }
        const cdouble &operator()(std::size_t row, std::size_t col) const { return entries_[row * order_ + col]; }
        const std::vector<cdouble> &entries() const noexcept { return entries_; }

        SquareMatrix operator*(const SquareMatrix &rhs) const;
        SquareMatrix adjoint() const;
        double max_abs_diff(const SquareMatrix &rhs) const;

    private:
        std::size_t order_ = 0;
        std::vector<cdouble> entries_;
    };

    // SquareMatrix with entries(i,j) == conj(entries(j,i)) to 1e-12, checked on construction
    class HermitianMatrix
    {
    public:
        explicit HermitianMatrix(SquareMatrix m);

        std::size_t order() const noexcept { return m_.order(); }
        const cdouble &operator()(std::size_t row, std::size_t col) const { return m_(row, col); }
        const SquareMatrix &matrix() const noexcept { return m_; }

    private:
        SquareMatrix m_;
    };

    // G with G * G^H == R. Lower triangular when R is numerically positive
    // definite; otherwise a diagonal-pivoted factor (lower triangular up to a
    // row permutation) that drops directions whose Schur pivot is below
    // 1e-12 * order. A pivot more negative than that throws
    // NotPositiveSemidefiniteError.
    SquareMatrix cholesky(const HermitianMatrix &R);

    // Mixes a master seed with a stream index into an independent 64-bit seed (SplitMix64)
    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

    // Seeded random source. Identical seeds produce bit-identical streams on
    // every platform: the engine is mt19937_64 and all transforms are local.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        std::uint64_t next_u64() { return engine_(); }

        // Uniform on [0, 1) with 53 random bits
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        // Circularly-symmetric CN(0, 1): Box-Muller, exactly two engine draws per sample
        cdouble gaussian_pair();

    private:
        std::mt19937_64 engine_;
    };
} // namespace lsasc

#endif
