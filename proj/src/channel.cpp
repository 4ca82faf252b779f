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

#include "lsasc/channel.hpp"
#include "lsasc/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lsasc
{
    PowerDelayProfile::PowerDelayProfile(std::vector<Tap> taps) : taps_(std::move(taps))
    {
        if (taps_.empty())
            throw ProfileError("power delay profile must contain at least one tap");
        if (!(taps_.front().delay_s >= 0.0))
            throw ProfileError("first tap delay must be non-negative");
        for (std::size_t l = 0; l < taps_.size(); ++l)
        {
            if (!std::isfinite(taps_[l].delay_s))
                throw ProfileError("tap delay must be finite");
            if (!(taps_[l].power > 0.0) || !std::isfinite(taps_[l].power))
                throw ProfileError("tap " + std::to_string(l) + " has non-positive power");
            if (l > 0 && !(taps_[l].delay_s > taps_[l - 1].delay_s))
                throw ProfileError("tap delays must be strictly increasing (tap " + std::to_string(l) + ")");
        }
        const double total = std::accumulate(taps_.begin(), taps_.end(), 0.0,
                                             [](double s, const Tap &t) { return s + t.power; });
        for (auto &t : taps_)
            t.power /= total;
    }

    std::vector<RawTap> PowerDelayProfile::to_raw() const
    {
        std::vector<RawTap> raw;
        raw.reserve(taps_.size());
        for (const auto &t : taps_)
            raw.push_back({t.delay_s, 10.0 * std::log10(t.power)});
        return raw;
    }

    PowerDelayProfile normalize_profile(std::span<const RawTap> raw)
    {
        std::vector<Tap> taps;
        taps.reserve(raw.size());
        for (const auto &r : raw)
        {
            if (!std::isfinite(r.power_db))
                throw ProfileError("tap power in dB must be finite");
            taps.push_back({r.delay_s, std::pow(10.0, r.power_db / 10.0)});
        }
        return PowerDelayProfile(std::move(taps));
    }

    PowerDelayProfile etu_profile()
    {
        static constexpr std::array<RawTap, 9> table = {{
            {0e-9, -1.0},
            {50e-9, -1.0},
            {120e-9, -1.0},
            {200e-9, 0.0},
            {230e-9, 0.0},
            {500e-9, 0.0},
            {1600e-9, -3.0},
            {2300e-9, -5.0},
            {5000e-9, -7.0},
        }};
        return normalize_profile(table);
    }

    PowerDelayProfile uniform_profile(std::size_t taps, double symbol_period)
    {
        if (taps == 0)
            throw ProfileError("uniform profile needs at least one tap");
        if (!(symbol_period > 0.0))
            throw ProfileError("symbol period must be positive");
        std::vector<Tap> t;
        for (std::size_t l = 0; l < taps; ++l)
            t.push_back({static_cast<double>(l) * symbol_period, 1.0});
        return PowerDelayProfile(std::move(t));
    }

    PowerDelayProfile quantize_delays(const PowerDelayProfile &profile, double step)
    {
        if (!(step > 0.0))
            throw ProfileError("quantization step must be positive");
        std::vector<Tap> out;
        for (const auto &t : profile.taps())
        {
            const double snapped = std::round(t.delay_s / step) * step;
            if (!out.empty() && std::abs(out.back().delay_s - snapped) < 0.5 * step)
                out.back().power += t.power;
            else
                out.push_back({snapped, t.power});
        }
        return PowerDelayProfile(std::move(out));
    }

    // ---------------------------------------------------------------------

    ArrayGeometry::ArrayGeometry(std::size_t m, double d, CorrelationMode mode)
        : antenna_count_(m), d_over_lambda_(d), mode_(mode)
    {
        if (m == 0)
            throw std::invalid_argument("array needs at least one antenna");
        if (mode == CorrelationMode::jakes)
        {
            if (m < 2)
                throw std::invalid_argument("correlated array needs at least two antennas");
            if (!(d >= 0.0) || !std::isfinite(d))
                throw std::invalid_argument("D/lambda must be finite and non-negative");
        }
    }

    ArrayGeometry ArrayGeometry::independent(std::size_t antenna_count)
    {
        return ArrayGeometry(antenna_count, 0.0, CorrelationMode::independent);
    }

    ArrayGeometry ArrayGeometry::jakes(std::size_t antenna_count, double d_over_lambda)
    {
        return ArrayGeometry(antenna_count, d_over_lambda, CorrelationMode::jakes);
    }

    double ArrayGeometry::separation(long index_offset) const
    {
        if (antenna_count_ < 2)
            return 0.0;
        return static_cast<double>(index_offset) / static_cast<double>(antenna_count_ - 1) * d_over_lambda_;
    }

    double jakes_correlation(double d_over_lambda)
    {
        return bessel_j0(2.0 * std::numbers::pi * d_over_lambda);
    }

    HermitianMatrix build_correlation_matrix(const ArrayGeometry &geom)
    {
        const std::size_t M = geom.antenna_count();
        if (geom.mode() == CorrelationMode::independent)
            return HermitianMatrix(SquareMatrix::identity(M));

        // Toeplitz: one kernel evaluation per index offset
        std::vector<double> rho(M);
        for (std::size_t k = 0; k < M; ++k)
            rho[k] = jakes_correlation(geom.separation(static_cast<long>(k)));

        SquareMatrix R(M);
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j)
                R(i, j) = rho[i > j ? i - j : j - i];
        return HermitianMatrix(std::move(R));
    }

    // ---------------------------------------------------------------------

    ChannelRealization::ChannelRealization(PowerDelayProfile profile, std::size_t antennas, std::vector<cdouble> gains)
        : profile_(std::move(profile)), antennas_(antennas), gains_(std::move(gains))
    {
        if (antennas_ == 0)
            throw std::invalid_argument("channel realization needs at least one antenna");
        if (gains_.size() != antennas_ * profile_.tap_count())
            throw std::invalid_argument("gain matrix size does not match antennas x taps");
    }

    std::span<const cdouble> ChannelRealization::tap(std::size_t l) const
    {
        if (l >= tap_count())
            throw std::out_of_range("tap index " + std::to_string(l) + " out of range");
        return {gains_.data() + l * antennas_, antennas_};
    }

    ChannelSampler::ChannelSampler(PowerDelayProfile profile, const ArrayGeometry &geom)
        : profile_(std::move(profile)), antennas_(geom.antenna_count()),
          colored_(geom.mode() == CorrelationMode::jakes)
    {
        if (colored_)
            coloring_ = cholesky(build_correlation_matrix(geom));
    }

    ChannelRealization ChannelSampler::draw(Rng &rng) const
    {
        const std::size_t L = profile_.tap_count();
        std::vector<cdouble> gains(antennas_ * L);
        std::vector<cdouble> w(antennas_);
        for (std::size_t l = 0; l < L; ++l)
        {
            const double sigma = std::sqrt(profile_.power(l));
            for (auto &x : w)
                x = rng.gaussian_pair();
            cdouble *col = gains.data() + l * antennas_;
            if (!colored_)
            {
                for (std::size_t m = 0; m < antennas_; ++m)
                    col[m] = sigma * w[m];
                continue;
            }
            for (std::size_t m = 0; m < antennas_; ++m)
            {
                cdouble acc = 0.0;
                for (std::size_t k = 0; k <= m; ++k)
                    acc += coloring_(m, k) * w[k];
                col[m] = sigma * acc;
            }
        }
        return ChannelRealization(profile_, antennas_, std::move(gains));
    }

    ChannelRealization draw_channel(const PowerDelayProfile &profile, const ArrayGeometry &geom, Rng &rng)
    {
        return ChannelSampler(profile, geom).draw(rng);
    }

    cdouble sample_cross_correlation(const ChannelRealization &chan, std::size_t l, std::size_t p)
    {
        const auto a_l = chan.tap(l);
        const auto a_p = chan.tap(p);
        cdouble acc = 0.0;
        for (std::size_t m = 0; m < a_l.size(); ++m)
            acc += std::conj(a_p[m]) * a_l[m];
        return acc / static_cast<double>(chan.antenna_count());
    }
} // namespace lsasc
