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

#ifndef LSASC_CHANNEL_HPP
#define LSASC_CHANNEL_HPP

#include "lsasc/specfun.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace lsasc
{
    // One tabulated tap as channel standards list them
    struct RawTap
    {
        double delay_s;
        double power_db;
    };

    struct Tap
    {
        double delay_s;
        double power; // linear

        bool operator==(const Tap &) const = default;
    };

    // Tap delays and linear powers of a tapped-delay-line channel. Delays are
    // strictly increasing from tau_0 >= 0, powers positive and summing to one.
    class PowerDelayProfile
    {
    public:
        // Validates ordering and positivity, then rescales powers to unit sum
        explicit PowerDelayProfile(std::vector<Tap> taps);

        const std::vector<Tap> &taps() const noexcept { return taps_; }
        std::size_t tap_count() const noexcept { return taps_.size(); }
        double delay(std::size_t l) const { return taps_.at(l).delay_s; }
        double power(std::size_t l) const { return taps_.at(l).power; }
        double max_delay() const noexcept { return taps_.back().delay_s; }

        // Table in dB; normalize_profile(to_raw()) reproduces this profile
        std::vector<RawTap> to_raw() const;

        bool operator==(const PowerDelayProfile &) const = default;

    private:
        std::vector<Tap> taps_;
    };

    // dB table -> normalized linear profile. Throws ProfileError on empty input
    // or non-increasing delays.
    PowerDelayProfile normalize_profile(std::span<const RawTap> raw);

    // 3GPP TS 36.104 extended typical urban table, normalized
    PowerDelayProfile etu_profile();

    // `taps` equal-power taps at 0, T, 2T, ...
    PowerDelayProfile uniform_profile(std::size_t taps, double symbol_period);

    // Rounds every delay to the nearest multiple of `step`. Taps landing on the
    // same grid point are merged by adding their powers, which leaves the
    // channel statistics and an equal-weight receiver unchanged.
    PowerDelayProfile quantize_delays(const PowerDelayProfile &profile, double step);

    enum class CorrelationMode
    {
        independent,
        jakes,
    };

    // Uniform linear array of M antennas over normalized length D/lambda.
    // Adjacent antennas are D/(M-1) apart, so at fixed D the array gets
    // denser as M grows.
    class ArrayGeometry
    {
    public:
        static ArrayGeometry independent(std::size_t antenna_count);
        static ArrayGeometry jakes(std::size_t antenna_count, double d_over_lambda);

        std::size_t antenna_count() const noexcept { return antenna_count_; }
        double d_over_lambda() const noexcept { return d_over_lambda_; }
        CorrelationMode mode() const noexcept { return mode_; }

        // Normalized separation (in wavelengths) between antennas offset by `index_offset`
        double separation(long index_offset) const;

    private:
        ArrayGeometry(std::size_t m, double d, CorrelationMode mode);

        std::size_t antenna_count_;
        double d_over_lambda_;
        CorrelationMode mode_;
    };

    // rho(d/lambda) = J0(2 pi d/lambda), uniform azimuth spectrum
    double jakes_correlation(double d_over_lambda);

    // [R]_(m, m0) = rho((m - m0)/(M - 1) * D/lambda); identity for independent mode
    HermitianMatrix build_correlation_matrix(const ArrayGeometry &geom);

    // M x (L+1) complex tap gains, one column per tap, stored tap-major so that
    // tap(l) is the contiguous gain vector alpha[l].
    class ChannelRealization
    {
    public:
        ChannelRealization(PowerDelayProfile profile, std::size_t antennas, std::vector<cdouble> gains);

        std::size_t antenna_count() const noexcept { return antennas_; }
        std::size_t tap_count() const noexcept { return profile_.tap_count(); }
        const PowerDelayProfile &profile() const noexcept { return profile_; }

        std::span<const cdouble> tap(std::size_t l) const;
        cdouble gain(std::size_t m, std::size_t l) const { return tap(l)[m]; }
        const std::vector<cdouble> &gains() const noexcept { return gains_; }

    private:
        PowerDelayProfile profile_;
        std::size_t antennas_;
        std::vector<cdouble> gains_;
    };

    // Draws realizations for a fixed (profile, geometry). The coloring factor
    // of R is computed once at construction.
    class ChannelSampler
    {
    public:
        ChannelSampler(PowerDelayProfile profile, const ArrayGeometry &geom);

        // Column l = sigma_l * G * w_l with w_l i.i.d. CN(0, I), independent across taps
        ChannelRealization draw(Rng &rng) const;

        const PowerDelayProfile &profile() const noexcept { return profile_; }

    private:
        PowerDelayProfile profile_;
        std::size_t antennas_;
        bool colored_;
        SquareMatrix coloring_;
    };

    ChannelRealization draw_channel(const PowerDelayProfile &profile, const ArrayGeometry &geom, Rng &rng);

    // (1/M) alpha^H[p] alpha[l]
    cdouble sample_cross_correlation(const ChannelRealization &chan, std::size_t l, std::size_t p);
} // namespace lsasc

#endif
