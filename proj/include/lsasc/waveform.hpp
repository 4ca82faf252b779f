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

#ifndef LSASC_WAVEFORM_HPP
#define LSASC_WAVEFORM_HPP

#include "lsasc/channel.hpp"
#include "lsasc/specfun.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lsasc
{
    // Raised-cosine impulse response, g(0) = 1 and g(kT) = delta[k].
    double raised_cosine(double t, double rolloff, double symbol_period);

    // Root-raised-cosine impulse response with unit energy; h * h is the raised cosine.
    double root_raised_cosine(double t, double rolloff, double symbol_period);

    enum class FilterKind
    {
        transmit,  // root-raised cosine only
        combined,  // transmit and receive filter in cascade
    };

    // Pulse descriptor plus its discrete tap vectors at T/Q spacing.
    //
    // The root-raised-cosine taps cover [-span*T, span*T] and are scaled so
    // that sample_period * sum(h^2) == 1. The combined taps are the discrete
    // cascade sample_period * (h * h), i.e. exactly what transmit filtering
    // followed by receive filtering produces on the sample grid.
    class PulseShape
    {
    public:
        PulseShape(double rolloff, double symbol_period, int span = 16, int oversampling = 2);

        double rolloff() const noexcept { return rolloff_; }
        double symbol_period() const noexcept { return symbol_period_; }
        int span() const noexcept { return span_; }
        int oversampling() const noexcept { return oversampling_; }
        double sample_period() const noexcept { return symbol_period_ / oversampling_; }

        const std::vector<double> &rrc_taps() const noexcept { return rrc_; }
        const std::vector<double> &combined_taps() const noexcept { return combined_; }
        const std::vector<double> &taps(FilterKind kind) const noexcept
        {
            return kind == FilterKind::transmit ? rrc_ : combined_;
        }

        // Value of the discrete combined response at a time offset on the
        // sample grid (nearest sample), zero outside its support
        double combined_at(double t) const;

    private:
        double rolloff_;
        double symbol_period_;
        int span_;
        int oversampling_;
        std::vector<double> rrc_;
        std::vector<double> combined_;
    };

    struct SymbolStream
    {
        std::vector<cdouble> symbols;
    };

    // Gray-mapped QPSK: bit pair (b0, b1) -> ((b0 ? -1 : 1) + j (b1 ? -1 : 1)) / sqrt(2)
    SymbolStream modulate_qpsk(std::span<const std::uint8_t> bits);

    // Equiprobable QPSK symbols drawn from rng
    SymbolStream random_qpsk(std::size_t count, Rng &rng);

    // Nearest QPSK point (quadrant of z)
    cdouble qpsk_decide(cdouble z);

    // Uniformly sampled complex baseband signal. Sample n sits at time
    // origin + n * sample_period. Framed waveforms use origin = -guard * T so
    // symbol k lands on sample (guard + k) * oversampling.
    struct SampledWaveform
    {
        std::vector<cdouble> samples;
        double sample_period = 0.0;
        double origin = 0.0;
        int oversampling = 1;

        // Zero-padding samples ahead of the first symbol instant
        std::size_t leading_guard() const;
        bool same_grid(const SampledWaveform &other) const;
    };

    // Symbol stream -> oversampled waveform, framed with `guard_symbols` zero
    // symbols on both sides. Output has (K - 1 + 2 * guard) * Q + 1 samples;
    // filter tails falling outside that window are dropped.
    SampledWaveform shape(const SymbolStream &symbols, const PulseShape &pulse, FilterKind filter,
                          std::size_t guard_symbols = 0);

    // Tap delay in whole samples (nearest sample on the T/Q grid)
    std::size_t delay_in_samples(double delay_s, double sample_period);

    // Per-antenna channel and receive front end: delayed weighted tap sum,
    // additive white noise of variance N0 / sample_period per complex sample,
    // then receive RRC filtering. Antenna m draws its noise from its own stream
    // derived from (noise_seed, m). With n0 == 0 no noise is generated.
    // Throws GridError if a tap delay exceeds the leading guard of tx.
    std::vector<SampledWaveform> propagate(const SampledWaveform &tx, const ChannelRealization &chan,
                                           const PulseShape &pulse, double n0, std::uint64_t noise_seed);

    // Same-length FIR filtering: out[n] = scale * sum_k taps[k] in[n - k + center]
    std::vector<cdouble> filter_same(std::span<const cdouble> in, std::span<const double> taps, double scale);
} // namespace lsasc

#endif
