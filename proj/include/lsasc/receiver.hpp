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

#ifndef LSASC_RECEIVER_HPP
#define LSASC_RECEIVER_HPP

#include "lsasc/channel.hpp"
#include "lsasc/waveform.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace lsasc
{
    // Linear combining weights eta[p], one per tap, not all zero
    class CombinerWeights
    {
    public:
        explicit CombinerWeights(std::vector<double> eta);

        const std::vector<double> &eta() const noexcept { return eta_; }
        std::size_t size() const noexcept { return eta_.size(); }

    private:
        std::vector<double> eta_;
    };

    struct DecisionRecord
    {
        SymbolStream decided;
        std::vector<cdouble> soft;
    };

    // Waveform recovered over tap p: (1/M) alpha^H[p] x(t + tau_p).
    // Samples advanced past the end of the window read as zero.
    // Throws GridError if tau_p exceeds the leading guard of the inputs.
    SampledWaveform recover_tap(std::span<const SampledWaveform> x, const ChannelRealization &chan, std::size_t p);

    // sum_p eta[p] * per_tap[p]
    SampledWaveform combine(std::span<const SampledWaveform> per_tap, const CombinerWeights &w);

    // Equal weights maximize the combined SNR (scale is irrelevant to decisions)
    CombinerWeights optimal_weights(const PowerDelayProfile &profile);

    // Samples at t = kT for k = first, ..., first + count - 1
    std::vector<cdouble> sample_baud(const SampledWaveform &s_hat, long first, std::size_t count);

    // Baud samples k = 0..symbol_count-1 followed by a minimum-distance QPSK slicer
    DecisionRecord sample_and_slice(const SampledWaveform &s_hat, std::size_t symbol_count);

    // recover_tap for every tap -> combine -> sample_and_slice
    DecisionRecord receive(std::span<const SampledWaveform> x, const ChannelRealization &chan,
                           const CombinerWeights &w, std::size_t symbol_count);

    // Filter-bank form of the equal-weight receiver, (1/M) c^H(-t) * x(t): each
    // antenna runs its own matched filter to the tap-delay line before the
    // array sum. Algebraically identical to receive(); kept as an independent
    // code path for cross-checking.
    SampledWaveform matched_filter_bank(std::span<const SampledWaveform> x, const ChannelRealization &chan);
} // namespace lsasc

#endif
