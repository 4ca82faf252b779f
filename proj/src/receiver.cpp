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

#include "lsasc/receiver.hpp"
#include "lsasc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lsasc
{
    namespace
    {
        void check_inputs(std::span<const SampledWaveform> x, const ChannelRealization &chan)
        {
            if (x.size() != chan.antenna_count())
                throw std::invalid_argument("expected " + std::to_string(chan.antenna_count()) +
                                            " antenna waveforms, got " + std::to_string(x.size()));
            for (const auto &w : x)
                if (!w.same_grid(x.front()))
                    throw GridError("antenna waveforms do not share a sample grid");
        }

        SampledWaveform empty_like(const SampledWaveform &ref)
        {
            SampledWaveform out;
            out.samples.assign(ref.samples.size(), cdouble{});
            out.sample_period = ref.sample_period;
            out.origin = ref.origin;
            out.oversampling = ref.oversampling;
            return out;
        }

        std::size_t checked_advance(const ChannelRealization &chan, std::size_t p, const SampledWaveform &ref)
        {
            const std::size_t d = delay_in_samples(chan.profile().delay(p), ref.sample_period);
            if (d > ref.leading_guard())
                throw GridError("advance of " + std::to_string(d) + " samples for tap " + std::to_string(p) +
                                " exceeds the guard of " + std::to_string(ref.leading_guard()));
            return d;
        }
    } // namespace

    CombinerWeights::CombinerWeights(std::vector<double> eta) : eta_(std::move(eta))
    {
        if (eta_.empty())
            throw std::invalid_argument("combiner needs at least one weight");
        if (std::all_of(eta_.begin(), eta_.end(), [](double e) { return e == 0.0; }))
            throw std::invalid_argument("combiner weights must not all be zero");
    }

    SampledWaveform recover_tap(std::span<const SampledWaveform> x, const ChannelRealization &chan, std::size_t p)
    {
        check_inputs(x, chan);
        const auto alpha = chan.tap(p);
        const std::size_t advance = checked_advance(chan, p, x.front());

        SampledWaveform out = empty_like(x.front());
        const std::size_t N = out.samples.size();
        const double inv_m = 1.0 / static_cast<double>(chan.antenna_count());
        if (advance >= N)
            return out;
        for (std::size_t m = 0; m < x.size(); ++m)
        {
            const cdouble a = std::conj(alpha[m]) * inv_m;
            const cdouble *src = x[m].samples.data() + advance;
            for (std::size_t n = 0; n + advance < N; ++n)
                out.samples[n] += a * src[n];
        }
        return out;
    }

    SampledWaveform combine(std::span<const SampledWaveform> per_tap, const CombinerWeights &w)
    {
        if (per_tap.size() != w.size())
            throw std::invalid_argument("weight count does not match tap waveform count");
        if (per_tap.empty())
            throw std::invalid_argument("nothing to combine");
        for (const auto &s : per_tap)
            if (!s.same_grid(per_tap.front()))
                throw GridError("per-tap waveforms do not share a sample grid");

        SampledWaveform out = empty_like(per_tap.front());
        for (std::size_t p = 0; p < per_tap.size(); ++p)
        {
            const double eta = w.eta()[p];
            if (eta == 0.0)
                continue;
            for (std::size_t n = 0; n < out.samples.size(); ++n)
                out.samples[n] += eta * per_tap[p].samples[n];
        }
        return out;
    }

    CombinerWeights optimal_weights(const PowerDelayProfile &profile)
    {
        return CombinerWeights(std::vector<double>(profile.tap_count(), 1.0));
    }

    std::vector<cdouble> sample_baud(const SampledWaveform &s_hat, long first, std::size_t count)
    {
        const long guard = static_cast<long>(s_hat.leading_guard());
        const long q = s_hat.oversampling;
        std::vector<cdouble> out(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            const long idx = guard + (first + static_cast<long>(i)) * q;
            if (idx < 0 || idx >= static_cast<long>(s_hat.samples.size()))
                throw GridError("baud instant " + std::to_string(first + static_cast<long>(i)) +
                                " lies outside the waveform");
            out[i] = s_hat.samples[static_cast<std::size_t>(idx)];
        }
        return out;
    }

    DecisionRecord sample_and_slice(const SampledWaveform &s_hat, std::size_t symbol_count)
    {
        DecisionRecord rec;
        rec.soft = sample_baud(s_hat, 0, symbol_count);
        rec.decided.symbols.reserve(symbol_count);
        for (const auto &z : rec.soft)
            rec.decided.symbols.push_back(qpsk_decide(z));
        return rec;
    }

    DecisionRecord receive(std::span<const SampledWaveform> x, const ChannelRealization &chan,
                           const CombinerWeights &w, std::size_t symbol_count)
    {
        std::vector<SampledWaveform> per_tap;
        per_tap.reserve(chan.tap_count());
        for (std::size_t p = 0; p < chan.tap_count(); ++p)
            per_tap.push_back(recover_tap(x, chan, p));
        return sample_and_slice(combine(per_tap, w), symbol_count);
    }

    SampledWaveform matched_filter_bank(std::span<const SampledWaveform> x, const ChannelRealization &chan)
    {
        check_inputs(x, chan);
        const std::size_t L = chan.tap_count();
        std::vector<std::size_t> advance(L);
        for (std::size_t p = 0; p < L; ++p)
            advance[p] = checked_advance(chan, p, x.front());
        const std::size_t span = *std::max_element(advance.begin(), advance.end()) + 1;

        SampledWaveform out = empty_like(x.front());
        const long N = static_cast<long>(out.samples.size());
        const double inv_m = 1.0 / static_cast<double>(chan.antenna_count());
        std::vector<cdouble> mf(span);
        for (std::size_t m = 0; m < x.size(); ++m)
        {
            // c_m^*(-t) on the sample grid: anti-causal taps at -tau_p
            std::fill(mf.begin(), mf.end(), cdouble{});
            for (std::size_t p = 0; p < L; ++p)
                mf[advance[p]] += std::conj(chan.gain(m, p));

            for (long n = 0; n < N; ++n)
            {
                cdouble acc = 0.0;
                for (std::size_t k = 0; k < span; ++k)
                {
                    const long src = n + static_cast<long>(k);
                    if (src >= N)
                        break;
                    acc += mf[k] * x[m].samples[static_cast<std::size_t>(src)];
                }
                out.samples[static_cast<std::size_t>(n)] += acc * inv_m;
            }
        }
        return out;
    }
} // namespace lsasc
