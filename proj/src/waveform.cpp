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

#include "lsasc/waveform.hpp"
#include "lsasc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lsasc
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
        constexpr double singular_eps = 1e-10;

        double sinc(double x)
        {
            if (std::abs(x) < 1e-300)
                return 1.0;
            return std::sin(pi * x) / (pi * x);
        }

        void check_pulse_args(double rolloff, double symbol_period)
        {
            if (!(rolloff >= 0.0 && rolloff <= 1.0))
                throw std::invalid_argument("roll-off must lie in [0, 1]");
            if (!(symbol_period > 0.0))
                throw std::invalid_argument("symbol period must be positive");
        }
    } // namespace

    double raised_cosine(double t, double rolloff, double symbol_period)
    {
        check_pulse_args(rolloff, symbol_period);
        const double x = t / symbol_period;
        const double b = rolloff;
        if (b > 0.0 && std::abs(std::abs(2.0 * b * x) - 1.0) < singular_eps)
            return 0.25 * pi * sinc(1.0 / (2.0 * b));
        return sinc(x) * std::cos(pi * b * x) / (1.0 - 4.0 * b * b * x * x);
    }

    double root_raised_cosine(double t, double rolloff, double symbol_period)
    {
        check_pulse_args(rolloff, symbol_period);
        const double x = t / symbol_period;
        const double b = rolloff;
        const double scale = 1.0 / std::sqrt(symbol_period);
        if (std::abs(x) < singular_eps)
            return scale * (1.0 - b + 4.0 * b / pi);
        if (b > 0.0 && std::abs(std::abs(4.0 * b * x) - 1.0) < singular_eps)
        {
            const double a = pi / (4.0 * b);
            return scale * b / std::sqrt(2.0) *
                   ((1.0 + 2.0 / pi) * std::sin(a) + (1.0 - 2.0 / pi) * std::cos(a));
        }
        const double num = std::sin(pi * x * (1.0 - b)) + 4.0 * b * x * std::cos(pi * x * (1.0 + b));
        const double den = pi * x * (1.0 - 16.0 * b * b * x * x);
        return scale * num / den;
    }

    // ---------------------------------------------------------------------

    PulseShape::PulseShape(double rolloff, double symbol_period, int span, int oversampling)
        : rolloff_(rolloff), symbol_period_(symbol_period), span_(span), oversampling_(oversampling)
    {
        check_pulse_args(rolloff, symbol_period);
        if (span < 4)
            throw std::invalid_argument("filter span must be at least 4 symbols");
        if (oversampling < 2)
            throw std::invalid_argument("oversampling factor must be at least 2");

        const double ts = sample_period();
        const int half = span_ * oversampling_;
        rrc_.resize(2 * static_cast<std::size_t>(half) + 1);
        double energy = 0.0;
        for (int k = -half; k <= half; ++k)
        {
            const double h = root_raised_cosine(k * ts, rolloff_, symbol_period_);
            rrc_[static_cast<std::size_t>(k + half)] = h;
            energy += h * h;
        }
        const double norm = 1.0 / std::sqrt(energy * ts);
        for (auto &h : rrc_)
            h *= norm;

        combined_.assign(2 * rrc_.size() - 1, 0.0);
        for (std::size_t i = 0; i < rrc_.size(); ++i)
            for (std::size_t j = 0; j < rrc_.size(); ++j)
                combined_[i + j] += rrc_[i] * rrc_[j] * ts;
    }

    double PulseShape::combined_at(double t) const
    {
        const long center = static_cast<long>(combined_.size() / 2);
        const long idx = std::lround(t / sample_period()) + center;
        if (idx < 0 || idx >= static_cast<long>(combined_.size()))
            return 0.0;
        return combined_[static_cast<std::size_t>(idx)];
    }

    // ---------------------------------------------------------------------

    SymbolStream modulate_qpsk(std::span<const std::uint8_t> bits)
    {
        if (bits.size() % 2 != 0)
            throw std::invalid_argument("QPSK needs an even number of bits, got " + std::to_string(bits.size()));
        const double a = 1.0 / std::sqrt(2.0);
        SymbolStream out;
        out.symbols.reserve(bits.size() / 2);
        for (std::size_t i = 0; i < bits.size(); i += 2)
            out.symbols.emplace_back(bits[i] ? -a : a, bits[i + 1] ? -a : a);
        return out;
    }

    SymbolStream random_qpsk(std::size_t count, Rng &rng)
    {
        std::vector<std::uint8_t> bits(2 * count);
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
        {
            if (i % 64 == 0)
                word = rng.next_u64();
            bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
        }
        return modulate_qpsk(bits);
    }

    cdouble qpsk_decide(cdouble z)
    {
        const double a = 1.0 / std::sqrt(2.0);
        return {z.real() >= 0.0 ? a : -a, z.imag() >= 0.0 ? a : -a};
    }

    // ---------------------------------------------------------------------

    std::size_t SampledWaveform::leading_guard() const
    {
        const long g = std::lround(-origin / sample_period);
        return g > 0 ? static_cast<std::size_t>(g) : 0;
    }

    bool SampledWaveform::same_grid(const SampledWaveform &other) const
    {
        return samples.size() == other.samples.size() && oversampling == other.oversampling &&
               std::abs(sample_period - other.sample_period) <= 1e-12 * sample_period &&
               std::abs(origin - other.origin) <= 1e-9 * sample_period;
    }

    std::vector<cdouble> filter_same(std::span<const cdouble> in, std::span<const double> taps, double scale)
    {
        const long n_in = static_cast<long>(in.size());
        const long center = static_cast<long>(taps.size() / 2);
        std::vector<cdouble> out(in.size());
        for (long k = 0; k < static_cast<long>(taps.size()); ++k)
        {
            const double w = taps[static_cast<std::size_t>(k)] * scale;
            if (w == 0.0)
                continue;
            const long shift = center - k; // out[n] += w * in[n + shift]
            const long lo = std::max(0L, -shift);
            const long hi = std::min(n_in, n_in - shift);
            for (long n = lo; n < hi; ++n)
                out[static_cast<std::size_t>(n)] += w * in[static_cast<std::size_t>(n + shift)];
        }
        return out;
    }

    SampledWaveform shape(const SymbolStream &symbols, const PulseShape &pulse, FilterKind filter,
                          std::size_t guard_symbols)
    {
        if (symbols.symbols.empty())
            throw std::invalid_argument("shape: symbol stream is empty");

        const std::size_t K = symbols.symbols.size();
        const std::size_t Q = static_cast<std::size_t>(pulse.oversampling());
        const std::size_t n_samples = (K - 1 + 2 * guard_symbols) * Q + 1;

        // Upsampled impulse train, then the selected filter
        std::vector<cdouble> train(n_samples);
        for (std::size_t k = 0; k < K; ++k)
            train[(guard_symbols + k) * Q] = symbols.symbols[k];

        SampledWaveform out;
        out.samples = filter_same(train, pulse.taps(filter), 1.0);
        out.sample_period = pulse.sample_period();
        out.origin = -static_cast<double>(guard_symbols) * pulse.symbol_period();
        out.oversampling = pulse.oversampling();
        return out;
    }

    std::size_t delay_in_samples(double delay_s, double sample_period)
    {
        const long d = std::lround(delay_s / sample_period);
        if (d < 0)
            throw std::invalid_argument("tap delay must be non-negative");
        return static_cast<std::size_t>(d);
    }

    std::vector<SampledWaveform> propagate(const SampledWaveform &tx, const ChannelRealization &chan,
                                           const PulseShape &pulse, double n0, std::uint64_t noise_seed)
    {
        if (!(n0 >= 0.0))
            throw std::invalid_argument("noise spectral density must be non-negative");
        if (std::abs(tx.sample_period - pulse.sample_period()) > 1e-12 * pulse.sample_period())
            throw GridError("transmit waveform is not on the pulse's sample grid");

        const std::size_t L = chan.tap_count();
        const std::size_t N = tx.samples.size();
        const double ts = tx.sample_period;

        std::vector<std::size_t> delays(L);
        for (std::size_t l = 0; l < L; ++l)
        {
            delays[l] = delay_in_samples(chan.profile().delay(l), ts);
            if (delays[l] > tx.leading_guard())
                throw GridError("tap " + std::to_string(l) + " delay of " + std::to_string(delays[l]) +
                                " samples exceeds the waveform guard of " + std::to_string(tx.leading_guard()));
        }

        const double noise_scale = std::sqrt(n0 / ts);
        std::vector<SampledWaveform> out(chan.antenna_count());
        std::vector<cdouble> r(N);
        for (std::size_t m = 0; m < chan.antenna_count(); ++m)
        {
            std::fill(r.begin(), r.end(), cdouble{});
            for (std::size_t l = 0; l < L; ++l)
            {
                const cdouble a = chan.gain(m, l);
                for (std::size_t n = delays[l]; n < N; ++n)
                    r[n] += a * tx.samples[n - delays[l]];
            }
            if (n0 > 0.0)
            {
                Rng rng(derive_seed(noise_seed, m));
                for (auto &v : r)
                    v += noise_scale * rng.gaussian_pair();
            }

            out[m].samples = filter_same(r, pulse.rrc_taps(), ts);
            out[m].sample_period = ts;
            out[m].origin = tx.origin;
            out[m].oversampling = tx.oversampling;
        }
        return out;
    }
} // namespace lsasc
