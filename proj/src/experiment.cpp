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

#include "lsasc/experiment.hpp"
#include "lsasc/analysis.hpp"
#include "lsasc/errors.hpp"
#include "lsasc/receiver.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace lsasc
{
    namespace
    {
        // Runs body(i) for i in [0, count) on `threads` workers. Work is
        // strided so the assignment is fixed, and results go into per-index
        // slots, which keeps aggregates independent of the thread count.
        template <typename Body>
        void parallel_trials(std::size_t count, unsigned threads, Body body)
        {
            threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
            std::vector<std::exception_ptr> failures(count);
            auto worker = [&](unsigned tid) {
                for (std::size_t i = tid; i < count; i += threads)
                {
                    try
                    {
                        body(i);
                    }
                    catch (...)
                    {
                        failures[i] = std::current_exception();
                    }
                }
            };
            if (threads == 1)
                worker(0);
            else
            {
                std::vector<std::thread> pool;
                for (unsigned t = 0; t < threads; ++t)
                    pool.emplace_back(worker, t);
                for (auto &th : pool)
                    th.join();
            }
            for (std::size_t i = 0; i < count; ++i)
                if (failures[i])
                {
                    try
                    {
                        std::rethrow_exception(failures[i]);
                    }
                    catch (const std::exception &e)
                    {
                        throw std::runtime_error("trial " + std::to_string(i) + ": " + e.what());
                    }
                }
        }

        // Stream indices under the master seed, per trial
        enum Stream : std::uint64_t
        {
            channel_stream = 0,
            symbol_stream = 1,
            noise_stream = 2,
            stream_count = 4,
        };

        std::uint64_t trial_seed(std::uint64_t master, std::size_t trial, Stream s)
        {
            return derive_seed(master, static_cast<std::uint64_t>(trial) * stream_count + s);
        }

        struct SweepPoint
        {
            double x;
            std::size_t m;
            ArraySetting array;
            double snr_db;
        };

        std::vector<SweepPoint> sweep_points(const ExperimentConfig &cfg)
        {
            std::vector<SweepPoint> points;
            switch (cfg.experiment)
            {
            case ExperimentKind::ser_vs_snr:
                for (double s : cfg.snr_db)
                    points.push_back({s, cfg.m.front(), cfg.d_over_lambda.front(), s});
                break;
            case ExperimentKind::ser_vs_length:
                for (const auto &d : cfg.d_over_lambda)
                    points.push_back({d.axis_value(), cfg.m.front(), d, cfg.snr_db.front()});
                break;
            case ExperimentKind::ser_vs_antennas:
                for (auto m : cfg.m)
                    points.push_back({static_cast<double>(m), m, cfg.d_over_lambda.front(), cfg.snr_db.front()});
                break;
            default:
                throw ConfigError("not an SER experiment: " + std::string(experiment_name(cfg.experiment)));
            }
            return points;
        }
    } // namespace

    double noise_density(double snr_db)
    {
        if (snr_db == std::numeric_limits<double>::infinity())
            return 0.0;
        return std::pow(10.0, -snr_db / 10.0);
    }

    std::size_t guard_symbols(const PowerDelayProfile &profile, const PulseShape &pulse)
    {
        const double spread = std::ceil(profile.max_delay() / pulse.symbol_period() - 1e-9);
        return static_cast<std::size_t>(pulse.span()) + static_cast<std::size_t>(std::max(0.0, spread));
    }

    std::vector<SerPoint> run_ser_experiment(const ExperimentConfig &cfg)
    {
        validate(cfg);
        const PulseShape pulse = cfg.pulse();
        const PowerDelayProfile profile =
            quantize_delays(resolve_profile(cfg.profile, cfg.t), pulse.sample_period());
        const std::size_t guard = guard_symbols(profile, pulse);
        const CombinerWeights weights = optimal_weights(profile);
        const std::size_t K = cfg.symbols_per_trial;
        const std::uint64_t seed = *cfg.seed;

        std::vector<SerPoint> out;
        for (const auto &point : sweep_points(cfg))
        {
            const ChannelSampler sampler(profile, point.array.geometry(point.m));
            const double n0 = noise_density(point.snr_db);

            std::vector<std::uint64_t> errors(cfg.trials, 0);
            parallel_trials(cfg.trials, cfg.threads, [&](std::size_t trial) {
                Rng chan_rng(trial_seed(seed, trial, channel_stream));
                const ChannelRealization chan = sampler.draw(chan_rng);

                Rng sym_rng(trial_seed(seed, trial, symbol_stream));
                const SymbolStream symbols = random_qpsk(K, sym_rng);

                const SampledWaveform tx = shape(symbols, pulse, FilterKind::transmit, guard);
                const auto x = propagate(tx, chan, pulse, n0, trial_seed(seed, trial, noise_stream));
                const DecisionRecord rec = receive(x, chan, weights, K);

                std::uint64_t e = 0;
                for (std::size_t k = 0; k < K; ++k)
                    e += rec.decided.symbols[k] != symbols.symbols[k];
                errors[trial] = e;
            });

            SerPoint sp;
            sp.x = point.x;
            sp.errors = std::accumulate(errors.begin(), errors.end(), std::uint64_t{0});
            sp.symbols = static_cast<std::uint64_t>(K) * cfg.trials;
            sp.ser = static_cast<double>(sp.errors) / static_cast<double>(sp.symbols);
            sp.ci95_halfwidth = 1.96 * std::sqrt(sp.ser * (1.0 - sp.ser) / static_cast<double>(sp.symbols));
            out.push_back(sp);
        }
        return out;
    }

    IsiValidationReport run_isi_validation(const ExperimentConfig &cfg)
    {
        validate(cfg);
        const PulseShape pulse = cfg.pulse();
        const PowerDelayProfile profile =
            quantize_delays(resolve_profile(cfg.profile, cfg.t), pulse.sample_period());
        const int window = cfg.lag_window >= 0 ? cfg.lag_window : default_lag_window(profile, pulse);
        const std::size_t guard = guard_symbols(profile, pulse) + static_cast<std::size_t>(window);
        const CombinerWeights weights = optimal_weights(profile);
        const cdouble probe = qpsk_decide({1.0, 1.0});
        const std::uint64_t seed = *cfg.seed;

        // The probe waveform does not depend on the channel
        const SampledWaveform tx = shape(SymbolStream{{probe}}, pulse, FilterKind::transmit, guard);

        IsiValidationReport report;
        report.lag_window = window;
        for (std::size_t m : cfg.m)
        {
            const ArrayGeometry geom = cfg.d_over_lambda.front().geometry(m);
            const ChannelSampler sampler(profile, geom);

            std::vector<double> isi(cfg.trials, 0.0);
            parallel_trials(cfg.trials, cfg.threads, [&](std::size_t trial) {
                Rng chan_rng(trial_seed(seed, trial, channel_stream));
                const ChannelRealization chan = sampler.draw(chan_rng);
                const auto x = propagate(tx, chan, pulse, 0.0, 0);

                std::vector<SampledWaveform> per_tap;
                per_tap.reserve(chan.tap_count());
                for (std::size_t p = 0; p < chan.tap_count(); ++p)
                    per_tap.push_back(recover_tap(x, chan, p));
                const auto response = sample_baud(combine(per_tap, weights), -window, 2 * window + 1);

                double acc = 0.0;
                for (int n = -window; n <= window; ++n)
                    if (n != 0)
                        acc += std::norm(response[static_cast<std::size_t>(n + window)] / probe);
                isi[trial] = acc;
            });

            IsiValidationRow row;
            row.m = m;
            const IsiReport closed = p_isi(profile, pulse, geom, window);
            row.p0 = closed.p0;
            row.closed_form = closed.p_isi;
            const double n = static_cast<double>(cfg.trials);
            row.empirical = std::accumulate(isi.begin(), isi.end(), 0.0) / n;
            double var = 0.0;
            for (double v : isi)
                var += (v - row.empirical) * (v - row.empirical);
            row.standard_error = cfg.trials > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
            const double scale = std::max(std::abs(row.closed_form), 1e-15);
            row.relative_error = std::abs(row.empirical - row.closed_form) <= 1e-15
                                     ? 0.0
                                     : std::abs(row.empirical - row.closed_form) / scale;
            report.rows.push_back(row);
        }
        return report;
    }

    std::string format_number(double v)
    {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        if (ec != std::errc{})
            throw std::runtime_error("number formatting failed");
        return std::string(buf, ptr);
    }

    std::string format_csv(const std::vector<SerPoint> &points)
    {
        std::string out = "x,ser,errors,symbols,ci95\n";
        for (const auto &p : points)
        {
            out += format_number(p.x);
            out += ',';
            out += format_number(p.ser);
            out += ',';
            out += std::to_string(p.errors);
            out += ',';
            out += std::to_string(p.symbols);
            out += ',';
            out += format_number(p.ci95_halfwidth);
            out += '\n';
        }
        return out;
    }

    void emit_csv(const std::vector<SerPoint> &points, const std::string &path)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        const std::string text = format_csv(points);
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f)
            throw std::runtime_error("failed writing '" + path + "'");
    }

    std::string format_isi_csv(const IsiValidationReport &report)
    {
        std::string out = "m,p0,p_isi_closed,p_isi_empirical,standard_error,relative_error\n";
        for (const auto &r : report.rows)
        {
            out += std::to_string(r.m) + ',' + format_number(r.p0) + ',' + format_number(r.closed_form) + ',' +
                   format_number(r.empirical) + ',' + format_number(r.standard_error) + ',' +
                   format_number(r.relative_error) + '\n';
        }
        return out;
    }
} // namespace lsasc
