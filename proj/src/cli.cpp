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

#include "lsasc/cli.hpp"
#include "lsasc/analysis.hpp"
#include "lsasc/config.hpp"
#include "lsasc/errors.hpp"
#include "lsasc/experiment.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>

namespace lsasc
{
    namespace
    {
        struct Overrides
        {
            std::string config_path;
            std::map<std::string, std::string> values; // config key -> raw value
            bool independent = false;
            bool on_grid = false;
        };

        void add_common_options(CLI::App &cmd, Overrides &ov)
        {
            auto value = [&](const std::string &flag, const std::string &key, const std::string &help) {
                cmd.add_option_function<std::string>(
                    flag, [&ov, key](const std::string &v) { ov.values[key] = v; }, help);
            };
            cmd.add_option("--config", ov.config_path, "Config file (key = value lines)");
            value("--seed", "seed", "Master random seed (u64)");
            value("--out", "output_path", "Output CSV path");
            value("--m", "m", "Antenna count, or comma-separated sweep");
            value("--d-over-lambda", "d_over_lambda", "Normalized array length D/lambda (list, 'independent' allowed)");
            value("--snr-db", "snr_db", "E_s/N0 per antenna in dB (list, 'inf' = noiseless)");
            value("--profile", "profile", "etu | uniform-N | delay_ns:power_db,...");
            value("--beta", "beta", "Roll-off factor");
            value("--t", "t", "Symbol period in seconds");
            value("--q", "q", "Oversampling factor");
            value("--span", "span", "One-sided filter span in symbols");
            value("--symbols", "symbols_per_trial", "Symbols per trial");
            value("--trials", "trials", "Trials (channel realizations) per point");
            value("--threads", "threads", "Worker threads");
            value("--lag-window", "lag_window", "ISI lag window (default ceil(tau_max/T) + span)");
            cmd.add_flag("--independent", ov.independent, "Spatially independent channels");
            cmd.add_flag("--on-grid", ov.on_grid, "analyze: snap tap delays to the T/q grid");
        }

        ExperimentConfig build_config(ExperimentKind kind, const Overrides &ov)
        {
            ExperimentConfig cfg;
            if (!ov.config_path.empty())
                load_config_file(cfg, ov.config_path);
            cfg.experiment = kind;
            for (const auto &[key, v] : ov.values)
                apply_setting(cfg, key, v);
            if (ov.independent)
                cfg.d_over_lambda = {ArraySetting{}};
            if (ov.on_grid)
                cfg.on_grid = true;
            validate(cfg);
            return cfg;
        }

        void print_ser(std::ostream &out, const ExperimentConfig &cfg, const std::vector<SerPoint> &points)
        {
            out << experiment_name(cfg.experiment) << ": profile=" << cfg.profile << " seed=" << *cfg.seed
                << " symbols/point=" << cfg.symbols_per_trial * cfg.trials << "\n";
            out << std::setw(12) << "x" << std::setw(14) << "ser" << std::setw(10) << "errors"
                << std::setw(12) << "symbols" << std::setw(14) << "ci95" << "\n";
            for (const auto &p : points)
            {
                out << std::setw(12) << format_number(p.x) << ' ' << std::setw(13) << format_number(p.ser) << ' '
                    << std::setw(9) << p.errors << ' ' << std::setw(11) << p.symbols << ' ' << std::setw(13)
                    << std::setprecision(4) << p.ci95_halfwidth << std::setprecision(6)
                    << (p.unreliable() ? "  unreliable" : "") << "\n";
            }
        }

        void print_isi(std::ostream &out, const IsiValidationReport &report)
        {
            out << "isi-validate: lag window " << report.lag_window << "\n";
            out << std::setw(8) << "M" << std::setw(14) << "P0" << std::setw(16) << "P_ISI closed"
                << std::setw(16) << "P_ISI sim" << std::setw(14) << "std err" << std::setw(12) << "rel err"
                << "\n";
            for (const auto &r : report.rows)
            {
                out << std::setw(8) << r.m << std::setw(14) << format_number(r.p0) << std::setw(16)
                    << r.closed_form << std::setw(16) << r.empirical << std::setw(14) << r.standard_error
                    << std::setw(12) << r.relative_error << "\n";
            }
        }

        void run_analyze(std::ostream &out, const ExperimentConfig &cfg)
        {
            const PulseShape pulse = cfg.pulse();
            PowerDelayProfile profile = resolve_profile(cfg.profile, cfg.t);
            if (cfg.on_grid)
                profile = quantize_delays(profile, pulse.sample_period());
            const int window = cfg.lag_window >= 0 ? cfg.lag_window : default_lag_window(profile, pulse);
            const ArraySetting &array = cfg.d_over_lambda.front();

            out << "profile " << cfg.profile << (cfg.on_grid ? " (delays on T/q grid)" : "") << ": "
                << profile.tap_count() << " taps\n";
            for (const auto &t : profile.taps())
                out << "  tau = " << t.delay_s * 1e9 << " ns  sigma^2 = " << t.power << "\n";
            out << "beta = " << cfg.beta << "  T = " << format_number(cfg.t) << " s  lag window = " << window
                << "\n";
            if (array.independent)
                out << "channels: spatially independent\n";
            else
            {
                out << "channels: Jakes-correlated ULA, D/lambda = " << format_number(array.d_over_lambda) << "\n";
                out << "P0 limit (M -> inf) = " << p0_limit(array.d_over_lambda) << "\n";
            }

            for (std::size_t m : cfg.m)
            {
                const ArrayGeometry geom = array.geometry(m);
                const IsiReport report = p_isi(profile, pulse, geom, window);
                out << "\nM = " << m << "\n";
                out << "P0 = " << format_number(report.p0) << "\n";
                const double n0 = noise_density(cfg.snr_db.front());
                if (n0 > 0.0)
                    out << "SNR (equal weights) = "
                        << 10.0 * std::log10(snr_combined(profile, optimal_weights(profile), m, n0)) << " dB\n";
                out << "P_ISI = " << report.p_isi << "\n";
                out << std::setw(8) << "lag" << std::setw(16) << "P_ISI[n]" << "\n";
                for (const auto &lp : report.per_lag)
                    if (lp.power > 1e-6 * report.p_isi)
                        out << std::setw(8) << lp.lag << std::setw(16) << lp.power << "\n";
            }
        }
    } // namespace

    int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Single-carrier uplink simulator for large-scale antenna arrays", "lsasc"};
        app.require_subcommand(1);

        struct Command
        {
            const char *name;
            const char *help;
            ExperimentKind kind;
        };
        const Command commands[] = {
            {"ser-vs-snr", "SER versus E_s/N0 sweep", ExperimentKind::ser_vs_snr},
            {"ser-vs-length", "SER versus array length D/lambda", ExperimentKind::ser_vs_length},
            {"ser-vs-antennas", "SER versus antenna count", ExperimentKind::ser_vs_antennas},
            {"isi-validate", "Closed-form residual ISI against simulation", ExperimentKind::isi_validate},
            {"analyze", "Closed-form P0 / residual ISI tables, no simulation", ExperimentKind::analyze},
        };
        std::vector<Overrides> overrides(std::size(commands));
        std::vector<CLI::App *> subs;
        for (std::size_t i = 0; i < std::size(commands); ++i)
        {
            auto *sub = app.add_subcommand(commands[i].name, commands[i].help);
            add_common_options(*sub, overrides[i]);
            subs.push_back(sub);
        }

        if (argc <= 1)
        {
            err << app.help();
            return 1;
        }
        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return 0;
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what() << "\n\n" << app.help();
            return 1;
        }

        std::size_t which = 0;
        while (which < subs.size() && !subs[which]->parsed())
            ++which;
        if (which == subs.size())
        {
            err << app.help();
            return 1;
        }

        ExperimentConfig cfg;
        try
        {
            cfg = build_config(commands[which].kind, overrides[which]);
        }
        catch (const ConfigError &e)
        {
            err << "config error: " << e.what() << "\n";
            return 1;
        }

        try
        {
            switch (cfg.experiment)
            {
            case ExperimentKind::analyze:
                run_analyze(out, cfg);
                break;
            case ExperimentKind::isi_validate:
            {
                const auto report = run_isi_validation(cfg);
                print_isi(out, report);
                if (!cfg.output_path.empty())
                {
                    std::ofstream f(cfg.output_path, std::ios::binary | std::ios::trunc);
                    if (!f)
                        throw std::runtime_error("cannot open '" + cfg.output_path + "' for writing");
                    f << format_isi_csv(report);
                }
                break;
            }
            default:
            {
                const auto points = run_ser_experiment(cfg);
                print_ser(out, cfg, points);
                if (!cfg.output_path.empty())
                    emit_csv(points, cfg.output_path);
                break;
            }
            }
        }
        catch (const ConfigError &e)
        {
            err << "config error: " << e.what() << "\n";
            return 1;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << "\n";
            return 2;
        }
        return 0;
    }
} // namespace lsasc
