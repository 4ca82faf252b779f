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

#ifndef LSASC_CONFIG_HPP
#define LSASC_CONFIG_HPP

#include "lsasc/channel.hpp"
#include "lsasc/waveform.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lsasc
{
    enum class ExperimentKind
    {
        ser_vs_snr,
        ser_vs_length,
        ser_vs_antennas,
        isi_validate,
        analyze,
    };

    ExperimentKind experiment_from_name(std::string_view name);
    std::string_view experiment_name(ExperimentKind kind);

    // One value of the d_over_lambda axis: a finite D/lambda for a correlated
    // ULA, or the independent-channel reference
    struct ArraySetting
    {
        bool independent = true;
        double d_over_lambda = 0.0;

        ArrayGeometry geometry(std::size_t antenna_count) const;
        // Swept-axis value: D/lambda, or +inf for the independent reference
        double axis_value() const;
    };

    // Flat experiment description. Config files use these member names as keys.
    struct ExperimentConfig
    {
        ExperimentKind experiment = ExperimentKind::ser_vs_snr;
        std::vector<std::size_t> m = {100};
        std::vector<ArraySetting> d_over_lambda = {ArraySetting{}};
        std::vector<double> snr_db = {-10.0}; // E_s/N0 per antenna; +inf means noiseless
        std::string profile = "etu";
        double beta = 0.25;
        double t = 0.2e-6;
        int q = 2;
        int span = 16;
        std::size_t symbols_per_trial = 1000;
        std::size_t trials = 100;
        std::optional<std::uint64_t> seed;
        std::string output_path;
        unsigned threads = 1;
        int lag_window = -1; // -1: default_lag_window
        bool on_grid = false; // analyze: evaluate with delays snapped to the T/q grid

        PulseShape pulse() const { return PulseShape(beta, t, span, q); }
    };

    // Sets one field from its textual value; throws ConfigError for unknown
    // keys or unparsable values. List-valued keys take comma-separated values.
    void apply_setting(ExperimentConfig &cfg, std::string_view key, std::string_view value);

    // `key = value` lines, `#` starts a comment
    void apply_config_text(ExperimentConfig &cfg, std::string_view text, std::string_view source = "<config>");
    void load_config_file(ExperimentConfig &cfg, const std::string &path);

    // Exactly one swept axis (the experiment's), positive counts, mandatory seed
    // for simulations. Throws ConfigError.
    void validate(const ExperimentConfig &cfg);

    // "etu", "uniform-N" (N equal taps spaced T apart) or an inline table
    // "delay_ns:power_db, delay_ns:power_db, ..."
    PowerDelayProfile resolve_profile(const std::string &name, double symbol_period);
} // namespace lsasc

#endif
