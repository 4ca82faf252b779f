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

#include "lsasc/config.hpp"
#include "lsasc/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace lsasc
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> parts;
            std::size_t start = 0;
            while (true)
            {
                const auto pos = s.find(sep, start);
                parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
                if (pos == std::string_view::npos)
                    break;
                start = pos + 1;
            }
            return parts;
        }

        [[noreturn]] void bad_value(std::string_view key, std::string_view value)
        {
            throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
        }

        double parse_double(std::string_view key, std::string_view text)
        {
            text = trim(text);
            if (!text.empty() && text.front() == '+')
                text.remove_prefix(1);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || std::isnan(v))
                bad_value(key, text);
            return v;
        }

        template <typename Int>
        Int parse_int(std::string_view key, std::string_view text)
        {
            text = trim(text);
            Int v{};
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
                bad_value(key, text);
            return v;
        }

        ArraySetting parse_array_setting(std::string_view key, std::string_view text)
        {
            if (trim(text) == "independent")
                return ArraySetting{};
            const double d = parse_double(key, text);
            if (!(d >= 0.0) || !std::isfinite(d))
                bad_value(key, text);
            return ArraySetting{false, d};
        }
    } // namespace

    ExperimentKind experiment_from_name(std::string_view name)
    {
        if (name == "ser-vs-snr")
            return ExperimentKind::ser_vs_snr;
        if (name == "ser-vs-length")
            return ExperimentKind::ser_vs_length;
        if (name == "ser-vs-antennas")
            return ExperimentKind::ser_vs_antennas;
        if (name == "isi-validate")
            return ExperimentKind::isi_validate;
        if (name == "analyze")
            return ExperimentKind::analyze;
        throw ConfigError("unknown experiment '" + std::string(name) + "'");
    }

    std::string_view experiment_name(ExperimentKind kind)
    {
        switch (kind)
        {
        case ExperimentKind::ser_vs_snr:
            return "ser-vs-snr";
        case ExperimentKind::ser_vs_length:
            return "ser-vs-length";
        case ExperimentKind::ser_vs_antennas:
            return "ser-vs-antennas";
        case ExperimentKind::isi_validate:
            return "isi-validate";
        case ExperimentKind::analyze:
            return "analyze";
        }
        return "unknown";
    }

    ArrayGeometry ArraySetting::geometry(std::size_t antenna_count) const
    {
        if (independent)
            return ArrayGeometry::independent(antenna_count);
        return ArrayGeometry::jakes(antenna_count, d_over_lambda);
    }

    double ArraySetting::axis_value() const
    {
        return independent ? std::numeric_limits<double>::infinity() : d_over_lambda;
    }

    void apply_setting(ExperimentConfig &cfg, std::string_view key, std::string_view value)
    {
        key = trim(key);
        value = trim(value);
        if (key == "experiment")
            cfg.experiment = experiment_from_name(value);
        else if (key == "m")
        {
            cfg.m.clear();
            for (auto part : split(value, ','))
                cfg.m.push_back(parse_int<std::size_t>(key, part));
        }
        else if (key == "d_over_lambda")
        {
            cfg.d_over_lambda.clear();
            for (auto part : split(value, ','))
                cfg.d_over_lambda.push_back(parse_array_setting(key, part));
        }
        else if (key == "snr_db")
        {
            cfg.snr_db.clear();
            for (auto part : split(value, ','))
            {
                const double v = parse_double(key, part);
                if (v == -std::numeric_limits<double>::infinity())
                    bad_value(key, part);
                cfg.snr_db.push_back(v);
            }
        }
        else if (key == "profile")
            cfg.profile = std::string(value);
        else if (key == "beta")
            cfg.beta = parse_double(key, value);
        else if (key == "t")
            cfg.t = parse_double(key, value);
        else if (key == "q")
            cfg.q = parse_int<int>(key, value);
        else if (key == "span")
            cfg.span = parse_int<int>(key, value);
        else if (key == "symbols_per_trial")
            cfg.symbols_per_trial = parse_int<std::size_t>(key, value);
        else if (key == "trials")
            cfg.trials = parse_int<std::size_t>(key, value);
        else if (key == "seed")
            cfg.seed = parse_int<std::uint64_t>(key, value);
        else if (key == "output_path")
            cfg.output_path = std::string(value);
        else if (key == "threads")
            cfg.threads = parse_int<unsigned>(key, value);
        else if (key == "lag_window")
            cfg.lag_window = parse_int<int>(key, value);
        else if (key == "on_grid")
        {
            if (value == "true" || value == "1")
                cfg.on_grid = true;
            else if (value == "false" || value == "0")
                cfg.on_grid = false;
            else
                bad_value(key, value);
        }
        else
            throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    }

    void apply_config_text(ExperimentConfig &cfg, std::string_view text, std::string_view source)
    {
        std::size_t line_no = 0;
        for (auto line : split(text, '\n'))
        {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = trim(line.substr(0, hash));
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": expected 'key = value'");
            try
            {
                apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
    }

    void load_config_file(ExperimentConfig &cfg, const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        apply_config_text(cfg, buf.str(), path);
    }

    void validate(const ExperimentConfig &cfg)
    {
        if (cfg.m.empty() || cfg.d_over_lambda.empty() || cfg.snr_db.empty())
            throw ConfigError("m, d_over_lambda and snr_db need at least one value");
        for (auto m : cfg.m)
            if (m == 0)
                throw ConfigError("m must be positive");
        for (const auto &d : cfg.d_over_lambda)
            for (auto m : cfg.m)
                if (!d.independent && m < 2)
                    throw ConfigError("a correlated array needs m >= 2");
        if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0))
            throw ConfigError("beta must lie in [0, 1]");
        if (!(cfg.t > 0.0) || !std::isfinite(cfg.t))
            throw ConfigError("t must be positive");
        if (cfg.q < 2)
            throw ConfigError("q must be at least 2");
        if (cfg.span < 4)
            throw ConfigError("span must be at least 4");
        if (cfg.symbols_per_trial == 0 || cfg.trials == 0)
            throw ConfigError("symbols_per_trial and trials must be positive");
        if (cfg.threads == 0)
            throw ConfigError("threads must be positive");

        // which axes may carry more than one value
        bool m_swept = false, d_swept = false, snr_swept = false;
        switch (cfg.experiment)
        {
        case ExperimentKind::ser_vs_snr:
            snr_swept = true;
            break;
        case ExperimentKind::ser_vs_length:
            d_swept = true;
            break;
        case ExperimentKind::ser_vs_antennas:
        case ExperimentKind::isi_validate:
        case ExperimentKind::analyze:
            m_swept = true;
            break;
        }
        if (!m_swept && cfg.m.size() > 1)
            throw ConfigError(std::string(experiment_name(cfg.experiment)) + ": m must be a single value");
        if (!d_swept && cfg.d_over_lambda.size() > 1)
            throw ConfigError(std::string(experiment_name(cfg.experiment)) + ": d_over_lambda must be a single value");
        if (!snr_swept && cfg.snr_db.size() > 1)
            throw ConfigError(std::string(experiment_name(cfg.experiment)) + ": snr_db must be a single value");

        if (cfg.experiment != ExperimentKind::analyze && !cfg.seed)
            throw ConfigError("a seed is required (config key 'seed' or --seed)");

        try
        {
            (void)resolve_profile(cfg.profile, cfg.t);
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            throw ConfigError(std::string("profile: ") + e.what());
        }
    }

    PowerDelayProfile resolve_profile(const std::string &name, double symbol_period)
    {
        if (name == "etu")
            return etu_profile();
        if (name.rfind("uniform-", 0) == 0)
        {
            const auto n = parse_int<std::size_t>("profile", std::string_view(name).substr(8));
            if (n == 0)
                bad_value("profile", name);
            return uniform_profile(n, symbol_period);
        }
        if (name.find(':') == std::string::npos)
            throw ConfigError("unknown profile '" + name + "' (expected etu, uniform-N or a delay_ns:power_db table)");

        std::vector<RawTap> raw;
        for (auto entry : split(name, ','))
        {
            const auto colon = entry.find(':');
            if (colon == std::string_view::npos)
                bad_value("profile", entry);
            raw.push_back({parse_double("profile", entry.substr(0, colon)) * 1e-9,
                           parse_double("profile", entry.substr(colon + 1))});
        }
        try
        {
            return normalize_profile(raw);
        }
        catch (const ProfileError &e)
        {
            throw ConfigError(std::string("profile: ") + e.what());
        }
    }
} // namespace lsasc
