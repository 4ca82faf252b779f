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

#ifndef LSASC_EXPERIMENT_HPP
#define LSASC_EXPERIMENT_HPP

#include "lsasc/config.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lsasc
{
    // One ordinate of an SER curve
    struct SerPoint
    {
        double x = 0.0; // swept value: E_s/N0 in dB, D/lambda (inf = independent) or M
        double ser = 0.0;
        std::uint64_t errors = 0;
        std::uint64_t symbols = 0;
        double ci95_halfwidth = 0.0;

        // Fewer than 20 errors: too few for the normal-approximation interval
        bool unreliable() const noexcept { return errors < 20; }
    };

    // N0 for a per-antenna E_s/N0 in dB (E_s = 1); zero for +inf
    double noise_density(double snr_db);

    // Guard symbols each side of a burst: span + ceil(tau_max / T)
    std::size_t guard_symbols(const PowerDelayProfile &profile, const PulseShape &pulse);

    // Monte Carlo SER sweep along the experiment's axis. Every swept point
    // reuses the same per-trial seeds, so points are paired.
    std::vector<SerPoint> run_ser_experiment(const ExperimentConfig &cfg);

    struct IsiValidationRow
    {
        std::size_t m = 0;
        double p0 = 0.0;
        double closed_form = 0.0;
        double empirical = 0.0;
        double standard_error = 0.0; // of the empirical mean
        double relative_error = 0.0; // |empirical - closed_form| / closed_form, 0 when both vanish
    };

    struct IsiValidationReport
    {
        int lag_window = 0;
        std::vector<IsiValidationRow> rows;
    };

    // Per M in cfg.m: closed-form residual ISI on the grid-snapped profile vs
    // the ensemble mean over `trials` channel draws of sum_{n != 0} |f[n]|^2,
    // where f is the receiver's baud-spaced response to a single-symbol probe.
    IsiValidationReport run_isi_validation(const ExperimentConfig &cfg);

    // Header `x,ser,errors,symbols,ci95`, one row per point, LF endings,
    // shortest round-trip number formatting. Throws std::runtime_error naming the path.
    void emit_csv(const std::vector<SerPoint> &points, const std::string &path);
    std::string format_csv(const std::vector<SerPoint> &points);

    std::string format_isi_csv(const IsiValidationReport &report);

    // Shortest representation that parses back to the same double
    std::string format_number(double v);
} // namespace lsasc

#endif
