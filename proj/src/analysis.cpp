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

#include "lsasc/analysis.hpp"
#include "lsasc/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lsasc
{
    namespace
    {
        double pulse_value(const PulseShape &pulse, PulseKernel kernel, double t)
        {
            if (kernel == PulseKernel::analytic)
                return raised_cosine(t, pulse.rolloff(), pulse.symbol_period());
            return pulse.combined_at(t);
        }

        double tap_delay(const PowerDelayProfile &profile, const PulseShape &pulse, PulseKernel kernel, std::size_t l)
        {
            if (kernel == PulseKernel::analytic)
                return profile.delay(l);
            const double ts = pulse.sample_period();
            return static_cast<double>(delay_in_samples(profile.delay(l), ts)) * ts;
        }
    } // namespace

    double snr_single_tap(double sigma_p_sq, std::size_t M, double n0)
    {
        if (!(sigma_p_sq > 0.0) || M == 0 || !(n0 > 0.0))
            throw std::invalid_argument("snr_single_tap: arguments must be positive");
        return sigma_p_sq * static_cast<double>(M) / n0;
    }

    double snr_combined(const PowerDelayProfile &profile, const CombinerWeights &w, std::size_t M, double n0)
    {
        if (M == 0 || !(n0 > 0.0))
            throw std::invalid_argument("snr_combined: M and N0 must be positive");
        if (w.size() != profile.tap_count())
            throw std::invalid_argument("snr_combined: weight count does not match tap count");
        double coherent = 0.0, noise = 0.0;
        for (std::size_t p = 0; p < w.size(); ++p)
        {
            const double s2 = profile.power(p);
            const double eta = w.eta()[p];
            coherent += s2 * eta;
            noise += s2 * eta * eta;
        }
        return static_cast<double>(M) * coherent * coherent / (n0 * noise);
    }

    double trace_r_squared(const ArrayGeometry &geom)
    {
        const std::size_t M = geom.antenna_count();
        if (geom.mode() == CorrelationMode::independent)
            return static_cast<double>(M);
        const long Ml = static_cast<long>(M);
        double sum = static_cast<double>(M); // lag 0, rho = 1
        for (long m = 1; m < Ml; ++m)
        {
            const double rho = jakes_correlation(geom.separation(m));
            sum += 2.0 * rho * rho * static_cast<double>(Ml - m);
        }
        return sum;
    }

    double p0(const ArrayGeometry &geom)
    {
        const double M = static_cast<double>(geom.antenna_count());
        return trace_r_squared(geom) / (M * M);
    }

    double p0_limit(double d_over_lambda)
    {
        if (!(d_over_lambda >= 0.0) || !std::isfinite(d_over_lambda))
            throw std::invalid_argument("p0_limit: D/lambda must be finite and non-negative");
        const double k = 2.0 * std::numbers::pi * d_over_lambda;
        auto integrand = [k](double x) {
            const double j = bessel_j0(k * x);
            return j * j * (1.0 - std::abs(x));
        };
        // even integrand: fold onto [0, 1] so the kink at x = 0 sits on an endpoint
        return 2.0 * integrate(integrand, 0.0, 1.0, 0.5e-9);
    }

    cdouble impulse_response(const ChannelRealization &chan, const PulseShape &pulse, int n, PulseKernel kernel)
    {
        const auto &profile = chan.profile();
        const std::size_t L = chan.tap_count();
        const double T = pulse.symbol_period();
        cdouble f = 0.0;
        for (std::size_t l = 0; l < L; ++l)
            for (std::size_t p = 0; p < L; ++p)
            {
                const double g = pulse_value(pulse, kernel,
                                             n * T - tap_delay(profile, pulse, kernel, l) +
                                                 tap_delay(profile, pulse, kernel, p));
                if (g == 0.0)
                    continue;
                f += sample_cross_correlation(chan, l, p) * g;
            }
        return f;
    }

    int default_lag_window(const PowerDelayProfile &profile, const PulseShape &pulse)
    {
        return static_cast<int>(std::ceil(profile.max_delay() / pulse.symbol_period() - 1e-9)) + pulse.span();
    }

    IsiReport p_isi(const PowerDelayProfile &profile, const PulseShape &pulse, const ArrayGeometry &geom,
                    int lag_window, PulseKernel kernel)
    {
        if (lag_window < 0)
            throw std::invalid_argument("p_isi: lag window must be non-negative");
        IsiReport report;
        report.p0 = p0(geom);
        const std::size_t L = profile.tap_count();
        const double T = pulse.symbol_period();
        for (int n = -lag_window; n <= lag_window; ++n)
        {
            if (n == 0)
                continue;
            double acc = 0.0;
            for (std::size_t p = 0; p < L; ++p)
                for (std::size_t l = 0; l < L; ++l)
                {
                    const double g = pulse_value(pulse, kernel,
                                                 n * T - tap_delay(profile, pulse, kernel, l) +
                                                     tap_delay(profile, pulse, kernel, p));
                    acc += profile.power(p) * profile.power(l) * g * g;
                }
            const double contribution = report.p0 * acc;
            report.per_lag.push_back({n, contribution});
            report.p_isi += contribution;
        }
        return report;
    }

    double p_isi_integer_delays(const PowerDelayProfile &profile, double p0_val, double symbol_period)
    {
        if (!(p0_val > 0.0 && p0_val <= 1.0))
            throw std::invalid_argument("p_isi_integer_delays: P0 must lie in (0, 1]");
        double fourth = 0.0;
        for (std::size_t l = 0; l < profile.tap_count(); ++l)
        {
            const double ratio = profile.delay(l) / symbol_period;
            if (std::abs(ratio - std::round(ratio)) > 1e-9)
                throw ProfileError("tap " + std::to_string(l) + " delay is not a multiple of the symbol period");
            fourth += profile.power(l) * profile.power(l);
        }
        return p0_val * (1.0 - fourth);
    }
} // namespace lsasc
