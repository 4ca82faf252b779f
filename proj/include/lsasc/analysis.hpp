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

#ifndef LSASC_ANALYSIS_HPP
#define LSASC_ANALYSIS_HPP

#include "lsasc/channel.hpp"
#include "lsasc/receiver.hpp"
#include "lsasc/waveform.hpp"

#include <cstddef>
#include <vector>

namespace lsasc
{
    struct LagPower
    {
        int lag;
        double power;
    };

    // Residual-ISI breakdown. p_isi equals the sum of per_lag (lag 0 excluded).
    struct IsiReport
    {
        double p_isi = 0.0;
        double p0 = 0.0;
        std::vector<LagPower> per_lag;
    };

    // Which pulse g(t) an evaluator uses: the ideal raised cosine, or the
    // truncated discrete cascade the simulator actually applies (delays then
    // snap to the sample grid).
    enum class PulseKernel
    {
        analytic,
        discrete,
    };

    // sigma_p^2 M / N0
    double snr_single_tap(double sigma_p_sq, std::size_t M, double n0);

    // M (sum sigma_p^2 eta_p)^2 / (N0 sum sigma_p^2 eta_p^2)
    double snr_combined(const PowerDelayProfile &profile, const CombinerWeights &w, std::size_t M, double n0);

    // tr{R^2} via the Toeplitz lag sum; M for independent channels
    double trace_r_squared(const ArrayGeometry &geom);

    // tr{R^2} / M^2
    double p0(const ArrayGeometry &geom);

    // Large-array limit of p0 at fixed D/lambda: integral over [-1, 1] of
    // J0^2(2 pi x D/lambda) (1 - |x|) dx, by adaptive quadrature to 1e-9
    double p0_limit(double d_over_lambda);

    // f[n] = (1/M) sum_l sum_p alpha^H[p] alpha[l] g(nT - tau_l + tau_p) for one realization
    cdouble impulse_response(const ChannelRealization &chan, const PulseShape &pulse, int n,
                             PulseKernel kernel = PulseKernel::analytic);

    // ceil(tau_max / T) + span
    int default_lag_window(const PowerDelayProfile &profile, const PulseShape &pulse);

    // Ensemble residual-ISI power:
    // P0 * sum_{0 < |n| <= lag_window} sum_p sum_l sigma_p^2 sigma_l^2 g^2(nT - tau_l + tau_p)
    IsiReport p_isi(const PowerDelayProfile &profile, const PulseShape &pulse, const ArrayGeometry &geom,
                    int lag_window, PulseKernel kernel = PulseKernel::analytic);

    // P0 (1 - sum_l sigma_l^4), valid when every delay is a multiple of T.
    // Throws ProfileError for a non-integer delay.
    double p_isi_integer_delays(const PowerDelayProfile &profile, double p0_val, double symbol_period);
} // namespace lsasc

#endif
