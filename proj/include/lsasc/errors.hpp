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

#ifndef LSASC_ERRORS_HPP
#define LSASC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lsasc
{
    // Argument outside the mathematical domain of a function (NaN, inf, ...)
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Adaptive quadrature ran out of subdivisions; carries the best estimate reached
    class ConvergenceError : public std::runtime_error
    {
    public:
        ConvergenceError(const std::string &what, double estimate, double error_estimate)
            : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

        double estimate() const noexcept { return estimate_; }
        double error_estimate() const noexcept { return error_estimate_; }

    private:
        double estimate_;
        double error_estimate_;
    };

    class NotPositiveSemidefiniteError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed power delay profile (ordering, powers, empty)
    class ProfileError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Waveforms that must share a sample grid do not, or a shift leaves the framed window
    class GridError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Invalid experiment configuration or command line; maps to exit code 1
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };
} // namespace lsasc

#endif
