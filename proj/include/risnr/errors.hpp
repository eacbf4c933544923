// SPDX-License-Identifier: Apache-2.0
//
// risnr - SNR statistics of RIS-aided MIMO links under fading and phase noise
// Copyright (C) 2026 The risnr authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace risnr {

// A parameter is outside its admissible domain (epsilon not in (0,1], kappa <= 0, N < N_T, ...).
class ParameterDomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operation was called with a SystemConfig of the wrong channel kind.
class ConfigMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Matrix or vector dimensions are inconsistent.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numeric quantity left its domain (zero mean, degenerate fit, ...).
class NumericDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Moment matching is impossible because the variance is zero.
class DegenerateFitError : public NumericDomainError {
public:
    using NumericDomainError::NumericDomainError;
};

// Closed forms that require s1 = 0 were asked for an asymmetric phase-noise law.
class UnsupportedRegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Quadrature did not reach its accuracy target. Carries the best estimate obtained.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string &what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate)
    {
    }
    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

} // namespace risnr
