// SPDX-License-Identifier: Apache-2.0
//
// risbeam: robust hybrid beamforming for RIS-aided mmWave links under random blockages
// Copyright (C) 2026 The risbeam authors
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

#ifndef RISBEAM_TYPES_HPP
#define RISBEAM_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace risbeam
{

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// All stochastic routines take an explicit engine. libstdc++ distributions are
// deterministic for a given engine state, which is what reproducibility needs.
using Rng = std::mt19937_64;

inline constexpr cplx kImag{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// ---- Error hierarchy ----------------------------------------------------

// Argument outside the mathematical domain of an operation (e.g. distance <= 0).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Shapes of matrices/vectors/configs do not fit together.
class StructuralError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// A projection or initialization received an input it cannot normalize
// (zero reference entry, zero channel, ...).
class DegenerateError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Caller violated an API precondition (empty sample set, T = 0, ...).
class UsageError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// A state handed to evaluation violates the feasibility constraints.
class ContractError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

// A finite sample source ran out of samples.
class SamplerExhausted : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Iterative method hit its iteration cap. Carries the last iterate.
class ConvergenceError : public std::runtime_error
{
  public:
    ConvergenceError(const std::string &what, CVector last_iterate, double last_estimate)
        : std::runtime_error(what), last_iterate_(std::move(last_iterate)), last_estimate_(last_estimate)
    {
    }

    const CVector &last_iterate() const noexcept { return last_iterate_; }
    double last_estimate() const noexcept { return last_estimate_; }

  private:
    CVector last_iterate_;
    double last_estimate_;
};

// Invalid configuration value. `key()` names the offending entry.
class ConfigError : public std::invalid_argument
{
  public:
    ConfigError(std::string key, const std::string &message)
        : std::invalid_argument("config key '" + key + "': " + message), key_(std::move(key)), message_(message)
    {
    }

    const std::string &key() const noexcept { return key_; }
    const std::string &message() const noexcept { return message_; }

  private:
    std::string key_;
    std::string message_;
};

} // namespace risbeam

#endif
