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

#ifndef RISBEAM_OPTIMIZER_HPP
#define RISBEAM_OPTIMIZER_HPP

#include "risbeam/channel.hpp"
#include "risbeam/config.hpp"
#include "risbeam/surrogate.hpp"
#include "risbeam/types.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace risbeam
{

// ---- Projections -----------------------------------------------------------

/// Rescales Z onto the power boundary: Z * sqrt(P_max) / ||A Z||_F.
/// Throws DegenerateError when A Z = 0.
CMatrix project_d(const CMatrix &z, const CMatrix &a, double p_max);

/// Entrywise exp(j arg Z). Zero entries map to 1.
CMatrix project_a(const CMatrix &z);

/// exp(j arg(z / z_last)) with the last entry set to exactly 1.
/// Throws DegenerateError when z_last = 0.
CVector project_e(const CVector &z);

// ---- Initialization --------------------------------------------------------

struct InitEResult
{
    CVector e;
    std::vector<double> objective;  // sum_k ||e^H H_k||^2 per iterate, starting at e = 1
    int iterations = 0;
};

/// Minorize-maximize iterations for max_e sum_k ||e^H H_k^(0)||^2 over the
/// reflection set, starting from the all-ones vector:
///   e <- exp(j arg(P e / [P e]_last)),  P = sum_k H_k H_k^H.
/// Stops when the relative objective change drops below `tol`.
InitEResult init_e(const ChannelSample &h0, int max_mm_iters = 100, double tol = 1e-9);

/// Column i < K is exp(j arg(H_i^H e0)). Extra RF chains (N_RF > K) get
/// uniformly random phases drawn from `rng`.
CMatrix init_a(const ChannelSample &h0, const CVector &e0, int n_rf, Rng &rng);

/// Matched filter d_k = A^H H_k^H e, jointly scaled to ||A D||_F^2 = P_max.
CMatrix init_d(const ChannelSample &h0, const CMatrix &a0, const CVector &e0, double p_max);

/// init_e -> init_a -> init_d on the unblocked channel of `geo`.
BeamformingState initialize_state(const SystemConfig &config, const GeometricChannel &geo, Rng &rng,
                                  int max_mm_iters = 100, double mm_tol = 1e-9);

// ---- Step sizes ------------------------------------------------------------

enum class StepKind
{
    constant,
    inverse_t
};

struct StepSchedule
{
    StepKind kind = StepKind::inverse_t;
    double alpha0 = 0.05;
    double tau = 2000.0;
    std::optional<double> lipschitz_cap;  // L; caps every step at 1/L
};

/// constant: min(alpha0, 1/L); inverse_t: min(alpha0 / (1 + t / tau), 1/L).
double step_size(const StepSchedule &schedule, long t);

// ---- Sample sources --------------------------------------------------------

class SampleSource
{
  public:
    virtual ~SampleSource() = default;
    virtual ChannelSample next(Rng &rng) = 0;
};

// Fresh blockage draw of a fixed geometry per call (an unbounded training set).
class BlockageSampler final : public SampleSource
{
  public:
    BlockageSampler(const GeometricChannel &geo, RMatrix p_block);
    ChannelSample next(Rng &rng) override;

  private:
    EquivalentChannelBuilder builder_;
    RMatrix p_block_;
};

// Draws from a finite training set, uniformly with replacement or in order.
class TrainingSetSampler final : public SampleSource
{
  public:
    enum class Order
    {
        uniform,
        sequential
    };

    explicit TrainingSetSampler(std::vector<ChannelSample> samples, Order order = Order::uniform);
    ChannelSample next(Rng &rng) override;

  private:
    std::vector<ChannelSample> samples_;
    Order order_;
    std::size_t cursor_ = 0;
};

// Always returns the same channel (deterministic problem).
class FixedSampler final : public SampleSource
{
  public:
    explicit FixedSampler(ChannelSample sample) : sample_(std::move(sample)) {}
    ChannelSample next(Rng &) override { return sample_; }

  private:
    ChannelSample sample_;
};

// ---- Main loop -------------------------------------------------------------

struct StopCriteria
{
    long t_max = 100000;
    long window = 500;
    double tol = 1e-4;
};

struct BlockMask
{
    bool d = true;
    bool a = true;
    bool e = true;
};

struct BsgdOptions
{
    StepSchedule schedule;
    StopCriteria stop;
    long log_stride = 100;
    BlockMask blocks;
    bool check_feasibility = true;
};

struct TraceRecord
{
    long t = 0;
    double objective_rolling = 0.0;
    double grad_norm_d = 0.0;
    double grad_norm_a = 0.0;
    double grad_norm_e = 0.0;
    double alpha = 0.0;
};

struct RunTrace
{
    std::vector<TraceRecord> records;
    std::vector<double> window_means;  // mean per-sample objective of each complete window
    long iterations = 0;
    bool converged = false;
};

/// CSV with header `t,objective_rolling,grad_norm_d,grad_norm_a,grad_norm_e,alpha`.
void write_trace_csv(const RunTrace &trace, std::ostream &out);

struct BsgdResult
{
    BeamformingState state;
    RunTrace trace;
};

/// Block stochastic projected gradient descent on the smooth-hinge outage
/// surrogate. Each iteration draws one channel sample and updates D, A and e
/// in that order, each step using the freshest values of the other blocks.
/// After the A step, D is rescaled to the power boundary under the new A so
/// that every iterate is feasible. Stops when consecutive window means of the
/// per-sample objective differ by less than stop.tol (relative) or at t_max.
BsgdResult bsgd_outmin(const SurrogateParams &params, double p_max, BeamformingState initial, SampleSource &sampler,
                       const BsgdOptions &options, Rng &rng);

/// Convenience overload: initializes from the unblocked channel and trains
/// against fresh blockage draws of `geo` under config.p_block.
BsgdResult bsgd_outmin(const SystemConfig &config, const GeometricChannel &geo, const BsgdOptions &options,
                       Rng &rng);

} // namespace risbeam

#endif
