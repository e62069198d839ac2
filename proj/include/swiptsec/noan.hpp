// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <utility>
#include <vector>

#include "swiptsec/channel.hpp"
#include "swiptsec/conic/program.hpp"

namespace swiptsec::noan {

struct Options {
  double sca_tol = 1e-5;        // stop when the linearization point settles
  int sca_max_iter = 50;
  double bisect_tol = 1e-3;     // bits
  int bisect_max_iter = 30;
  int tau_grid = 200;           // outer one-dimensional search resolution
  conic::SolveOptions solver;
};

/// Successive-convex-approximation bookkeeping; objective_trace is monotone
/// (nonincreasing for minimization, nondecreasing for maximization).
struct ScaState {
  std::vector<Eigen::Vector2d> u;  // per-EH linearization points [x_l, y_l]
  double t2 = 0.0;                 // robust power-min slack point
  double t3 = 0.0;                 // robust energy-max slack point
  int iteration = 0;
  std::vector<double> objective_trace;
};

/// Transmit power minimization under per-eavesdropper secrecy-rate LMIs and
/// SCA-linearized harvested-energy constraints.
BeamformerSolution power_min(double R, const ChannelSet& ch,
                             const SystemParams& params,
                             const Options& opts = {},
                             ScaState* state = nullptr);

/// Secrecy-rate maximization by bisection over the power-minimization
/// problem: feasible target rates keep the returned power within budget.
BeamformerSolution max_secrecy_rate_bisection(const ChannelSet& ch,
                                              const SystemParams& params,
                                              const Options& opts = {});

/// Worst-user harvested-energy maximization at a fixed secrecy-rate target.
BeamformerSolution max_harvested_energy(double R, const ChannelSet& ch,
                                        const SystemParams& params,
                                        const Options& opts = {},
                                        ScaState* state = nullptr);

/// Robust power minimization under norm-ball channel uncertainty: Nemirovski
/// blocks for the eavesdroppers, an SCA-linearized sqrt slack for the user
/// side, and conservative real-part rows for the EH receivers.
BeamformerSolution robust_power_min(double R, const UncertaintyModel& um,
                                    const SystemParams& params,
                                    const Options& opts = {},
                                    ScaState* state = nullptr);

/// Robust worst-case energy maximization: one-dimensional search over the
/// user-SNR slack tau with an inner SCA per grid point. When f_curve is
/// given it receives (tau, f(tau)) for every feasible grid point.
BeamformerSolution robust_max_energy(
    double R, const UncertaintyModel& um, const SystemParams& params,
    const Options& opts = {}, ScaState* state = nullptr,
    std::vector<std::pair<double, double>>* f_curve = nullptr);

/// Rate bracket used by the bisection (and by tests for the invariant).
double rate_upper_bound(const ChannelSet& ch, double P);

}  // namespace swiptsec::noan
