// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "swiptsec/channel.hpp"

namespace swiptsec::verify {

enum class OracleKind { secrecy_max, power_min, energy_max };

struct OracleSteps {
  int p_steps = 200;
  int theta_steps = 180;
  int phi_steps = 180;
  int refine_passes = 2;  // local grid refinement around the incumbent
};

struct AnOracleSteps {
  int angle_steps = 36;   // per angle coordinate (four of them)
  int refine_passes = 2;
};

struct OracleResult {
  bool found = false;
  double objective = 0.0;
  double p = 0.0, theta = 0.0, phi = 0.0;      // no-AN argument
  double q = 0.0, v = 0.0;                      // AN argument (amplitudes)
  double theta_a = 0.0, phi_a = 0.0, theta_b = 0.0, phi_b = 0.0;
  double grid_resolution = 0.0;                 // final step size (radians)
};

/// Exhaustive grid search over w = sqrt(p) [cos th, sin th e^{j ph}] at
/// N_T = 2 (exhaustive up to a global phase), evaluating the exact metrics.
/// Throws std::invalid_argument unless ch.n_t() == 2.
OracleResult grid_oracle_no_an(OracleKind kind, const ChannelSet& ch,
                               const SystemParams& params,
                               const OracleSteps& steps = {});

/// Grid over unit directions a, b with Q = q aa^H, W = v bb^H (rank-one
/// restriction); the best (q, v) per direction comes from exact vertex
/// enumeration of the 2-D constraint polygon. Returns the best worst-case
/// user SINR subject to the fixed-t eavesdropper rows, power caps and EH
/// floors. Throws unless ch.n_t() == 2.
OracleResult grid_oracle_an(double t, const ChannelSet& ch,
                            const SystemParams& params,
                            const AnOracleSteps& steps = {});

struct CertificationReport {
  int samples = 0;
  double worst_rate = 0.0;
  double worst_energy = 0.0;
  int violations = 0;
  double min_margin = 0.0;
};

/// Re-evaluates the exact metrics of a fixed solution over sampled channel
/// perturbations (every other draw scaled to the ball boundary) and counts
/// violations below (R - 1e-3, E_l - 1e-3).
CertificationReport certify_robust(const BeamformerSolution& sol,
                                   const UncertaintyModel& um, double R,
                                   const std::vector<double>& E_targets,
                                   int samples, std::uint64_t seed);

/// Rank-relaxed secrecy-rate maximization (bisection over the SDR power
/// minimization) followed by dominant-eigenvector extraction plus Gaussian
/// randomization; returns the achieved rate of the best extracted vector.
double sdr_cross_check(const ChannelSet& ch, const SystemParams& params);

/// Post-hoc audit of a solution against explicit targets using only the
/// channel-module metrics. Returns true when rate >= R - 1e-4, every energy
/// >= E_l - 1e-6 and the spent power is within budget + 1e-7.
bool audit_solution(const BeamformerSolution& sol, const ChannelSet& ch,
                    double R, const std::vector<double>& E_targets, double P);

}  // namespace swiptsec::verify
