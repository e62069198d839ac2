// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace swiptsec {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Channels of one network realization: legitimate user, K eavesdroppers,
/// L energy-harvesting receivers, plus receiver noise powers.
struct ChannelSet {
  CVec h_s;                 // user channel, length n_t
  std::vector<CVec> h_e;    // eavesdropper channels
  std::vector<CVec> h_p;    // EH-receiver channels
  double sigma_s2 = 1.0;    // user noise power
  double sigma_e2 = 1.0;    // eavesdropper noise power

  int n_t() const { return static_cast<int>(h_s.size()); }
  int num_eves() const { return static_cast<int>(h_e.size()); }
  int num_eh() const { return static_cast<int>(h_p.size()); }

  // Throws std::invalid_argument on dimension/positivity violations.
  void validate() const;
};

/// Worst-case (norm-ball) uncertainty around an estimated ChannelSet.
struct UncertaintyModel {
  ChannelSet nominal;
  double eps_s = 0.0;            // user-channel error radius
  std::vector<double> eps_e;     // per-eavesdropper radii
  std::vector<double> eps_l;     // per-EH-receiver radii
  std::vector<double> eps_a;     // per-antenna PSD-matrix radii (Frobenius)

  void validate() const;

  /// Degenerate model (all radii zero) around a given channel set.
  static UncertaintyModel exact(const ChannelSet& ch);
  /// All channel radii set to eps, per-antenna radii to eps_antenna.
  static UncertaintyModel uniform(const ChannelSet& ch, double eps,
                                  double eps_antenna);
};

/// Problem parameters: power budgets and service targets, linear units.
struct SystemParams {
  int n_t = 1;
  double P = 0.0;                 // total transmit power
  std::vector<double> p_i;        // per-antenna budgets (empty = unbounded)
  std::vector<double> E_targets;  // minimum harvested energy per EH receiver
  double R_target = 0.0;          // secrecy-rate target, bits

  void validate() const;
};

enum class SolverStatus { optimal, infeasible, max_iter, numerical_failure };

const char* to_string(SolverStatus s);

/// Either a beamforming vector (no AN) or a covariance pair (with AN),
/// together with the metrics achieved on the design channels.
struct BeamformerSolution {
  enum class Kind { vector, covariance_pair };
  Kind kind = Kind::vector;

  CVec w;     // present iff kind == vector
  CMat Q_s;   // present iff kind == covariance_pair
  CMat W;     // present iff kind == covariance_pair

  double achieved_rate = 0.0;             // bits
  std::vector<double> achieved_energy;    // per EH receiver
  SolverStatus solver_status = SolverStatus::numerical_failure;
  int iterations = 0;

  static BeamformerSolution from_vector(CVec w);
  static BeamformerSolution from_covariances(CMat Q_s, CMat W);
};

/// i.i.d. CSCG channels with unit variance per complex entry
/// (real/imag parts independent N(0, 1/2)); noise powers set to 1.
/// Deterministic for a fixed seed.
ChannelSet generate_channels(int n_t, int K, int L, std::uint64_t seed);

/// Secrecy rate in bits, clamped at zero. Vector and covariance-pair
/// solutions are both supported; logarithms are base 2.
double secrecy_rate(const BeamformerSolution& sol, const ChannelSet& ch);

/// Harvested energy per EH receiver: |h_l^H w|^2, or h_l^H (Q_s + W) h_l.
std::vector<double> harvested_energy(const BeamformerSolution& sol,
                                     const ChannelSet& ch);

/// One draw of nominal-plus-error with every error uniform in its closed
/// norm ball. The returned set satisfies each bound exactly.
ChannelSet sample_uncertainty_ball(const UncertaintyModel& um,
                                   std::uint64_t seed);

/// Same draw with every error scaled to its ball boundary (worst cases of
/// the robust constraints live on the sphere).
ChannelSet sample_uncertainty_boundary(const UncertaintyModel& um,
                                       std::uint64_t seed);

/// Symmetrize and clip tiny negative eigenvalues (>= -1e-8) to zero.
/// Throws std::invalid_argument if the matrix is indefinite beyond that.
CMat clip_psd(const CMat& m);

/// SplitMix64 step; used to derive independent per-trial/per-sample seeds.
std::uint64_t split_seed(std::uint64_t state, std::uint64_t stream);

}  // namespace swiptsec
