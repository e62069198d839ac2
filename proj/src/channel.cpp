// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "swiptsec/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace swiptsec {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void ChannelSet::validate() const {
  require(h_s.size() >= 1, "ChannelSet: n_t must be >= 1");
  require(!h_e.empty(), "ChannelSet: need at least one eavesdropper");
  require(!h_p.empty(), "ChannelSet: need at least one EH receiver");
  for (const auto& h : h_e)
    require(h.size() == h_s.size(), "ChannelSet: eavesdropper length mismatch");
  for (const auto& h : h_p)
    require(h.size() == h_s.size(), "ChannelSet: EH-receiver length mismatch");
  require(sigma_s2 > 0.0 && sigma_e2 > 0.0,
          "ChannelSet: noise powers must be positive");
}

void UncertaintyModel::validate() const {
  nominal.validate();
  require(eps_s >= 0.0, "UncertaintyModel: negative user radius");
  require(eps_e.size() == nominal.h_e.size(),
          "UncertaintyModel: eps_e size mismatch");
  require(eps_l.size() == nominal.h_p.size(),
          "UncertaintyModel: eps_l size mismatch");
  for (double e : eps_e) require(e >= 0.0, "UncertaintyModel: negative radius");
  for (double e : eps_l) require(e >= 0.0, "UncertaintyModel: negative radius");
  for (double e : eps_a) require(e >= 0.0, "UncertaintyModel: negative radius");
}

UncertaintyModel UncertaintyModel::exact(const ChannelSet& ch) {
  UncertaintyModel um;
  um.nominal = ch;
  um.eps_s = 0.0;
  um.eps_e.assign(ch.h_e.size(), 0.0);
  um.eps_l.assign(ch.h_p.size(), 0.0);
  um.eps_a.assign(static_cast<size_t>(ch.n_t()), 0.0);
  return um;
}

UncertaintyModel UncertaintyModel::uniform(const ChannelSet& ch, double eps,
                                           double eps_antenna) {
  UncertaintyModel um = exact(ch);
  um.eps_s = eps;
  um.eps_e.assign(ch.h_e.size(), eps);
  um.eps_l.assign(ch.h_p.size(), eps);
  um.eps_a.assign(static_cast<size_t>(ch.n_t()), eps_antenna);
  return um;
}

void SystemParams::validate() const {
  require(n_t >= 1, "SystemParams: n_t must be >= 1");
  require(std::isfinite(P) && P >= 0.0, "SystemParams: bad power budget");
  for (double p : p_i)
    require(std::isfinite(p) && p >= 0.0, "SystemParams: bad per-antenna cap");
  for (double e : E_targets)
    require(std::isfinite(e) && e >= 0.0, "SystemParams: bad energy target");
  require(std::isfinite(R_target) && R_target >= 0.0,
          "SystemParams: bad rate target");
}

const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::optimal: return "optimal";
    case SolverStatus::infeasible: return "infeasible";
    case SolverStatus::max_iter: return "max-iter";
    case SolverStatus::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

BeamformerSolution BeamformerSolution::from_vector(CVec w) {
  BeamformerSolution s;
  s.kind = Kind::vector;
  s.w = std::move(w);
  return s;
}

BeamformerSolution BeamformerSolution::from_covariances(CMat Q_s, CMat W) {
  BeamformerSolution s;
  s.kind = Kind::covariance_pair;
  s.Q_s = std::move(Q_s);
  s.W = std::move(W);
  return s;
}

ChannelSet generate_channels(int n_t, int K, int L, std::uint64_t seed) {
  require(n_t >= 1 && K >= 1 && L >= 1, "generate_channels: bad dimensions");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  auto draw = [&](int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v(i) = {re, im};
    }
    return v;
  };
  ChannelSet ch;
  ch.h_s = draw(n_t);
  ch.h_e.reserve(K);
  for (int k = 0; k < K; ++k) ch.h_e.push_back(draw(n_t));
  ch.h_p.reserve(L);
  for (int l = 0; l < L; ++l) ch.h_p.push_back(draw(n_t));
  ch.sigma_s2 = 1.0;
  ch.sigma_e2 = 1.0;
  return ch;
}

namespace {

double log2_1p(double x) { return std::log1p(x) / std::log(2.0); }

double sinr_vector(const CVec& h, const CVec& w, double sigma2) {
  const std::complex<double> g = h.adjoint() * w;
  return std::norm(g) / sigma2;
}

double sinr_covariance(const CVec& h, const CMat& Q, const CMat& W,
                       double sigma2) {
  const double num = std::real(std::complex<double>(h.adjoint() * Q * h));
  const double den =
      std::real(std::complex<double>(h.adjoint() * W * h)) + sigma2;
  return num / den;
}

void check_dims(const BeamformerSolution& sol, const ChannelSet& ch) {
  if (sol.kind == BeamformerSolution::Kind::vector) {
    require(sol.w.size() == ch.h_s.size(), "solution/channel dimension mismatch");
  } else {
    require(sol.Q_s.rows() == ch.h_s.size() && sol.Q_s.cols() == ch.h_s.size() &&
                sol.W.rows() == ch.h_s.size() && sol.W.cols() == ch.h_s.size(),
            "solution/channel dimension mismatch");
  }
}

}  // namespace

double secrecy_rate(const BeamformerSolution& sol, const ChannelSet& ch) {
  ch.validate();
  check_dims(sol, ch);
  double user, eve_best = 0.0;
  if (sol.kind == BeamformerSolution::Kind::vector) {
    user = log2_1p(sinr_vector(ch.h_s, sol.w, ch.sigma_s2));
    for (const auto& he : ch.h_e)
      eve_best = std::max(eve_best, log2_1p(sinr_vector(he, sol.w, ch.sigma_e2)));
  } else {
    user = log2_1p(sinr_covariance(ch.h_s, sol.Q_s, sol.W, ch.sigma_s2));
    for (const auto& he : ch.h_e)
      eve_best = std::max(
          eve_best, log2_1p(sinr_covariance(he, sol.Q_s, sol.W, ch.sigma_e2)));
  }
  return std::max(0.0, user - eve_best);
}

std::vector<double> harvested_energy(const BeamformerSolution& sol,
                                     const ChannelSet& ch) {
  ch.validate();
  check_dims(sol, ch);
  std::vector<double> out;
  out.reserve(ch.h_p.size());
  if (sol.kind == BeamformerSolution::Kind::vector) {
    for (const auto& hl : ch.h_p) {
      const std::complex<double> g = hl.adjoint() * sol.w;
      out.push_back(std::norm(g));
    }
  } else {
    const CMat S = sol.Q_s + sol.W;
    for (const auto& hl : ch.h_p) {
      out.push_back(
          std::max(0.0, std::real(std::complex<double>(hl.adjoint() * S * hl))));
    }
  }
  return out;
}

namespace {

// Uniform draw in the closed complex n-ball of given radius: uniform
// direction on the sphere, radius r * u^{1/(2n)}.
CVec ball_error(std::mt19937_64& rng, int n, double radius, bool boundary) {
  CVec e = CVec::Zero(n);
  if (radius <= 0.0) return e;
  std::normal_distribution<double> gauss(0.0, 1.0);
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    e(i) = {re, im};
    norm2 += re * re + im * im;
  }
  if (norm2 == 0.0) return e;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  const double r =
      boundary ? radius : radius * std::pow(u, 1.0 / (2.0 * n));
  e *= r / std::sqrt(norm2);
  return e;
}

ChannelSet sample_ball_impl(const UncertaintyModel& um, std::uint64_t seed,
                            bool boundary) {
  um.validate();
  std::mt19937_64 rng(seed);
  const int n = um.nominal.n_t();
  ChannelSet out = um.nominal;
  out.h_s += ball_error(rng, n, um.eps_s, boundary);
  for (size_t k = 0; k < out.h_e.size(); ++k)
    out.h_e[k] += ball_error(rng, n, um.eps_e[k], boundary);
  for (size_t l = 0; l < out.h_p.size(); ++l)
    out.h_p[l] += ball_error(rng, n, um.eps_l[l], boundary);
  return out;
}

}  // namespace

ChannelSet sample_uncertainty_ball(const UncertaintyModel& um,
                                   std::uint64_t seed) {
  return sample_ball_impl(um, seed, false);
}

ChannelSet sample_uncertainty_boundary(const UncertaintyModel& um,
                                       std::uint64_t seed) {
  return sample_ball_impl(um, seed, true);
}

CMat clip_psd(const CMat& m) {
  CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> eig(h);
  Eigen::VectorXd vals = eig.eigenvalues();
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) < -1e-8)
      throw std::invalid_argument("clip_psd: matrix indefinite beyond tolerance");
    vals(i) = std::max(0.0, vals(i));
  }
  return eig.eigenvectors() * vals.asDiagonal() *
         eig.eigenvectors().adjoint();
}

std::uint64_t split_seed(std::uint64_t state, std::uint64_t stream) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace swiptsec
