// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "swiptsec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "swiptsec/conic/program.hpp"
#include "swiptsec/noan.hpp"

namespace swiptsec::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

double energy_target(const std::vector<double>& E, int l) {
  return l < static_cast<int>(E.size()) ? E[l] : 0.0;
}

struct DirectionGains {
  double a = 0.0;          // |h_s^H d|^2 / sigma_s^2
  double b = 0.0;          // max_k |h_ek^H d|^2 / sigma_e^2
  std::vector<double> c;   // |h_l^H d|^2
};

DirectionGains gains_at(const ChannelSet& ch, double theta, double phi) {
  CVec d(2);
  d << std::cos(theta), std::sin(theta) * std::exp(std::complex<double>(0, phi));
  DirectionGains g;
  g.a = std::norm(std::complex<double>(ch.h_s.adjoint() * d)) / ch.sigma_s2;
  for (const auto& he : ch.h_e)
    g.b = std::max(g.b,
                   std::norm(std::complex<double>(he.adjoint() * d)) / ch.sigma_e2);
  g.c.reserve(ch.h_p.size());
  for (const auto& hl : ch.h_p)
    g.c.push_back(std::norm(std::complex<double>(hl.adjoint() * d)));
  return g;
}

double rate_of(double a, double b, double p) {
  const double ratio = (1.0 + a * p) / (1.0 + b * p);
  return ratio <= 1.0 ? 0.0 : std::log2(ratio);
}

}  // namespace

OracleResult grid_oracle_no_an(OracleKind kind, const ChannelSet& ch,
                               const SystemParams& params,
                               const OracleSteps& steps) {
  ch.validate();
  if (ch.n_t() != 2)
    throw std::invalid_argument("grid_oracle_no_an: requires N_T = 2");
  const double P = params.P;
  const double R = params.R_target;
  const int L = ch.num_eh();

  OracleResult best;
  best.objective = kind == OracleKind::power_min ? kInf : -kInf;

  auto consider = [&](double p, double theta, double phi,
                      const DirectionGains& g) {
    // exact constraint evaluation at this grid point
    bool ok = p >= 0.0 && p <= P + 1e-12;
    double obj = 0.0;
    switch (kind) {
      case OracleKind::secrecy_max: {
        for (int l = 0; l < L && ok; ++l)
          ok = p * g.c[l] >= energy_target(params.E_targets, l) - 1e-12;
        obj = rate_of(g.a, g.b, p);
        break;
      }
      case OracleKind::power_min: {
        ok = ok && rate_of(g.a, g.b, p) >= R - 1e-12;
        for (int l = 0; l < L && ok; ++l)
          ok = p * g.c[l] >= energy_target(params.E_targets, l) - 1e-12;
        obj = -p;  // maximize -p == minimize p
        break;
      }
      case OracleKind::energy_max: {
        ok = ok && rate_of(g.a, g.b, p) >= R - 1e-12;
        double emin = kInf;
        for (int l = 0; l < L; ++l) emin = std::min(emin, p * g.c[l]);
        obj = emin;
        break;
      }
    }
    if (!ok) return;
    const double stored = kind == OracleKind::power_min ? -best.objective : best.objective;
    if (obj > stored || !best.found) {
      best.found = true;
      best.objective = kind == OracleKind::power_min ? p : obj;
      best.p = p;
      best.theta = theta;
      best.phi = phi;
    }
  };

  auto sweep = [&](double th_lo, double th_hi, double ph_lo, double ph_hi,
                   double p_lo, double p_hi) {
    for (int it = 0; it <= steps.theta_steps; ++it) {
      const double theta =
          th_lo + (th_hi - th_lo) * it / std::max(1, steps.theta_steps);
      for (int ip = 0; ip < steps.phi_steps; ++ip) {
        const double phi =
            ph_lo + (ph_hi - ph_lo) * ip / std::max(1, steps.phi_steps);
        const DirectionGains g = gains_at(ch, theta, phi);
        for (int k = 0; k <= steps.p_steps; ++k) {
          const double p = p_lo + (p_hi - p_lo) * k / std::max(1, steps.p_steps);
          consider(p, theta, phi, g);
        }
      }
    }
  };

  double th_lo = 0.0, th_hi = kPi / 2.0, ph_lo = 0.0, ph_hi = 2.0 * kPi;
  double p_lo = 0.0, p_hi = P;
  sweep(th_lo, th_hi, ph_lo, ph_hi, p_lo, p_hi);
  double th_step = (th_hi - th_lo) / steps.theta_steps;
  double ph_step = (ph_hi - ph_lo) / steps.phi_steps;
  double p_step = (p_hi - p_lo) / steps.p_steps;
  if (kind == OracleKind::power_min) {
    // The coarse power step can hide the best direction entirely (every
    // direction's minimal power rounds up), so re-sweep all angles with a
    // power range shrunk to just above the incumbent before refining.
    for (int pass = 0; pass < 2 && best.found; ++pass) {
      p_hi = std::min(P, best.objective + p_step);
      sweep(th_lo, th_hi, ph_lo, ph_hi, 0.0, p_hi);
      p_step = p_hi / steps.p_steps;
    }
  }
  for (int pass = 0; pass < steps.refine_passes && best.found; ++pass) {
    const double tl = std::max(0.0, best.theta - th_step);
    const double th = std::min(kPi / 2.0, best.theta + th_step);
    const double pl = best.phi - ph_step;
    const double ph = best.phi + ph_step;
    const double plo = std::max(0.0, best.p - p_step);
    const double phi2 = std::min(P, best.p + p_step);
    sweep(tl, th, pl, ph, plo, phi2);
    th_step = (th - tl) / steps.theta_steps;
    ph_step = (ph - pl) / steps.phi_steps;
    p_step = (phi2 - plo) / steps.p_steps;
  }
  best.grid_resolution = std::max(th_step, ph_step);
  return best;
}

namespace {

// Exact maximization of (As q) / (Bs v + sigma2) over the polygon
// {q, v >= 0} cut by linear rows, via vertex enumeration.
struct Polygon2D {
  // rows alpha*q + beta*v <= gamma
  std::vector<Eigen::Vector3d> rows;

  void add(double alpha, double beta, double gamma) {
    rows.push_back({alpha, beta, gamma});
  }

  bool feasible(double q, double v, double tol) const {
    for (const auto& r : rows)
      if (r(0) * q + r(1) * v > r(2) + tol) return false;
    return true;
  }

  template <typename F>
  void for_each_vertex(F&& f) const {
    const int n = static_cast<int>(rows.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double det = rows[i](0) * rows[j](1) - rows[j](0) * rows[i](1);
        if (std::abs(det) < 1e-14) continue;
        const double q =
            (rows[i](2) * rows[j](1) - rows[j](2) * rows[i](1)) / det;
        const double v =
            (rows[i](0) * rows[j](2) - rows[j](0) * rows[i](2)) / det;
        const double scale =
            std::max({1.0, std::abs(q), std::abs(v)});
        if (feasible(q, v, 1e-9 * scale)) f(q, v);
      }
  }
};

}  // namespace

OracleResult grid_oracle_an(double t, const ChannelSet& ch,
                            const SystemParams& params,
                            const AnOracleSteps& steps) {
  ch.validate();
  if (ch.n_t() != 2)
    throw std::invalid_argument("grid_oracle_an: requires N_T = 2");
  if (t <= 0.0 || t > 1.0)
    throw std::invalid_argument("grid_oracle_an: t must be in (0, 1]");
  const double inv = 1.0 / t - 1.0;
  const double P = params.P;
  const int K = ch.num_eves();
  const int L = ch.num_eh();

  OracleResult best;
  best.objective = -kInf;

  auto unit = [](double theta, double phi) {
    CVec d(2);
    d << std::cos(theta),
        std::sin(theta) * std::exp(std::complex<double>(0, phi));
    return d;
  };

  auto consider = [&](double ta, double pa, double tb, double pb) {
    const CVec a = unit(ta, pa), b = unit(tb, pb);
    const double As = std::norm(std::complex<double>(ch.h_s.adjoint() * a));
    const double Bs = std::norm(std::complex<double>(ch.h_s.adjoint() * b));
    Polygon2D poly;
    poly.add(-1.0, 0.0, 0.0);  // q >= 0
    poly.add(0.0, -1.0, 0.0);  // v >= 0
    poly.add(1.0, 1.0, P);     // trace
    for (int i = 0; i < static_cast<int>(params.p_i.size()); ++i)
      poly.add(std::norm(a(i)), std::norm(b(i)), params.p_i[i]);
    for (int k = 0; k < K; ++k) {
      const double Ak = std::norm(std::complex<double>(ch.h_e[k].adjoint() * a));
      const double Bk = std::norm(std::complex<double>(ch.h_e[k].adjoint() * b));
      poly.add(Ak, -inv * Bk, inv * ch.sigma_e2);
    }
    for (int l = 0; l < L; ++l) {
      const double Cl = std::norm(std::complex<double>(ch.h_p[l].adjoint() * a));
      const double Dl = std::norm(std::complex<double>(ch.h_p[l].adjoint() * b));
      poly.add(-Cl, -Dl, -energy_target(params.E_targets, l));
    }
    poly.for_each_vertex([&](double q, double v) {
      const double sinr = As * q / (Bs * v + ch.sigma_s2);
      if (sinr > best.objective) {
        best.found = true;
        best.objective = sinr;
        best.q = q;
        best.v = v;
        best.theta_a = ta;
        best.phi_a = pa;
        best.theta_b = tb;
        best.phi_b = pb;
      }
    });
  };

  const int N = steps.angle_steps;
  auto sweep = [&](double talo, double tahi, double palo, double pahi,
                   double tblo, double tbhi, double pblo, double pbhi) {
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k <= N; ++k)
          for (int m = 0; m < N; ++m)
            consider(talo + (tahi - talo) * i / N, palo + (pahi - palo) * j / N,
                     tblo + (tbhi - tblo) * k / N, pblo + (pbhi - pblo) * m / N);
  };

  double talo = 0.0, tahi = kPi / 2.0, palo = 0.0, pahi = 2.0 * kPi;
  double tblo = 0.0, tbhi = kPi / 2.0, pblo = 0.0, pbhi = 2.0 * kPi;
  sweep(talo, tahi, palo, pahi, tblo, tbhi, pblo, pbhi);
  double step = kPi / 2.0 / N;
  for (int pass = 0; pass < steps.refine_passes && best.found; ++pass) {
    const double w = 2.0 * step;
    talo = std::max(0.0, best.theta_a - w);
    tahi = std::min(kPi / 2.0, best.theta_a + w);
    palo = best.phi_a - 2.0 * w;
    pahi = best.phi_a + 2.0 * w;
    tblo = std::max(0.0, best.theta_b - w);
    tbhi = std::min(kPi / 2.0, best.theta_b + w);
    pblo = best.phi_b - 2.0 * w;
    pbhi = best.phi_b + 2.0 * w;
    sweep(talo, tahi, palo, pahi, tblo, tbhi, pblo, pbhi);
    step = (tahi - talo) / N;
  }
  best.grid_resolution = step;
  return best;
}

CertificationReport certify_robust(const BeamformerSolution& sol,
                                   const UncertaintyModel& um, double R,
                                   const std::vector<double>& E_targets,
                                   int samples, std::uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("certify_robust: samples must be >= 1");
  um.validate();
  CertificationReport rep;
  rep.samples = samples;
  rep.worst_rate = kInf;
  rep.worst_energy = kInf;
  rep.min_margin = kInf;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t s = split_seed(seed, static_cast<std::uint64_t>(i));
    const ChannelSet ch = (i % 2 == 0)
                              ? sample_uncertainty_boundary(um, s)
                              : sample_uncertainty_ball(um, s);
    const double rate = secrecy_rate(sol, ch);
    const auto energy = harvested_energy(sol, ch);
    rep.worst_rate = std::min(rep.worst_rate, rate);
    rep.min_margin = std::min(rep.min_margin, rate - R);
    bool violated = rate < R - 1e-3;
    for (size_t l = 0; l < energy.size(); ++l) {
      const double target = energy_target(E_targets, static_cast<int>(l));
      rep.worst_energy = std::min(rep.worst_energy, energy[l]);
      rep.min_margin = std::min(rep.min_margin, energy[l] - target);
      violated = violated || energy[l] < target - 1e-3;
    }
    if (violated) ++rep.violations;
  }
  return rep;
}

namespace {

// SDR power minimization at a fixed rate target; empty report on infeasible.
struct SdrPoint {
  bool ok = false;
  double trace = 0.0;
  CMat Q;
};

SdrPoint sdr_power_min(double R, const ChannelSet& ch,
                       const SystemParams& params) {
  using namespace conic;
  const int n = ch.n_t();
  const double two_r = std::pow(2.0, R);
  ConicProgram p;
  HermitianVar Q = p.add_hermitian("Q", n);
  p.add_psd(Q);
  MatExpr m(n);
  m.add(1.0, Q);
  LinExpr user = (1.0 / ch.sigma_s2) * m.quad(ch.h_s);
  for (int k = 0; k < ch.num_eves(); ++k)
    p.add_ineq(user - (two_r - 1.0) -
               (two_r / ch.sigma_e2) * m.quad(ch.h_e[k]));
  for (int l = 0; l < ch.num_eh(); ++l) {
    const double E =
        l < static_cast<int>(params.E_targets.size()) ? params.E_targets[l] : 0.0;
    if (E > 0.0) p.add_ineq(m.quad(ch.h_p[l]) - E);
  }
  p.set_objective(Sense::minimize, Q.trace());
  const auto rep = solve(p);
  SdrPoint out;
  if (rep.status != Status::optimal) return out;
  out.ok = true;
  out.trace = rep.objective_value;
  out.Q.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.Q(i, j) = Q.entry(i, j).eval(rep.primal);
  return out;
}

}  // namespace

double sdr_cross_check(const ChannelSet& ch, const SystemParams& params) {
  ch.validate();
  params.validate();
  const double P = params.P;
  double r_lo = 0.0;
  double r_hi = noan::rate_upper_bound(ch, P);
  SdrPoint best = sdr_power_min(0.0, ch, params);
  if (!best.ok || best.trace > P + 1e-7) return 0.0;
  for (int it = 0; it < 30 && r_hi - r_lo > 1e-3; ++it) {
    const double r = 0.5 * (r_lo + r_hi);
    SdrPoint s = sdr_power_min(r, ch, params);
    if (s.ok && s.trace <= P + 1e-7) {
      r_lo = r;
      best = std::move(s);
    } else {
      r_hi = r;
    }
  }

  // extraction: dominant eigenvector, then Gaussian randomization
  Eigen::SelfAdjointEigenSolver<CMat> eig(best.Q);
  const int n = ch.n_t();
  const double trace = std::max(best.Q.trace().real(), 1e-300);
  std::vector<CVec> candidates;
  candidates.push_back(std::sqrt(trace) *
                       eig.eigenvectors().col(n - 1).normalized());
  CMat sqrtQ = eig.eigenvectors() *
               eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
               eig.eigenvectors().adjoint();
  std::mt19937_64 rng(0x5d12c0de);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  for (int trial = 0; trial < 200; ++trial) {
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = {g(rng), g(rng)};
    CVec w = sqrtQ * z;
    if (w.norm() < 1e-12) continue;
    w *= std::sqrt(trace) / w.norm();
    candidates.push_back(std::move(w));
  }

  double best_rate = 0.0;
  for (auto& w : candidates) {
    // scale up if some EH floor needs it, abandoning infeasible candidates
    double scale2 = 1.0;
    bool ok = true;
    for (int l = 0; l < ch.num_eh(); ++l) {
      const double E = l < static_cast<int>(params.E_targets.size())
                           ? params.E_targets[l]
                           : 0.0;
      if (E <= 0.0) continue;
      const double e = std::norm(std::complex<double>(ch.h_p[l].adjoint() * w));
      if (e < 1e-300) {
        ok = false;
        break;
      }
      scale2 = std::max(scale2, E / e);
    }
    if (!ok) continue;
    if (scale2 * w.squaredNorm() > P + 1e-9) continue;
    const CVec ws = std::sqrt(scale2) * w;
    best_rate =
        std::max(best_rate, secrecy_rate(BeamformerSolution::from_vector(ws), ch));
  }
  return best_rate;
}

bool audit_solution(const BeamformerSolution& sol, const ChannelSet& ch,
                    double R, const std::vector<double>& E_targets, double P) {
  const double rate = secrecy_rate(sol, ch);
  if (rate < R - 1e-4) return false;
  const auto energy = harvested_energy(sol, ch);
  for (size_t l = 0; l < energy.size(); ++l)
    if (energy[l] < energy_target(E_targets, static_cast<int>(l)) - 1e-6)
      return false;
  double spent = 0.0;
  if (sol.kind == BeamformerSolution::Kind::vector)
    spent = sol.w.squaredNorm();
  else
    spent = (sol.Q_s + sol.W).trace().real();
  return spent <= P + 1e-7;
}

}  // namespace swiptsec::verify
