// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "swiptsec/noan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "swiptsec/conic/builders.hpp"

namespace swiptsec::noan {

using conic::CLinExpr;
using conic::ComplexVecVar;
using conic::ConicProgram;
using conic::LinExpr;
using conic::Sense;
using conic::Var;

namespace {

double energy_target(const SystemParams& params, int l) {
  return l < static_cast<int>(params.E_targets.size()) ? params.E_targets[l]
                                                       : 0.0;
}

CVec mrt_beamformer(const CVec& h_s, double P) {
  const double n = h_s.norm();
  if (n < 1e-12 || P <= 0.0) return CVec::Zero(h_s.size());
  return std::sqrt(P) * h_s / n;
}

// Deterministic SCA starting beamformers: MRT toward the user plus one
// alignment per EH receiver (the linearized energy rows make the problems
// multimodal, so a single start can park in a poor basin).
std::vector<CVec> sca_starts(const ChannelSet& ch, double P) {
  std::vector<CVec> starts;
  starts.push_back(mrt_beamformer(ch.h_s, P));
  if (P <= 0.0) return starts;
  const double ns = ch.h_s.norm();
  for (const auto& hp : ch.h_p) {
    const double n = hp.norm();
    if (n < 1e-12) continue;
    starts.push_back(std::sqrt(P) * hp / n);
    if (ns > 1e-12) {
      CVec mix = ch.h_s / ns + hp / n;
      if (mix.norm() > 1e-9) starts.push_back(std::sqrt(P) * mix / mix.norm());
    }
  }
  return starts;
}

std::vector<Eigen::Vector2d> init_u(const ChannelSet& ch, const CVec& w0) {
  std::vector<Eigen::Vector2d> u(ch.h_p.size());
  for (size_t l = 0; l < ch.h_p.size(); ++l) {
    const std::complex<double> g = w0.adjoint() * ch.h_p[l];
    u[l] = {g.real(), g.imag()};
    if (u[l].norm() < 1e-6)
      u[l](0) += 1e-3 * std::max(1.0, ch.h_p[l].norm());
  }
  return u;
}

CVec extract_w(const ComplexVecVar& wv, const Eigen::VectorXd& x) {
  CVec w(wv.n);
  for (int i = 0; i < wv.n; ++i)
    w(i) = {x(wv.re(i).index), x(wv.im(i).index)};
  return w;
}

void fill_metrics(BeamformerSolution& sol, const ChannelSet& ch) {
  sol.achieved_rate = secrecy_rate(sol, ch);
  sol.achieved_energy = harvested_energy(sol, ch);
}

// Linearized |w^H h_l|^2 >= rhs around the point u_l.
LinExpr linearized_energy(const ComplexVecVar& wv, const CVec& h_l,
                          const Eigen::Vector2d& ul) {
  const CLinExpr g = wv.dot_conj(h_l);
  LinExpr e = 2.0 * ul(0) * g.real_part() + 2.0 * ul(1) * g.imag_part();
  e -= ul.squaredNorm();
  return e;
}

// f^(n)(t) = sqrt(t_n) + (t - t_n) / (2 sqrt(t_n)), the tangent of sqrt at t_n.
LinExpr sqrt_tangent(Var t, double t_n) {
  const double s = std::sqrt(t_n);
  return LinExpr(s) + (1.0 / (2.0 * s)) * (LinExpr(t) - t_n);
}

// Fixed-point driver for the SCA loops: tracks the linearization point,
// applies safeguarded reduced-rank extrapolation when the plain update
// contracts slowly, and keeps the accepted objective trace monotone.
class ScaDriver {
 public:
  enum class Action { converged, iterate, redo };

  ScaDriver(Eigen::VectorXd init, bool minimize, double tol)
      : point_(std::move(init)), minimize_(minimize), tol_(tol) {}

  const Eigen::VectorXd& point() const { return point_; }
  int iterations() const { return iters_; }
  const std::vector<double>& trace() const { return trace_; }

  // Solve failure at the current point: recoverable only right after an
  // extrapolation (fall back to the skipped plain point).
  bool recover_from_failure() {
    if (!extrapolated_) return false;
    point_ = plain_backup_;
    extrapolated_ = false;
    hist_.clear();
    return true;
  }

  Action report(double obj, const Eigen::VectorXd& plain_next) {
    double signed_obj = minimize_ ? obj : -obj;
    if (extrapolated_ && !trace_.empty() &&
        signed_obj >
            last_signed_ + 1e-10 * std::max(1.0, std::abs(last_signed_))) {
      point_ = plain_backup_;
      extrapolated_ = false;
      hist_.clear();
      return Action::redo;
    }
    // the true subproblem optimum is monotone; clamp regressions within
    // solver noise so the recorded trace reflects that
    if (!trace_.empty() && signed_obj > last_signed_) {
      signed_obj = last_signed_;
      obj = minimize_ ? signed_obj : -signed_obj;
    }
    trace_.push_back(obj);
    const double d_obj = std::abs(signed_obj - last_signed_);
    const bool obj_flat = d_obj <= 1e-9 * std::max(1.0, std::abs(signed_obj));
    flat_count_ = iters_ > 0 && obj_flat ? flat_count_ + 1 : 0;
    last_signed_ = signed_obj;
    ++iters_;
    const double du = (plain_next - point_).norm();
    // the point criterion is primary; a twice-stationary objective also
    // counts as converged (the linearization can drift on a flat face)
    const bool conv = du <= tol_ || flat_count_ >= 2;

    // Reduced-rank extrapolation over the last four plain iterates (the
    // fixed-point map often has complex modes, so a least-squares
    // combination of recent differences beats scalar Aitken).
    Eigen::VectorXd next = plain_next;
    extrapolated_ = false;
    hist_.push_back(plain_next);
    if (hist_.size() > 4) hist_.erase(hist_.begin());
    if (!conv && hist_.size() == 4) {
      const auto dim = plain_next.size();
      Eigen::MatrixXd D(dim, 3);
      for (int j = 0; j < 3; ++j) D.col(j) = hist_[j + 1] - hist_[j];
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(4, 4);
      kkt.topLeftCorner(3, 3) = D.transpose() * D;
      kkt.topRightCorner(3, 1).setOnes();
      kkt.bottomLeftCorner(1, 3).setOnes();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(4);
      rhs(3) = 1.0;
      const Eigen::VectorXd c = kkt.fullPivLu().solve(rhs);
      if (c.allFinite()) {
        Eigen::VectorXd ux = Eigen::VectorXd::Zero(dim);
        for (int j = 0; j < 3; ++j) ux += c(j) * hist_[j + 1];
        if ((ux - plain_next).norm() <= 25.0 * D.col(2).norm()) {
          next = ux;
          extrapolated_ = true;
          plain_backup_ = plain_next;
          hist_.clear();
        }
      }
    }
    point_ = next;
    return conv ? Action::converged : Action::iterate;
  }

 private:
  Eigen::VectorXd point_, plain_backup_;
  std::vector<Eigen::VectorXd> hist_;
  std::vector<double> trace_;
  bool minimize_;
  double tol_;
  double last_signed_ = 0.0;
  bool extrapolated_ = false;
  int flat_count_ = 0;
  int iters_ = 0;
};

Eigen::VectorXd pack(const std::vector<Eigen::Vector2d>& u, double extra,
                     bool has_extra) {
  Eigen::VectorXd v(2 * u.size() + (has_extra ? 1 : 0));
  for (size_t l = 0; l < u.size(); ++l) v.segment<2>(2 * l) = u[l];
  if (has_extra) v(2 * u.size()) = extra;
  return v;
}

std::vector<Eigen::Vector2d> unpack_u(const Eigen::VectorXd& v, int L) {
  std::vector<Eigen::Vector2d> u(L);
  for (int l = 0; l < L; ++l) u[l] = v.segment<2>(2 * l);
  return u;
}

BeamformerSolution zero_solution(const ChannelSet& ch, SolverStatus status) {
  BeamformerSolution sol = BeamformerSolution::from_vector(CVec::Zero(ch.n_t()));
  sol.solver_status = status;
  if (status == SolverStatus::optimal) fill_metrics(sol, ch);
  return sol;
}

struct ScaRun {
  BeamformerSolution sol;
  ScaState state;
  double objective = 0.0;
};

// Prefers optimal over max-iter over infeasible; ties broken by objective.
void keep_better(std::optional<ScaRun>& best, ScaRun cand, bool minimize) {
  auto rank = [](SolverStatus s) {
    switch (s) {
      case SolverStatus::optimal: return 2;
      case SolverStatus::max_iter: return 1;
      default: return 0;
    }
  };
  if (!best) {
    best = std::move(cand);
    return;
  }
  const int rb = rank(best->sol.solver_status);
  const int rc = rank(cand.sol.solver_status);
  if (rc > rb) {
    best = std::move(cand);
    return;
  }
  if (rc < rb || rc == 0) return;
  const bool better =
      minimize ? cand.objective < best->objective : cand.objective > best->objective;
  if (better) best = std::move(cand);
}

}  // namespace

double rate_upper_bound(const ChannelSet& ch, double P) {
  return std::log2(1.0 + P * ch.h_s.squaredNorm() / ch.sigma_s2);
}

namespace {

ScaRun power_min_from(double R, const ChannelSet& ch,
                      const SystemParams& params, const Options& opts,
                      const CVec& w0) {
  const int n = ch.n_t();
  const int L = ch.num_eh();
  ScaDriver drv(pack(init_u(ch, w0), 0.0, false), /*minimize=*/true,
                opts.sca_tol);
  ScaRun run{zero_solution(ch, SolverStatus::infeasible), {}};
  Eigen::VectorXd hint;
  bool converged = false;
  bool collapsed = false;

  while (drv.iterations() < opts.sca_max_iter) {
    const auto u = unpack_u(drv.point(), L);
    ConicProgram p;
    ComplexVecVar wv = p.add_complex_vector("w", n);
    Var s1 = p.add_var("s1");
    p.add_soc(wv.real_coords(), LinExpr(s1));
    conic::add_phase_convention(p, wv, ch.h_s);
    for (int k = 0; k < ch.num_eves(); ++k)
      p.add_lmi(conic::schur_secrecy_lmi(wv, R, ch, k));
    for (int l = 0; l < L; ++l) {
      const double E = energy_target(params, l);
      if (E > 0.0) p.add_ineq(linearized_energy(wv, ch.h_p[l], u[l]) - E);
    }
    p.set_objective(Sense::minimize, LinExpr(s1));
    if (hint.size() == p.num_vars()) p.set_initial_point(hint);

    const auto rep = conic::solve(p, opts.solver);
    if (rep.status != conic::Status::optimal) {
      if (drv.recover_from_failure()) continue;
      if (drv.iterations() == 0)
        return {zero_solution(ch, SolverStatus::infeasible), {}};
      collapsed = true;  // surrogate cut the set after progress
      break;
    }
    const CVec w = extract_w(wv, rep.primal);
    std::vector<Eigen::Vector2d> u_new(L);
    for (int l = 0; l < L; ++l) {
      const std::complex<double> g = w.adjoint() * ch.h_p[l];
      u_new[l] = {g.real(), g.imag()};
    }
    const auto act = drv.report(w.squaredNorm(), pack(u_new, 0.0, false));
    if (act == ScaDriver::Action::redo) continue;
    run.sol = BeamformerSolution::from_vector(w);
    fill_metrics(run.sol, ch);
    hint = rep.primal;
    if (act == ScaDriver::Action::converged) {
      converged = true;
      break;
    }
  }
  run.sol.solver_status = converged && !collapsed ? SolverStatus::optimal
                                                  : SolverStatus::max_iter;
  run.sol.iterations = drv.iterations();
  run.state.u = unpack_u(drv.point(), L);
  run.state.iteration = drv.iterations();
  run.state.objective_trace = drv.trace();
  return run;
}

}  // namespace

BeamformerSolution power_min(double R, const ChannelSet& ch,
                             const SystemParams& params, const Options& opts,
                             ScaState* state) {
  if (R < 0.0) throw std::invalid_argument("power_min: negative rate target");
  ch.validate();
  params.validate();
  std::optional<ScaRun> best;
  for (const CVec& w0 : sca_starts(ch, params.P > 0 ? params.P : 1.0)) {
    ScaRun run = power_min_from(R, ch, params, opts, w0);
    if (run.sol.solver_status == SolverStatus::infeasible) {
      if (!best) best = std::move(run);
      continue;
    }
    run.objective = run.sol.w.squaredNorm();
    keep_better(best, std::move(run), /*minimize=*/true);
  }
  if (state && best) *state = best->state;
  return best ? best->sol : zero_solution(ch, SolverStatus::infeasible);
}

BeamformerSolution max_secrecy_rate_bisection(const ChannelSet& ch,
                                              const SystemParams& params,
                                              const Options& opts) {
  ch.validate();
  params.validate();
  const double P = params.P;

  auto acceptable = [&](const BeamformerSolution& s, double R) {
    return s.solver_status == SolverStatus::optimal &&
           s.w.squaredNorm() <= P + 1e-7 && s.achieved_rate >= R - 1e-3;
  };

  BeamformerSolution best = power_min(0.0, ch, params, opts);
  if (!acceptable(best, 0.0)) {
    return zero_solution(ch, SolverStatus::infeasible);
  }

  double r_lo = 0.0;
  double r_hi = rate_upper_bound(ch, P);
  int it = 0;
  for (; it < opts.bisect_max_iter && r_hi - r_lo > opts.bisect_tol; ++it) {
    const double r = 0.5 * (r_lo + r_hi);
    BeamformerSolution s = power_min(r, ch, params, opts);
    if (acceptable(s, r)) {
      r_lo = r;
      best = std::move(s);
    } else {
      r_hi = r;
    }
  }
  best.iterations = it;
  best.solver_status = SolverStatus::optimal;
  return best;
}

namespace {

ScaRun max_energy_from(double R, const ChannelSet& ch,
                       const SystemParams& params, const Options& opts,
                       const CVec& w0) {
  const int n = ch.n_t();
  const int L = ch.num_eh();
  ScaDriver drv(pack(init_u(ch, w0), 0.0, false), /*minimize=*/false,
                opts.sca_tol);
  ScaRun run{zero_solution(ch, SolverStatus::infeasible), {}};
  Eigen::VectorXd hint;
  bool converged = false;
  bool collapsed = false;

  while (drv.iterations() < opts.sca_max_iter) {
    const auto u = unpack_u(drv.point(), L);
    ConicProgram p;
    ComplexVecVar wv = p.add_complex_vector("w", n);
    Var t = p.add_var("t");
    p.add_soc(wv.real_coords(), LinExpr(std::sqrt(params.P)));
    conic::add_phase_convention(p, wv, ch.h_s);
    for (int k = 0; k < ch.num_eves(); ++k)
      p.add_lmi(conic::schur_secrecy_lmi(wv, R, ch, k));
    for (int l = 0; l < L; ++l)
      p.add_ineq(linearized_energy(wv, ch.h_p[l], u[l]) - LinExpr(t));
    p.set_objective(Sense::maximize, LinExpr(t));
    if (hint.size() == p.num_vars()) p.set_initial_point(hint);

    const auto rep = conic::solve(p, opts.solver);
    if (rep.status != conic::Status::optimal) {
      if (drv.recover_from_failure()) continue;
      if (drv.iterations() == 0)
        return {zero_solution(ch, SolverStatus::infeasible), {}};
      collapsed = true;
      break;
    }
    const CVec w = extract_w(wv, rep.primal);
    std::vector<Eigen::Vector2d> u_new(L);
    for (int l = 0; l < L; ++l) {
      const std::complex<double> g = w.adjoint() * ch.h_p[l];
      u_new[l] = {g.real(), g.imag()};
    }
    const auto act = drv.report(rep.objective_value, pack(u_new, 0.0, false));
    if (act == ScaDriver::Action::redo) continue;
    run.sol = BeamformerSolution::from_vector(w);
    fill_metrics(run.sol, ch);
    hint = rep.primal;
    if (act == ScaDriver::Action::converged) {
      converged = true;
      break;
    }
  }
  run.sol.solver_status = converged && !collapsed ? SolverStatus::optimal
                                                  : SolverStatus::max_iter;
  run.sol.iterations = drv.iterations();
  run.state.u = unpack_u(drv.point(), L);
  run.state.iteration = drv.iterations();
  run.state.objective_trace = drv.trace();
  return run;
}

}  // namespace

BeamformerSolution max_harvested_energy(double R, const ChannelSet& ch,
                                        const SystemParams& params,
                                        const Options& opts, ScaState* state) {
  if (R < 0.0)
    throw std::invalid_argument("max_harvested_energy: negative rate target");
  ch.validate();
  params.validate();
  if (params.P <= 0.0)
    return zero_solution(ch, R > 0.0 ? SolverStatus::infeasible
                                     : SolverStatus::optimal);
  std::optional<ScaRun> best;
  for (const CVec& w0 : sca_starts(ch, params.P)) {
    ScaRun run = max_energy_from(R, ch, params, opts, w0);
    if (run.sol.solver_status == SolverStatus::infeasible) {
      if (!best) best = std::move(run);
      continue;
    }
    const auto& e = run.sol.achieved_energy;
    run.objective = e.empty() ? 0.0 : *std::min_element(e.begin(), e.end());
    keep_better(best, std::move(run), /*minimize=*/false);
  }
  if (state && best) *state = best->state;
  return best ? best->sol : zero_solution(ch, SolverStatus::infeasible);
}

namespace {

ScaRun robust_power_min_from(double R, const UncertaintyModel& um,
                             const SystemParams& params, const Options& opts,
                             const CVec& w0) {
  const ChannelSet& ch = um.nominal;
  const int n = ch.n_t();
  const int L = ch.num_eh();
  const double sigma_s = std::sqrt(ch.sigma_s2);
  const double sigma_e = std::sqrt(ch.sigma_e2);
  const double two_r = std::pow(2.0, R);
  const double t2_floor = two_r - 1.0 + 1e-9;
  const double t2_init = std::max(
      two_r * (1.0 + std::norm(std::complex<double>(ch.h_e[0].adjoint() * w0)) /
                         ch.sigma_e2),
      two_r - 1.0 + 1e-6);

  ScaDriver drv(pack(init_u(ch, w0), t2_init, true), /*minimize=*/true,
                opts.sca_tol);
  ScaRun run{zero_solution(ch, SolverStatus::infeasible), {}};
  Eigen::VectorXd hint;
  bool converged = false;
  bool collapsed = false;

  while (drv.iterations() < opts.sca_max_iter) {
    const auto u = unpack_u(drv.point(), L);
    const double t2_n = std::max(drv.point()(2 * L), t2_floor);

    ConicProgram p;
    ComplexVecVar wv = p.add_complex_vector("w", n);
    Var s2 = p.add_var("s2");
    Var t2 = p.add_var("t2");
    p.add_soc(wv.real_coords(), LinExpr(s2));
    const LinExpr fexpr = sqrt_tangent(t2, t2_n);
    p.add_ineq(LinExpr(t2) - std::max(two_r - 1.0, 1e-9));
    for (int k = 0; k < ch.num_eves(); ++k) {
      auto rl = conic::nemirovski_robust_lmi(p, fexpr, wv, ch.h_e[k], R,
                                             sigma_e, um.eps_e[k]);
      p.add_lmi(rl.block);
    }
    // user side: (1/sigma_s) Re{w^H hbar_s} - (eps_s/sigma_s) ||w|| >= f(t2)
    p.add_soc(wv.real_coords(um.eps_s / sigma_s),
              (1.0 / sigma_s) * wv.dot_conj(ch.h_s).real_part() - fexpr);
    // EH rows: Re{hbar_l^H w} >= sqrt(E) + eps_l ||w||, Im{hbar_l^H w} = 0.
    // At eps_l == 0 those rows restrict the phase of h_l^H w, so the exact
    // linearized quadratic row is used instead (zero-radius reduction).
    for (int l = 0; l < L; ++l) {
      const double E = energy_target(params, l);
      if (E <= 0.0) continue;
      if (um.eps_l[l] == 0.0) {
        p.add_ineq(linearized_energy(wv, ch.h_p[l], u[l]) - E);
        continue;
      }
      const CLinExpr g = wv.dot(ch.h_p[l]);  // hbar_l^H w
      p.add_soc(wv.real_coords(um.eps_l[l]), g.real_part() - std::sqrt(E));
      p.add_eq(g.imag_part());
    }
    p.set_objective(Sense::minimize, LinExpr(s2));
    if (hint.size() == p.num_vars()) p.set_initial_point(hint);

    const auto rep = conic::solve(p, opts.solver);
    if (rep.status != conic::Status::optimal) {
      if (drv.recover_from_failure()) continue;
      if (drv.iterations() == 0)
        return {zero_solution(ch, SolverStatus::infeasible), {}};
      collapsed = true;
      break;
    }
    const CVec w = extract_w(wv, rep.primal);
    std::vector<Eigen::Vector2d> u_new(L);
    for (int l = 0; l < L; ++l) {
      const std::complex<double> g = w.adjoint() * ch.h_p[l];
      u_new[l] = {g.real(), g.imag()};
    }
    const double t2_new = std::max(rep.primal(t2.index), t2_floor);
    const auto act = drv.report(w.squaredNorm(), pack(u_new, t2_new, true));
    if (act == ScaDriver::Action::redo) continue;
    run.sol = BeamformerSolution::from_vector(w);
    fill_metrics(run.sol, ch);
    hint = rep.primal;
    if (act == ScaDriver::Action::converged) {
      converged = true;
      break;
    }
  }
  run.sol.solver_status = converged && !collapsed ? SolverStatus::optimal
                                                  : SolverStatus::max_iter;
  run.sol.iterations = drv.iterations();
  run.state.u = unpack_u(drv.point(), L);
  run.state.t2 = drv.point()(2 * L);
  run.state.iteration = drv.iterations();
  run.state.objective_trace = drv.trace();
  return run;
}

}  // namespace

BeamformerSolution robust_power_min(double R, const UncertaintyModel& um,
                                    const SystemParams& params,
                                    const Options& opts, ScaState* state) {
  if (R < 0.0)
    throw std::invalid_argument("robust_power_min: negative rate target");
  um.validate();
  params.validate();
  const ChannelSet& ch = um.nominal;
  std::optional<ScaRun> best;
  for (const CVec& w0 : sca_starts(ch, params.P > 0 ? params.P : 1.0)) {
    ScaRun run = robust_power_min_from(R, um, params, opts, w0);
    if (run.sol.solver_status == SolverStatus::infeasible) {
      if (!best) best = std::move(run);
      continue;
    }
    run.objective = run.sol.w.squaredNorm();
    keep_better(best, std::move(run), /*minimize=*/true);
  }
  if (state && best) *state = best->state;
  return best ? best->sol : zero_solution(ch, SolverStatus::infeasible);
}

BeamformerSolution robust_max_energy(
    double R, const UncertaintyModel& um, const SystemParams& params,
    const Options& opts, ScaState* state,
    std::vector<std::pair<double, double>>* f_curve) {
  if (R < 0.0)
    throw std::invalid_argument("robust_max_energy: negative rate target");
  um.validate();
  params.validate();
  const ChannelSet& ch = um.nominal;
  if (params.P <= 0.0)
    return zero_solution(ch, R > 0.0 ? SolverStatus::infeasible
                                     : SolverStatus::optimal);
  const int n = ch.n_t();
  const int L = ch.num_eh();
  const double sigma_s = std::sqrt(ch.sigma_s2);
  const double sigma_e = std::sqrt(ch.sigma_e2);
  const double two_r = std::pow(2.0, R);
  const double tau_max =
      params.P / ch.sigma_s2 * std::pow(ch.h_s.norm() + um.eps_s, 2.0);

  const std::vector<CVec> starts = sca_starts(ch, params.P);
  BeamformerSolution best = zero_solution(ch, SolverStatus::infeasible);
  double best_t3 = -1.0;
  double best_tau = -1.0;
  ScaState best_state;
  int total_iters = 0;
  Eigen::VectorXd hint;

  // Inner SCA for one tau and one start; returns the converged worst-case
  // energy slack (negative when the inner problem is infeasible).
  auto inner = [&](double tau, const CVec& w0, const Options& iopts,
                   CVec* w_out, ScaState* st_out) -> double {
    const double sqrt_tau = std::sqrt(tau);
    double start_t3 = std::numeric_limits<double>::infinity();
    for (const auto& hl : ch.h_p)
      start_t3 = std::min(start_t3,
                          std::norm(std::complex<double>(hl.adjoint() * w0)));
    start_t3 = std::max(best_t3 > 0 ? best_t3 : start_t3, 1e-8);
    ScaDriver drv(pack(init_u(ch, w0), start_t3, true), /*minimize=*/false,
                  iopts.sca_tol);
    CVec w_tau;
    double t3_cur = -1.0;
    while (drv.iterations() < iopts.sca_max_iter) {
      const auto u = unpack_u(drv.point(), L);
      const double t3_n = std::max(drv.point()(2 * L), 1e-10);
      ConicProgram p;
      ComplexVecVar wv = p.add_complex_vector("w", n);
      Var t3 = p.add_var("t3");
      p.add_soc(wv.real_coords(), LinExpr(std::sqrt(params.P)));
      for (int k = 0; k < ch.num_eves(); ++k) {
        auto rl = conic::nemirovski_robust_lmi(p, LinExpr(sqrt_tau), wv,
                                               ch.h_e[k], R, sigma_e,
                                               um.eps_e[k]);
        p.add_lmi(rl.block);
      }
      // user SOC at the fixed tau
      p.add_soc(wv.real_coords(um.eps_s / sigma_s),
                (1.0 / sigma_s) * wv.dot_conj(ch.h_s).real_part() - sqrt_tau);
      // EH surrogates; exact quadratic linearization at zero radius
      const LinExpr g3 = sqrt_tangent(t3, t3_n);
      for (int l = 0; l < L; ++l) {
        if (um.eps_l[l] == 0.0)
          p.add_ineq(linearized_energy(wv, ch.h_p[l], u[l]) - LinExpr(t3));
        else
          p.add_soc(wv.real_coords(um.eps_l[l]),
                    wv.dot_conj(ch.h_p[l]).real_part() - g3);
      }
      p.set_objective(Sense::maximize, LinExpr(t3));
      if (hint.size() == p.num_vars()) p.set_initial_point(hint);

      const auto rep = conic::solve(p, iopts.solver);
      ++total_iters;
      if (rep.status != conic::Status::optimal) {
        if (drv.recover_from_failure()) continue;
        if (drv.iterations() == 0 || w_tau.size() == 0) return -1.0;
        break;  // surrogate collapse: keep the best iterate
      }
      const CVec w = extract_w(wv, rep.primal);
      std::vector<Eigen::Vector2d> u_new(L);
      for (int l = 0; l < L; ++l) {
        const std::complex<double> g = w.adjoint() * ch.h_p[l];
        u_new[l] = {g.real(), g.imag()};
      }
      const double t3_new = std::max(rep.primal(t3.index), 1e-10);
      const auto act = drv.report(t3_new, pack(u_new, t3_new, true));
      if (act == ScaDriver::Action::redo) continue;
      w_tau = w;
      t3_cur = t3_new;
      hint = rep.primal;
      if (act == ScaDriver::Action::converged) break;
    }
    if (w_tau.size() == 0) return -1.0;
    *w_out = w_tau;
    st_out->u = unpack_u(drv.point(), L);
    st_out->t3 = t3_cur;
    st_out->iteration = drv.iterations();
    st_out->objective_trace = drv.trace();
    return t3_cur;
  };

  CVec best_w0;
  auto sweep = [&](double lo, double hi, int points, bool record,
                   bool all_starts, const Options& iopts) {
    for (int gi = 0; gi < points; ++gi) {
      const double tau = lo + (hi - lo) * (gi + 1) / points;
      // tau below 2^R - 1 is provably infeasible for the eavesdropper block
      if (tau < two_r - 1.0 || tau <= 0.0) continue;
      double f_tau = -1.0;
      for (const CVec& w0 : starts) {
        CVec w_tau;
        ScaState st_tau;
        const double f = inner(tau, w0, iopts, &w_tau, &st_tau);
        f_tau = std::max(f_tau, f);
        if (f >= 0.0 && f > best_t3) {
          best_t3 = f;
          best_tau = tau;
          best_w0 = w0;
          best = BeamformerSolution::from_vector(w_tau);
          best_state = st_tau;
        }
        if (!all_starts) break;
      }
      if (record && f_curve && f_tau >= 0.0) f_curve->emplace_back(tau, f_tau);
    }
  };

  // The coarse pass only ranks tau values, so it runs a single start at a
  // loose solver gap; the refinements and the final re-solve are precise.
  Options coarse = opts;
  coarse.solver.gap_tol = std::max(coarse.solver.gap_tol, 1e-6);
  coarse.sca_tol = std::max(coarse.sca_tol, 1e-4);
  sweep(0.0, tau_max, opts.tau_grid, true, false, coarse);
  if (best_tau > 0.0) {
    double width = tau_max / opts.tau_grid;
    Options mid = opts;
    mid.solver.gap_tol = std::max(mid.solver.gap_tol, 1e-8);
    sweep(std::max(0.0, best_tau - width), std::min(tau_max, best_tau + width),
          20, false, true, mid);
    width /= 10.0;
    sweep(std::max(0.0, best_tau - width), std::min(tau_max, best_tau + width),
          20, false, false, opts);
    // final full-precision run at the winning tau and start
    CVec w_fin;
    ScaState st_fin;
    const double f_fin = inner(best_tau, best_w0, opts, &w_fin, &st_fin);
    if (f_fin >= best_t3 - 1e-9) {
      best_t3 = std::max(best_t3, f_fin);
      best = BeamformerSolution::from_vector(w_fin);
      best_state = st_fin;
    }
  }

  if (best_t3 >= 0.0) {
    fill_metrics(best, ch);
    best.solver_status = SolverStatus::optimal;
    best.iterations = total_iters;
    if (state) *state = best_state;
  }
  return best;
}

}  // namespace swiptsec::noan
