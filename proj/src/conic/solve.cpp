// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Dense log-barrier path-following method for the small conic programs this
// project produces (LMI + SOC + linear + exponential rows, linear equalities
// handled through a KKT system). Feasibility is established by a standard
// phase-I relaxation with an s-slack shared across all scaled constraints.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <vector>

#include "swiptsec/conic/program.hpp"

namespace swiptsec::conic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LmiData {
  int m = 0;
  Eigen::MatrixXd F0;
  std::vector<int> vars;     // global indices, ascending
  Eigen::MatrixXd Gstack;    // m x (m*k), G_j side by side
  // workspace
  Eigen::MatrixXd F, Z, Zt, W, Hloc;
  Eigen::LLT<Eigen::MatrixXd> llt;
};

struct SocData {
  std::vector<int> vars;
  Eigen::MatrixXd A;         // k x nv (compressed columns)
  Eigen::VectorXd b, c;      // c compressed
  double d = 0.0;
  Eigen::MatrixXd hess_const;  // 2 A'A - 2 cc'
  // workspace
  Eigen::VectorXd xa, u, ds;
  Eigen::MatrixXd Hl;
};

struct RowData {
  std::vector<int> vars;
  Eigen::VectorXd a;
  double b = 0.0;
};

struct ExpData {
  std::vector<int> vars;
  Eigen::VectorXd a, c;
  double b = 0.0, d = 0.0;
};

std::vector<int> nonzero_union(std::initializer_list<const Eigen::VectorXd*> vs,
                               const Eigen::MatrixXd* cols) {
  std::vector<char> mark;
  size_t n = 0;
  for (const auto* v : vs) n = std::max<size_t>(n, v->size());
  if (cols) n = std::max<size_t>(n, cols->cols());
  mark.assign(n, 0);
  for (const auto* v : vs)
    for (int i = 0; i < v->size(); ++i)
      if ((*v)(i) != 0.0) mark[i] = 1;
  if (cols)
    for (int j = 0; j < cols->cols(); ++j)
      if (cols->col(j).cwiseAbs().maxCoeff() > 0.0) mark[j] = 1;
  std::vector<int> out;
  for (size_t i = 0; i < mark.size(); ++i)
    if (mark[i]) out.push_back(static_cast<int>(i));
  return out;
}

Eigen::VectorXd compress(const Eigen::VectorXd& full, const std::vector<int>& vars) {
  Eigen::VectorXd out(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) out(i) = full(vars[i]);
  return out;
}

// All constraint blocks of one (possibly phase-I-augmented) barrier problem.
struct Problem {
  int n = 0;  // variables, including the phase-I slack when present
  int slack_var = -1;
  std::vector<LmiData> lmis;
  std::vector<SocData> socs;
  std::vector<RowData> rows;
  std::vector<ExpData> exps;
  Eigen::MatrixXd Aeq;  // p x n
  Eigen::VectorXd beq;
  double complexity = 0.0;  // barrier parameter sum

  bool value(const Eigen::VectorXd& x, double* phi);
  bool full(const Eigen::VectorXd& x, double* phi, Eigen::VectorXd& g,
            Eigen::MatrixXd& H);
};

bool Problem::value(const Eigen::VectorXd& x, double* phi) {
  double acc = 0.0;
  for (auto& l : lmis) {
    const int m = l.m;
    l.F = l.F0;
    for (size_t j = 0; j < l.vars.size(); ++j)
      l.F.noalias() += x(l.vars[j]) * l.Gstack.middleCols(j * m, m);
    l.llt.compute(l.F);
    if (l.llt.info() != Eigen::Success) return false;
    double logdet = 0.0;
    for (int i = 0; i < m; ++i) {
      const double dii = l.llt.matrixLLT()(i, i);
      if (!(dii > 0.0)) return false;
      logdet += std::log(dii);
    }
    acc -= 2.0 * logdet;
  }
  for (auto& s : socs) {
    const int k = static_cast<int>(s.vars.size());
    s.xa.resize(k);
    for (int i = 0; i < k; ++i) s.xa(i) = x(s.vars[i]);
    const double t = s.c.dot(s.xa) + s.d;
    if (!(t > 0.0)) return false;
    s.u = s.b;
    s.u.noalias() += s.A * s.xa;
    const double slack = t * t - s.u.squaredNorm();
    if (!(slack > 0.0)) return false;
    acc -= std::log(slack);
  }
  for (const auto& r : rows) {
    double slack = r.b;
    for (size_t i = 0; i < r.vars.size(); ++i) slack += r.a(i) * x(r.vars[i]);
    if (!(slack > 0.0)) return false;
    acc -= std::log(slack);
  }
  for (const auto& e : exps) {
    double u = e.b, v = e.d;
    for (size_t i = 0; i < e.vars.size(); ++i) {
      u += e.a(i) * x(e.vars[i]);
      v += e.c(i) * x(e.vars[i]);
    }
    if (u > 500.0) return false;
    const double slack = v - std::exp(u);
    if (!(slack > 0.0)) return false;
    acc -= std::log(slack);
  }
  if (phi) *phi = acc;
  return true;
}

bool Problem::full(const Eigen::VectorXd& x, double* phi, Eigen::VectorXd& g,
                   Eigen::MatrixXd& H) {
  double acc = 0.0;
  g.setZero(n);
  H.setZero(n, n);
  for (auto& l : lmis) {
    const int m = l.m;
    const int k = static_cast<int>(l.vars.size());
    l.F = l.F0;
    for (int j = 0; j < k; ++j)
      l.F += x(l.vars[j]) * l.Gstack.middleCols(j * m, m);
    l.llt.compute(l.F);
    if (l.llt.info() != Eigen::Success) return false;
    double logdet = 0.0;
    for (int i = 0; i < m; ++i) {
      const double dii = l.llt.matrixLLT()(i, i);
      if (!(dii > 0.0)) return false;
      logdet += std::log(dii);
    }
    acc -= 2.0 * logdet;
    // M_j = L^-1 G_j L^-T, batched over j
    l.Z = l.Gstack;
    l.llt.matrixL().solveInPlace(l.Z);
    l.Zt.resize(m, m * k);
    for (int j = 0; j < k; ++j)
      l.Zt.middleCols(j * m, m) = l.Z.middleCols(j * m, m).transpose();
    l.W = l.Zt;
    l.llt.matrixL().solveInPlace(l.W);
    // g_j = -tr(M_j); H_ij = <M_i, M_j>
    for (int j = 0; j < k; ++j) {
      double tr = 0.0;
      for (int i = 0; i < m; ++i) tr += l.W(i, j * m + i);
      g(l.vars[j]) -= tr;
    }
    Eigen::Map<const Eigen::MatrixXd> Mvec(l.W.data(), m * m, k);
    l.Hloc.noalias() = Mvec.transpose() * Mvec;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) H(l.vars[i], l.vars[j]) += l.Hloc(i, j);
  }
  for (auto& s : socs) {
    const int k = static_cast<int>(s.vars.size());
    s.xa.resize(k);
    for (int i = 0; i < k; ++i) s.xa(i) = x(s.vars[i]);
    const double t = s.c.dot(s.xa) + s.d;
    if (!(t > 0.0)) return false;
    s.u = s.b;
    s.u.noalias() += s.A * s.xa;
    const double slack = t * t - s.u.squaredNorm();
    if (!(slack > 0.0)) return false;
    acc -= std::log(slack);
    s.ds = 2.0 * t * s.c;
    s.ds.noalias() -= 2.0 * s.A.transpose() * s.u;
    for (int i = 0; i < k; ++i) g(s.vars[i]) -= s.ds(i) / slack;
    s.Hl = s.hess_const / slack;
    s.Hl.noalias() += s.ds * (s.ds.transpose() / (slack * slack));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) H(s.vars[i], s.vars[j]) += s.Hl(i, j);
  }
  for (const auto& r : rows) {
    double slack = r.b;
    const int k = static_cast<int>(r.vars.size());
    for (int i = 0; i < k; ++i) slack += r.a(i) * x(r.vars[i]);
    if (!(slack > 0.0)) return false;
    acc -= std::log(slack);
    const double inv = 1.0 / slack;
    for (int i = 0; i < k; ++i) g(r.vars[i]) -= r.a(i) * inv;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        H(r.vars[i], r.vars[j]) += r.a(i) * r.a(j) * inv * inv;
  }
  for (const auto& e : exps) {
    double u = e.b, v = e.d;
    const int k = static_cast<int>(e.vars.size());
    for (int i = 0; i < k; ++i) {
      u += e.a(i) * x(e.vars[i]);
      v += e.c(i) * x(e.vars[i]);
    }
    if (u > 500.0) return false;
    const double eu = std::exp(u);
    const double slack = v - eu;
    if (!(slack > 0.0)) return false;
    acc -= std::log(slack);
    const Eigen::VectorXd ds = e.c - eu * e.a;
    for (int i = 0; i < k; ++i) g(e.vars[i]) -= ds(i) / slack;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        H(e.vars[i], e.vars[j]) +=
            ds(i) * ds(j) / (slack * slack) + (eu / slack) * e.a(i) * e.a(j);
  }
  if (phi) *phi = acc;
  return true;
}

struct NewtonResult {
  bool early_stop = false;
  bool stalled = false;
  bool singular = false;
  bool converged = false;  // Newton decrement fell below threshold
};

class BarrierSolver {
 public:
  Problem prob;
  int max_newton = 200;
  int newton_used = 0;
  bool verbose = false;
  std::function<bool(const Eigen::VectorXd&)> early_stop;  // optional

  // Minimizes t*c'x + barrier(x) subject to the equality rows, starting from
  // the strictly feasible point x (updated in place). Intermediate centers
  // only need to reach the quadratic-convergence region; the final one is
  // polished tightly so the m/t suboptimality bound applies.
  NewtonResult center(Eigen::VectorXd& x, const Eigen::VectorXd& c, double t,
                      double dec2_tol = 2e-10) {
    NewtonResult res;
    const int n = prob.n;
    const int p = static_cast<int>(prob.Aeq.rows());
    Eigen::VectorXd g(n);
    Eigen::MatrixXd H(n, n);
    Eigen::MatrixXd kkt(n + p, n + p);
    Eigen::VectorXd rhs(n + p), sol(n + p), xn(n), gt(n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    for (int it = 0; it < 80; ++it) {
      if (newton_used >= max_newton) return res;
      ++newton_used;
      double phi = 0.0;
      if (!prob.full(x, &phi, g, H)) {
        res.singular = true;  // lost feasibility: should not happen
        return res;
      }
      const double f0 = t * c.dot(x) + phi;
      gt = g;
      gt.noalias() += t * c;
      const double ridge = 1e-12 * std::max(1.0, H.diagonal().maxCoeff());
      kkt.setZero();
      kkt.topLeftCorner(n, n) = H;
      kkt.topLeftCorner(n, n).diagonal().array() += ridge;
      if (p > 0) {
        kkt.topRightCorner(n, p) = prob.Aeq.transpose();
        kkt.bottomLeftCorner(p, n) = prob.Aeq;
      }
      rhs.head(n) = -gt;
      rhs.tail(p).setZero();
      lu.compute(kkt);
      sol = lu.solve(rhs);
      if (!sol.allFinite()) {
        kkt.topLeftCorner(n, n).diagonal().array() += 1e-8;
        sol = Eigen::PartialPivLU<Eigen::MatrixXd>(kkt).solve(rhs);
        if (!sol.allFinite()) {
          res.singular = true;
          return res;
        }
      }
      const auto dx = sol.head(n);
      const double dec2 = -gt.dot(dx);
      if (dec2 <= dec2_tol) {
        res.converged = true;
        return res;
      }
      // backtracking line search
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        xn = x;
        xn.noalias() += alpha * dx;
        double phin;
        if (prob.value(xn, &phin)) {
          const double fn = t * c.dot(xn) + phin;
          if (fn <= f0 - 1e-4 * alpha * dec2) {
            x = xn;
            moved = true;
            break;
          }
        }
        alpha *= 0.6;
      }
      if (!moved) {
        res.stalled = true;
        return res;
      }
      if (early_stop && early_stop(x)) {
        res.early_stop = true;
        return res;
      }
    }
    return res;
  }
};

struct Scaled {
  Problem base;          // without phase-I slack
  Eigen::VectorXd cobj;  // internal minimize objective
  double obj_const = 0.0;
  double obj_sign = 1.0;  // +1 minimize, -1 maximize (applied on report)
};

// Builds compressed, per-block-normalized solver data from the program.
Scaled prepare(const ConicProgram& p) {
  Scaled s;
  Problem& pr = s.base;
  pr.n = p.num_vars();
  for (const auto& l : p.lmi_blocks()) {
    LmiData d;
    d.m = l.dim;
    double scale = l.F0.cwiseAbs().maxCoeff();
    for (const auto& [v, G] : l.coefs)
      scale = std::max(scale, G.cwiseAbs().maxCoeff());
    const double inv = 1.0 / std::max(1.0, scale);
    d.F0 = l.F0 * inv;
    d.vars.reserve(l.coefs.size());
    d.Gstack.resize(d.m, d.m * static_cast<int>(l.coefs.size()));
    int j = 0;
    for (const auto& [v, G] : l.coefs) {
      d.vars.push_back(v);
      d.Gstack.middleCols(j * d.m, d.m) = G * inv;
      ++j;
    }
    pr.complexity += d.m;
    pr.lmis.push_back(std::move(d));
  }
  for (const auto& b : p.soc_blocks()) {
    SocData d;
    d.vars = nonzero_union({&b.c}, &b.A);
    const int k = static_cast<int>(d.vars.size());
    d.A.resize(b.A.rows(), k);
    for (int i = 0; i < k; ++i) d.A.col(i) = b.A.col(d.vars[i]);
    d.b = b.b;
    d.c = compress(b.c, d.vars);
    d.d = b.d;
    double scale = std::max(d.c.cwiseAbs().maxCoeff(), std::abs(d.d));
    if (d.A.size() > 0)
      scale = std::max({scale, d.A.cwiseAbs().maxCoeff(),
                        d.b.size() ? d.b.cwiseAbs().maxCoeff() : 0.0});
    const double inv = 1.0 / std::max(1.0, scale);
    d.A *= inv;
    d.b *= inv;
    d.c *= inv;
    d.d *= inv;
    d.hess_const = 2.0 * d.A.transpose() * d.A - 2.0 * d.c * d.c.transpose();
    pr.complexity += 2;
    pr.socs.push_back(std::move(d));
  }
  for (const auto& r : p.ineq_rows()) {
    RowData d;
    d.vars = nonzero_union({&r.a}, nullptr);
    d.a = compress(r.a, d.vars);
    d.b = r.b;
    double scale = std::abs(d.b);
    if (d.a.size() > 0) scale = std::max(scale, d.a.cwiseAbs().maxCoeff());
    const double inv = 1.0 / std::max(1.0, scale);
    d.a *= inv;
    d.b *= inv;
    pr.complexity += 1;
    pr.rows.push_back(std::move(d));
  }
  for (const auto& e : p.exp_rows()) {
    ExpData d;
    d.vars = nonzero_union({&e.a, &e.c}, nullptr);
    d.a = compress(e.a, d.vars);
    d.b = e.b;
    d.c = compress(e.c, d.vars);
    d.d = e.d;
    // scale the bound side only; shift the exponent accordingly
    double scale = std::max(std::abs(d.d),
                            d.c.size() ? d.c.cwiseAbs().maxCoeff() : 0.0);
    const double sigma = std::max(1.0, scale);
    d.c /= sigma;
    d.d /= sigma;
    d.b -= std::log(sigma);
    pr.complexity += 1;
    pr.exps.push_back(std::move(d));
  }
  const int p_eq = static_cast<int>(p.eq_rows().size());
  pr.Aeq.resize(p_eq, pr.n);
  pr.beq.resize(p_eq);
  for (int i = 0; i < p_eq; ++i) {
    Eigen::VectorXd a = p.eq_rows()[i].a;
    double b = -p.eq_rows()[i].b;  // a'x + b_row = 0  ->  a'x = -b_row
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    pr.Aeq.row(i) = a.transpose() / scale;
    pr.beq(i) = b / scale;
  }
  // objective
  s.obj_sign = p.sense() == Sense::minimize ? 1.0 : -1.0;
  s.cobj = Eigen::VectorXd::Zero(pr.n);
  for (const auto& [v, c] : p.objective().terms()) s.cobj(v) += c;
  s.cobj *= s.obj_sign;
  s.obj_const = p.objective().constant();
  return s;
}

// Largest relaxation any constraint needs at x (scaled units); also reports
// the margin of the tightest constraint (negative margin = infeasible).
double needed_relax(const Problem& pr, const Eigen::VectorXd& x) {
  double need = -kInf;
  for (const auto& l : pr.lmis) {
    Eigen::MatrixXd F = l.F0;
    for (size_t j = 0; j < l.vars.size(); ++j)
      F += x(l.vars[j]) * l.Gstack.middleCols(j * l.m, l.m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(F,
                                                       Eigen::EigenvaluesOnly);
    need = std::max(need, -eig.eigenvalues().minCoeff());
  }
  for (const auto& so : pr.socs) {
    const Eigen::VectorXd xa = compress(x, so.vars);
    const double t = so.c.dot(xa) + so.d;
    const double normu = (so.A * xa + so.b).norm();
    need = std::max(need, normu - t);
  }
  for (const auto& r : pr.rows) {
    double slack = r.b;
    for (size_t i = 0; i < r.vars.size(); ++i) slack += r.a(i) * x(r.vars[i]);
    need = std::max(need, -slack);
  }
  for (const auto& e : pr.exps) {
    double u = e.b, v = e.d;
    for (size_t i = 0; i < e.vars.size(); ++i) {
      u += e.a(i) * x(e.vars[i]);
      v += e.c(i) * x(e.vars[i]);
    }
    const double eu = u > 500.0 ? kInf : std::exp(u);
    need = std::max(need, eu - v);
  }
  return need;
}

// Phase-I copy: every constraint gains +s (slack variable index n), plus a
// large trust ball ||x - x0|| <= r that keeps the relaxed problem bounded.
Problem augment(const Problem& pr, const Eigen::VectorXd& x0) {
  Problem a = pr;
  a.n = pr.n + 1;
  a.slack_var = pr.n;
  for (auto& l : a.lmis) {
    Eigen::MatrixXd G = l.Gstack;
    l.Gstack.resize(l.m, G.cols() + l.m);
    l.Gstack.leftCols(G.cols()) = G;
    l.Gstack.rightCols(l.m) = Eigen::MatrixXd::Identity(l.m, l.m);
    l.vars.push_back(a.slack_var);
  }
  for (auto& so : a.socs) {
    so.vars.push_back(a.slack_var);
    const int k = static_cast<int>(so.vars.size());
    Eigen::MatrixXd A = so.A;
    so.A.resize(A.rows(), k);
    so.A.leftCols(k - 1) = A;
    so.A.col(k - 1).setZero();
    Eigen::VectorXd c = so.c;
    so.c.resize(k);
    so.c.head(k - 1) = c;
    so.c(k - 1) = 1.0;
    so.hess_const = 2.0 * so.A.transpose() * so.A - 2.0 * so.c * so.c.transpose();
  }
  for (auto& r : a.rows) {
    r.vars.push_back(a.slack_var);
    Eigen::VectorXd v = r.a;
    r.a.resize(v.size() + 1);
    r.a.head(v.size()) = v;
    r.a(v.size()) = 1.0;
  }
  for (auto& e : a.exps) {
    e.vars.push_back(a.slack_var);
    Eigen::VectorXd av = e.a, cv = e.c;
    e.a.resize(av.size() + 1);
    e.a.head(av.size()) = av;
    e.a(av.size()) = 0.0;
    e.c.resize(cv.size() + 1);
    e.c.head(cv.size()) = cv;
    e.c(cv.size()) = 1.0;
  }
  Eigen::MatrixXd Aeq = a.Aeq;
  a.Aeq.resize(Aeq.rows(), a.n);
  a.Aeq.leftCols(pr.n) = Aeq;
  a.Aeq.col(pr.n).setZero();
  {
    SocData ball;
    ball.vars.resize(pr.n);
    for (int i = 0; i < pr.n; ++i) ball.vars[i] = i;
    ball.A = Eigen::MatrixXd::Identity(pr.n, pr.n);
    ball.b = -x0;
    ball.c = Eigen::VectorXd::Zero(pr.n);
    ball.d = 1e4 * (1.0 + x0.norm());
    ball.hess_const = 2.0 * Eigen::MatrixXd::Identity(pr.n, pr.n);
    a.complexity += 2;
    a.socs.push_back(std::move(ball));
  }
  return a;
}

}  // namespace

SolveReport solve(const ConicProgram& p, const SolveOptions& opts) {
  const auto t_start = std::chrono::steady_clock::now();
  SolveReport rep;
  const bool verbose =
      opts.verbose || (std::getenv("SWIPT_SOLVER_VERBOSE") != nullptr);
  auto finish = [&](Status st) {
    rep.status = st;
    rep.solve_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    if (verbose)
      std::cerr << "[solver] status=" << to_string(st)
                << " obj=" << rep.objective_value
                << " newton=" << rep.newton_iters << "\n";
    return rep;
  };

  Scaled sc = prepare(p);
  Problem& pr = sc.base;

  // start: warm hint projected to the equality manifold, else min-norm point
  Eigen::VectorXd x = Eigen::VectorXd::Zero(pr.n);
  const int p_eq = static_cast<int>(pr.Aeq.rows());
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> eqdec;
  if (p_eq > 0) {
    eqdec.compute(pr.Aeq);
    x = eqdec.solve(pr.beq);
    if ((pr.Aeq * x - pr.beq).cwiseAbs().maxCoeff() >
        1e-8 * (1.0 + pr.beq.cwiseAbs().maxCoeff()))
      return finish(Status::infeasible);
  }
  if (p.initial_point() && p.initial_point()->size() == pr.n &&
      p.initial_point()->allFinite()) {
    Eigen::VectorXd hint = *p.initial_point();
    if (p_eq > 0) {
      // project onto Aeq z = beq
      hint -= pr.Aeq.transpose() *
              (pr.Aeq * pr.Aeq.transpose())
                  .ldlt()
                  .solve(pr.Aeq * hint - pr.beq);
    }
    x = hint;
  }

  BarrierSolver solver;
  solver.max_newton = opts.max_newton;
  solver.verbose = verbose;

  // points hugging the boundary closer than 1e-6 destabilize the Newton
  // system; phase I pushes them to a healthy interior margin first
  const double margin = needed_relax(pr, x);
  bool feasible_point = margin < -1e-6;

  if (!feasible_point) {
    // ---- phase I: minimize the shared relaxation s
    Problem aug = augment(pr, x);
    solver.prob = std::move(aug);
    Eigen::VectorXd xs(pr.n + 1);
    xs.head(pr.n) = x;
    xs(pr.n) = margin + std::max(0.01, 0.5 * std::abs(margin));
    Eigen::VectorXd cs = Eigen::VectorXd::Zero(pr.n + 1);
    cs(pr.n) = 1.0;
    // push well past mere feasibility: a healthy interior margin keeps the
    // phase-II KKT systems well conditioned
    const int slack = pr.n;
    solver.early_stop = [slack](const Eigen::VectorXd& xx) {
      return xx(slack) < -1e-3;
    };
    const double m1 = solver.prob.complexity;
    double t = m1 / std::max(1.0, std::abs(xs(pr.n)));
    bool decided = false;
    while (solver.newton_used < opts.max_newton) {
      NewtonResult nr = solver.center(xs, cs, t, 1e-2);
      if (nr.early_stop) {
        feasible_point = true;
        decided = true;
        break;
      }
      if (nr.singular) break;
      // infeasibility certificate: optimum of s is >= s_cur - gap (valid
      // once the center converged; the loose tolerance is inside margins)
      if (nr.converged && xs(pr.n) - 2.0 * m1 / t > -1e-9) {
        rep.newton_iters = solver.newton_used;
        return finish(Status::infeasible);
      }
      if (nr.stalled && xs(pr.n) >= -1e-9) {
        rep.newton_iters = solver.newton_used;
        return finish(Status::infeasible);
      }
      if (m1 / t < 1e-10) break;
      if (nr.converged) t *= opts.mu;
    }
    if (!decided) {
      if (xs(pr.n) < -1e-9) {
        feasible_point = true;
      } else {
        rep.newton_iters = solver.newton_used;
        return finish(solver.newton_used >= opts.max_newton
                          ? Status::max_iter
                          : Status::infeasible);
      }
    }
    x = xs.head(pr.n);
    solver.early_stop = nullptr;
  }

  // ---- phase II
  solver.prob = pr;
  const double m2 = std::max(1.0, pr.complexity);
  const double f0 = sc.cobj.dot(x);
  double t = m2 / std::clamp(1.0 + std::abs(f0), 1.0, 1e3);
  if (opts.initial_gap > 0.0)
    t = std::max(t, m2 / std::max(opts.initial_gap, 10.0 * opts.gap_tol));
  double best_obj = kInf;
  Eigen::VectorXd best_x = x;
  bool any_center = false;
  double certified_gap = kInf;  // best gap at a decrement-converged center
  Status out = Status::optimal;
  const double t_final = m2 / opts.gap_tol;
  while (true) {
    const bool final_stage = t >= t_final * (1.0 - 1e-9);
    NewtonResult nr = solver.center(x, sc.cobj, t, final_stage ? 1e-4 : 1e-2);
    if (nr.singular) {
      out = any_center ? Status::max_iter : Status::numerical_failure;
      break;
    }
    any_center = true;
    if (nr.converged) certified_gap = std::min(certified_gap, m2 / t);
    const double obj = sc.cobj.dot(x);
    if (obj < best_obj) {
      best_obj = obj;
      best_x = x;
    }
    if (obj < -1e13) {
      rep.newton_iters = solver.newton_used;
      return finish(Status::unbounded);
    }
    if (verbose)
      std::cerr << "[solver] t=" << t << " gap=" << m2 / t << " obj=" << obj
                << " newton=" << solver.newton_used << "\n";
    if (nr.converged && final_stage) break;
    if (solver.newton_used >= opts.max_newton || nr.stalled) {
      out = certified_gap <= 1e-6 ? Status::optimal : Status::max_iter;
      break;
    }
    if (nr.converged) t = std::min(t * opts.mu, t_final);
  }
  rep.newton_iters = solver.newton_used;
  rep.final_t = t;
  if (out == Status::optimal || out == Status::max_iter) {
    rep.primal = best_x;
    rep.objective_value = sc.obj_sign * best_obj + sc.obj_const;
  }
  return finish(out);
}

}  // namespace swiptsec::conic
