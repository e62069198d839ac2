// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "swiptsec/channel.hpp"
#include "swiptsec/conic/builders.hpp"
#include "swiptsec/conic/program.hpp"

using namespace swiptsec;
using namespace swiptsec::conic;

namespace {

CMat random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  return 0.5 * (a + a.adjoint());
}

CVec random_cvec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v;
}

}  // namespace

TEST_CASE("embed_hermitian identity and eigenvalue doubling") {
  CHECK(embed_hermitian(CMat::Identity(2, 2)) ==
        Eigen::MatrixXd::Identity(4, 4));

  CMat h(2, 2);
  h << 1.0, 1.0, 1.0, 1.0;  // eigenvalues {2, 0}
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(embed_hermitian(h));
  Eigen::VectorXd v = eig.eigenvalues();
  CHECK(v(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v(2) == doctest::Approx(2.0));
  CHECK(v(3) == doctest::Approx(2.0));
}

TEST_CASE("embed_hermitian preserves the spectrum on random matrices") {
  std::mt19937_64 rng(3);
  const CMat h = random_hermitian(4, rng);
  Eigen::SelfAdjointEigenSolver<CMat> ec(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> er(embed_hermitian(h));
  CHECK(er.eigenvalues().minCoeff() ==
        doctest::Approx(ec.eigenvalues().minCoeff()).epsilon(1e-10));
}

TEST_CASE("embed_hermitian preserves PSD-ness both directions") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);  // sizes 2..8
    const CMat h = random_hermitian(n, rng);
    const bool psd_c =
        Eigen::SelfAdjointEigenSolver<CMat>(h).eigenvalues().minCoeff() >=
        -1e-12;
    const bool psd_r = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                           embed_hermitian(h))
                           .eigenvalues()
                           .minCoeff() >= -1e-12;
    CHECK(psd_c == psd_r);
  }
}

TEST_CASE("embed_hermitian rejects non-Hermitian input") {
  CMat h(2, 2);
  h << 1.0, Complex(0, 1), Complex(0, 1), 1.0;  // (0,1) should be conj of (1,0)
  CHECK_THROWS_AS(embed_hermitian(h), std::invalid_argument);
}

TEST_CASE("solve: linear sanity  min x s.t. x >= 3") {
  ConicProgram p;
  Var x = p.add_var("x");
  p.set_objective(Sense::minimize, LinExpr(x));
  p.add_ineq(LinExpr(x) - 3.0);
  const auto r = solve(p);
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective_value == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("solve: min Tr(X) with X >= I is 2") {
  ConicProgram p;
  HermitianVar X = p.add_hermitian("X", 2);
  // X - I >= 0
  HermitianExpr h(2);
  MatExpr m(2);
  m.constant = -CMat::Identity(2, 2);
  m.add(1.0, X);
  h.add_mat(m);
  p.add_lmi(h);
  p.set_objective(Sense::minimize, X.trace());
  const auto r = solve(p);
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective_value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("solve: MRT optimum of the rank-relaxed power problem") {
  // max h^H Q h  s.t.  Tr Q <= P, Q >= 0   ->  P ||h||^2
  std::mt19937_64 rng(8);
  const CVec h = random_cvec(4, rng);
  const double P = 10.0;
  ConicProgram p;
  HermitianVar Q = p.add_hermitian("Q", 4);
  p.add_psd(Q);
  MatExpr m(4);
  m.add(1.0, Q);
  p.add_ineq(P - Q.trace());
  p.set_objective(Sense::maximize, m.quad(h));
  const auto r = solve(p);
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective_value ==
        doctest::Approx(P * h.squaredNorm()).epsilon(1e-6));
}

TEST_CASE("solve: SOC and equality rows") {
  // min t s.t. ||(x, y)|| <= t, x + y = 2  ->  t = sqrt(2), x = y = 1
  ConicProgram p;
  Var x = p.add_var("x"), y = p.add_var("y"), t = p.add_var("t");
  p.add_soc({LinExpr(x), LinExpr(y)}, LinExpr(t));
  p.add_eq(LinExpr(x) + LinExpr(y) - 2.0);
  p.set_objective(Sense::minimize, LinExpr(t));
  const auto r = solve(p);
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective_value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(r.primal(0) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("solve: exponential row  min tau s.t. e^x <= tau, x >= 1") {
  ConicProgram p;
  Var x = p.add_var("x"), tau = p.add_var("tau");
  p.add_exp(LinExpr(x), LinExpr(tau));
  p.add_ineq(LinExpr(x) - 1.0);
  p.set_objective(Sense::minimize, LinExpr(tau));
  const auto r = solve(p);
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective_value == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
}

TEST_CASE("solve: infeasible rows are detected") {
  ConicProgram p;
  Var x = p.add_var("x");
  p.add_ineq(LinExpr(x) - 1.0);    // x >= 1
  p.add_ineq(-LinExpr(x) - 1.0);   // x <= -1
  p.set_objective(Sense::minimize, LinExpr(x));
  CHECK(solve(p).status == Status::infeasible);
}

TEST_CASE("schur_secrecy_lmi matches the scalar rate inequality") {
  std::mt19937_64 rng(21);
  ChannelSet ch = generate_channels(3, 1, 1, 5);

  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const CVec w = random_cvec(3, rng);
    std::uniform_real_distribution<double> ur(0.0, 4.0);
    const double R = ur(rng);

    // the LMI's phase convention: rotate w so h_s^H w is real nonnegative
    const Complex g = ch.h_s.adjoint() * w;
    const CVec wr = w * std::exp(Complex(0, -std::arg(g)));

    ConicProgram p;
    ComplexVecVar wv = p.add_complex_vector("w", 3);
    HermitianExpr s = schur_secrecy_lmi(wv, R, ch, 0);
    Eigen::VectorXd x(p.num_vars());
    for (int i = 0; i < 3; ++i) {
      x(wv.re(i).index) = wr(i).real();
      x(wv.im(i).index) = wr(i).imag();
    }
    const double mineig = Eigen::SelfAdjointEigenSolver<CMat>(s.eval(x))
                              .eigenvalues()
                              .minCoeff();

    const double lhs = std::norm(Complex(ch.h_s.adjoint() * wr)) / ch.sigma_s2;
    const double rhs =
        std::pow(2.0, R) *
            (1.0 + std::norm(Complex(ch.h_e[0].adjoint() * wr)) / ch.sigma_e2) -
        1.0;
    const bool scalar_ok = lhs >= rhs;
    const bool lmi_ok = mineig >= -1e-9;
    if (std::abs(lhs - rhs) > 1e-6) {  // skip knife-edge cases
      CHECK(scalar_ok == lmi_ok);
      ++checked;
    }
  }
  CHECK(checked > 900);
}

TEST_CASE("schur_secrecy_lmi zero-rate, zero-leakage case") {
  ChannelSet ch = generate_channels(2, 1, 1, 6);
  ch.h_e[0] = CVec(2);
  ch.h_e[0] << 1.0, 0.0;
  ConicProgram p;
  ComplexVecVar wv = p.add_complex_vector("w", 2);
  HermitianExpr s = schur_secrecy_lmi(wv, 0.0, ch, 0);
  // w orthogonal to the eavesdropper
  Eigen::VectorXd x = Eigen::VectorXd::Zero(p.num_vars());
  x(wv.re(1).index) = 1.0;
  const CMat sm = s.eval(x);
  // column entries vanish; PSD iff the diagonal Re{w^H h_s} >= 0
  CHECK(std::abs(sm(0, 2)) < 1e-12);
  const double d = std::real(Complex(ch.h_s.adjoint() * CVec(x(2) * CVec::Unit(2, 1))));
  const double mineig =
      Eigen::SelfAdjointEigenSolver<CMat>(sm).eigenvalues().minCoeff();
  CHECK((mineig >= -1e-12) == (d / std::sqrt(ch.sigma_s2) >= -1e-12));
}

TEST_CASE("LMI builders are affine in the variables") {
  std::mt19937_64 rng(31);
  ChannelSet ch = generate_channels(3, 1, 1, 12);
  ConicProgram p;
  ComplexVecVar wv = p.add_complex_vector("w", 3);
  HermitianExpr s = schur_secrecy_lmi(wv, 1.3, ch, 0);
  Eigen::VectorXd x1(p.num_vars()), x2(p.num_vars());
  for (int i = 0; i < p.num_vars(); ++i) {
    std::normal_distribution<double> g(0.0, 1.0);
    x1(i) = g(rng);
    x2(i) = g(rng);
  }
  const double a = 1.7, b = -0.4;
  const CMat lhs = s.eval(a * x1 + b * x2);
  const CMat rhs = a * s.eval(x1) + b * s.eval(x2) -
                   (a + b - 1.0) * s.constant();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("nemirovski_robust_lmi: zero radius reduces to the nominal block") {
  ChannelSet ch = generate_channels(3, 1, 1, 14);
  const double R = 1.0;

  // Solve: min ||w||^2-proxy s.t. robust block with eps = 0 and the user
  // diagonal fixed via phase rows; compare with the plain Schur block.
  auto solve_variant = [&](bool robust) {
    ConicProgram p;
    ComplexVecVar wv = p.add_complex_vector("w", 3);
    Var s1 = p.add_var("s1");
    p.add_soc(wv.real_coords(), LinExpr(s1));
    add_phase_convention(p, wv, ch.h_s);
    if (robust) {
      const LinExpr diag =
          (1.0 / std::sqrt(ch.sigma_s2)) * wv.dot(ch.h_s).real_part();
      auto rl = nemirovski_robust_lmi(p, diag, wv, ch.h_e[0], R,
                                      std::sqrt(ch.sigma_e2), 0.0);
      p.add_lmi(rl.block);
    } else {
      p.add_lmi(schur_secrecy_lmi(wv, R, ch, 0));
    }
    // demand some user gain so w = 0 is cut off
    p.add_ineq(wv.dot(ch.h_s).real_part() - 1.0);
    p.set_objective(Sense::minimize, LinExpr(s1));
    return solve(p);
  };
  const auto a = solve_variant(false);
  const auto b = solve_variant(true);
  REQUIRE(a.status == Status::optimal);
  REQUIRE(b.status == Status::optimal);
  CHECK(b.objective_value ==
        doctest::Approx(a.objective_value).epsilon(1e-4));
}

TEST_CASE("nemirovski_robust_lmi: sampled implication over the ball") {
  ChannelSet ch = generate_channels(3, 2, 1, 15);
  const double R = 0.8, eps = 0.1;

  ConicProgram p;
  ComplexVecVar wv = p.add_complex_vector("w", 3);
  Var s1 = p.add_var("s1");
  p.add_soc(wv.real_coords(), LinExpr(s1));
  add_phase_convention(p, wv, ch.h_s);
  const LinExpr diag =
      (1.0 / std::sqrt(ch.sigma_s2)) * wv.dot(ch.h_s).real_part();
  std::vector<HermitianExpr> blocks;
  for (int k = 0; k < 2; ++k) {
    auto rl = nemirovski_robust_lmi(p, diag, wv, ch.h_e[k], R,
                                    std::sqrt(ch.sigma_e2), eps);
    blocks.push_back(rl.block);
    p.add_lmi(rl.block);
  }
  p.add_ineq(wv.dot(ch.h_s).real_part() - 2.0);
  p.set_objective(Sense::minimize, LinExpr(s1));
  const auto r = solve(p);
  REQUIRE(r.status == Status::optimal);

  CVec w(3);
  for (int i = 0; i < 3; ++i)
    w(i) = {r.primal(wv.re(i).index), r.primal(wv.im(i).index)};
  const double duser = std::real(Complex(ch.h_s.adjoint() * w)) /
                       std::sqrt(ch.sigma_s2);

  // for every sampled error the perturbed nominal block must stay PSD
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    for (int k = 0; k < 2; ++k) {
      CVec e = random_cvec(3, rng);
      e *= eps * std::pow(rng() / static_cast<double>(UINT64_MAX), 1.0 / 6.0) /
           e.norm();
      const double leak =
          std::abs(Complex((ch.h_e[k] + e).adjoint() * w)) *
          std::pow(2.0, R / 2.0) / std::sqrt(ch.sigma_e2);
      const double norm2 = leak * leak + (std::pow(2.0, R) - 1.0);
      CHECK(duser * duser >= norm2 - 1e-6);
    }
  }
}

TEST_CASE("s_procedure_lmi: zero radius reduces to the scalar constraint") {
  std::mt19937_64 rng(41);
  const CVec h = random_cvec(3, rng);
  // max t s.t. (h)^H Q (h) >= t via S-proc with eps = 0, Tr Q <= 1
  ConicProgram p;
  HermitianVar Q = p.add_hermitian("Q", 3);
  p.add_psd(Q);
  Var t = p.add_var("t");
  MatExpr m(3);
  m.add(1.0, Q);
  auto sp = s_procedure_lmi(p, m, h, 0.0, LinExpr(t));
  p.add_lmi(sp.block);
  p.add_ineq(1.0 - Q.trace());
  p.set_objective(Sense::maximize, LinExpr(t));
  const auto r = solve(p);
  REQUIRE(r.status == Status::optimal);
  CHECK(r.objective_value == doctest::Approx(h.squaredNorm()).epsilon(1e-4));
}

TEST_CASE("s_procedure_lmi: sampled implication and closed-form infeasibility") {
  std::mt19937_64 rng(51);
  const CVec h = random_cvec(3, rng);
  const double eps = 0.2;

  SUBCASE("feasible point satisfies the quadratic for every ball sample") {
    ConicProgram p;
    HermitianVar Q = p.add_hermitian("Q", 3);
    p.add_psd(Q);
    Var t = p.add_var("t");
    MatExpr m(3);
    m.add(1.0, Q);
    auto sp = s_procedure_lmi(p, m, h, eps, LinExpr(t));
    p.add_lmi(sp.block);
    p.add_ineq(1.0 - Q.trace());
    p.set_objective(Sense::maximize, LinExpr(t));
    const auto r = solve(p);
    REQUIRE(r.status == Status::optimal);
    CMat Qv(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const CLinExpr e = Q.entry(i, j);
        Qv(i, j) = e.eval(r.primal);
      }
    for (int trial = 0; trial < 1000; ++trial) {
      CVec e = random_cvec(3, rng);
      e *= eps / e.norm();
      const double q =
          std::real(Complex((h + e).adjoint() * Qv * (h + e)));
      CHECK(q >= r.objective_value - 1e-6);
    }
  }

  SUBCASE("demanding more than the worst-case value is infeasible") {
    // M = I: worst case of (h+e)^H (h+e) is (||h||+eps)^2 on the ball.
    const double unattainable = (h.norm() + eps) * (h.norm() + eps) + 0.05;
    ConicProgram p;
    // constant M: use a Hermitian var forced to identity via equality rows
    HermitianVar Q = p.add_hermitian("Q", 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const CLinExpr e = Q.entry(i, j);
        const double want = i == j ? 1.0 : 0.0;
        p.add_eq(e.real_part() - want);
        if (i != j) p.add_eq(e.imag_part());
      }
    MatExpr m(3);
    m.add(1.0, Q);
    auto sp = s_procedure_lmi(p, m, h, eps, LinExpr(unattainable));
    p.add_lmi(sp.block);
    p.set_objective(Sense::minimize, LinExpr(sp.multiplier));
    CHECK(solve(p).status == Status::infeasible);
  }

  SUBCASE("...but the worst-case value itself minus slack is feasible") {
    const double attainable = (h.norm() - eps) * (h.norm() - eps) - 0.05;
    ConicProgram p;
    HermitianVar Q = p.add_hermitian("Q", 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const CLinExpr e = Q.entry(i, j);
        const double want = i == j ? 1.0 : 0.0;
        p.add_eq(e.real_part() - want);
        if (i != j) p.add_eq(e.imag_part());
      }
    MatExpr m(3);
    m.add(1.0, Q);
    auto sp = s_procedure_lmi(p, m, h, eps, LinExpr(attainable));
    p.add_lmi(sp.block);
    p.set_objective(Sense::minimize, LinExpr(sp.multiplier));
    CHECK(solve(p).status == Status::optimal);
  }
}

TEST_CASE("program dump emits one line per structural element") {
  ConicProgram p;
  Var x = p.add_var("x");
  p.add_ineq(LinExpr(x) - 1.0);
  p.set_objective(Sense::minimize, LinExpr(x));
  std::ostringstream os;
  p.dump(os);
  CHECK(os.str().find("vars 1") != std::string::npos);
  CHECK(os.str().find("geq0") != std::string::npos);
}
