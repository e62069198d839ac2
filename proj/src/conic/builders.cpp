// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "swiptsec/conic/builders.hpp"

#include <cmath>
#include <stdexcept>

namespace swiptsec::conic {

HermitianExpr schur_rate_lmi(const LinExpr& diag, const ComplexVecVar& w,
                             const CVec& h_e, double R, double sigma_e) {
  if (R < 0.0) throw std::invalid_argument("schur_rate_lmi: negative rate");
  const double gain = std::pow(2.0, R / 2.0) / sigma_e;
  HermitianExpr s(3);
  s.add_diag_entry(0, diag);
  s.add_diag_entry(1, diag);
  s.add_diag_entry(2, diag);
  CLinExpr leak = w.dot_conj(h_e);
  leak *= Complex(gain, 0.0);
  s.add_entry(0, 2, leak);
  s.add_entry(1, 2, CLinExpr(Complex(std::sqrt(std::pow(2.0, R) - 1.0), 0.0)));
  return s;
}

HermitianExpr schur_secrecy_lmi(const ComplexVecVar& w, double R,
                                const ChannelSet& ch, int k) {
  if (k < 0 || k >= ch.num_eves())
    throw std::invalid_argument("schur_secrecy_lmi: eavesdropper index");
  const double sigma_s = std::sqrt(ch.sigma_s2);
  const LinExpr diag = (1.0 / sigma_s) * w.dot(ch.h_s).real_part();
  return schur_rate_lmi(diag, w, ch.h_e[k], R, std::sqrt(ch.sigma_e2));
}

void add_phase_convention(ConicProgram& prog, const ComplexVecVar& w,
                          const CVec& h_s) {
  const CLinExpr g = w.dot(h_s);  // h_s^H w
  prog.add_eq(g.imag_part());
  prog.add_ineq(g.real_part());
}

RobustLmi nemirovski_robust_lmi(ConicProgram& prog, const LinExpr& diag,
                                const ComplexVecVar& w, const CVec& h_e_nominal,
                                double R, double sigma_e, double eps) {
  if (eps < 0.0)
    throw std::invalid_argument("nemirovski_robust_lmi: negative radius");
  const int n = w.n;
  const double gain = std::pow(2.0, R / 2.0) / sigma_e;
  HermitianExpr base = schur_rate_lmi(diag, w, h_e_nominal, R, sigma_e);
  if (eps == 0.0) {
    // zero radius: the extension is vacuous, the nominal block is exact
    return RobustLmi{std::move(base), Var{-1}};
  }
  HermitianExpr s(3 + n);
  // top-left S_{k,1}
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      CLinExpr e(base.constant()(i, j));
      for (const auto& [v, m] : base.coefs()) e.add_term(Var{v}, m(i, j));
      s.add_entry(i, j, e);
    }
  Var lambda = prog.add_nonneg("nem.lambda");
  // - lambda on the (2,2) corner of S_{k,1}, + lambda I on the trailing block
  s.add_entry(2, 2, CLinExpr(LinExpr::term(lambda, -1.0)));
  for (int j = 0; j < n; ++j)
    s.add_entry(3 + j, 3 + j, CLinExpr(LinExpr(lambda)));
  // off-diagonal rows: -eps * (2^{R/2}/sigma_e) * w^H in row 0
  for (int j = 0; j < n; ++j) {
    CLinExpr e;
    e.add_term(w.re(j), Complex(-eps * gain, 0.0));
    e.add_term(w.im(j), Complex(0.0, eps * gain));
    s.add_entry(0, 3 + j, e);
  }
  return RobustLmi{std::move(s), lambda};
}

RobustLmi s_procedure_lmi(ConicProgram& prog, const MatExpr& m, const CVec& h,
                          double eps, const LinExpr& rhs) {
  if (eps < 0.0) throw std::invalid_argument("s_procedure_lmi: negative radius");
  if (static_cast<int>(h.size()) != m.n)
    throw std::invalid_argument("s_procedure_lmi: dimension mismatch");
  const int n = m.n;
  if (eps == 0.0) {
    // zero radius: exactly the scalar constraint h^H M h >= rhs, expressed
    // as a 1x1 block (the multiplier route only approaches it as alpha
    // grows without bound)
    HermitianExpr s(1);
    LinExpr corner = m.quad(h);
    corner -= rhs;
    s.add_diag_entry(0, corner);
    return RobustLmi{std::move(s), Var{-1}};
  }
  Var alpha = prog.add_nonneg("sproc.alpha");
  HermitianExpr s(n + 1);
  s.add_mat(m, 0, 0);
  for (int i = 0; i < n; ++i)
    s.add_entry(i, i, CLinExpr(LinExpr(alpha)));
  const auto mh = m.mul(h);
  for (int i = 0; i < n; ++i) s.add_entry(i, n, mh[i]);
  LinExpr corner = m.quad(h);
  corner -= rhs;
  corner += LinExpr::term(alpha, -eps * eps);
  s.add_diag_entry(n, corner);
  return RobustLmi{std::move(s), alpha};
}

}  // namespace swiptsec::conic
