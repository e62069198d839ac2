// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "swiptsec/conic/program.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace swiptsec::conic {

namespace {
void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}
}  // namespace

// ---------------------------------------------------------------- LinExpr

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  constant_ += o.constant_;
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  constant_ -= o.constant_;
  for (const auto& [v, c] : o.terms_) terms_.emplace_back(v, -c);
  return *this;
}

LinExpr& LinExpr::operator*=(double s) {
  constant_ *= s;
  for (auto& [v, c] : terms_) c *= s;
  return *this;
}

double LinExpr::eval(const Eigen::VectorXd& x) const {
  double r = constant_;
  for (const auto& [v, c] : terms_) r += c * x(v);
  return r;
}

LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
LinExpr operator*(double s, LinExpr a) { return a *= s; }
LinExpr operator-(LinExpr a) { return a *= -1.0; }

// --------------------------------------------------------------- CLinExpr

CLinExpr::CLinExpr(const LinExpr& re) : constant_(re.constant()) {
  for (const auto& [v, c] : re.terms()) terms_.emplace_back(v, Complex(c, 0.0));
}

CLinExpr& CLinExpr::operator+=(const CLinExpr& o) {
  constant_ += o.constant_;
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

CLinExpr& CLinExpr::operator*=(Complex s) {
  constant_ *= s;
  for (auto& [v, c] : terms_) c *= s;
  return *this;
}

CLinExpr CLinExpr::conjugate() const {
  CLinExpr r;
  r.constant_ = std::conj(constant_);
  r.terms_.reserve(terms_.size());
  for (const auto& [v, c] : terms_) r.terms_.emplace_back(v, std::conj(c));
  return r;
}

LinExpr CLinExpr::real_part() const {
  LinExpr r(constant_.real());
  for (const auto& [v, c] : terms_) r += LinExpr::term(Var{v}, c.real());
  return r;
}

LinExpr CLinExpr::imag_part() const {
  LinExpr r(constant_.imag());
  for (const auto& [v, c] : terms_) r += LinExpr::term(Var{v}, c.imag());
  return r;
}

Complex CLinExpr::eval(const Eigen::VectorXd& x) const {
  Complex r = constant_;
  for (const auto& [v, c] : terms_) r += c * x(v);
  return r;
}

CLinExpr operator*(Complex s, CLinExpr a) { return a *= s; }
CLinExpr operator+(CLinExpr a, const CLinExpr& b) { return a += b; }

// ----------------------------------------------------------- ComplexVecVar

CLinExpr ComplexVecVar::dot_conj(const Eigen::VectorXcd& h) const {
  require(static_cast<int>(h.size()) == n, "dot_conj: dimension mismatch");
  CLinExpr e;
  for (int i = 0; i < n; ++i) {
    // conj(w_i) * h_i = (re_i - j im_i) h_i
    e.add_term(re(i), h(i));
    e.add_term(im(i), Complex(0.0, -1.0) * h(i));
  }
  return e;
}

CLinExpr ComplexVecVar::dot(const Eigen::VectorXcd& h) const {
  return dot_conj(h).conjugate();
}

std::vector<LinExpr> ComplexVecVar::real_coords(double scale) const {
  std::vector<LinExpr> out;
  out.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    out.push_back(LinExpr::term(re(i), scale));
    out.push_back(LinExpr::term(im(i), scale));
  }
  return out;
}

// ------------------------------------------------------------ HermitianVar

CLinExpr HermitianVar::entry(int i, int j) const {
  require(i >= 0 && i < n && j >= 0 && j < n, "HermitianVar: index out of range");
  CLinExpr e;
  if (i == j) {
    e.add_term(Var{offset + i}, 1.0);
    return e;
  }
  const bool upper = i < j;
  const int r = upper ? i : j;
  const int c = upper ? j : i;
  // index of (r, c) among strictly-upper entries in row-major order
  const int k = r * n - r * (r + 1) / 2 + (c - r - 1);
  const int base = offset + n + 2 * k;
  e.add_term(Var{base}, 1.0);
  e.add_term(Var{base + 1}, upper ? Complex(0, 1) : Complex(0, -1));
  return e;
}

LinExpr HermitianVar::trace() const {
  LinExpr t;
  for (int i = 0; i < n; ++i) t += LinExpr::term(Var{offset + i}, 1.0);
  return t;
}

// ----------------------------------------------------------------- MatExpr

CLinExpr MatExpr::entry(int i, int j) const {
  CLinExpr e(constant(i, j));
  for (const auto& [coef, v] : terms) {
    CLinExpr t = v.entry(i, j);
    t *= Complex(coef, 0.0);
    e += t;
  }
  return e;
}

std::vector<CLinExpr> MatExpr::mul(const Eigen::VectorXcd& h) const {
  require(static_cast<int>(h.size()) == n, "MatExpr::mul: dimension mismatch");
  std::vector<CLinExpr> out(n);
  for (int i = 0; i < n; ++i) {
    CLinExpr e;
    for (int j = 0; j < n; ++j) {
      CLinExpr t = entry(i, j);
      t *= h(j);
      e += t;
    }
    out[i] = e;
  }
  return out;
}

LinExpr MatExpr::quad(const Eigen::VectorXcd& h) const {
  require(static_cast<int>(h.size()) == n, "MatExpr::quad: dimension mismatch");
  CLinExpr e;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CLinExpr t = entry(i, j);
      t *= std::conj(h(i)) * h(j);
      e += t;
    }
  return e.real_part();
}

LinExpr MatExpr::trace() const {
  LinExpr t(constant.real().trace());
  for (const auto& [coef, v] : terms) {
    LinExpr vt = v.trace();
    vt *= coef;
    t += vt;
  }
  return t;
}

// ------------------------------------------------------------ HermitianExpr

HermitianExpr::HermitianExpr(int dim)
    : dim_(dim), constant_(Eigen::MatrixXcd::Zero(dim, dim)) {}

Eigen::MatrixXcd& HermitianExpr::coef_for(int var) {
  for (auto& [v, m] : coefs_)
    if (v == var) return m;
  coefs_.emplace_back(var, Eigen::MatrixXcd::Zero(dim_, dim_));
  return coefs_.back().second;
}

void HermitianExpr::add_entry(int i, int j, const CLinExpr& e) {
  require(i >= 0 && i < dim_ && j >= 0 && j < dim_, "HermitianExpr: bad index");
  if (i == j) {
    require(std::abs(e.constant().imag()) < 1e-12,
            "HermitianExpr: complex constant on diagonal");
    constant_(i, i) += e.constant().real();
    for (const auto& [v, c] : e.terms()) {
      require(std::abs(c.imag()) < 1e-12,
              "HermitianExpr: complex coefficient on diagonal");
      coef_for(v)(i, i) += c.real();
    }
    return;
  }
  constant_(i, j) += e.constant();
  constant_(j, i) += std::conj(e.constant());
  for (const auto& [v, c] : e.terms()) {
    auto& m = coef_for(v);
    m(i, j) += c;
    m(j, i) += std::conj(c);
  }
}

void HermitianExpr::add_diag_entry(int i, const LinExpr& e) {
  add_entry(i, i, CLinExpr(e));
}

void HermitianExpr::add_scaled_identity(const LinExpr& e) {
  for (int i = 0; i < dim_; ++i) add_diag_entry(i, e);
}

void HermitianExpr::add_mat(const MatExpr& m, int r0, int c0) {
  require(r0 + m.n <= dim_ && c0 + m.n <= dim_, "HermitianExpr: block overflow");
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      if (r0 + i > c0 + j) continue;  // lower triangle filled by symmetry
      add_entry(r0 + i, c0 + j, m.entry(i, j));
    }
}

Eigen::MatrixXcd HermitianExpr::eval(const Eigen::VectorXd& x) const {
  Eigen::MatrixXcd m = constant_;
  for (const auto& [v, c] : coefs_) m += x(v) * c;
  return m;
}

// ----------------------------------------------------------- ConicProgram

Var ConicProgram::add_var(std::string name) {
  names_.push_back(std::move(name));
  return Var{num_vars_++};
}

Var ConicProgram::add_nonneg(std::string name) {
  Var v = add_var(std::move(name));
  add_ineq(LinExpr(v));
  return v;
}

ComplexVecVar ConicProgram::add_complex_vector(std::string name, int n) {
  ComplexVecVar v{num_vars_, n};
  for (int i = 0; i < n; ++i) {
    names_.push_back(name + ".re" + std::to_string(i));
    names_.push_back(name + ".im" + std::to_string(i));
  }
  num_vars_ += 2 * n;
  return v;
}

HermitianVar ConicProgram::add_hermitian(std::string name, int n) {
  HermitianVar v{num_vars_, n};
  for (int i = 0; i < n; ++i) names_.push_back(name + ".d" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      names_.push_back(name + ".re" + std::to_string(i) + std::to_string(j));
      names_.push_back(name + ".im" + std::to_string(i) + std::to_string(j));
    }
  num_vars_ += v.num_reals();
  return v;
}

void ConicProgram::set_objective(Sense sense, const LinExpr& obj) {
  sense_ = sense;
  objective_ = obj;
}

Eigen::VectorXd ConicProgram::densify(const LinExpr& e) const {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(num_vars_);
  for (const auto& [v, c] : e.terms()) {
    require(v >= 0 && v < num_vars_, "ConicProgram: variable index out of range");
    a(v) += c;
  }
  return a;
}

void ConicProgram::add_eq(const LinExpr& e) {
  eq_rows_.push_back(LinRow{densify(e), e.constant()});
}

void ConicProgram::add_ineq(const LinExpr& e) {
  ineq_rows_.push_back(LinRow{densify(e), e.constant()});
}

void ConicProgram::add_soc(const std::vector<LinExpr>& norm_args,
                           const LinExpr& bound) {
  SocBlock s;
  const int k = static_cast<int>(norm_args.size());
  s.A.resize(k, num_vars_);
  s.b.resize(k);
  for (int i = 0; i < k; ++i) {
    s.A.row(i) = densify(norm_args[i]).transpose();
    s.b(i) = norm_args[i].constant();
  }
  s.c = densify(bound);
  s.d = bound.constant();
  soc_blocks_.push_back(std::move(s));
}

void ConicProgram::add_lmi(const HermitianExpr& h) {
  LmiBlock b;
  b.dim = 2 * h.dim();
  b.F0 = embed_hermitian(h.constant());
  b.coefs.reserve(h.coefs().size());
  for (const auto& [v, m] : h.coefs()) {
    require(v >= 0 && v < num_vars_, "ConicProgram: variable index out of range");
    b.coefs.emplace_back(v, embed_hermitian(m));
  }
  std::sort(b.coefs.begin(), b.coefs.end(),
            [](const auto& a, const auto& b2) { return a.first < b2.first; });
  lmi_blocks_.push_back(std::move(b));
}

void ConicProgram::add_lmi_real(LmiBlock block) {
  require(block.F0.rows() == block.dim && block.F0.cols() == block.dim,
          "LmiBlock: bad dimensions");
  lmi_blocks_.push_back(std::move(block));
}

void ConicProgram::add_psd(const HermitianVar& v) {
  HermitianExpr h(v.n);
  MatExpr m(v.n);
  m.add(1.0, v);
  h.add_mat(m);
  add_lmi(h);
}

void ConicProgram::add_exp(const LinExpr& exponent, const LinExpr& bound) {
  ExpRow r;
  r.a = densify(exponent);
  r.b = exponent.constant();
  r.c = densify(bound);
  r.d = bound.constant();
  exp_rows_.push_back(std::move(r));
}

void ConicProgram::dump(std::ostream& os) const {
  os << "vars " << num_vars_ << "\n";
  os << "objective " << (sense_ == Sense::minimize ? "min" : "max") << " "
     << objective_.constant();
  for (const auto& [v, c] : objective_.terms())
    os << " + " << c << "*x" << v;
  os << "\n";
  auto put_row = [&](const LinRow& r, const char* tag) {
    os << tag << " " << r.b;
    for (int v = 0; v < r.a.size(); ++v)
      if (r.a(v) != 0.0) os << " + " << r.a(v) << "*x" << v;
    os << "\n";
  };
  for (const auto& r : eq_rows_) put_row(r, "eq0");
  for (const auto& r : ineq_rows_) put_row(r, "geq0");
  for (size_t i = 0; i < soc_blocks_.size(); ++i) {
    const auto& s = soc_blocks_[i];
    os << "soc " << i << " rows " << s.A.rows() << "\n";
  }
  for (size_t i = 0; i < lmi_blocks_.size(); ++i) {
    const auto& l = lmi_blocks_[i];
    os << "lmi " << i << " dim " << l.dim << " nvars " << l.coefs.size() << "\n";
    os << "F0\n" << l.F0 << "\n";
    for (const auto& [v, m] : l.coefs) os << "F x" << v << "\n" << m << "\n";
  }
  for (const auto& e : exp_rows_) {
    os << "exp " << e.b;
    for (int v = 0; v < e.a.size(); ++v)
      if (e.a(v) != 0.0) os << " + " << e.a(v) << "*x" << v;
    os << " <= " << e.d;
    for (int v = 0; v < e.c.size(); ++v)
      if (e.c(v) != 0.0) os << " + " << e.c(v) << "*x" << v;
    os << "\n";
  }
}

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::max_iter: return "max-iter";
    case Status::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& h) {
  require(h.rows() == h.cols(), "embed_hermitian: matrix not square");
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  require(asym <= 1e-8, "embed_hermitian: matrix not Hermitian");
  const int n = static_cast<int>(h.rows());
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  // exact symmetry for downstream Cholesky
  out = 0.5 * (out + out.transpose()).eval();
  return out;
}

}  // namespace swiptsec::conic
