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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace swiptsec::conic {

using Complex = std::complex<double>;

struct Var {
  int index = -1;
};

/// Real affine expression: constant + sum coef_i * x_i.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(double c) : constant_(c) {}  // NOLINT(runtime/explicit)
  LinExpr(Var v) { terms_.emplace_back(v.index, 1.0); }  // NOLINT

  static LinExpr term(Var v, double coef) {
    LinExpr e;
    if (coef != 0.0) e.terms_.emplace_back(v.index, coef);
    return e;
  }

  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(double s);

  double constant() const { return constant_; }
  const std::vector<std::pair<int, double>>& terms() const { return terms_; }

  double eval(const Eigen::VectorXd& x) const;

 private:
  double constant_ = 0.0;
  std::vector<std::pair<int, double>> terms_;
};

LinExpr operator+(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a, const LinExpr& b);
LinExpr operator*(double s, LinExpr a);
LinExpr operator-(LinExpr a);

/// Complex affine expression over real variables.
class CLinExpr {
 public:
  CLinExpr() = default;
  CLinExpr(Complex c) : constant_(c) {}  // NOLINT(runtime/explicit)
  CLinExpr(const LinExpr& re);           // NOLINT(runtime/explicit)

  void add_term(Var v, Complex coef) {
    if (coef != 0.0) terms_.emplace_back(v.index, coef);
  }
  CLinExpr& operator+=(const CLinExpr& o);
  CLinExpr& operator*=(Complex s);

  Complex constant() const { return constant_; }
  const std::vector<std::pair<int, Complex>>& terms() const { return terms_; }

  CLinExpr conjugate() const;
  LinExpr real_part() const;
  LinExpr imag_part() const;
  Complex eval(const Eigen::VectorXd& x) const;

 private:
  Complex constant_{0.0, 0.0};
  std::vector<std::pair<int, Complex>> terms_;
};

CLinExpr operator*(Complex s, CLinExpr a);
CLinExpr operator+(CLinExpr a, const CLinExpr& b);

/// Complex vector variable; coordinates stored as interleaved (re, im) pairs.
struct ComplexVecVar {
  int offset = -1;
  int n = 0;
  Var re(int i) const { return Var{offset + 2 * i}; }
  Var im(int i) const { return Var{offset + 2 * i + 1}; }
  /// w^H h  (conjugate-linear in w, so linear in the real coordinates).
  CLinExpr dot_conj(const Eigen::VectorXcd& h) const;
  /// h^H w.
  CLinExpr dot(const Eigen::VectorXcd& h) const;
  /// [re_0, im_0, re_1, im_1, ...] for SOC rows: ||w|| over these coords.
  std::vector<LinExpr> real_coords(double scale = 1.0) const;
};

/// Hermitian matrix variable: n real diagonal entries, then (re, im) for
/// each upper off-diagonal entry in row-major order.
struct HermitianVar {
  int offset = -1;
  int n = 0;
  int num_reals() const { return n * n; }
  CLinExpr entry(int i, int j) const;
  LinExpr trace() const;
};

/// Affine Hermitian-matrix-valued expression: constant + sum coef_m * V_m.
struct MatExpr {
  int n = 0;
  Eigen::MatrixXcd constant;  // Hermitian
  std::vector<std::pair<double, HermitianVar>> terms;

  explicit MatExpr(int dim)
      : n(dim), constant(Eigen::MatrixXcd::Zero(dim, dim)) {}
  MatExpr& add(double coef, HermitianVar v) {
    terms.emplace_back(coef, v);
    return *this;
  }
  CLinExpr entry(int i, int j) const;
  /// (M h)_i as complex affine expressions.
  std::vector<CLinExpr> mul(const Eigen::VectorXcd& h) const;
  /// h^H M h (real for Hermitian M).
  LinExpr quad(const Eigen::VectorXcd& h) const;
  LinExpr trace() const;
};

/// Complex Hermitian affine matrix; entries are affine in the program's
/// real variables, Hermitian symmetry is maintained by construction.
class HermitianExpr {
 public:
  explicit HermitianExpr(int dim);

  int dim() const { return dim_; }
  /// Adds e at (i, j) and its conjugate at (j, i); a diagonal target
  /// requires the imaginary part to vanish.
  void add_entry(int i, int j, const CLinExpr& e);
  void add_diag_entry(int i, const LinExpr& e);
  void add_scaled_identity(const LinExpr& e);
  /// += M placed with top-left corner at (r0, c0).
  void add_mat(const MatExpr& m, int r0 = 0, int c0 = 0);

  const Eigen::MatrixXcd& constant() const { return constant_; }
  const std::vector<std::pair<int, Eigen::MatrixXcd>>& coefs() const {
    return coefs_;
  }

  Eigen::MatrixXcd eval(const Eigen::VectorXd& x) const;

 private:
  Eigen::MatrixXcd& coef_for(int var);
  int dim_;
  Eigen::MatrixXcd constant_;
  std::vector<std::pair<int, Eigen::MatrixXcd>> coefs_;  // unsorted, unique
};

/// Real symmetric affine LMI block F0 + sum x_i F_i >= 0 in solver form.
struct LmiBlock {
  int dim = 0;
  Eigen::MatrixXd F0;
  std::vector<std::pair<int, Eigen::MatrixXd>> coefs;
};

struct SocBlock {
  // ||A x + b|| <= c'x + d, columns stored sparse by variable.
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;  // dense over all vars (compressed in the solver)
  double d = 0.0;
};

struct LinRow {
  Eigen::VectorXd a;  // a'x + b >= 0  (or == 0 for equality rows)
  double b = 0.0;
};

struct ExpRow {
  // exp(a'x + b) <= c'x + d
  Eigen::VectorXd a;
  double b = 0.0;
  Eigen::VectorXd c;
  double d = 0.0;
};

enum class Sense { minimize, maximize };

enum class Status { optimal, infeasible, unbounded, max_iter, numerical_failure };

const char* to_string(Status s);

struct SolveReport {
  Status status = Status::numerical_failure;
  Eigen::VectorXd primal;  // present iff status in {optimal, max_iter}
  double objective_value = 0.0;
  double solve_time_sec = 0.0;
  int newton_iters = 0;
  double final_t = 0.0;  // last barrier parameter (for warm chaining)
};

struct SolveOptions {
  double feas_tol = 1e-7;
  double gap_tol = 1e-9;   // absolute complexity/t target
  int max_newton = 200;    // total Newton-step cap per solve
  double mu = 30.0;        // barrier multiplier
  double initial_gap = 0.0;  // 0 = auto; warm restarts pass a target gap
  bool verbose = false;    // also enabled by SWIPT_SOLVER_VERBOSE=1
};

/// Solver-agnostic conic program over real scalar variables.
class ConicProgram {
 public:
  Var add_var(std::string name);
  Var add_nonneg(std::string name);   // adds the x >= 0 row as well
  ComplexVecVar add_complex_vector(std::string name, int n);
  HermitianVar add_hermitian(std::string name, int n);

  void set_objective(Sense sense, const LinExpr& obj);
  void add_eq(const LinExpr& e);     // e == 0
  void add_ineq(const LinExpr& e);   // e >= 0
  void add_soc(const std::vector<LinExpr>& norm_args, const LinExpr& bound);
  void add_lmi(const HermitianExpr& h);   // embedded to a real block
  void add_lmi_real(LmiBlock block);
  void add_psd(const HermitianVar& v);    // v >= 0 as an LMI block
  void add_exp(const LinExpr& exponent, const LinExpr& bound);

  /// Optional warm-start hint (projected onto the equality manifold and
  /// used only if strictly feasible).
  void set_initial_point(Eigen::VectorXd x0) { x0_ = std::move(x0); }

  int num_vars() const { return num_vars_; }
  Sense sense() const { return sense_; }
  const LinExpr& objective() const { return objective_; }
  const std::vector<LmiBlock>& lmi_blocks() const { return lmi_blocks_; }
  const std::vector<SocBlock>& soc_blocks() const { return soc_blocks_; }
  const std::vector<LinRow>& ineq_rows() const { return ineq_rows_; }
  const std::vector<LinRow>& eq_rows() const { return eq_rows_; }
  const std::vector<ExpRow>& exp_rows() const { return exp_rows_; }
  const std::optional<Eigen::VectorXd>& initial_point() const { return x0_; }
  const std::vector<std::string>& var_names() const { return names_; }

  /// Text dump of all blocks, one program per file, for cross-solver checks.
  void dump(std::ostream& os) const;

 private:
  Eigen::VectorXd densify(const LinExpr& e) const;

  int num_vars_ = 0;
  std::vector<std::string> names_;
  Sense sense_ = Sense::minimize;
  LinExpr objective_;
  std::vector<LmiBlock> lmi_blocks_;
  std::vector<SocBlock> soc_blocks_;
  std::vector<LinRow> ineq_rows_;
  std::vector<LinRow> eq_rows_;
  std::vector<ExpRow> exp_rows_;
  std::optional<Eigen::VectorXd> x0_;
};

/// Standard complex-to-real embedding [[Re H, -Im H], [Im H, Re H]].
/// Throws std::invalid_argument if H deviates from Hermitian beyond 1e-8.
Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& h);

SolveReport solve(const ConicProgram& p, const SolveOptions& opts = {});

}  // namespace swiptsec::conic
