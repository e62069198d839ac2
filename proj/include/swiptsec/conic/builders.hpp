// SPDX-License-Identifier: Apache-2.0
//
// swiptsec: secure beamforming designs for the MISO SWIPT wiretap channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "swiptsec/channel.hpp"
#include "swiptsec/conic/program.hpp"

namespace swiptsec::conic {

/// Schur-form per-eavesdropper rate block with a generic real diagonal d:
///   [[ d I2, b ], [ b^H, d ]],  b = [ (2^{R/2}/sigma_e) w^H h_e ; sqrt(2^R - 1) ].
/// PSD of the block (with d >= 0) is equivalent to d^2 >= ||b||^2.
HermitianExpr schur_rate_lmi(const LinExpr& diag, const ComplexVecVar& w,
                             const CVec& h_e, double R, double sigma_e);

/// The perfect-CSI block S_k with diagonal (1/sigma_s) Re{w^H h_s}. Programs
/// using it must also carry the phase rows (see add_phase_convention).
HermitianExpr schur_secrecy_lmi(const ComplexVecVar& w, double R,
                                const ChannelSet& ch, int k);

/// Im{h_s^H w} = 0 and Re{h_s^H w} >= 0, making the Schur diagonal real
/// without loss of generality (secrecy rate is phase invariant).
void add_phase_convention(ConicProgram& prog, const ComplexVecVar& w,
                          const CVec& h_s);

/// Robust block plus its fresh nonnegative multiplier. At eps == 0 the
/// builders return the exact nominal constraint instead (the multiplier
/// route only approaches it in the limit) and multiplier.index is -1.
struct RobustLmi {
  HermitianExpr block;
  Var multiplier;
};

/// Norm-bounded-error extension of the Schur block: a single larger LMI with
/// a fresh multiplier lambda >= 0 that implies the nominal block holds for
/// every eavesdropper-channel error of norm <= eps.
RobustLmi nemirovski_robust_lmi(ConicProgram& prog, const LinExpr& diag,
                                const ComplexVecVar& w, const CVec& h_e_nominal,
                                double R, double sigma_e, double eps);

/// S-Procedure block certifying (h+e)^H M (h+e) >= rhs for all ||e|| <= eps:
///   [[ alpha I + M, M h ], [ h^H M, h^H M h - rhs - alpha eps^2 ]] >= 0.
/// For <=-type constraints pass -M and -rhs.
RobustLmi s_procedure_lmi(ConicProgram& prog, const MatExpr& m, const CVec& h,
                          double eps, const LinExpr& rhs);

}  // namespace swiptsec::conic
