// Closed-form nonequilibrium steady state
//
//   rho_ss = eta eta^dag,   eta = (1/sqrt(D)) sum_{n=0}^{2S} (S_- / g*)^n,
//   g = i omega S / (2 kappa),
//   D = sum_{m=0}^{2S} (2S+m+1)! (m!)^2 / ((2S-m)! (2m+1)!) |g|^{-2m}.
//
// All factorial products and powers are combined in log space (compensated
// log-factorial tables + log-sum-exp), so the construction stays finite and
// accurate up to S ~ 1600.  Since g* is purely imaginary, the phase of each
// eta entry is exactly i^n; magnitudes are bounded by 1 (Tr eta eta^dag = 1)
// and are exponentiated only at the very end.
//
// At lambda = 0 the closed form degenerates (g = 0); the steady state is the
// dark state |S,-S><S,-S| of the lowering operator and is returned explicitly.

#pragma once

#include "dicke/density_matrix.hpp"
#include "dicke/model.hpp"

#include <iosfwd>
#include <string>

namespace dicke {

// log D per the sum above; requires lambda > 0.
double log_normalization_d(const ModelParams& params);

// D itself; may overflow to +inf for small lambda and large S (use the log).
double normalization_d(const ModelParams& params);

// eta in the Dicke basis: <S,m-n| eta |S,m> = (g*)^{-n} c_n(m) / sqrt(D).
// Requires lambda > 0.
ComplexMatrix eta_matrix(const ModelParams& params);

DensityMatrix steady_state_of(const ModelParams& params);

// Steady state of the dual model (omega -> -omega, S_- <-> S_+): the
// index-reversed complex conjugate of the primal steady state.
DensityMatrix dual_steady_state(const ModelParams& params);

// Portable binary dump: little-endian u64 dim, f64 spin, lambda, omega,
// kappa, then dim*dim row-major (re, im) f64 pairs.
void write_steady_state_dump(std::ostream& os, const DensityMatrix& rho, const ModelParams& params);
void write_steady_state_dump(const std::string& path, const DensityMatrix& rho,
                             const ModelParams& params);
DensityMatrix read_steady_state_dump(std::istream& is, ModelParams* params_out = nullptr);
DensityMatrix read_steady_state_dump(const std::string& path, ModelParams* params_out = nullptr);

}  // namespace dicke
