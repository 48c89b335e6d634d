// Spin-S sector and collective spin operators in the Dicke basis.
//
// Basis convention used everywhere in this library: |S,m> with
// m = -S, -S+1, ..., S mapped to index i = m + S in 0..2S.  Operators follow
// the standard angular-momentum normalization
//   S_z|S,m> = m|S,m>,   S_pm|S,m> = sqrt(S(S+1) - m(m+-1)) |S,m+-1>,
// i.e. one half Pauli matrix per qubit, K = 2S qubits.

#pragma once

#include <Eigen/Dense>

#include "dicke/log_math.hpp"

namespace dicke {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct SpinSector {
    double spin = 0.0;  // S, positive multiple of 1/2
    int dim = 0;        // 2S + 1

    double m_of_index(int i) const { return static_cast<double>(i) - spin; }
    int index_of_m(double m) const { return static_cast<int>(std::lround(m + spin)); }
    int qubit_count() const { return static_cast<int>(std::lround(2.0 * spin)); }
};

// Validates that spin is a positive half-integer; throws std::invalid_argument.
SpinSector build_sector(double spin);

// Raising coefficients a_i = sqrt(S(S+1) - m_i(m_i+1)) for i = 0..dim-2,
// so that S_+ e_i = a_i e_{i+1} and S_- e_{i+1} = a_i e_i.  Shared read-only
// by the banded operator products below.
struct LadderCoefficients {
    SpinSector sector;
    RealVector raise;      // size dim-1 (empty for dim = 1)
    RealVector sp_sm_diag; // diagonal of S_+ S_- : (a_{i-1})^2, zero at i = 0

    explicit LadderCoefficients(const SpinSector& sec);
};

struct SpinOperatorSet {
    SpinSector sector;
    ComplexMatrix sx, sy, sz, s_plus, s_minus;
};

SpinOperatorSet build_operators(const SpinSector& sector);

// Norm of (S_-)^n |S,m>:  prod_{j=0}^{n-1} sqrt((S+m-j)(S-m+j+1)), zero when
// the ladder steps below m = -S.  Evaluated in log space so it stays finite
// for S ~ 1600 where the raw product overflows.
double ladder_power_coefficient(double spin, double m, int n);

// log of the same (requires m - n >= -S); table must cover n_max >= 2S.
double log_ladder_power_coefficient(const LogFactorialTable& lf, double spin, double m, int n);

// Banded products with collective operators, all O(dim^2).  X is any matrix
// on the sector; results are dense.
ComplexMatrix lower_left(const LadderCoefficients& lc, const ComplexMatrix& x);   // S_- X
ComplexMatrix raise_left(const LadderCoefficients& lc, const ComplexMatrix& x);   // S_+ X
ComplexMatrix lower_right(const LadderCoefficients& lc, const ComplexMatrix& x);  // X S_-
ComplexMatrix raise_right(const LadderCoefficients& lc, const ComplexMatrix& x);  // X S_+

}  // namespace dicke
