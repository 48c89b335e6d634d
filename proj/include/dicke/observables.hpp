// Collective-spin moments, variances and purities of a sector state.
//
// Every entry of MomentSet depends only on the main, first and second
// diagonals of rho (the collective operators are at most two-banded in the
// Dicke basis), so moments() runs in O(dim) per state.  expectation() is the
// generic dense route and doubles as the independent cross-check in tests.

#pragma once

#include <complex>

#include "dicke/density_matrix.hpp"

namespace dicke {

struct MomentSet {
    double spin = 0.0;
    double mean_x = 0.0, mean_y = 0.0, mean_z = 0.0;
    double mean_xx = 0.0, mean_yy = 0.0, mean_zz = 0.0;  // <S_a^2>
    Complex mean_plus;   // <S_+>
    Complex mean_plus2;  // <S_+^2>
    Complex mean_anti;   // <[S_+, S_z]_+>

    int qubit_count() const { return static_cast<int>(std::lround(2.0 * spin)); }
};

struct Variances {
    double x = 0.0, y = 0.0, z = 0.0;
};

// Tr[op rho]; real to 1e-10 for Hermitian op.
Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op);

MomentSet moments(const DensityMatrix& rho);

// <S_a^2> - <S_a>^2, divided by S^2 when normalized.
Variances variances(const MomentSet& ms, bool normalized);

// Tr[rho^2] in [1/(2S+1), 1].
double purity(const DensityMatrix& rho);
double purity(const ComplexMatrix& rho);

}  // namespace dicke
