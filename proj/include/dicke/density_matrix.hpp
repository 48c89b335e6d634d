// Density matrices on a spin sector, with the numerical tolerances used by
// the validity checks: Hermitian to 1e-10, unit trace to 1e-10, smallest
// eigenvalue >= -1e-9.

#pragma once

#include <Eigen/Dense>

#include "dicke/spin_algebra.hpp"

namespace dicke {

struct DensityMatrix {
    ComplexMatrix data;
    SpinSector sector;

    int dim() const { return sector.dim; }
};

struct DensityMatrixChecks {
    double hermiticity_error = 0.0;  // max entrywise |rho - rho^dag|
    double trace_error = 0.0;        // |Tr rho - 1|
    double min_eigenvalue = 0.0;     // of the Hermitized matrix

    bool valid(double herm_tol = 1e-10, double trace_tol = 1e-10, double psd_tol = 1e-9) const {
        return hermiticity_error <= herm_tol && trace_error <= trace_tol &&
               min_eigenvalue >= -psd_tol;
    }
};

DensityMatrixChecks check_density_matrix(const DensityMatrix& rho);

// |S,m><S,m| projector.
DensityMatrix dicke_projector(const SpinSector& sector, double m);

DensityMatrix maximally_mixed(const SpinSector& sector);

// Half the trace norm of rho - sigma (eigensolve of the Hermitian difference).
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace dicke
