#include "dicke/density_matrix.hpp"

#include <stdexcept>

namespace dicke {

DensityMatrixChecks check_density_matrix(const DensityMatrix& rho) {
    DensityMatrixChecks c;
    c.hermiticity_error = (rho.data - rho.data.adjoint()).cwiseAbs().maxCoeff();
    c.trace_error = std::abs(rho.data.trace() - Complex(1.0, 0.0));
    ComplexMatrix herm = 0.5 * (rho.data + rho.data.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

DensityMatrix dicke_projector(const SpinSector& sector, double m) {
    const int i = sector.index_of_m(m);
    if (i < 0 || i >= sector.dim) {
        throw std::invalid_argument("dicke_projector: m outside the sector");
    }
    DensityMatrix rho{ComplexMatrix::Zero(sector.dim, sector.dim), sector};
    rho.data(i, i) = 1.0;
    return rho;
}

DensityMatrix maximally_mixed(const SpinSector& sector) {
    DensityMatrix rho{ComplexMatrix::Identity(sector.dim, sector.dim), sector};
    rho.data /= static_cast<double>(sector.dim);
    return rho;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix diff = a - b;
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    return trace_distance(rho.data, sigma.data);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).norm();
}

}  // namespace dicke
