#pragma once

#include <Eigen/Dense>

#include <complex>

namespace spinlab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Eigendecomposition A = V diag(eigenvalues) V† of a Hermitian matrix.
/// Eigenvalues ascend; the columns of `eigenvectors` are orthonormal.
struct Spectrum {
    RVector eigenvalues;
    CMatrix eigenvectors;
};

struct JacobiOptions {
    double relative_tolerance = 1e-13; // on off-diagonal Frobenius norm / ||A||_F
    int max_sweeps = 100;
    double hermitian_tolerance = 1e-10;
};

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation first removes the phase of the pivot element a_pq, then
/// applies the real Jacobi rotation that annihilates it. Sweeps run over all
/// pairs p < q until the off-diagonal Frobenius norm drops below
/// `relative_tolerance * ||A||_F`.
///
/// Throws DomainError when the input is not square or not Hermitian within
/// `hermitian_tolerance`, and NumericError (carrying the remaining
/// off-diagonal norm) when `max_sweeps` is exhausted.
Spectrum hermitian_eig(const CMatrix& matrix, const JacobiOptions& options = {});

double max_abs(const CMatrix& m);
double hermiticity_defect(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol);

/// f(A) = V f(Λ) V† for a precomputed spectrum.
template <typename F>
CMatrix spectral_function(const Spectrum& s, F&& f) {
    const Eigen::Index d = s.eigenvalues.size();
    CVector fd(d);
    for (Eigen::Index i = 0; i < d; ++i) fd(i) = f(s.eigenvalues(i));
    return s.eigenvectors * fd.asDiagonal() * s.eigenvectors.adjoint();
}

} // namespace spinlab
