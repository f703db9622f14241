#pragma once

#include "spinlab/fock.hpp"

namespace spinlab {

struct MomentReport {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
};

/// <k>, <k²> and Δ²k of a diagonal mixture.
struct MixtureMoments {
    double mean_k = 0.0;
    double second_k = 0.0;
    double var_k = 0.0;
};

// Matrix oracle: Tr(ρ·J) and friends. Imaginary parts above 1e-10 throw
// NumericError; mismatched particle counts throw DomainError.
double expectation(const PureState& psi, const CMatrix& op);
double expectation(const DensityOperator& rho, const CMatrix& op);
double expectation(const PureState& psi, const CollectiveSpinOp& op);
double expectation(const DensityOperator& rho, const CollectiveSpinOp& op);

double variance(const PureState& psi, const CollectiveSpinOp& op);
double variance(const DensityOperator& rho, const CollectiveSpinOp& op);

MomentReport moment_report(const PureState& psi, const CollectiveSpinOp& op);
MomentReport moment_report(const DensityOperator& rho, const CollectiveSpinOp& op);

/// Closed forms on |k>: mean nz(2k-n)/2, variance (1-nz²)(n+2k(n-k))/4.
MomentReport number_state_moments(int n, int k, const Direction& dir);

MixtureMoments mixture_moments(const DiagonalMixture& mix);

/// Closed forms for Σ p_k |k><k| in terms of <k> and <k²>.
MomentReport mixture_spin_moments(const DiagonalMixture& mix, const Direction& dir);

/// |a - b| <= max(tol, tol·|b|).
inline bool close_rel(double a, double b, double tol) {
    const double scale = b < 0 ? -b : b;
    const double diff = a - b < 0 ? b - a : a - b;
    return diff <= (scale > 1.0 ? tol * scale : tol);
}

} // namespace spinlab
