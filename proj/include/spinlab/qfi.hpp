#pragma once

// Quantum Fisher information of the rotation generated by a collective spin,
// via the symmetric logarithmic derivative, plus closed forms for number
// states and diagonal mixtures.

#include "spinlab/moments.hpp"

#include <optional>
#include <utility>

namespace spinlab {

enum class QfiMethod { closed_form, spectral };

struct QfiReport {
    double value = 0.0;
    QfiMethod method = QfiMethod::spectral;
};

const char* to_string(QfiMethod m);

/// Eigenvalue pairs with r_i + r_j below this are dropped from the spectral
/// sum and their SLD element is set to 0.
inline constexpr double kDegeneratePairGuard = 1e-12;

/// Spectrum of ρ with eigenvalues in [-1e-10, 0) clamped to zero and the
/// remainder renormalized to unit sum.
Spectrum clamped_spectrum(const DensityOperator& rho);

/// Symmetric logarithmic derivative L with (ρL + Lρ)/2 = -i[J, ρ]. In the
/// eigenbasis of ρ: L_ij = 2i(r_i - r_j)/(r_i + r_j)·<r_i|J|r_j>.
CMatrix sld(const DensityOperator& rho, const CollectiveSpinOp& generator);

/// F = 2 Σ_{r_i + r_j > ε} (r_i - r_j)²/(r_i + r_j)·|<r_i|J|r_j>|².
QfiReport qfi_spectral(const DensityOperator& rho, const CollectiveSpinOp& generator);
QfiReport qfi_spectral(const PureState& psi, const CollectiveSpinOp& generator);

/// F[|k><k|, J_dir] = (1 - nz²)(n + 2k(n-k)).
QfiReport qfi_number_state(int n, int k, const Direction& dir);

/// F[Σp_k|k><k|, J_dir] = (1 - nz²)[N + 2N<k> - 2<k²>
///                        - 4 Σ_k p_k p_{k+1}/(p_k + p_{k+1})·(k+1)(N-k)].
/// The coefficient of <k²> is 2; with 1 the expression does not reduce to
/// the number-state value at p = δ_kℓ and disagrees with qfi_spectral.
QfiReport qfi_diagonal_mixture(const DiagonalMixture& mix, const Direction& dir);

struct GaussianQfi {
    double f_y = 0.0;
    double f_z = 0.0;
};

/// Spectral QFI of gaussian_state(n, ℓ, σ) under Jy and Jz. Expected
/// behaviour: F_y ≈ N + 2ℓ(N-ℓ), F_z ≈ 8·exp(-1/σ²) for small σ.
GaussianQfi qfi_gaussian_asymptotics(int n, int ell, double sigma);

/// Slack (lhs - rhs, non-negative when the bound holds) of
///   heisenberg: Δ²J1·Δ²J2 >= <J3>²/4
///   fisher2:    F[ρ,J1]·Δ²J2 >= <J3>²
///   fisher3:    Δ²J2/<J3>² >= 1/F[ρ,J1]   (empty when <J3>² < 1e-14)
struct BoundChainReport {
    double qfi = 0.0;
    double heisenberg_slack = 0.0;
    double fisher2_slack = 0.0;
    std::optional<double> fisher3_slack;

    bool holds(double tol) const {
        return heisenberg_slack >= -tol && fisher2_slack >= -tol && (!fisher3_slack || *fisher3_slack >= -tol);
    }
};

BoundChainReport bound_chain_check(const DensityOperator& rho, const OrthogonalTriplet& triplet);

} // namespace spinlab
