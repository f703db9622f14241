#pragma once

#include "spinlab/moments.hpp"

#include <array>
#include <optional>

namespace spinlab {

/// Residuals of the four collective-spin separability inequalities for a
/// triplet (n1, n2, n3):
///
///   lhs1 = Σ_i <J_i²> - N(N+2)/4                    satisfied iff lhs1 <= 0
///   lhs2 = Σ_i Δ²J_i - N/2                           satisfied iff lhs2 >= 0
///   lhs3 = <J_1²> + <J_2²> - N/2 - (N-1)Δ²J_3        satisfied iff lhs3 <= 0
///   lhs4 = (N-1)(Δ²J_1 + Δ²J_2) - <J_3²> - N(N-2)/4  satisfied iff lhs4 >= 0
///
/// Each `satisfied` flag allows a slack of 1e-9.
struct TothReport {
    std::array<double, 4> lhs{};
    std::array<bool, 4> satisfied{};

    bool all_satisfied() const { return satisfied[0] && satisfied[1] && satisfied[2] && satisfied[3]; }
};

inline constexpr double kTothTolerance = 1e-9;
inline constexpr double kUndefinedDenominator = 1e-14;

/// Wineland and Sørensen parameters. An empty optional marks a denominator
/// below 1e-14: the parameter is undefined there and is never replaced by a
/// limit value.
struct SqueezingReport {
    std::optional<double> xi_w_squared;
    std::optional<double> xi_s_squared;
    double denominator_w = 0.0; // <J_n3>²
    double denominator_s = 0.0; // <J_n2>² + <J_n3>²
    double numerator = 0.0;     // N·Δ²J_n1
};

/// Inequalities from first and second moments along n1, n2, n3. Works for any
/// system of N spin-1/2 particles, bosonic or distinguishable.
TothReport toth_from_moments(int n, const std::array<MomentReport, 3>& moments);

TothReport toth_check(const PureState& psi, const OrthogonalTriplet& triplet);
TothReport toth_check(const DensityOperator& rho, const OrthogonalTriplet& triplet);

/// lhs3 for Σ p_k|k><k| in closed form, as a function of n3z² only:
///   δ = (N/2)(Δ²k - a) + (n3z²/2)((N+2)a - 3NΔ²k),   a = <k>(N - <k>).
double ineq3_delta(const DiagonalMixture& mix, double n3z_squared);

/// Smallest n3z² beyond which lhs3 > 0, i.e. N(a-Δ²k)/((N+2)a - 3NΔ²k).
/// Empty when a <= NΔ²k: no triplet then violates inequality (3).
std::optional<double> ineq3_threshold(const DiagonalMixture& mix);

SqueezingReport xi_parameters(const PureState& psi, const OrthogonalTriplet& triplet);
SqueezingReport xi_parameters(const DensityOperator& rho, const OrthogonalTriplet& triplet);

/// Amplitudes √p_k with p_k ∝ exp(-(k-ℓ)²/σ²), normalized by the explicit sum.
PureState gaussian_state(int n, int ell, double sigma);

/// Probabilities p/N on k ≠ N/2 and 1-p on k = N/2 (amplitudes √p_k).
/// Converges to |N/2> as p -> 0 with ξ²_W -> N(N+1)/12.
PureState flat_peak_state(int n, double p);

/// ξ²_W for the triplet (ẑ, ŷ, x̂) on a state with real non-negative
/// amplitudes:  N·Δ²k / (Σ_{k>=1} √(k(N-k+1)) √(p_k p_{k-1}))².
/// Empty when the denominator is below 1e-14.
std::optional<double> xi_w_diagonal_real(const PureState& psi);

} // namespace spinlab
