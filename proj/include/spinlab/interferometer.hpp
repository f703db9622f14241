#pragma once

// Rotation-based phase measurement: ρ_θ = e^{-iθJ} ρ e^{iθJ} followed by
// number-basis counting.

#include "spinlab/fock.hpp"
#include "spinlab/qfi.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace spinlab {

/// Caches the eigendecomposition of J_dir so that repeated rotations by
/// different angles cost one matrix-vector product each.
class PhaseRotor {
public:
    PhaseRotor(int n, const Direction& dir);

    int n() const noexcept { return n_; }
    const Direction& direction() const noexcept { return direction_; }

    CMatrix unitary(double theta) const;
    PureState rotate(const PureState& psi, double theta) const;
    DensityOperator rotate(const DensityOperator& rho, double theta) const;

    /// p_θ(m) = <m|ρ_θ|m>, m = 0..n. Round-off negatives are clamped to 0.
    std::vector<double> outcome_distribution(const PureState& psi, double theta) const;
    std::vector<double> outcome_distribution(const DensityOperator& rho, double theta) const;

private:
    int n_;
    Direction direction_;
    Spectrum spectrum_;
};

PureState rotate(const PureState& psi, const Direction& dir, double theta);
DensityOperator rotate(const DensityOperator& rho, const Direction& dir, double theta);

std::vector<double> outcome_distribution(const PureState& psi, const Direction& rot_dir, double theta);
std::vector<double> outcome_distribution(const DensityOperator& rho, const Direction& rot_dir, double theta);

inline constexpr double kDerivativeStep = 1e-5;

struct ErrorPropagation {
    /// Var(J_meas)/(∂θ<J_meas>)² at θ0; empty at an uninformative point
    /// (|∂θ<J_meas>| < 1e-12).
    std::optional<double> delta2_theta;
    double variance = 0.0;
    double derivative = 0.0;
};

/// Requires rot_dir ⊥ meas_dir. At θ0 = 0 the result equals ξ²_W/N for the
/// triplet (meas_dir, rot_dir, rot_dir × meas_dir).
ErrorPropagation error_propagation(const DensityOperator& rho, const Direction& rot_dir, const Direction& meas_dir,
                                   double theta0);
ErrorPropagation error_propagation(const PureState& psi, const Direction& rot_dir, const Direction& meas_dir,
                                   double theta0);

/// Σ_m (∂θ p_θ(m))²/p_θ(m) with central differences; outcomes with
/// p < 1e-12 are skipped.
double classical_fisher(const DensityOperator& rho, const Direction& rot_dir, double theta);
double classical_fisher(const PureState& psi, const Direction& rot_dir, double theta);

struct PhaseEstimationResult {
    double theta_true = 0.0;
    std::vector<double> estimates;
    double mean_estimate = 0.0;
    double sample_variance = 0.0; // unbiased, around the sample mean
    double mean_squared_error = 0.0;
    double qfi = 0.0;
    double classical_fisher = 0.0;
    double crb_quantum = 0.0;   // 1/(M·F_Q)
    double crb_classical = 0.0; // 1/(M·F_cl(θ_true))
    int shots = 0;
    int repetitions = 0;
    std::uint64_t seed = 0;
};

struct MleOptions {
    int grid_points = 257;
    double tolerance = 1e-6;
};

/// Monte Carlo maximum-likelihood estimation. Repetition r draws `shots`
/// outcomes from p_{θ_true} by inverse-CDF sampling with
/// CounterRng(derive_seed(seed, r)), then maximizes the log-likelihood over
/// [θ_true/4, min(π/2, 4θ_true)]: a uniform grid locates the best cell and
/// golden-section search refines it.
PhaseEstimationResult mle_estimate(const DensityOperator& rho, const Direction& rot_dir, double theta_true, int shots,
                                   int repetitions, std::uint64_t seed, const MleOptions& options = {});
PhaseEstimationResult mle_estimate(const PureState& psi, const Direction& rot_dir, double theta_true, int shots,
                                   int repetitions, std::uint64_t seed, const MleOptions& options = {});

} // namespace spinlab
