#pragma once

// Brute-force first-quantization checks on n <= 8 distinguishable qubits
// (Hilbert space dimension 2^n).
//
// Single-qubit basis: index 0 is the mode-a state, index 1 the mode-b state,
// so that a bosonic |k> maps to the symmetric state with k qubits in 0.
// Single-particle spins then read jz = diag(1/2, -1/2),
// jx = (|0><1| + |1><0|)/2, jy = (|0><1| - |1><0|)/(2i).

#include "spinlab/fock.hpp"
#include "spinlab/rng.hpp"
#include "spinlab/squeezing.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace spinlab::oracle {

inline constexpr int kMaxQubits = 8;

/// Pure product state given by one Bloch vector per qubit.
class ProductState {
public:
    /// Throws DomainError for n > 8 or a non-unit Bloch vector (1e-12).
    explicit ProductState(std::vector<std::array<double, 3>> bloch_vectors);

    int n() const noexcept { return static_cast<int>(bloch_.size()); }
    const std::vector<std::array<double, 3>>& bloch_vectors() const noexcept { return bloch_; }

    /// ⊗_j |ψ_j> as a 2^n amplitude vector (qubit 0 is the most significant bit).
    CVector vector() const;

private:
    std::vector<std::array<double, 3>> bloch_;
};

ProductState random_product_state(int n, CounterRng& rng);

/// Σ_j dir·σ^(j)/2 on the 2^n space.
CMatrix tensor_collective_spin(int n, const Direction& dir);

/// Variance of the collective spin on the explicit tensor-product vector.
double product_variance(const ProductState& ps, const Direction& dir);

/// N/4 - Σ_j (dir·b_j / 2)²: the product-state closed form.
double product_variance_closed_form(const ProductState& ps, const Direction& dir);

/// <Ψ-|ρ⊗ρ|Ψ-> with |Ψ-> = (|01> - |10>)/√2, built as explicit 4×4 matrices.
double antisymmetric_overlap(const Eigen::Matrix2cd& rho_single);

/// Symmetric Dicke state with k qubits in the mode-a state.
CVector dicke_state(int n, int k);

struct DickeReport {
    double boson_mean = 0.0;
    double boson_variance = 0.0;
    double tensor_mean = 0.0;
    double tensor_variance = 0.0;

    double max_error() const;
};

/// Compares <J_dir> and Δ²J_dir on |k> in the (n+1)-dimensional bosonic
/// sector with the Dicke state on n <= 6 qubits.
DickeReport dicke_embedding_check(int n, int k, const Direction& dir);

/// Inequalities on a random mixture of `components` random product states.
TothReport toth_distinguishable(int n, int components, const OrthogonalTriplet& triplet, CounterRng& rng);

struct SuiteSummary {
    int max_n = 0;
    int trials = 0;
    std::uint64_t seed = 0;

    int product_variance_checks = 0;
    double product_variance_max_excess = 0.0; // max(var - N/4); <= 1e-10 passes
    double product_closed_form_max_error = 0.0;
    bool product_variance_ok = false;

    int determinant_checks = 0;
    double determinant_max_error = 0.0;
    bool determinant_ok = false;

    int dicke_checks = 0;
    double dicke_max_error = 0.0;
    bool dicke_ok = false;

    int toth_checks = 0;
    double toth_min_slack = 0.0; // most negative signed slack over all four inequalities
    bool toth_ok = false;

    bool all_ok() const { return product_variance_ok && determinant_ok && dicke_ok && toth_ok; }
};

/// Runs every oracle property with `trials` seeded trials per n in 2..max_n.
/// Dicke checks cover n <= min(max_n, 6); Tóth checks n in {2, 3, 4}.
SuiteSummary run_suite(int max_n, int trials, std::uint64_t seed);

} // namespace spinlab::oracle
