#pragma once

// Two-mode N-boson sector: number states |k>, k = particles in mode a,
// collective spins of the Schwinger representation, and SU(2) mode rotations.

#include "spinlab/linalg.hpp"

#include <array>
#include <span>
#include <vector>

namespace spinlab {

/// Upper bound on the particle count accepted anywhere in the library.
/// Read once from SPINLAB_MAX_N (default 4096).
int max_particles();

/// Unit vector in 3-space.
class Direction {
public:
    /// Throws DomainError unless x²+y²+z² = 1 within 1e-12.
    Direction(double x, double y, double z);

    /// Rescales to unit length; throws DomainError on a zero or non-finite vector.
    static Direction normalized(double x, double y, double z);

    static Direction x_axis() { return {1.0, 0.0, 0.0}; }
    static Direction y_axis() { return {0.0, 1.0, 0.0}; }
    static Direction z_axis() { return {0.0, 0.0, 1.0}; }

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double z() const noexcept { return z_; }
    std::array<double, 3> components() const noexcept { return {x_, y_, z_}; }

    double dot(const Direction& o) const noexcept { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }
    Direction cross(const Direction& o) const;

private:
    double x_, y_, z_;
};

/// Orthonormal frame (n1, n2, n3). Handedness is not required.
class OrthogonalTriplet {
public:
    /// Throws DomainError unless pairwise dot products vanish within 1e-10.
    OrthogonalTriplet(const Direction& n1, const Direction& n2, const Direction& n3);

    /// (x̂, ŷ, ẑ).
    static OrthogonalTriplet standard();

    /// Right-handed frame completing n1 and a vector orthogonal to it.
    static OrthogonalTriplet complete(const Direction& n1, const Direction& n2);

    const Direction& n1() const noexcept { return n1_; }
    const Direction& n2() const noexcept { return n2_; }
    const Direction& n3() const noexcept { return n3_; }
    std::array<Direction, 3> directions() const { return {n1_, n2_, n3_}; }

private:
    Direction n1_, n2_, n3_;
};

/// Normalized amplitude vector over |0>..|n>.
class PureState {
public:
    /// Throws DomainError unless length = n+1 and the norm is 1 within 1e-12.
    PureState(int n, CVector amplitudes);

    int n() const noexcept { return n_; }
    const CVector& amplitudes() const noexcept { return amplitudes_; }

private:
    int n_;
    CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite (n+1)×(n+1) matrix.
class DensityOperator {
public:
    /// Validates Hermiticity (1e-12), trace (1e-12) and eigenvalues ≥ -1e-10.
    DensityOperator(int n, CMatrix matrix);

    static DensityOperator from_pure(const PureState& psi);

    int n() const noexcept { return n_; }
    const CMatrix& matrix() const noexcept { return matrix_; }

private:
    struct Unchecked {};
    DensityOperator(int n, CMatrix matrix, Unchecked);

    int n_;
    CMatrix matrix_;
};

/// Probability vector over the occupation k = 0..n.
class DiagonalMixture {
public:
    /// Throws DomainError on negative entries or Σp ≠ 1 within 1e-12.
    DiagonalMixture(int n, std::vector<double> probs);

    static DiagonalMixture uniform(int n);
    static DiagonalMixture point(int n, int k);

    int n() const noexcept { return n_; }
    std::span<const double> probs() const noexcept { return probs_; }
    double operator[](int k) const { return probs_[static_cast<std::size_t>(k)]; }

private:
    int n_;
    std::vector<double> probs_;
};

/// J_dir = x·Jx + y·Jy + z·Jz on the n-particle sector.
class CollectiveSpinOp {
public:
    int n() const noexcept { return n_; }
    const CMatrix& matrix() const noexcept { return matrix_; }
    const Direction& direction() const noexcept { return direction_; }

private:
    friend CollectiveSpinOp collective_spin(int n, const Direction& dir);
    CollectiveSpinOp(int n, CMatrix m, Direction d) : n_(n), matrix_(std::move(m)), direction_(d) {}

    int n_;
    CMatrix matrix_;
    Direction direction_;
};

struct SpinComponents {
    CMatrix jx, jy, jz;
};

/// Jx, Jy, Jz from the ladder elements <k+1|a†b|k> = √((k+1)(n-k)).
SpinComponents spin_components(int n);

/// x·Jx + y·Jy + z·Jz for arbitrary (not necessarily unit) coefficients.
CMatrix spin_matrix(int n, double x, double y, double z);

PureState number_state(int n, int k);
CollectiveSpinOp collective_spin(int n, const Direction& dir);
PureState superposition(int n, const CVector& amplitudes);
DensityOperator mixture_density(const DiagonalMixture& mix);

/// exp(-i·angle·J_dir) via the Jacobi eigendecomposition of J_dir.
/// Conjugation U·Jz·U† with dir = ŷ gives cos(angle)·Jz + sin(angle)·Jx.
CMatrix mode_rotation(int n, const Direction& dir, double angle);

/// Spatial -> energy bipartition: conjugation by mode_rotation(n, ŷ, π/2).
CMatrix bogolubov_transform(const CMatrix& op);

} // namespace spinlab
