#include "spinlab/fock.hpp"

#include "spinlab/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace spinlab {

int max_particles() {
    static const int cap = [] {
        const char* env = std::getenv("SPINLAB_MAX_N");
        if (env == nullptr || *env == '\0') return 4096;
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) return 4096;
        return static_cast<int>(std::min<long>(v, 1L << 20));
    }();
    return cap;
}

namespace {

void check_particles(int n, const char* where) {
    if (n < 0) throw DomainError(std::string(where) + ": particle count must be non-negative");
    if (n > max_particles())
        throw DomainError(std::string(where) + ": n = " + std::to_string(n) + " exceeds SPINLAB_MAX_N = " +
                          std::to_string(max_particles()));
}

} // namespace

// ---------------------------------------------------------------- Direction

Direction::Direction(double x, double y, double z) : x_(x), y_(y), z_(z) {
    const double norm2 = x * x + y * y + z * z;
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-12)
        throw DomainError("Direction: not a unit vector (|n|^2 = " + std::to_string(norm2) + ")");
}

Direction Direction::normalized(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(norm) || norm == 0.0) throw DomainError("Direction: cannot normalize a zero vector");
    const double nx = x / norm, ny = y / norm, nz = z / norm;
    // one more pass absorbs the last ulp of the division
    const double r = std::sqrt(nx * nx + ny * ny + nz * nz);
    return {nx / r, ny / r, nz / r};
}

Direction Direction::cross(const Direction& o) const {
    return normalized(y_ * o.z_ - z_ * o.y_, z_ * o.x_ - x_ * o.z_, x_ * o.y_ - y_ * o.x_);
}

// -------------------------------------------------------- OrthogonalTriplet

OrthogonalTriplet::OrthogonalTriplet(const Direction& n1, const Direction& n2, const Direction& n3)
    : n1_(n1), n2_(n2), n3_(n3) {
    const double d12 = n1.dot(n2), d13 = n1.dot(n3), d23 = n2.dot(n3);
    if (std::abs(d12) > 1e-10 || std::abs(d13) > 1e-10 || std::abs(d23) > 1e-10)
        throw DomainError("OrthogonalTriplet: directions are not pairwise orthogonal");
    const double zsum = n1.z() * n1.z() + n2.z() * n2.z() + n3.z() * n3.z();
    if (std::abs(zsum - 1.0) > 1e-10) throw DomainError("OrthogonalTriplet: z components violate n1z²+n2z²+n3z² = 1");
}

OrthogonalTriplet OrthogonalTriplet::standard() {
    return {Direction::x_axis(), Direction::y_axis(), Direction::z_axis()};
}

OrthogonalTriplet OrthogonalTriplet::complete(const Direction& n1, const Direction& n2) {
    if (std::abs(n1.dot(n2)) > 1e-10) throw DomainError("OrthogonalTriplet::complete: n1 and n2 are not orthogonal");
    return {n1, n2, n1.cross(n2)};
}

// ---------------------------------------------------------------- states

PureState::PureState(int n, CVector amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {
    check_particles(n, "PureState");
    if (amplitudes_.size() != n + 1)
        throw DomainError("PureState: expected " + std::to_string(n + 1) + " amplitudes, got " +
                          std::to_string(amplitudes_.size()));
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-12) throw DomainError("PureState: amplitudes are not normalized");
}

DensityOperator::DensityOperator(int n, CMatrix matrix) : n_(n), matrix_(std::move(matrix)) {
    check_particles(n, "DensityOperator");
    if (matrix_.rows() != n + 1 || matrix_.cols() != n + 1)
        throw DomainError("DensityOperator: matrix must be (n+1)x(n+1)");
    if (!is_hermitian(matrix_, 1e-12)) throw DomainError("DensityOperator: matrix is not Hermitian");
    const cplx tr = matrix_.trace();
    if (std::abs(tr - 1.0) > 1e-12) throw DomainError("DensityOperator: trace is not 1");
    const Spectrum s = hermitian_eig(matrix_);
    if (s.eigenvalues.size() > 0 && s.eigenvalues(0) < -1e-10)
        throw DomainError("DensityOperator: negative eigenvalue " + std::to_string(s.eigenvalues(0)));
}

DensityOperator::DensityOperator(int n, CMatrix matrix, Unchecked) : n_(n), matrix_(std::move(matrix)) {}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    const CVector& a = psi.amplitudes();
    return {psi.n(), a * a.adjoint(), Unchecked{}};
}

DiagonalMixture::DiagonalMixture(int n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {
    check_particles(n, "DiagonalMixture");
    if (probs_.size() != static_cast<std::size_t>(n) + 1)
        throw DomainError("DiagonalMixture: expected " + std::to_string(n + 1) + " probabilities");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) throw DomainError("DiagonalMixture: probabilities must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("DiagonalMixture: probabilities must sum to 1");
}

DiagonalMixture DiagonalMixture::uniform(int n) {
    check_particles(n, "DiagonalMixture::uniform");
    return {n, std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0 / (n + 1))};
}

DiagonalMixture DiagonalMixture::point(int n, int k) {
    check_particles(n, "DiagonalMixture::point");
    if (k < 0 || k > n) throw DomainError("DiagonalMixture::point: k out of range");
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    p[static_cast<std::size_t>(k)] = 1.0;
    return {n, std::move(p)};
}

// ---------------------------------------------------------------- operators

SpinComponents spin_components(int n) {
    check_particles(n, "spin_components");
    const Eigen::Index d = n + 1;
    SpinComponents j{CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
    for (int k = 0; k <= n; ++k) j.jz(k, k) = 0.5 * (2.0 * k - n);
    for (int k = 0; k < n; ++k) {
        // <k+1| a†b |k>
        const double ladder = std::sqrt(static_cast<double>(k + 1) * static_cast<double>(n - k));
        j.jx(k + 1, k) = 0.5 * ladder;
        j.jx(k, k + 1) = 0.5 * ladder;
        j.jy(k + 1, k) = cplx(0.0, -0.5 * ladder);
        j.jy(k, k + 1) = cplx(0.0, 0.5 * ladder);
    }
    return j;
}

CMatrix spin_matrix(int n, double x, double y, double z) {
    const SpinComponents j = spin_components(n);
    return x * j.jx + y * j.jy + z * j.jz;
}

PureState number_state(int n, int k) {
    check_particles(n, "number_state");
    if (k < 0 || k > n)
        throw DomainError("number_state: k = " + std::to_string(k) + " outside 0.." + std::to_string(n));
    CVector a = CVector::Zero(n + 1);
    a(k) = 1.0;
    return {n, std::move(a)};
}

CollectiveSpinOp collective_spin(int n, const Direction& dir) {
    return {n, spin_matrix(n, dir.x(), dir.y(), dir.z()), dir};
}

PureState superposition(int n, const CVector& amplitudes) {
    check_particles(n, "superposition");
    if (amplitudes.size() != n + 1)
        throw DomainError("superposition: expected " + std::to_string(n + 1) + " amplitudes");
    const double norm = amplitudes.norm();
    if (!std::isfinite(norm) || norm == 0.0) throw DomainError("superposition: zero amplitude vector");
    return {n, amplitudes / norm};
}

DensityOperator mixture_density(const DiagonalMixture& mix) {
    const int n = mix.n();
    CMatrix m = CMatrix::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) m(k, k) = mix[k];
    return {n, std::move(m)};
}

CMatrix mode_rotation(int n, const Direction& dir, double angle) {
    const Spectrum s = hermitian_eig(spin_matrix(n, dir.x(), dir.y(), dir.z()));
    return spectral_function(s, [angle](double lambda) { return std::exp(cplx(0.0, -angle * lambda)); });
}

CMatrix bogolubov_transform(const CMatrix& op) {
    const int n = static_cast<int>(op.rows()) - 1;
    const CMatrix u = mode_rotation(n, Direction::y_axis(), std::numbers::pi / 2);
    return u * op * u.adjoint();
}

} // namespace spinlab
