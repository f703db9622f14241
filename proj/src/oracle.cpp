#include "spinlab/oracle.hpp"

#include "spinlab/errors.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace spinlab::oracle {

namespace {

void check_qubits(int n, int cap, const char* where) {
    if (n < 1 || n > cap)
        throw DomainError(std::string(where) + ": qubit count must lie in 1.." + std::to_string(cap));
}

Eigen::Vector2cd qubit_from_bloch(const std::array<double, 3>& b) {
    const double up = 1.0 + b[2];
    if (up < 1e-12) return {0.0, 1.0};
    const double alpha = std::sqrt(up / 2.0);
    const cplx beta = cplx(b[0], b[1]) / std::sqrt(2.0 * up);
    return {alpha, beta};
}

// dir·σ/2 in the (mode a, mode b) qubit basis
Eigen::Matrix2cd single_spin(const Direction& d) {
    Eigen::Matrix2cd s;
    s << d.z(), cplx(d.x(), -d.y()), cplx(d.x(), d.y()), -d.z();
    return 0.5 * s;
}

double variance_of(const CVector& psi, const CMatrix& op) {
    const CVector j = op * psi;
    const double mean = psi.dot(j).real();
    return j.squaredNorm() - mean * mean;
}

} // namespace

ProductState::ProductState(std::vector<std::array<double, 3>> bloch_vectors) : bloch_(std::move(bloch_vectors)) {
    check_qubits(static_cast<int>(bloch_.size()), kMaxQubits, "ProductState");
    for (const auto& b : bloch_) {
        const double norm2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
        if (std::abs(norm2 - 1.0) > 1e-12) throw DomainError("ProductState: Bloch vector is not unit length");
    }
}

CVector ProductState::vector() const {
    CVector v = CVector::Ones(1);
    for (const auto& b : bloch_) {
        const Eigen::Vector2cd q = qubit_from_bloch(b);
        CVector next(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            next(2 * i) = v(i) * q(0);
            next(2 * i + 1) = v(i) * q(1);
        }
        v = std::move(next);
    }
    return v;
}

ProductState random_product_state(int n, CounterRng& rng) {
    std::vector<std::array<double, 3>> b(static_cast<std::size_t>(n));
    for (auto& v : b) v = random_direction(rng).components();
    return ProductState(std::move(b));
}

CMatrix tensor_collective_spin(int n, const Direction& dir) {
    check_qubits(n, kMaxQubits, "tensor_collective_spin");
    const Eigen::Matrix2cd s = single_spin(dir);
    const Eigen::Index dim = Eigen::Index{1} << n;
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b)
        for (int j = 0; j < n; ++j) {
            const int shift = n - 1 - j;
            const int bit = static_cast<int>((b >> shift) & 1);
            m(b, b) += s(bit, bit);
            const Eigen::Index flipped = b ^ (Eigen::Index{1} << shift);
            m(flipped, b) += s(1 - bit, bit);
        }
    return m;
}

double product_variance(const ProductState& ps, const Direction& dir) {
    return variance_of(ps.vector(), tensor_collective_spin(ps.n(), dir));
}

double product_variance_closed_form(const ProductState& ps, const Direction& dir) {
    double sum = 0.0;
    for (const auto& b : ps.bloch_vectors()) {
        const double mean = 0.5 * (b[0] * dir.x() + b[1] * dir.y() + b[2] * dir.z());
        sum += mean * mean;
    }
    return ps.n() / 4.0 - sum;
}

double antisymmetric_overlap(const Eigen::Matrix2cd& rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw DomainError("antisymmetric_overlap: rho is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-12) throw DomainError("antisymmetric_overlap: rho does not have unit trace");
    if (rho(0, 0).real() < -1e-12 || rho(1, 1).real() < -1e-12 || rho.determinant().real() < -1e-12)
        throw DomainError("antisymmetric_overlap: rho is not positive semidefinite");

    Eigen::Matrix4cd rr;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rr.block<2, 2>(2 * i, 2 * j) = rho(i, j) * rho;
    Eigen::Vector4cd singlet(0.0, 1.0, -1.0, 0.0);
    singlet /= std::sqrt(2.0);
    return singlet.dot(rr * singlet).real();
}

CVector dicke_state(int n, int k) {
    check_qubits(n, kMaxQubits, "dicke_state");
    if (k < 0 || k > n) throw DomainError("dicke_state: k out of range");
    const Eigen::Index dim = Eigen::Index{1} << n;
    CVector v = CVector::Zero(dim);
    for (Eigen::Index b = 0; b < dim; ++b)
        if (n - std::popcount(static_cast<unsigned long long>(b)) == k) v(b) = 1.0;
    return v / v.norm();
}

double DickeReport::max_error() const {
    return std::max(std::abs(boson_mean - tensor_mean), std::abs(boson_variance - tensor_variance));
}

DickeReport dicke_embedding_check(int n, int k, const Direction& dir) {
    check_qubits(n, 6, "dicke_embedding_check");
    if (k < 0 || k > n) throw DomainError("dicke_embedding_check: k out of range");
    DickeReport r;
    const MomentReport boson = moment_report(number_state(n, k), collective_spin(n, dir));
    r.boson_mean = boson.mean;
    r.boson_variance = boson.variance;
    const CVector d = dicke_state(n, k);
    const CMatrix j = tensor_collective_spin(n, dir);
    const CVector jd = j * d;
    r.tensor_mean = d.dot(jd).real();
    r.tensor_variance = jd.squaredNorm() - r.tensor_mean * r.tensor_mean;
    return r;
}

TothReport toth_distinguishable(int n, int components, const OrthogonalTriplet& triplet, CounterRng& rng) {
    check_qubits(n, kMaxQubits, "toth_distinguishable");
    if (components < 1) throw DomainError("toth_distinguishable: need at least one component");
    const Eigen::Index dim = Eigen::Index{1} << n;
    CMatrix rho = CMatrix::Zero(dim, dim);
    double total = 0.0;
    for (int c = 0; c < components; ++c) {
        const double w = rng.exponential();
        const CVector v = random_product_state(n, rng).vector();
        rho += w * v * v.adjoint();
        total += w;
    }
    rho /= total;

    std::array<MomentReport, 3> m;
    const auto dirs = triplet.directions();
    for (std::size_t i = 0; i < 3; ++i) {
        const CMatrix j = tensor_collective_spin(n, dirs[i]);
        const CMatrix rj = rho * j;
        const double mean = rj.trace().real();
        const double second = (rj * j).trace().real();
        m[i] = {mean, second, second - mean * mean};
    }
    return toth_from_moments(n, m);
}

SuiteSummary run_suite(int max_n, int trials, std::uint64_t seed) {
    if (max_n < 2 || max_n > kMaxQubits)
        throw DomainError("oracle suite: n must lie in 2.." + std::to_string(kMaxQubits));
    if (trials < 1) throw DomainError("oracle suite: trials must be >= 1");

    SuiteSummary s;
    s.max_n = max_n;
    s.trials = trials;
    s.seed = seed;
    s.product_variance_max_excess = -std::numeric_limits<double>::infinity();
    s.toth_min_slack = std::numeric_limits<double>::infinity();

    CounterRng product_rng(CounterRng::mix64(seed ^ 0x1));
    for (int n = 2; n <= max_n; ++n)
        for (int t = 0; t < trials; ++t) {
            const ProductState ps = random_product_state(n, product_rng);
            const Direction dir = random_direction(product_rng);
            const double v = product_variance(ps, dir);
            s.product_variance_max_excess = std::max(s.product_variance_max_excess, v - n / 4.0);
            s.product_closed_form_max_error =
                std::max(s.product_closed_form_max_error, std::abs(v - product_variance_closed_form(ps, dir)));
            ++s.product_variance_checks;
        }
    s.product_variance_ok = s.product_variance_max_excess <= 1e-10 && s.product_closed_form_max_error <= 1e-10;

    CounterRng det_rng(CounterRng::mix64(seed ^ 0x2));
    for (int t = 0; t < trials; ++t) {
        Eigen::Matrix2cd g;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g(i, j) = cplx(det_rng.normal(), det_rng.normal());
        Eigen::Matrix2cd rho = g * g.adjoint();
        rho = 0.5 * (rho + rho.adjoint()).eval();
        rho /= rho.trace().real();
        const double err = std::abs(antisymmetric_overlap(rho) - rho.determinant().real());
        s.determinant_max_error = std::max(s.determinant_max_error, err);
        ++s.determinant_checks;
    }
    s.determinant_ok = s.determinant_max_error <= 1e-12;

    CounterRng dicke_rng(CounterRng::mix64(seed ^ 0x3));
    for (int n = 1; n <= std::min(max_n, 6); ++n)
        for (int k = 0; k <= n; ++k)
            for (int t = 0; t < 20; ++t) {
                const DickeReport r = dicke_embedding_check(n, k, random_direction(dicke_rng));
                s.dicke_max_error = std::max(s.dicke_max_error, r.max_error());
                ++s.dicke_checks;
            }
    s.dicke_ok = s.dicke_max_error <= 1e-10;

    CounterRng toth_rng(CounterRng::mix64(seed ^ 0x4));
    for (int n = 2; n <= std::min(max_n, 4); ++n)
        for (int t = 0; t < trials; ++t) {
            const int components = 1 + static_cast<int>(toth_rng.uniform() * 4.0);
            const OrthogonalTriplet triplet = random_triplet(toth_rng);
            const TothReport r = toth_distinguishable(n, components, triplet, toth_rng);
            const double slack = std::min({-r.lhs[0], r.lhs[1], -r.lhs[2], r.lhs[3]});
            s.toth_min_slack = std::min(s.toth_min_slack, slack);
            ++s.toth_checks;
        }
    s.toth_ok = s.toth_min_slack >= -kTothTolerance;
    return s;
}

} // namespace spinlab::oracle
