#include "spinlab/moments.hpp"

#include "spinlab/errors.hpp"

#include <cmath>
#include <string>

namespace spinlab {

namespace {

void check_dim(Eigen::Index state_dim, const CMatrix& op, const char* where) {
    if (op.rows() != state_dim || op.cols() != state_dim)
        throw DomainError(std::string(where) + ": operator dimension " + std::to_string(op.rows()) +
                          " does not match state dimension " + std::to_string(state_dim));
}

double real_part(cplx v, const char* where) {
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
        throw NumericError(std::string(where) + ": expectation has a non-negligible imaginary part", v.imag());
    return v.real();
}

MomentReport finish(double mean, double second) {
    return {mean, second, second - mean * mean};
}

} // namespace

double expectation(const PureState& psi, const CMatrix& op) {
    check_dim(psi.n() + 1, op, "expectation");
    return real_part(psi.amplitudes().dot(op * psi.amplitudes()), "expectation");
}

double expectation(const DensityOperator& rho, const CMatrix& op) {
    check_dim(rho.n() + 1, op, "expectation");
    // Tr(ρ·A) = Σ_ij ρ_ij A_ji
    const cplx tr = (rho.matrix().transpose().array() * op.array()).sum();
    return real_part(tr, "expectation");
}

double expectation(const PureState& psi, const CollectiveSpinOp& op) { return expectation(psi, op.matrix()); }
double expectation(const DensityOperator& rho, const CollectiveSpinOp& op) { return expectation(rho, op.matrix()); }

MomentReport moment_report(const PureState& psi, const CollectiveSpinOp& op) {
    check_dim(psi.n() + 1, op.matrix(), "moment_report");
    const CVector jpsi = op.matrix() * psi.amplitudes();
    const double mean = real_part(psi.amplitudes().dot(jpsi), "moment_report");
    // <ψ|J²|ψ> = ||Jψ||² for Hermitian J
    return finish(mean, jpsi.squaredNorm());
}

MomentReport moment_report(const DensityOperator& rho, const CollectiveSpinOp& op) {
    check_dim(rho.n() + 1, op.matrix(), "moment_report");
    const CMatrix& j = op.matrix();
    const CMatrix rj = rho.matrix() * j;
    const double mean = real_part(rj.trace(), "moment_report");
    const double second = real_part((rj.transpose().array() * j.array()).sum(), "moment_report");
    return finish(mean, second);
}

double variance(const PureState& psi, const CollectiveSpinOp& op) { return moment_report(psi, op).variance; }
double variance(const DensityOperator& rho, const CollectiveSpinOp& op) { return moment_report(rho, op).variance; }

MomentReport number_state_moments(int n, int k, const Direction& dir) {
    if (n < 0 || k < 0 || k > n) throw DomainError("number_state_moments: need 0 <= k <= n");
    const double N = n, K = k, z2 = dir.z() * dir.z();
    const double mean = 0.5 * dir.z() * (2.0 * K - N);
    const double spread = N + 2.0 * K * (N - K);
    const double second = spread / 4.0 + z2 * (N * (N - 1.0) - 6.0 * K * (N - K)) / 4.0;
    const double var = (1.0 - z2) * spread / 4.0;
    return {mean, second, var};
}

MixtureMoments mixture_moments(const DiagonalMixture& mix) {
    double m1 = 0.0, m2 = 0.0;
    for (int k = 0; k <= mix.n(); ++k) {
        m1 += mix[k] * k;
        m2 += mix[k] * static_cast<double>(k) * k;
    }
    return {m1, m2, m2 - m1 * m1};
}

MomentReport mixture_spin_moments(const DiagonalMixture& mix, const Direction& dir) {
    const MixtureMoments km = mixture_moments(mix);
    const double N = mix.n(), m1 = km.mean_k, m2 = km.second_k, z2 = dir.z() * dir.z();
    const double base = (N * (1.0 + 2.0 * m1) - 2.0 * m2) / 4.0;
    const double mean = 0.5 * dir.z() * (2.0 * m1 - N);
    const double second = base + z2 / 4.0 * (N * (N - 1.0) - 6.0 * N * m1 + 6.0 * m2);
    const double var = base + z2 / 4.0 * (6.0 * m2 - 2.0 * m1 * (N + 2.0 * m1) - N);
    return {mean, second, var};
}

} // namespace spinlab
