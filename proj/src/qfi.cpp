#include "spinlab/qfi.hpp"

#include "spinlab/errors.hpp"
#include "spinlab/squeezing.hpp"

#include <cmath>
#include <limits>

namespace spinlab {

const char* to_string(QfiMethod m) {
    switch (m) {
    case QfiMethod::closed_form: return "closed-form";
    case QfiMethod::spectral: return "spectral";
    }
    return "unknown";
}

Spectrum clamped_spectrum(const DensityOperator& rho) {
    Spectrum s = hermitian_eig(rho.matrix());
    double sum = 0.0;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
        double& r = s.eigenvalues(i);
        if (r < -1e-10) throw NumericError("clamped_spectrum: eigenvalue below -1e-10", r);
        if (r < 0.0) r = 0.0;
        sum += r;
    }
    s.eigenvalues /= sum;
    return s;
}

namespace {

void check_match(int n_state, const CollectiveSpinOp& j, const char* where) {
    if (n_state != j.n()) throw DomainError(std::string(where) + ": state and generator particle counts differ");
}

} // namespace

CMatrix sld(const DensityOperator& rho, const CollectiveSpinOp& generator) {
    check_match(rho.n(), generator, "sld");
    const Spectrum s = clamped_spectrum(rho);
    const CMatrix& v = s.eigenvectors;
    const CMatrix jr = v.adjoint() * generator.matrix() * v;
    const Eigen::Index d = jr.rows();
    CMatrix l = CMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            const double ri = s.eigenvalues(i), rj = s.eigenvalues(j);
            if (ri + rj < kDegeneratePairGuard) continue;
            l(i, j) = cplx(0.0, 2.0 * (ri - rj) / (ri + rj)) * jr(i, j);
        }
    CMatrix out = v * l * v.adjoint();
    return 0.5 * (out + out.adjoint());
}

QfiReport qfi_spectral(const DensityOperator& rho, const CollectiveSpinOp& generator) {
    check_match(rho.n(), generator, "qfi_spectral");
    const Spectrum s = clamped_spectrum(rho);
    const CMatrix jr = s.eigenvectors.adjoint() * generator.matrix() * s.eigenvectors;
    const Eigen::Index d = jr.rows();
    double f = 0.0;
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            const double ri = s.eigenvalues(i), rj = s.eigenvalues(j);
            const double sum = ri + rj;
            if (sum < kDegeneratePairGuard) continue;
            const double diff = ri - rj;
            f += diff * diff / sum * std::norm(jr(i, j));
        }
    return {2.0 * f, QfiMethod::spectral};
}

QfiReport qfi_spectral(const PureState& psi, const CollectiveSpinOp& generator) {
    return qfi_spectral(DensityOperator::from_pure(psi), generator);
}

QfiReport qfi_number_state(int n, int k, const Direction& dir) {
    if (n < 0 || k < 0 || k > n) throw DomainError("qfi_number_state: need 0 <= k <= n");
    const double N = n, K = k;
    return {(1.0 - dir.z() * dir.z()) * (N + 2.0 * K * (N - K)), QfiMethod::closed_form};
}

QfiReport qfi_diagonal_mixture(const DiagonalMixture& mix, const Direction& dir) {
    const MixtureMoments km = mixture_moments(mix);
    const int n = mix.n();
    const double N = n;
    double cross = 0.0;
    for (int k = 0; k < n; ++k) {
        const double a = mix[k], b = mix[k + 1];
        if (a + b < kDegeneratePairGuard) continue;
        cross += a * b / (a + b) * (k + 1.0) * (N - k);
    }
    const double bracket = N + 2.0 * N * km.mean_k - 2.0 * km.second_k - 4.0 * cross;
    return {(1.0 - dir.z() * dir.z()) * bracket, QfiMethod::closed_form};
}

GaussianQfi qfi_gaussian_asymptotics(int n, int ell, double sigma) {
    const DensityOperator rho = DensityOperator::from_pure(gaussian_state(n, ell, sigma));
    return {qfi_spectral(rho, collective_spin(n, Direction::y_axis())).value,
            qfi_spectral(rho, collective_spin(n, Direction::z_axis())).value};
}

BoundChainReport bound_chain_check(const DensityOperator& rho, const OrthogonalTriplet& triplet) {
    const int n = rho.n();
    const MomentReport m1 = moment_report(rho, collective_spin(n, triplet.n1()));
    const MomentReport m2 = moment_report(rho, collective_spin(n, triplet.n2()));
    const MomentReport m3 = moment_report(rho, collective_spin(n, triplet.n3()));
    BoundChainReport r;
    r.qfi = qfi_spectral(rho, collective_spin(n, triplet.n1())).value;
    const double mean3_sq = m3.mean * m3.mean;
    r.heisenberg_slack = m1.variance * m2.variance - 0.25 * mean3_sq;
    r.fisher2_slack = r.qfi * m2.variance - mean3_sq;
    if (mean3_sq >= kUndefinedDenominator) {
        const double inv_f = r.qfi > 0.0 ? 1.0 / r.qfi : std::numeric_limits<double>::infinity();
        r.fisher3_slack = m2.variance / mean3_sq - inv_f;
    }
    return r;
}

} // namespace spinlab
