#include "spinlab/interferometer.hpp"

#include "spinlab/errors.hpp"
#include "spinlab/golden.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace spinlab {

PhaseRotor::PhaseRotor(int n, const Direction& dir)
    : n_(n), direction_(dir), spectrum_(hermitian_eig(spin_matrix(n, dir.x(), dir.y(), dir.z()))) {}

CMatrix PhaseRotor::unitary(double theta) const {
    return spectral_function(spectrum_, [theta](double lambda) { return std::exp(cplx(0.0, -theta * lambda)); });
}

namespace {

CVector phases(const RVector& lambda, double theta) {
    CVector e(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) e(i) = std::exp(cplx(0.0, -theta * lambda(i)));
    return e;
}

void check_n(int state_n, int rotor_n) {
    if (state_n != rotor_n) throw DomainError("PhaseRotor: state and rotation particle counts differ");
}

std::vector<double> diagonal_probabilities(const CMatrix& rho) {
    std::vector<double> p(static_cast<std::size_t>(rho.rows()));
    for (Eigen::Index m = 0; m < rho.rows(); ++m) p[static_cast<std::size_t>(m)] = std::max(0.0, rho(m, m).real());
    return p;
}

} // namespace

PureState PhaseRotor::rotate(const PureState& psi, double theta) const {
    check_n(psi.n(), n_);
    const CMatrix& v = spectrum_.eigenvectors;
    CVector out = v * phases(spectrum_.eigenvalues, theta).cwiseProduct(v.adjoint() * psi.amplitudes());
    return {n_, std::move(out)};
}

DensityOperator PhaseRotor::rotate(const DensityOperator& rho, double theta) const {
    check_n(rho.n(), n_);
    const CMatrix u = unitary(theta);
    CMatrix out = u * rho.matrix() * u.adjoint();
    out = 0.5 * (out + out.adjoint());
    return {n_, std::move(out)};
}

std::vector<double> PhaseRotor::outcome_distribution(const PureState& psi, double theta) const {
    check_n(psi.n(), n_);
    const CMatrix& v = spectrum_.eigenvectors;
    const CVector out = v * phases(spectrum_.eigenvalues, theta).cwiseProduct(v.adjoint() * psi.amplitudes());
    std::vector<double> p(static_cast<std::size_t>(out.size()));
    for (Eigen::Index m = 0; m < out.size(); ++m) p[static_cast<std::size_t>(m)] = std::norm(out(m));
    return p;
}

std::vector<double> PhaseRotor::outcome_distribution(const DensityOperator& rho, double theta) const {
    check_n(rho.n(), n_);
    const CMatrix u = unitary(theta);
    return diagonal_probabilities(u * rho.matrix() * u.adjoint());
}

PureState rotate(const PureState& psi, const Direction& dir, double theta) {
    return PhaseRotor(psi.n(), dir).rotate(psi, theta);
}

DensityOperator rotate(const DensityOperator& rho, const Direction& dir, double theta) {
    return PhaseRotor(rho.n(), dir).rotate(rho, theta);
}

std::vector<double> outcome_distribution(const PureState& psi, const Direction& rot_dir, double theta) {
    return PhaseRotor(psi.n(), rot_dir).outcome_distribution(psi, theta);
}

std::vector<double> outcome_distribution(const DensityOperator& rho, const Direction& rot_dir, double theta) {
    return PhaseRotor(rho.n(), rot_dir).outcome_distribution(rho, theta);
}

// ------------------------------------------------------- error propagation

namespace {

template <typename State>
ErrorPropagation propagate(const State& s, const Direction& rot_dir, const Direction& meas_dir, double theta0) {
    if (std::abs(rot_dir.dot(meas_dir)) > 1e-10)
        throw DomainError("error_propagation: rotation and measurement directions must be orthogonal");
    const PhaseRotor rotor(s.n(), rot_dir);
    const CollectiveSpinOp meas = collective_spin(s.n(), meas_dir);
    const double h = kDerivativeStep;
    const double plus = expectation(rotor.rotate(s, theta0 + h), meas);
    const double minus = expectation(rotor.rotate(s, theta0 - h), meas);

    ErrorPropagation out;
    out.derivative = (plus - minus) / (2.0 * h);
    out.variance = variance(rotor.rotate(s, theta0), meas);
    if (std::abs(out.derivative) >= 1e-12) out.delta2_theta = out.variance / (out.derivative * out.derivative);
    return out;
}

template <typename State>
double fisher_from_distributions(const State& s, const Direction& rot_dir, double theta) {
    const PhaseRotor rotor(s.n(), rot_dir);
    const double h = kDerivativeStep;
    const std::vector<double> p0 = rotor.outcome_distribution(s, theta);
    const std::vector<double> pp = rotor.outcome_distribution(s, theta + h);
    const std::vector<double> pm = rotor.outcome_distribution(s, theta - h);
    double f = 0.0;
    for (std::size_t m = 0; m < p0.size(); ++m) {
        if (p0[m] < 1e-12) continue;
        const double d = (pp[m] - pm[m]) / (2.0 * h);
        f += d * d / p0[m];
    }
    return f;
}

} // namespace

ErrorPropagation error_propagation(const DensityOperator& rho, const Direction& rot_dir, const Direction& meas_dir,
                                   double theta0) {
    return propagate(rho, rot_dir, meas_dir, theta0);
}

ErrorPropagation error_propagation(const PureState& psi, const Direction& rot_dir, const Direction& meas_dir,
                                   double theta0) {
    return propagate(psi, rot_dir, meas_dir, theta0);
}

double classical_fisher(const DensityOperator& rho, const Direction& rot_dir, double theta) {
    return fisher_from_distributions(rho, rot_dir, theta);
}

double classical_fisher(const PureState& psi, const Direction& rot_dir, double theta) {
    return fisher_from_distributions(psi, rot_dir, theta);
}

// ---------------------------------------------------------------- MLE

namespace {

// ρ expressed in the eigenbasis of the generator; p_θ(m) is then
// diag(W ρ̃ W†) with W = V·diag(e^{-iθλ}).
class LikelihoodModel {
public:
    LikelihoodModel(const DensityOperator& rho, const Direction& dir)
        : spectrum_(hermitian_eig(spin_matrix(rho.n(), dir.x(), dir.y(), dir.z()))),
          rho_tilde_(spectrum_.eigenvectors.adjoint() * rho.matrix() * spectrum_.eigenvectors) {}

    std::vector<double> probabilities(double theta) const {
        const CMatrix w = spectrum_.eigenvectors * phases(spectrum_.eigenvalues, theta).asDiagonal();
        const CMatrix wr = w * rho_tilde_;
        std::vector<double> p(static_cast<std::size_t>(w.rows()));
        for (Eigen::Index m = 0; m < w.rows(); ++m)
            p[static_cast<std::size_t>(m)] = std::max(0.0, wr.row(m).dot(w.row(m)).real());
        return p;
    }

private:
    Spectrum spectrum_;
    CMatrix rho_tilde_;
};

double log_likelihood(const std::vector<int>& counts, const std::vector<double>& p) {
    double ll = 0.0;
    for (std::size_t m = 0; m < counts.size(); ++m) {
        if (counts[m] == 0) continue;
        if (p[m] <= 0.0) return -std::numeric_limits<double>::infinity();
        ll += counts[m] * std::log(p[m]);
    }
    return ll;
}

} // namespace

PhaseEstimationResult mle_estimate(const DensityOperator& rho, const Direction& rot_dir, double theta_true, int shots,
                                   int repetitions, std::uint64_t seed, const MleOptions& options) {
    if (!(theta_true > 0.0 && theta_true < std::numbers::pi / 2))
        throw DomainError("mle_estimate: theta_true must lie in (0, pi/2)");
    if (shots < 1) throw DomainError("mle_estimate: shots must be >= 1");
    if (repetitions < 1) throw DomainError("mle_estimate: repetitions must be >= 1");
    if (options.grid_points < 3) throw DomainError("mle_estimate: need at least 3 grid points");

    const LikelihoodModel model(rho, rot_dir);
    const double lo = theta_true / 4.0;
    const double hi = std::min(std::numbers::pi / 2, 4.0 * theta_true);

    const std::vector<double> p_true = model.probabilities(theta_true);
    std::vector<double> cdf(p_true.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < p_true.size(); ++m) cdf[m] = (acc += p_true[m]);

    const int g = options.grid_points;
    const double step = (hi - lo) / (g - 1);
    std::vector<std::vector<double>> grid_p(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) grid_p[static_cast<std::size_t>(i)] = model.probabilities(lo + i * step);

    PhaseEstimationResult out;
    out.theta_true = theta_true;
    out.shots = shots;
    out.repetitions = repetitions;
    out.seed = seed;
    out.estimates.reserve(static_cast<std::size_t>(repetitions));

    std::vector<int> counts(p_true.size());
    for (int r = 0; r < repetitions; ++r) {
        CounterRng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        std::fill(counts.begin(), counts.end(), 0);
        for (int s = 0; s < shots; ++s) {
            const double u = rng.uniform() * acc;
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            const auto m = std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1);
            ++counts[static_cast<std::size_t>(m)];
        }

        int best = -1;
        double best_ll = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < g; ++i) {
            const double ll = log_likelihood(counts, grid_p[static_cast<std::size_t>(i)]);
            if (ll > best_ll) {
                best_ll = ll;
                best = i;
            }
        }
        if (best < 0)
            throw NumericError("mle_estimate: every candidate angle assigns zero probability to the data", 0.0);

        const double a = lo + std::max(best - 1, 0) * step;
        const double b = lo + std::min(best + 1, g - 1) * step;
        const double est = golden_section_maximize(
            [&](double t) { return log_likelihood(counts, model.probabilities(t)); }, a, b, options.tolerance);
        out.estimates.push_back(est);
    }

    double mean = 0.0;
    for (double e : out.estimates) mean += e;
    mean /= repetitions;
    double ss = 0.0, mse = 0.0;
    for (double e : out.estimates) {
        ss += (e - mean) * (e - mean);
        mse += (e - theta_true) * (e - theta_true);
    }
    out.mean_estimate = mean;
    out.sample_variance = repetitions > 1 ? ss / (repetitions - 1) : 0.0;
    out.mean_squared_error = mse / repetitions;

    out.qfi = qfi_spectral(rho, collective_spin(rho.n(), rot_dir)).value;
    out.classical_fisher = classical_fisher(rho, rot_dir, theta_true);
    out.crb_quantum = 1.0 / (shots * out.qfi);
    out.crb_classical = 1.0 / (shots * out.classical_fisher);
    return out;
}

PhaseEstimationResult mle_estimate(const PureState& psi, const Direction& rot_dir, double theta_true, int shots,
                                   int repetitions, std::uint64_t seed, const MleOptions& options) {
    return mle_estimate(DensityOperator::from_pure(psi), rot_dir, theta_true, shots, repetitions, seed, options);
}

} // namespace spinlab
