#include "spinlab/squeezing.hpp"

#include "spinlab/errors.hpp"

#include <cmath>
#include <string>

namespace spinlab {

TothReport toth_from_moments(int n, const std::array<MomentReport, 3>& m) {
    const double N = n;
    TothReport r;
    r.lhs[0] = m[0].second_moment + m[1].second_moment + m[2].second_moment - N * (N + 2.0) / 4.0;
    r.lhs[1] = m[0].variance + m[1].variance + m[2].variance - N / 2.0;
    r.lhs[2] = m[0].second_moment + m[1].second_moment - N / 2.0 - (N - 1.0) * m[2].variance;
    r.lhs[3] = (N - 1.0) * (m[0].variance + m[1].variance) - m[2].second_moment - N * (N - 2.0) / 4.0;
    r.satisfied[0] = r.lhs[0] <= kTothTolerance;
    r.satisfied[1] = r.lhs[1] >= -kTothTolerance;
    r.satisfied[2] = r.lhs[2] <= kTothTolerance;
    r.satisfied[3] = r.lhs[3] >= -kTothTolerance;
    return r;
}

namespace {

template <typename State>
std::array<MomentReport, 3> triplet_moments(const State& s, const OrthogonalTriplet& t) {
    const int n = s.n();
    return {moment_report(s, collective_spin(n, t.n1())), moment_report(s, collective_spin(n, t.n2())),
            moment_report(s, collective_spin(n, t.n3()))};
}

SqueezingReport xi_from_moments(int n, const std::array<MomentReport, 3>& m) {
    SqueezingReport r;
    r.numerator = n * m[0].variance;
    r.denominator_w = m[2].mean * m[2].mean;
    r.denominator_s = m[1].mean * m[1].mean + r.denominator_w;
    if (r.denominator_w >= kUndefinedDenominator) r.xi_w_squared = r.numerator / r.denominator_w;
    if (r.denominator_s >= kUndefinedDenominator) r.xi_s_squared = r.numerator / r.denominator_s;
    return r;
}

} // namespace

TothReport toth_check(const PureState& psi, const OrthogonalTriplet& triplet) {
    return toth_from_moments(psi.n(), triplet_moments(psi, triplet));
}

TothReport toth_check(const DensityOperator& rho, const OrthogonalTriplet& triplet) {
    return toth_from_moments(rho.n(), triplet_moments(rho, triplet));
}

double ineq3_delta(const DiagonalMixture& mix, double n3z_squared) {
    if (!(n3z_squared >= 0.0 && n3z_squared <= 1.0)) throw DomainError("ineq3_delta: n3z² must lie in [0, 1]");
    const MixtureMoments km = mixture_moments(mix);
    const double N = mix.n();
    const double a = km.mean_k * (N - km.mean_k);
    return N / 2.0 * (km.var_k - a) + n3z_squared / 2.0 * ((N + 2.0) * a - 3.0 * N * km.var_k);
}

std::optional<double> ineq3_threshold(const DiagonalMixture& mix) {
    const MixtureMoments km = mixture_moments(mix);
    const double N = mix.n();
    const double a = km.mean_k * (N - km.mean_k);
    if (a <= N * km.var_k) return std::nullopt;
    const double t = N * (a - km.var_k) / ((N + 2.0) * a - 3.0 * N * km.var_k);
    if (t > 1.0) return std::nullopt;
    return t;
}

SqueezingReport xi_parameters(const PureState& psi, const OrthogonalTriplet& triplet) {
    return xi_from_moments(psi.n(), triplet_moments(psi, triplet));
}

SqueezingReport xi_parameters(const DensityOperator& rho, const OrthogonalTriplet& triplet) {
    return xi_from_moments(rho.n(), triplet_moments(rho, triplet));
}

PureState gaussian_state(int n, int ell, double sigma) {
    if (n < 0 || ell < 0 || ell > n) throw DomainError("gaussian_state: need 0 <= ell <= n");
    if (!(sigma > 0.0)) throw DomainError("gaussian_state: sigma must be positive");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    double z = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double d = (k - ell) / sigma;
        w[static_cast<std::size_t>(k)] = std::exp(-d * d);
        z += w[static_cast<std::size_t>(k)];
    }
    CVector a(n + 1);
    for (int k = 0; k <= n; ++k) a(k) = std::sqrt(w[static_cast<std::size_t>(k)] / z);
    // Z already normalizes; superposition() absorbs the residual rounding.
    return superposition(n, a);
}

PureState flat_peak_state(int n, double p) {
    if (n < 2 || n % 2 != 0) throw DomainError("flat_peak_state: n must be even and >= 2");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("flat_peak_state: p must lie in (0, 1)");
    CVector a(n + 1);
    for (int k = 0; k <= n; ++k) a(k) = std::sqrt(p / n);
    a(n / 2) = std::sqrt(1.0 - p);
    return superposition(n, a);
}

std::optional<double> xi_w_diagonal_real(const PureState& psi) {
    const int n = psi.n();
    std::vector<double> p(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        const cplx a = psi.amplitudes()(k);
        if (a.imag() != 0.0 || a.real() < 0.0)
            throw DomainError("xi_w_diagonal_real: amplitude " + std::to_string(k) + " is not real and non-negative");
        p[static_cast<std::size_t>(k)] = a.real() * a.real();
    }
    double m1 = 0.0, overlap = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double pk = p[static_cast<std::size_t>(k)];
        m1 += pk * k;
        if (k >= 1)
            overlap += std::sqrt(static_cast<double>(k) * (n - k + 1)) * std::sqrt(pk * p[static_cast<std::size_t>(k - 1)]);
    }
    // two passes: Δ²k can be far below <k²> on sharply peaked states
    double var = 0.0;
    for (int k = 0; k <= n; ++k) var += p[static_cast<std::size_t>(k)] * (k - m1) * (k - m1);
    const double denom = overlap * overlap;
    if (denom < kUndefinedDenominator) return std::nullopt;
    return n * var / denom;
}

} // namespace spinlab
