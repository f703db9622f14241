#include "spinlab/random.hpp"

#include <cmath>

namespace spinlab {

Direction random_direction(CounterRng& rng) {
    for (;;) {
        const double x = rng.normal(), y = rng.normal(), z = rng.normal();
        if (x * x + y * y + z * z > 1e-12) return Direction::normalized(x, y, z);
    }
}

OrthogonalTriplet random_triplet(CounterRng& rng) {
    const Direction n1 = random_direction(rng);
    for (;;) {
        const Direction v = random_direction(rng);
        const double d = v.dot(n1);
        const double x = v.x() - d * n1.x(), y = v.y() - d * n1.y(), z = v.z() - d * n1.z();
        if (x * x + y * y + z * z < 1e-6) continue;
        Direction n2 = Direction::normalized(x, y, z);
        // Gram-Schmidt leaves ~1e-16 overlap; one more projection tidies it.
        const double d2 = n2.dot(n1);
        n2 = Direction::normalized(n2.x() - d2 * n1.x(), n2.y() - d2 * n1.y(), n2.z() - d2 * n1.z());
        return OrthogonalTriplet::complete(n1, n2);
    }
}

DiagonalMixture random_mixture(int n, CounterRng& rng) {
    std::vector<double> p(static_cast<std::size_t>(n) + 1);
    double sum = 0.0;
    for (double& v : p) {
        v = rng.exponential();
        sum += v;
    }
    for (double& v : p) v /= sum;
    // renormalize once more so Σp = 1 holds to the last bits
    double s2 = 0.0;
    for (double v : p) s2 += v;
    for (double& v : p) v /= s2;
    return {n, std::move(p)};
}

PureState random_pure_state(int n, CounterRng& rng) {
    CVector a(n + 1);
    for (int k = 0; k <= n; ++k) a(k) = cplx(rng.normal(), rng.normal());
    return superposition(n, a);
}

DensityOperator random_density(int n, CounterRng& rng) {
    const Eigen::Index d = n + 1;
    CMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) g(i, j) = cplx(rng.normal(), rng.normal());
    CMatrix rho = g * g.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return {n, std::move(rho)};
}

} // namespace spinlab
