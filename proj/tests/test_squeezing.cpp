#include "spinlab/errors.hpp"
#include "spinlab/random.hpp"
#include "spinlab/squeezing.hpp"

#include "test_helpers.hpp"

using namespace spinlab;
using spinlab::test::rel_close;

namespace {

// Frame with n3 = (√(1-z²), 0, z): n1 = ŷ, n2 = n3 × n1.
OrthogonalTriplet frame_with_n3z_squared(double z2) {
    const Direction n3 = Direction::normalized(std::sqrt(1.0 - z2), 0.0, std::sqrt(z2));
    const Direction n1 = Direction::y_axis();
    return {n1, n3.cross(n1), n3};
}

} // namespace

TEST_CASE("inequality (1) saturates for every bosonic state") {
    CounterRng rng(4);
    for (int n : {1, 3, 10}) {
        for (int t = 0; t < 10; ++t) {
            const OrthogonalTriplet tr = random_triplet(rng);
            CHECK(std::abs(toth_check(random_pure_state(n, rng), tr).lhs[0]) < 1e-10);
            CHECK(std::abs(toth_check(random_density(n, rng), tr).lhs[0]) < 1e-10);
        }
    }
}

TEST_CASE("inequality (2) is tight on |0>") {
    for (int n : {1, 4, 9}) {
        const TothReport r = toth_check(number_state(n, 0), OrthogonalTriplet::standard());
        CHECK(std::abs(r.lhs[1]) < 1e-12);
        CHECK(r.satisfied[1]);
    }
}

TEST_CASE("twin Fock violates inequality (3) along z") {
    const TothReport r = toth_check(number_state(4, 2), OrthogonalTriplet::standard());
    CHECK(r.lhs[2] == doctest::Approx(4.0));
    CHECK_FALSE(r.satisfied[2]);
    CHECK(r.satisfied[0]);
    CHECK(r.satisfied[1]);
    CHECK(r.satisfied[3]);
}

TEST_CASE("ineq3 delta and threshold on point masses") {
    const DiagonalMixture twin = DiagonalMixture::point(4, 2);
    CHECK(ineq3_delta(twin, 1.0) == doctest::Approx(4.0));
    CHECK(std::abs(ineq3_delta(twin, 2.0 / 3.0)) < 1e-12);
    for (int l = 1; l <= 3; ++l) {
        const auto t = ineq3_threshold(DiagonalMixture::point(4, l));
        REQUIRE(t.has_value());
        CHECK(*t == doctest::Approx(2.0 / 3.0));
    }
    CHECK_FALSE(ineq3_threshold(DiagonalMixture::point(4, 0)).has_value());
    CHECK_FALSE(ineq3_threshold(DiagonalMixture::uniform(2)).has_value());
    CHECK_THROWS_AS(ineq3_delta(twin, 1.5), DomainError);
}

TEST_CASE("ineq3 delta agrees with the oracle residual and vanishes at the threshold") {
    CounterRng rng(31);
    int with_threshold = 0;
    for (int n : {2, 3, 6, 12}) {
        for (int t = 0; t < 25; ++t) {
            const DiagonalMixture m = random_mixture(n, rng);
            const OrthogonalTriplet tr = random_triplet(rng);
            const double z2 = tr.n3().z() * tr.n3().z();
            const TothReport r = toth_check(mixture_density(m), tr);
            CHECK(std::abs(r.lhs[2] - ineq3_delta(m, z2)) < 1e-9 * std::max(1.0, std::abs(r.lhs[2])));

            if (const auto th = ineq3_threshold(m)) {
                ++with_threshold;
                CHECK(std::abs(ineq3_delta(m, *th)) < 1e-10 * std::max(1.0, double(n * n)));
                const double above = 0.5 * (*th + 1.0);
                if (above > *th + 1e-9) CHECK(toth_check(mixture_density(m), frame_with_n3z_squared(above)).lhs[2] > 0.0);
            }
        }
    }
    // peaked mixtures always have a threshold
    for (int n : {4, 10}) {
        std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
        p[static_cast<std::size_t>(n / 2)] = 0.9;
        p[static_cast<std::size_t>(n / 2 - 1)] = 0.05;
        p[static_cast<std::size_t>(n / 2 + 1)] = 0.05;
        const DiagonalMixture m(n, p);
        const auto th = ineq3_threshold(m);
        REQUIRE(th.has_value());
        CHECK(toth_check(mixture_density(m), frame_with_n3z_squared(0.5 * (*th + 1.0))).lhs[2] > 0.0);
        CHECK(toth_check(mixture_density(m), frame_with_n3z_squared(0.5 * *th)).lhs[2] < 0.0);
    }
    (void)with_threshold;
}

TEST_CASE("separable mixtures satisfy (1), (2), (4) and have xi_S >= 1") {
    CounterRng rng(1234);
    for (int n : {3, 4, 10}) {
        for (int t = 0; t < 60; ++t) {
            const DiagonalMixture m = random_mixture(n, rng);
            OrthogonalTriplet tr = random_triplet(rng);
            if (std::abs(tr.n1().z()) >= 1.0 - 1e-6) continue;
            const DensityOperator rho = mixture_density(m);
            const TothReport r = toth_check(rho, tr);
            CHECK(r.satisfied[0]);
            CHECK(r.satisfied[1]);
            CHECK(r.satisfied[3]);
            const SqueezingReport xi = xi_parameters(rho, tr);
            if (xi.xi_s_squared) CHECK(*xi.xi_s_squared >= 1.0 - 1e-9);
            if (xi.xi_w_squared && xi.xi_s_squared) CHECK(*xi.xi_w_squared >= *xi.xi_s_squared - 1e-9);
        }
    }
}

TEST_CASE("xi parameters on number states") {
    const OrthogonalTriplet tilted(Direction::x_axis(), Direction::y_axis(), Direction::z_axis());
    const SqueezingReport r = xi_parameters(number_state(4, 1), tilted);
    REQUIRE(r.xi_s_squared.has_value());
    CHECK(*r.xi_s_squared == doctest::Approx(10.0).epsilon(1e-12));
    REQUIRE(r.xi_w_squared.has_value());
    CHECK(*r.xi_w_squared == doctest::Approx(10.0).epsilon(1e-12));

    for (int n : {1, 3, 8}) {
        const SqueezingReport z = xi_parameters(number_state(n, 0), tilted);
        REQUIRE(z.xi_s_squared.has_value());
        CHECK(*z.xi_s_squared == doctest::Approx(1.0).epsilon(1e-12));
    }

    const OrthogonalTriplet along_z(Direction::z_axis(), Direction::y_axis(), Direction::x_axis());
    for (int k = 1; k < 4; ++k) {
        const SqueezingReport u = xi_parameters(number_state(4, k), along_z);
        CHECK_FALSE(u.xi_w_squared.has_value());
        CHECK_FALSE(u.xi_s_squared.has_value());
    }
}

TEST_CASE("gaussian family") {
    const PureState sharp = gaussian_state(6, 3, 1e-3);
    CHECK(std::abs(sharp.amplitudes()(3)) > 1.0 - 1e-10);

    const PureState g = gaussian_state(4, 2, 0.3);
    CHECK(std::abs(g.amplitudes().squaredNorm() - 1.0) < 1e-14);

    const OrthogonalTriplet zyx(Direction::z_axis(), Direction::y_axis(), Direction::x_axis());
    const SqueezingReport r = xi_parameters(g, zyx);
    REQUIRE(r.xi_w_squared.has_value());
    CHECK(std::abs(*r.xi_w_squared - 1.0 / 3.0) < 1e-3);

    const auto direct = xi_w_diagonal_real(g);
    REQUIRE(direct.has_value());
    CHECK(std::abs(*direct - *r.xi_w_squared) < 1e-9);

    // leading-order formula 2N/(√((ℓ+1)(N-ℓ)) + √(ℓ(N-ℓ+1)))²
    for (int n : {4, 8})
        for (int l = 1; l < n; ++l)
            for (double sigma : {0.2, 0.3, 0.4}) {
                const double lead = 2.0 * n / std::pow(std::sqrt((l + 1.0) * (n - l)) + std::sqrt(l * (n - l + 1.0)), 2);
                const auto xi = xi_w_diagonal_real(gaussian_state(n, l, sigma));
                REQUIRE(xi.has_value());
                CHECK(std::abs(*xi - lead) < 4.0 * n * std::exp(-1.0 / (2.0 * sigma * sigma)));
            }

    CHECK_THROWS_AS(gaussian_state(4, 2, 0.0), DomainError);
    CHECK_THROWS_AS(gaussian_state(4, 5, 0.3), DomainError);
}

TEST_CASE("xi_w_diagonal_real rejects complex or negative amplitudes") {
    CVector a(3);
    a << 1.0, cplx(0.0, 1.0), 0.0;
    CHECK_THROWS_AS(xi_w_diagonal_real(superposition(2, a)), DomainError);
    CVector b(3);
    b << 1.0, -1.0, 0.0;
    CHECK_THROWS_AS(xi_w_diagonal_real(superposition(2, b)), DomainError);
    CHECK_FALSE(xi_w_diagonal_real(number_state(4, 2)).has_value());
}

TEST_CASE("flat-peak family") {
    const int n = 10;
    const PureState s = flat_peak_state(n, 1e-6);
    CHECK(std::abs(s.amplitudes()(n / 2)) > 1.0 - 1e-6);

    for (double p : {1e-3, 1e-4, 1e-6}) {
        const PureState f = flat_peak_state(n, p);
        double m1 = 0.0, m2 = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double pk = std::norm(f.amplitudes()(k));
            m1 += pk * k;
            m2 += pk * k * k;
        }
        CHECK(rel_close(m2 - m1 * m1, p * (n + 2) * (n + 1) / 12.0, 1e-9));

        // closed form N(N+1) / (12 (√(1-p) + q)²)
        double sum = 0.0;
        for (int k = 1; k <= n; ++k)
            if (k != n / 2 && k != n / 2 + 1) sum += std::sqrt(double(k) * (n - k + 1));
        const double q = std::sqrt(p / (double(n) * n * (n + 2))) * sum;
        const double closed = n * (n + 1) / (12.0 * std::pow(std::sqrt(1.0 - p) + q, 2));
        const auto xi = xi_w_diagonal_real(f);
        REQUIRE(xi.has_value());
        CHECK(rel_close(*xi, closed, 1e-9));

        const OrthogonalTriplet zyx(Direction::z_axis(), Direction::y_axis(), Direction::x_axis());
        CHECK(rel_close(*xi_parameters(f, zyx).xi_w_squared, *xi, 1e-8));
    }

    // the limit N(N+1)/12 is approached as √p
    CHECK(std::abs(*xi_w_diagonal_real(flat_peak_state(n, 1e-10)) - 110.0 / 12.0) < 1e-2);

    CHECK_THROWS_AS(flat_peak_state(9, 0.1), DomainError);
    CHECK_THROWS_AS(flat_peak_state(10, 0.0), DomainError);
    CHECK_THROWS_AS(flat_peak_state(10, 1.0), DomainError);
}

TEST_CASE("xi_W is discontinuous at the twin Fock state") {
    // both families converge to |2> yet their parameters have different limits
    const int n = 4;
    const double gauss = *xi_w_diagonal_real(gaussian_state(n, n / 2, 0.25));
    const double flat = *xi_w_diagonal_real(flat_peak_state(n, 1e-10));
    CHECK(std::abs(gauss - 1.0 / 3.0) < 1e-3);
    CHECK(std::abs(flat - n * (n + 1) / 12.0) < 1e-3);
}
