#include "spinlab/random.hpp"
#include "spinlab/rng.hpp"

#include "test_helpers.hpp"

#include <vector>

using namespace spinlab;

TEST_CASE("SplitMix64 reference values") {
    // outputs of the reference splitmix64 generator seeded with 0
    CounterRng rng(0);
    CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next_u64() == 0x06C45D188009454FULL);
    CHECK(rng.counter() == 3);
}

TEST_CASE("random access matches sequential draws") {
    CounterRng a(12345);
    std::vector<std::uint64_t> seq;
    for (int i = 0; i < 10; ++i) seq.push_back(a.next_u64());
    const CounterRng b(12345);
    for (int i = 0; i < 10; ++i) CHECK(b.at(static_cast<std::uint64_t>(i)) == seq[static_cast<std::size_t>(i)]);
}

TEST_CASE("normal consumes two outputs") {
    CounterRng rng(7);
    rng.normal();
    CHECK(rng.counter() == 2);
    rng.uniform();
    CHECK(rng.counter() == 3);
}

TEST_CASE("moments of the distributions") {
    CounterRng rng(2718);
    const int m = 200000;
    double su = 0, sn = 0, sn2 = 0, se = 0;
    for (int i = 0; i < m; ++i) {
        const double u = rng.uniform();
        CHECK_UNARY(u >= 0.0 && u < 1.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
        se += rng.exponential();
    }
    CHECK(std::abs(su / m - 0.5) < 5e-3);
    CHECK(std::abs(sn / m) < 1e-2);
    CHECK(std::abs(sn2 / m - 1.0) < 1e-2);
    CHECK(std::abs(se / m - 1.0) < 1e-2);
}

TEST_CASE("derived seeds give distinct streams") {
    CHECK(derive_seed(10, 0) == 10);
    CHECK(CounterRng(derive_seed(10, 1)).at(0) != CounterRng(derive_seed(10, 2)).at(0));
}

TEST_CASE("random objects are valid and reproducible") {
    CounterRng a(5), b(5);
    for (int t = 0; t < 20; ++t) {
        const Direction da = random_direction(a), db = random_direction(b);
        CHECK(da.x() == db.x());
        const OrthogonalTriplet tr = random_triplet(a);
        random_triplet(b);
        CHECK(std::abs(tr.n1().dot(tr.n2())) < 1e-12);
        const DiagonalMixture m = random_mixture(4, a);
        random_mixture(4, b);
        double s = 0.0;
        for (double p : m.probs()) {
            CHECK(p >= 0.0);
            s += p;
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
}
