#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "kpdtm/ot.hpp"
#include "support.hpp"

using namespace kpdtm;

namespace {

// Exhaustive minimum over all n! matchings; the independent route for n <= 8.
double brute_min_mean_cost(const PointCloud& a, const PointCloud& b, bool squared) {
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double sq = squared_distance(a.point(i), b.point(perm[i]));
            total += squared ? sq : std::sqrt(sq);
        }
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("wasserstein fixed values on the line") {
    const PointCloud a{{0.0}};
    const PointCloud b{{3.0}};
    CHECK(wasserstein2(a, b) == Catch::Approx(3.0));
    CHECK(wasserstein1(a, b) == Catch::Approx(3.0));

    const PointCloud c{{0.0}, {2.0}};
    const PointCloud d{{1.0}, {3.0}};
    CHECK(wasserstein2(c, d) == Catch::Approx(1.0));
    CHECK(wasserstein1(c, d) == Catch::Approx(1.0));

    CHECK(wasserstein2(c, c) == 0.0);
    CHECK(wasserstein1(c, c) == 0.0);
}

TEST_CASE("wasserstein input validation") {
    const PointCloud a{{0.0}, {1.0}};
    const PointCloud b{{0.0}};
    CHECK_THROWS_AS(wasserstein2(a, b), std::invalid_argument);

    const PointCloud planar{{0.0, 0.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(wasserstein2(a, planar), std::invalid_argument);

    SplitMix64 g(1);
    const auto big_a = testsupport::random_cloud(65, 2, g);
    const auto big_b = testsupport::random_cloud(65, 2, g);
    CHECK_THROWS_AS(wasserstein2(big_a, big_b), std::invalid_argument);
}

TEST_CASE("assignment solver equals the exhaustive permutation minimum") {
    SplitMix64 g(2);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 1 + g.below(8);
        const std::size_t d = 1 + g.below(3);
        const auto a = testsupport::random_cloud(n, d, g);
        const auto b = testsupport::random_cloud(n, d, g);
        const double w2 = wasserstein2(a, b);
        const double w1 = wasserstein1(a, b);
        CHECK(w2 == Catch::Approx(std::sqrt(brute_min_mean_cost(a, b, true))).margin(1e-12));
        CHECK(w1 == Catch::Approx(brute_min_mean_cost(a, b, false)).margin(1e-12));
    }
}

TEST_CASE("metric axioms on random triples") {
    SplitMix64 g(3);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + g.below(15);
        const auto a = testsupport::random_cloud(n, 2, g);
        const auto b = testsupport::random_cloud(n, 2, g);
        const auto c = testsupport::random_cloud(n, 2, g);

        CHECK(wasserstein2(a, b) == wasserstein2(b, a));
        CHECK(wasserstein1(a, b) == wasserstein1(b, a));
        CHECK(wasserstein2(a, c) <= wasserstein2(a, b) + wasserstein2(b, c) + 1e-9);
        CHECK(wasserstein1(a, c) <= wasserstein1(a, b) + wasserstein1(b, c) + 1e-9);

        // Jensen: mean |cost| <= sqrt(mean cost^2).
        CHECK(wasserstein1(a, b) <= wasserstein2(a, b) + 1e-9);
    }
}
