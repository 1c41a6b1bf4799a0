#include <catch2/catch_amalgamated.hpp>

#include "kpdtm/datagen.hpp"
#include "kpdtm/neighbors.hpp"
#include "kpdtm/point_cloud.hpp"
#include "support.hpp"

using kpdtm::NeighborIndex;
using kpdtm::PointCloud;

namespace {
const PointCloud d4{{0, 0}, {2, 0}, {0, 2}, {2, 2}};
}

TEST_CASE("point cloud validation") {
    CHECK_THROWS_AS(PointCloud(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(PointCloud(2, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(PointCloud(0, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PointCloud(1, {std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);

    const auto [lo, hi] = d4.bounding_box();
    CHECK(lo == std::vector<double>{0, 0});
    CHECK(hi == std::vector<double>{2, 2});
}

TEST_CASE("singleton cloud answers q=1") {
    const PointCloud one{{3.0, -4.0}};
    const NeighborIndex index(one);
    const auto nn = index.knn(std::vector<double>{0.0, 0.0}, 1);
    REQUIRE(nn.q() == 1);
    CHECK(nn.indices[0] == 0);
    CHECK(nn.sq_dists[0] == 25.0);
}

TEST_CASE("knn rejects bad queries") {
    const NeighborIndex index(d4);
    CHECK_THROWS_AS(index.knn(std::vector<double>{0.0, 0.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(index.knn(std::vector<double>{0.0, 0.0}, 5), std::invalid_argument);
    CHECK_THROWS_AS(index.knn(std::vector<double>{0.0, 0.0, 0.0}, 1), std::invalid_argument);
}

TEST_CASE("ties at the cutoff break toward the smaller index") {
    const NeighborIndex index(d4);

    //From (0,0): indices 1 and 2 tie at squared distance 4.
    const auto nn = index.knn(std::vector<double>{0.0, 0.0}, 2);
    CHECK(nn.indices == std::vector<std::size_t>{0, 1});
    CHECK(nn.sq_dists == std::vector<double>{0.0, 4.0});

    // (1,1) is equidistant from all four corners.
    const auto center = index.knn(std::vector<double>{1.0, 1.0}, 1);
    CHECK(center.indices == std::vector<std::size_t>{0});
    CHECK(center.sq_dists == std::vector<double>{2.0});
}

TEST_CASE("q = n returns the full sorted distance list") {
    kpdtm::SplitMix64 g(11);
    const auto cloud = testsupport::random_cloud(37, 3, g);
    const NeighborIndex index(cloud);
    const auto x = testsupport::random_point(3, g);
    const auto nn = index.knn(x, cloud.size());
    const auto oracle = testsupport::brute_knn(cloud, x, cloud.size());
    REQUIRE(nn.q() == cloud.size());
    for (std::size_t j = 0; j < cloud.size(); ++j) {
        CHECK(nn.indices[j] == oracle[j].idx);
        CHECK(nn.sq_dists[j] == oracle[j].sq);
    }
}

TEST_CASE("knn equals the brute-force sort oracle on random clouds") {
    kpdtm::SplitMix64 g(2024);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 1 + g.below(200);
        const std::size_t d = 1 + g.below(5);
        const auto cloud = testsupport::random_cloud(n, d, g);
        const NeighborIndex index(cloud, /*leaf_size=*/1 + g.below(8));
        for (int qi = 0; qi < 6; ++qi) {
            const std::size_t q = 1 + g.below(n);
            const auto x = testsupport::random_point(d, g);
            const auto got = index.knn(x, q);
            const auto want = testsupport::brute_knn(cloud, x, q);
            REQUIRE(got.q() == q);
            for (std::size_t j = 0; j < q; ++j) {
                REQUIRE(got.indices[j] == want[j].idx);
                REQUIRE(got.sq_dists[j] == want[j].sq);
            }
        }
    }
}

TEST_CASE("duplicate points resolve by index") {
    const PointCloud dup{{1, 1}, {1, 1}, {1, 1}, {5, 5}};
    const NeighborIndex index(dup);
    const auto nn = index.knn(std::vector<double>{1.0, 1.0}, 3);
    CHECK(nn.indices == std::vector<std::size_t>{0, 1, 2});
    CHECK(nn.sq_dists == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("a 6000-point two-loop cloud supports q=50 queries") {
    kpdtm::ShapeSpec spec;
    spec.shape = kpdtm::Shape::Sideways;
    spec.n = 6000;
    spec.noise_sigma = 0.45;
    spec.seed = 1;
    const auto cloud = kpdtm::sample(spec);
    const NeighborIndex index(cloud);
    kpdtm::SplitMix64 g(50);
    for (int rep = 0; rep < 5; ++rep) {
        const auto x = testsupport::random_point(2, g, -3.0, 3.0);
        const auto got = index.knn(x, 50);
        const auto want = testsupport::brute_knn(cloud, x, 50);
        REQUIRE(got.q() == 50);
        for (std::size_t j = 0; j < 50; ++j) {
            REQUIRE(got.indices[j] == want[j].idx);
            REQUIRE(got.sq_dists[j] == want[j].sq);
        }
    }
}

TEST_CASE("queries are deterministic across repeated runs") {
    kpdtm::SplitMix64 g(7);
    const auto cloud = testsupport::random_cloud(120, 2, g);
    const NeighborIndex a(cloud);
    const NeighborIndex b(cloud);
    const auto x = testsupport::random_point(2, g);
    const auto ra = a.knn(x, 17);
    const auto rb = b.knn(x, 17);
    CHECK(ra.indices == rb.indices);
    CHECK(ra.sq_dists == rb.sq_dists);
}
