#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "glds/discrepancy.hpp"
#include "oracles.hpp"

using namespace glds;

TEST_CASE("linf_star_1d examples")
{
    CHECK(linf_star_1d(PointSet::from_1d({0.125, 0.375, 0.625, 0.875})).value == 0.125);
    CHECK(linf_star_1d(PointSet::from_1d({0.5})).value == 0.5);
    CHECK(linf_star_1d(PointSet::from_1d({0.1, 0.9})).value == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(linf_star_1d(PointSet::from_1d({0.1, 0.9})).value ==
          doctest::Approx(oracle::dense_linf(PointSet::from_1d({0.1, 0.9}), 2000)).epsilon(1e-3));
    CHECK_THROWS_AS(linf_star_1d(PointSet(1)), ValidationError);
}

TEST_CASE("optimal 1-D sets have discrepancy 1/(2n)")
{
    for (std::size_t n = 1; n <= 64; ++n) {
        std::vector<double> xs;
        for (std::size_t i = 0; i < n; ++i)
            xs.push_back(static_cast<double>(2 * i + 1) / static_cast<double>(2 * n));
        const double v = linf_star_1d(PointSet::from_1d(xs)).value;
        if ((n & (n - 1)) == 0) // all coordinates dyadic, no rounding anywhere
            REQUIRE(v == 1.0 / static_cast<double>(2 * n));
        else
            REQUIRE(v == doctest::Approx(1.0 / static_cast<double>(2 * n)).epsilon(1e-15));
    }
}

TEST_CASE("linf_star_exact examples")
{
    const auto v2 = linf_star_exact(PointSet(2, {Point{0.5, 0.5}}));
    CHECK(v2.value == 0.75);
    CHECK(v2.kind == DiscrepancyKind::linf_exact);
    CHECK(linf_star_exact(PointSet(3, {Point{0.5, 0.5, 0.5}})).value == 0.875);
    // The open box [0,1) x [0,0.9) misses the point and has volume 0.9.
    CHECK(linf_star_exact(PointSet(2, {Point{0.9, 0.9}})).value == 0.9);
    CHECK_THROWS_AS(linf_star_exact(PointSet::from_1d({0.5})), ValidationError);
    CHECK_THROWS_AS(linf_star_exact(PointSet(4, {Point{0.5, 0.5, 0.5, 0.5}})), ValidationError);
    CHECK_THROWS_AS(linf_star_exact(PointSet(2)), ValidationError);
    CHECK(linf_star(PointSet::from_1d({0.5})).value == 0.5);
}

TEST_CASE("critical grid is strictly increasing and ends at 1")
{
    const PointSet ps(2, {Point{0.5, 0.25}, Point{0.5, 0.75}, Point{0.1, 0.25}});
    const auto g = CriticalGrid::of(ps);
    CHECK(g.axes[0] == std::vector<double>{0.1, 0.5, 1.0});
    CHECK(g.axes[1] == std::vector<double>{0.25, 0.75, 1.0});
    CHECK(g.corner_count() == 9);
}

TEST_CASE("sampled lower bound examples")
{
    const double s = linf_star_sampled(PointSet(2, {Point{0.5, 0.5}}), 4).value;
    CHECK(s >= 0.70);
    CHECK(s <= 0.75);
    CHECK(linf_star_sampled(PointSet::from_1d({0.5}), 1000).value == doctest::Approx(0.5).epsilon(0.002));
    CHECK(linf_star_sampled(PointSet::from_1d({0.5}), 1000).kind == DiscrepancyKind::linf_lower_bound);
    CHECK_THROWS_AS(linf_star_sampled(PointSet::from_1d({0.5}), 1), ValidationError);
}

TEST_CASE("exact agrees with the serial reference and bounds the sampled value")
{
    std::mt19937_64 rng(7);
    for (std::size_t d : {2u, 3u}) {
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n = 1 + static_cast<std::size_t>(rng() % 15);
            PointSet ps = oracle::random_set(n, d, rng);
            if (trial % 5 == 0) // duplicated coordinates
                ps.points.push_back(Point(ps.points.front().coords));
            const double exact = linf_star_exact(ps).value;
            REQUIRE(exact == doctest::Approx(reference::linf_star_naive(ps)).epsilon(1e-15));
            const std::size_t m = 50;
            const double sampled = linf_star_sampled(ps, m).value;
            REQUIRE(sampled <= exact);
            REQUIRE(exact - sampled <= static_cast<double>(d) / m);
        }
    }
}

TEST_CASE("random 2-D sets: sampled <= exact <= sampled + 2/m")
{
    std::mt19937_64 rng(11);
    const std::size_t m = 200;
    for (int trial = 0; trial < 100; ++trial) {
        const PointSet ps = oracle::random_set(10, 2, rng);
        const double exact = linf_star_exact(ps).value;
        const double sampled = linf_star_sampled(ps, m).value;
        REQUIRE(sampled <= exact);
        REQUIRE(exact <= sampled + 2.0 / m);
    }
}

TEST_CASE("1-D closed form matches the sampled value at m = 1e5")
{
    std::mt19937_64 rng(3);
    const std::size_t m = 100000;
    for (int trial = 0; trial < 100; ++trial) {
        const PointSet ps = oracle::random_set(1 + rng() % 40, 1, rng);
        const double exact = linf_star_1d(ps).value;
        const double sampled = linf_star_sampled(ps, m).value;
        REQUIRE(std::fabs(exact - sampled) <= 1e-5 + 1.0 / m);
        REQUIRE(exact == doctest::Approx(reference::linf_star_naive(ps)).epsilon(1e-15));
    }
}

TEST_CASE("discrepancy values are invariant under reordering")
{
    std::mt19937_64 rng(5);
    for (std::size_t d : {1u, 2u, 3u}) {
        PointSet ps = oracle::random_set(25, d, rng);
        const double linf = linf_star(ps).value;
        const double l2 = l2_star_warnock(ps).value;
        std::shuffle(ps.points.begin(), ps.points.end(), rng);
        CHECK(linf_star(ps).value == linf);
        CHECK(l2_star_warnock(ps).value == doctest::Approx(l2).epsilon(1e-13));
    }
}

TEST_CASE("Warnock anchors")
{
    CHECK(l2_star_warnock(PointSet::from_1d({0.5})).value == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(std::fabs(l2_star_warnock(PointSet(2, {Point{0.5, 0.5}})).value - 23.0 / 288.0) < 1e-15);
    CHECK(l2_star_warnock(PointSet::from_1d({0.5})).kind == DiscrepancyKind::l2_squared);
    CHECK_THROWS_AS(l2_star_warnock(PointSet(2)), ValidationError);
}

TEST_CASE("Warnock matches Monte-Carlo integration of the squared local discrepancy")
{
    const PointSet two = PointSet::from_1d({0.25, 0.75});
    const auto est = oracle::monte_carlo_l2(two, 1000000, 99);
    CHECK(std::fabs(l2_star_warnock(two).value - est.mean) <= 3.0 * est.std_error);

    std::mt19937_64 rng(17);
    int outside = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const PointSet ps = oracle::random_set(1 + rng() % 20, 1 + rng() % 3, rng);
        const auto e = oracle::monte_carlo_l2(ps, 200000, rng());
        outside += std::fabs(l2_star_warnock(ps).value - e.mean) > 3.0 * e.std_error;
    }
    CHECK(outside <= 1); // about 0.27% of honest estimates land beyond 3 sigma
}

TEST_CASE("Warnock agrees with the plain double loop and is non-negative")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const PointSet ps = oracle::random_set(1 + rng() % 60, 1 + rng() % 3, rng);
        const double v = l2_star_warnock(ps).value;
        REQUIRE(v >= 0.0);
        REQUIRE(v == doctest::Approx(reference::l2_star_warnock_naive(ps)).epsilon(1e-9));
    }
}

TEST_CASE("prefix discrepancies match per-prefix evaluation")
{
    std::mt19937_64 rng(29);
    const PointSet ps = oracle::random_set(500, 1, rng);
    const auto xs = ps.coords_1d();
    const std::vector<std::size_t> at{1, 7, 100, 101, 499, 500};
    const auto got = linf_star_1d_prefixes(xs, at);
    for (std::size_t c = 0; c < at.size(); ++c)
        CHECK(got[c] == linf_star_1d(ps.prefix(at[c])).value);
    const std::vector<std::size_t> bad{5, 5};
    CHECK_THROWS_AS(linf_star_1d_prefixes(xs, bad), ValidationError);
}
