#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"

#include "glds/harness.hpp"

using namespace glds;

namespace {

std::string csv(const DiscrepancyTrace& t)
{
    std::ostringstream out;
    write_trace_csv(out, t);
    return out.str();
}

/// The optimal n-point set {(2i+1)/(2n)}.
PointSet optimal_sets(std::size_t n)
{
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i)
        xs.push_back(static_cast<double>(2 * i + 1) / static_cast<double>(2 * n));
    return PointSet::from_1d(xs);
}

} // namespace

TEST_CASE("scale_value and checkpoints")
{
    CHECK(scale_value(1000, 0.002, 1.0) == 1000 * 0.002 / std::log(1000.0));
    CHECK(scale_value(1000, 0.002, 2.0) == 1000 * 0.002 / std::pow(std::log(1000.0), 2.0));
    CHECK(checkpoints(10, 3) == std::vector<std::size_t>{3, 6, 9});
    CHECK(checkpoints(5, 5) == std::vector<std::size_t>{5});
    CHECK_THROWS_AS(checkpoints(10, 0), ValidationError);
    CHECK_THROWS_AS(checkpoints(2, 3), ValidationError);
}

TEST_CASE("trace records are consistent with the scaling formula")
{
    SequenceSpec spec;
    const auto t = trace(spec, 3000, 100, MeasureSpec{}, 1.0);
    REQUIRE(t.records.size() == 30);
    for (std::size_t c = 0; c < t.records.size(); ++c) {
        const auto& r = t.records[c];
        CHECK(r.n == 100 * (c + 1));
        CHECK(r.scaled == scale_value(r.n, r.raw, 1.0));
    }
    const auto single = trace(spec, 500, 500, MeasureSpec{}, 1.0);
    CHECK(single.records.size() == 1);
    CHECK(single.records[0].raw == t.records[4].raw);
}

TEST_CASE("optimal sets measure 1/(2n)")
{
    for (std::size_t n : {1u, 7u, 64u, 1000u}) {
        const auto t = trace_of(optimal_sets(n), "optimal", n, n, MeasureSpec{}, 1.0);
        CHECK(t.records.back().raw == doctest::Approx(1.0 / static_cast<double>(2 * n)).epsilon(1e-15));
    }
}

TEST_CASE("optimal sets beat the greedy sequence at every n")
{
    const std::size_t n_max = 300;
    const PointSet greedy = generate_sequence(SequenceSpec{}, n_max);
    DiscrepancyTrace opt;
    opt.label = "optimal";
    for (std::size_t n = 1; n <= n_max; ++n)
        opt.records.push_back({n, 1.0 / static_cast<double>(2 * n), 0.0});
    const auto g = trace_of(greedy, "kritzinger", n_max, 1, MeasureSpec{}, 1.0);
    const auto r = compare_traces(opt, g);
    for (const auto& rec : r.records) {
        REQUIRE(rec.raw_a <= rec.raw_b);
        // Ties are possible only where the greedy prefix is itself optimal.
        REQUIRE(rec.score_a >= 0.5);
    }
    CHECK(r.final_proportion() > 0.9);
}

TEST_CASE("a sequence compared with itself ties everywhere")
{
    SequenceSpec k;
    k.kind = SequenceKind::kronecker;
    const auto r = compare(k, k, 2000, 100);
    for (const auto& rec : r.records)
        CHECK(rec.proportion_a == 0.5);
}

TEST_CASE("stride-1 comparison restricts to the coarse one")
{
    SequenceSpec a;
    SequenceSpec b;
    b.kind = SequenceKind::kronecker;
    const auto fine = compare(a, b, 2000, 1);
    const auto coarse = compare(a, b, 2000, 100);
    double total = 0.0;
    for (std::size_t c = 0; c < coarse.records.size(); ++c) {
        const auto& f = fine.records[100 * (c + 1) - 1];
        CHECK(f.n == coarse.records[c].n);
        CHECK(f.raw_a == coarse.records[c].raw_a);
        CHECK(f.raw_b == coarse.records[c].raw_b);
        CHECK(f.score_a == coarse.records[c].score_a);
        total += f.score_a;
    }
    CHECK(coarse.final_proportion() == total / static_cast<double>(coarse.records.size()));
}

TEST_CASE("CSV output is byte-deterministic and echoes the configuration")
{
    SequenceSpec spec;
    spec.d = 2;
    spec.optimizer.budget = 500;
    spec.optimizer.seed = 4;
    const std::string a = csv(trace(spec, 60, 10, MeasureSpec{}, 1.0));
    const std::string b = csv(trace(spec, 60, 10, MeasureSpec{}, 1.0));
    CHECK(a == b);
    CHECK(a.rfind("# series=kritzinger\n", 0) == 0);
    CHECK(a.find("# seed=4\n") != std::string::npos);
    CHECK(a.find("\nn,raw,scaled\n") != std::string::npos);
    spec.optimizer.seed = 5;
    CHECK(csv(trace(spec, 60, 10, MeasureSpec{}, 1.0)) != a);
}

TEST_CASE("measures and their limits")
{
    SequenceSpec sob;
    sob.kind = SequenceKind::sobol;
    sob.d = 2;
    const auto exact = trace(sob, 200, 50, MeasureSpec{}, 1.0);
    const auto sampled = trace(sob, 200, 50, MeasureSpec{Measure::linf, 400}, 1.0);
    for (std::size_t c = 0; c < exact.records.size(); ++c) {
        CHECK(sampled.records[c].raw <= exact.records[c].raw);
        CHECK(exact.records[c].raw - sampled.records[c].raw <= 2.0 / 400);
    }
    const auto l2 = trace(sob, 200, 50, MeasureSpec{Measure::l2, 0}, 1.0);
    CHECK(l2.records[0].raw > 0.0);
    CHECK(l2.config.end() != std::find(l2.config.begin(), l2.config.end(), "measure=l2_squared"));

    sob.d = 3;
    CHECK_THROWS_AS(trace(sob, exact_limit(3) + 100, 100, MeasureSpec{}, 1.0), ValidationError);
    CHECK_THROWS_AS(nd_experiment(2, OptimizerConfig{}, exact_limit(2) + 1, 100, 1.0, MeasureSpec{}),
                    ValidationError);
    CHECK_THROWS_AS(nd_experiment(1, OptimizerConfig{}, 100, 10, 1.0, MeasureSpec{}), ValidationError);
    CHECK_THROWS_AS(trace(sob, 100, 10, MeasureSpec{Measure::linf, 1}, 1.0), ValidationError);

    SequenceSpec kr;
    kr.kind = SequenceKind::kronecker;
    kr.d = 2;
    CHECK_THROWS_AS(trace(kr, 100, 10, MeasureSpec{}, 1.0), ValidationError);
}

TEST_CASE("the initial points count toward the sequence length")
{
    SequenceSpec spec;
    spec.init = PointSet::from_1d({0.1, 0.2, 0.3});
    CHECK(generate_sequence(spec, 2) == PointSet::from_1d({0.1, 0.2}));
    const auto full = generate_sequence(spec, 10);
    CHECK(full.size() == 10);
    CHECK(full.prefix(3) == *spec.init);
    CHECK(generate_sequence(SequenceSpec{}, 3) == PointSet::from_1d({0.5, 0.25, 5.0 / 6.0}));
}

TEST_CASE("envelope")
{
    DiscrepancyTrace a, b;
    a.records = {{10, 0.1, 1.0}, {20, 0.05, 3.0}};
    b.records = {{10, 0.2, 2.0}, {20, 0.04, 1.0}};
    const auto env = envelope_of({a, b});
    REQUIRE(env.size() == 2);
    CHECK(env[0].min == 1.0);
    CHECK(env[0].mean == 1.5);
    CHECK(env[0].max == 2.0);
    CHECK(env[1].min == 1.0);
    CHECK(env[1].max == 3.0);
    b.records[1].n = 30;
    CHECK_THROWS_AS(envelope_of({a, b}), ValidationError);
}

TEST_CASE("robustness runs")
{
    const auto single = robustness_single_starts(2000, 500);
    CHECK(single.traces.size() == 11);
    for (const auto& t : single.traces)
        for (const auto& r : t.records)
            CHECK(std::isfinite(r.scaled));

    const auto a = robustness_random_starts(6, 5, 2000, 500, 42);
    const auto b = robustness_random_starts(6, 5, 2000, 500, 42);
    REQUIRE(a.traces.size() == 6);
    for (std::size_t s = 0; s < 6; ++s)
        CHECK(csv(a.traces[s]) == csv(b.traces[s]));
    CHECK(csv(robustness_random_starts(6, 5, 2000, 500, 43).traces[0]) != csv(a.traces[0]));
    CHECK_THROWS_AS(robustness_random_starts(0, 5, 2000, 500, 42), ValidationError);
}

TEST_CASE("bad-init experiment validates its size")
{
    CHECK_THROWS_AS(bad_init_experiment(9999), ValidationError);
    const auto bad = bad_init_set();
    CHECK(bad.size() == 100);
    CHECK(bad[0][0] == 0.0);
    CHECK(bad[99][0] == 99 * 1e-4);
}

TEST_CASE("names parse and print")
{
    for (auto k : {SequenceKind::kritzinger, SequenceKind::kronecker, SequenceKind::vdc, SequenceKind::sobol})
        CHECK(parse_sequence_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_sequence_kind("halton"), ValidationError);
    CHECK(parse_measure("l2") == Measure::l2);
    CHECK_THROWS_AS(parse_measure("l3"), ValidationError);
    for (auto m : {Method::random, Method::grid, Method::graddesc, Method::multistart})
        CHECK(parse_method(to_string(m)) == m);
}
