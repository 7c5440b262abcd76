// Wall-clock comparison of the parallel kernels with their serial reference
// implementations. Each pair is checked for agreement before it is timed.
//
// Usage: bench_kernels [scale]   (scale multiplies the problem sizes, default 1)

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "glds/discrepancy.hpp"
#include "glds/functional_nd.hpp"
#include "glds/greedy1d.hpp"

using namespace glds;

namespace {

/// Best of `reps` runs, in milliseconds.
double time_ms(const std::function<void()>& body, int reps = 3)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

PointSet uniform_set(std::size_t n, std::size_t d, std::uint64_t seed)
{
    Rng rng(seed);
    PointSet ps(d);
    for (std::size_t i = 0; i < n; ++i) {
        Point p;
        for (std::size_t k = 0; k < d; ++k)
            p.coords.push_back(rng.uniform());
        ps.points.push_back(p);
    }
    return ps;
}

void row(const std::string& kernel, const std::string& size, double fast, double slow, double diff)
{
    std::printf("%-22s %-16s %12.3f %12.3f %9.1fx %10.1e\n", kernel.c_str(), size.c_str(), fast, slow, slow / fast,
                diff);
}

} // namespace

int main(int argc, char** argv)
{
    const double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
    if (!(scale > 0.0)) {
        std::fprintf(stderr, "scale must be positive\n");
        return 2;
    }
    auto sized = [scale](double n) { return static_cast<std::size_t>(std::max(1.0, std::round(n * scale))); };

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-22s %-16s %12s %12s %10s %10s\n", "kernel", "size", "fast ms", "reference ms", "speedup",
                "max diff");

    for (std::size_t d : {2u, 3u}) {
        const std::size_t n = sized(d == 2 ? 120 : 40);
        const PointSet ps = uniform_set(n, d, 1);
        double fast = 0.0, slow = 0.0;
        const double tf = time_ms([&] { fast = linf_star_exact(ps).value; });
        const double ts = time_ms([&] { slow = reference::linf_star_naive(ps); }, 1);
        row("linf_star_exact", "n=" + std::to_string(n) + " d=" + std::to_string(d), tf, ts, std::fabs(fast - slow));
    }

    {
        const std::size_t n = sized(4000);
        const PointSet ps = uniform_set(n, 3, 2);
        double fast = 0.0, slow = 0.0;
        const double tf = time_ms([&] { fast = l2_star_warnock(ps).value; });
        const double ts = time_ms([&] { slow = reference::l2_star_warnock_naive(ps); });
        row("l2_star_warnock", "n=" + std::to_string(n) + " d=3", tf, ts, std::fabs(fast - slow));
    }

    {
        const std::size_t n = sized(500), m = sized(20000);
        const FunctionalContext ctx(uniform_set(n, 2, 3));
        const PointSet ys = uniform_set(m, 2, 4);
        const auto flat = ys.flat();
        std::vector<double> fast(m), slow(m);
        const double tf = time_ms([&] { evaluate_batch(flat, ctx, fast); });
        const double ts = time_ms([&] {
            for (std::size_t i = 0; i < m; ++i)
                slow[i] = functional_nd(ys[i], ctx);
        });
        double diff = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            diff = std::max(diff, std::fabs(fast[i] - slow[i]));
        row("evaluate_batch", "n=" + std::to_string(n) + " m=" + std::to_string(m), tf, ts, diff);
    }

    {
        const std::size_t n = sized(3000);
        const SortedSet1D set(generate_1d(PointSet::from_1d({0.5}), n - 1).coords_1d());
        GreedyChoice fast{CandidateRational(1, 2), 0.0}, slow{CandidateRational(1, 2), 0.0};
        const double tf = time_ms([&] { fast = next_point_sweep(set); }, 5);
        const double ts = time_ms([&] { slow = next_point_bruteforce(set); }, 1);
        row("next_point_sweep", "n=" + std::to_string(n), tf, ts, fast.point == slow.point ? 0.0 : 1.0);
    }
    return 0;
}
