#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "glds/core.hpp"

namespace glds {

enum class DiscrepancyKind { linf_exact, linf_lower_bound, l2_squared };

std::string to_string(DiscrepancyKind kind);

struct DiscrepancyValue {
    double value = 0.0;
    DiscrepancyKind kind = DiscrepancyKind::linf_exact;
    std::size_t n = 0;
    std::size_t d = 0;
};

/// Per-axis sorted unique coordinates, each list closed with the value 1.
/// The anchored-box supremum is attained at corners of this grid.
struct CriticalGrid {
    std::vector<std::vector<double>> axes;

    static CriticalGrid of(const PointSet& ps);
    /// Product of the axis lengths.
    std::size_t corner_count() const;
};

/// Closed form for d = 1: max_i max(i/n - x_(i), x_(i) - (i-1)/n).
DiscrepancyValue linf_star_1d(const PointSet& ps);
/// Same, for coordinates already sorted ascending.
double linf_star_1d_sorted(std::span<const double> sorted);

/// Exact L-infinity star discrepancy for d in {2,3} by critical-box
/// enumeration with open and closed counting at every corner. Slices of the
/// first axis are processed in parallel.
DiscrepancyValue linf_star_exact(const PointSet& ps);

/// linf_star_1d for d = 1, linf_star_exact otherwise.
DiscrepancyValue linf_star(const PointSet& ps);

/// Lower bound from the (m+1)^d lattice {0, 1/m, ..., 1}^d; never above the
/// exact value and at most d/m below it.
DiscrepancyValue linf_star_sampled(const PointSet& ps, std::size_t m);

/// Squared L2 star discrepancy by Warnock's formula, O(n^2 d), compensated sums.
DiscrepancyValue l2_star_warnock(const PointSet& ps);

/// L-infinity star discrepancy of every requested prefix length of a 1-D
/// sequence. checkpoints must be strictly increasing and <= seq.size().
std::vector<double> linf_star_1d_prefixes(std::span<const double> seq, std::span<const std::size_t> checkpoints);

/// Serial reference implementations kept for cross-checking and benchmarks.
namespace reference {

/// Every corner of the critical grid, each counted by scanning all points.
/// O(n^(d+1)); any d >= 1.
double linf_star_naive(const PointSet& ps);

/// Warnock's formula as a plain double loop over all (i, j).
double l2_star_warnock_naive(const PointSet& ps);

} // namespace reference

} // namespace glds
