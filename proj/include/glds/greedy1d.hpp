#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "glds/compensated.hpp"
#include "glds/core.hpp"

namespace glds {

/// The current 1-D points in ascending order with suffix sums.
///
/// Entries produced by the greedy step keep their exact rational identity so
/// candidate admissibility can be decided without rounding. Entries coming
/// from an initial set are treated as the exact binary value of the double.
class SortedSet1D {
public:
    SortedSet1D();
    explicit SortedSet1D(const std::vector<double>& xs);

    void insert(double x);
    void insert(const CandidateRational& c);

    std::size_t size() const { return values_.size() - 2; }
    bool empty() const { return size() == 0; }

    std::span<const double> values() const { return {values_.data() + 1, size()}; }
    /// values() framed by the sentinels -1 and 2: padded()[i] and padded()[i+1]
    /// bound cell i.
    std::span<const double> padded() const { return values_; }

    /// suffix_sums()[i] = sum of values()[j] for j >= i, with suffix_sums()[n] = 0.
    /// Updated in place on insertion and resynchronised periodically.
    std::span<const double> suffix_sums() const { return suffix_; }
    /// Compensated sum of values()[j] for j >= i, independent of suffix_sums().
    DoubleDouble exact_suffix_sum(std::size_t i) const;

    /// True when entry idx came from a greedy step (exact rational known).
    bool is_rational(std::size_t idx) const { return ident_[idx] != 0; }
    /// Three-way exact comparison of num/den against entry idx.
    int compare_to_entry(std::int64_t num, std::int64_t den, std::size_t idx) const;

private:
    std::size_t insert_position(double x, std::int64_t num, std::int64_t den) const;
    void insert_at(std::size_t pos, double x, std::uint64_t ident);
    void resync_suffix();

    std::vector<double> values_;       // with sentinels at both ends
    std::vector<std::uint64_t> ident_; // num << 32 | den, 0 for raw values
    std::vector<double> suffix_;
    std::size_t inserts_since_sync_ = 0;
};

/// Restriction of F(., P) to the i-th gap: (n+1)y^2 - A y - B on [lo, hi].
struct QuadCell {
    std::int64_t index = 0; ///< points strictly below the cell
    std::int64_t a = 1;     ///< 2*index + 1
    DoubleDouble b;         ///< twice the sum of points above the cell
    double lo = 0.0;
    double hi = 1.0;
};

/// All n+1 cells of the current set, built by the downward recurrence
/// A_{i-1} = A_i - 2, B_{i-1} = B_i + 2 x_i starting from A_n = 2n+1, B_n = 0.
std::vector<QuadCell> quad_cells(const SortedSet1D& ps);

struct GreedyChoice {
    CandidateRational point;
    double fvalue;
};

/// (n+1)y^2 - y - 2 sum max(x, y), evaluated directly in O(n).
double functional_1d(double y, const SortedSet1D& ps);
double functional_1d(double y, std::span<const double> xs);

/// Minimizer of F over the candidate set via the linear cell sweep. Ties
/// (F values within 4 ulps) go to the smallest y.
GreedyChoice next_point_sweep(const SortedSet1D& ps);

/// Same contract as next_point_sweep by enumerating every candidate and
/// evaluating F directly; O(n^2) per call. Test oracle.
GreedyChoice next_point_bruteforce(const SortedSet1D& ps);

/// Incremental 1-D greedy generator. State is the point list alone.
class Generator1D {
public:
    explicit Generator1D(const PointSet& init);

    /// Appends one point and returns its exact value.
    CandidateRational step();
    void run(std::size_t count);

    const PointSet& points() const { return points_; }
    const std::vector<CandidateRational>& generated() const { return generated_; }
    const SortedSet1D& sorted() const { return sorted_; }
    std::size_t init_size() const { return init_size_; }

private:
    PointSet points_;
    SortedSet1D sorted_;
    std::vector<CandidateRational> generated_;
    std::size_t init_size_;
};

/// Appends count greedy points to init (d must be 1).
PointSet generate_1d(const PointSet& init, std::size_t count);

} // namespace glds
