#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "glds/core.hpp"

namespace glds {

/// The current points, stored per axis, plus the sorted cell breakpoints
/// {0} U {x_ik} U {1} of every axis.
class FunctionalContext {
public:
    explicit FunctionalContext(const PointSet& points);
    /// Empty context in dimension d.
    explicit FunctionalContext(std::size_t d);

    void add_point(const Point& p);

    std::size_t n() const { return n_; }
    std::size_t d() const { return d_; }
    /// Coordinate k of every point, in insertion order.
    std::span<const double> axis(std::size_t k) const { return coords_[k]; }
    /// Sorted distinct breakpoints of axis k, starting at 0 and ending at 1.
    std::span<const double> breaks(std::size_t k) const { return breaks_[k]; }
    PointSet point_set() const;

private:
    std::size_t d_;
    std::size_t n_ = 0;
    std::vector<std::vector<double>> coords_;
    std::vector<std::vector<double>> breaks_;
};

/// Axis-aligned box between consecutive breakpoints; inside it every
/// max(x_ik, y_k) resolves to a fixed argument and F_d is a polynomial.
struct Cell {
    std::vector<double> lo;
    std::vector<double> hi;

    /// The cell whose half-open box [lo, hi) contains y.
    static Cell locate(const Point& y, const FunctionalContext& ctx);
    bool contains_strictly(const Point& y) const;
    bool contains_closed(const Point& y) const;
    bool operator==(const Cell&) const = default;
};

/// y-dependent part of (n+1)^2 times the squared L2 star discrepancy of P U {y}:
///   -2^(1-d) (n+1) prod(1 - y_k^2) + prod(1 - y_k) + 2 sum_i prod(1 - max(x_ik, y_k)).
/// For d = 1 this is functional_1d plus the constant n.
double functional_nd(const Point& y, const FunctionalContext& ctx);

/// Gradient of the polynomial F_d takes on cell. y must be strictly inside.
std::vector<double> gradient_nd(const Point& y, const Cell& cell, const FunctionalContext& ctx);

/// Same polynomial gradient, allowed anywhere on the closed cell.
std::vector<double> cell_gradient(const Point& y, const Cell& cell, const FunctionalContext& ctx);

enum class Method { random, grid, graddesc, multistart };

std::string to_string(Method m);
Method parse_method(const std::string& name);

struct DescentConfig {
    double initial_step = 0.05;
    double shrink = 0.5;
    std::size_t max_iterations = 500;
    double gradient_tolerance = 1e-9;
};

struct OptimizerConfig {
    Method method = Method::random;
    std::size_t budget = 10000;          ///< function evaluations per call
    std::size_t grid_resolution = 32;    ///< points per axis for grid search and descent seeding
    std::uint64_t seed = 0;
    std::size_t starts = 16;             ///< descent starts (graddesc, multistart)
    DescentConfig descent;
};

struct OptimizeResult {
    Point point;
    double fvalue = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

/// Best of cfg.budget uniform draws from [0,1)^d.
OptimizeResult minimize_random(const FunctionalContext& ctx, const OptimizerConfig& cfg);

/// Best point of the lattice {(2i+1)/(2m)}^d, m = cfg.grid_resolution.
OptimizeResult minimize_grid(const FunctionalContext& ctx, const OptimizerConfig& cfg);

/// Projected gradient descent with backtracking, cell by cell, from the
/// cfg.starts best points of a coarse lattice (graddesc) or from those plus
/// cfg.starts uniform draws (multistart).
OptimizeResult minimize_graddesc(const FunctionalContext& ctx, const OptimizerConfig& cfg);

/// Descent from explicit starting points.
OptimizeResult minimize_graddesc_from(const FunctionalContext& ctx, const OptimizerConfig& cfg,
                                      const std::vector<Point>& starts);

/// Dispatch on cfg.method.
OptimizeResult minimize(const FunctionalContext& ctx, const OptimizerConfig& cfg);

/// Appends count points, each the cfg-minimizer of F_d given all previous points.
/// The seed used for step t is derived from (cfg.seed, t).
PointSet generate_nd(const PointSet& init, std::size_t count, const OptimizerConfig& cfg);

/// F_d at each of the ys (row-major, ys.size() == count * d), evaluated in parallel.
void evaluate_batch(std::span<const double> ys, const FunctionalContext& ctx, std::span<double> out);

/// Deterministic random stream used by every randomized routine: a
/// Mersenne Twister seeded through std::seed_seq from (seed, stream).
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
    std::uint64_t next() { return engine_(); }
    /// Uniform in [0,1) from the top 53 bits of one draw.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace glds
