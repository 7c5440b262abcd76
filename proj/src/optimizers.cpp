#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "glds/functional_nd.hpp"

namespace glds {

namespace {

constexpr std::size_t kChunk = 1 << 16;
const double kTop = std::nextafter(1.0, 0.0);

double ulp_of(double v)
{
    const double a = std::fabs(v);
    return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

// Keeps the best candidate seen so far. Values within 4 ulps of each other
// are tied and the lexicographically smallest point wins, so the outcome does
// not depend on the order in which candidates are offered.
class BestTracker {
public:
    void offer(const double* y, std::size_t d, double f)
    {
        if (!has_) {
            take(y, d, f);
            return;
        }
        const double tol = 4.0 * ulp_of(std::min(f, value_));
        if (f < value_ - tol) {
            take(y, d, f);
        } else if (f <= value_ + tol && std::lexicographical_compare(y, y + d, point_.begin(), point_.end())) {
            take(y, d, f);
        }
    }

    bool has() const { return has_; }
    double value() const { return value_; }
    const std::vector<double>& point() const { return point_; }

private:
    void take(const double* y, std::size_t d, double f)
    {
        point_.assign(y, y + d);
        value_ = f;
        has_ = true;
    }

    bool has_ = false;
    double value_ = 0.0;
    std::vector<double> point_;
};

void require_optimizable(const FunctionalContext& ctx, const OptimizerConfig& cfg)
{
    if (ctx.d() < 1 || ctx.d() > 3)
        throw ValidationError("optimizers support d in {1,2,3}, got d=" + std::to_string(ctx.d()));
    if (cfg.budget < 1)
        throw ValidationError("optimizer budget must be at least 1");
}

std::size_t lattice_size(std::size_t m, std::size_t d, std::size_t budget)
{
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) {
        if (total > budget / m)
            throw ValidationError("grid of " + std::to_string(m) + "^" + std::to_string(d) +
                                  " points exceeds the evaluation budget " + std::to_string(budget));
        total *= m;
    }
    if (total > budget)
        throw ValidationError("grid of " + std::to_string(m) + "^" + std::to_string(d) +
                              " points exceeds the evaluation budget " + std::to_string(budget));
    return total;
}

// Coordinates of lattice point j in {(2i+1)/(2m)}^d, axis 0 varying slowest.
void lattice_point(std::size_t j, std::size_t m, std::size_t d, double* out)
{
    const double twice_m = 2.0 * static_cast<double>(m);
    for (std::size_t k = d; k-- > 0;) {
        out[k] = static_cast<double>(2 * (j % m) + 1) / twice_m;
        j /= m;
    }
}

// Evaluates the lattice in chunks and returns every (value, index) pair.
std::vector<std::pair<double, std::size_t>> scan_lattice(const FunctionalContext& ctx, std::size_t m,
                                                         std::size_t total)
{
    const std::size_t d = ctx.d();
    std::vector<std::pair<double, std::size_t>> scored(total);
    std::vector<double> ys, fs;
    for (std::size_t begin = 0; begin < total; begin += kChunk) {
        const std::size_t count = std::min(kChunk, total - begin);
        ys.resize(count * d);
        fs.resize(count);
        for (std::size_t j = 0; j < count; ++j)
            lattice_point(begin + j, m, d, ys.data() + j * d);
        evaluate_batch(ys, ctx, fs);
        for (std::size_t j = 0; j < count; ++j)
            scored[begin + j] = {fs[j], begin + j};
    }
    return scored;
}

struct DescentOutcome {
    Point point;
    double fvalue;
    std::size_t evaluations;
    bool converged;
};

double upper_limit(double hi) { return hi >= 1.0 ? kTop : hi; }

// Projected gradient descent with Armijo backtracking inside one cell at a
// time. On reaching a cell face that the gradient pushes through, the descent
// moves to the neighbouring cell; the kinks of F_d only steepen the slope in
// that direction, so every hop continues downhill.
DescentOutcome descend(const FunctionalContext& ctx, const DescentConfig& dc, Point y)
{
    const std::size_t d = ctx.d();
    const std::size_t hop_budget = 4 * d;
    std::size_t hops = 0;
    std::size_t evaluations = 1;
    Cell cell = Cell::locate(y, ctx);
    double fy = functional_nd(y, ctx);
    double step = dc.initial_step;
    bool converged = false;
    Point trial = y;

    for (std::size_t iter = 0; iter < dc.max_iterations; ++iter) {
        const std::vector<double> g = cell_gradient(y, cell, ctx);

        // Faces the gradient pushes through, steepest first.
        std::size_t hop_axis = d;
        double hop_slope = 0.0;
        std::vector<double> pg = g;
        for (std::size_t k = 0; k < d; ++k) {
            const bool at_lo = y[k] <= cell.lo[k];
            const bool at_hi = y[k] >= upper_limit(cell.hi[k]);
            const bool pushes = (at_lo && g[k] > 0.0) || (at_hi && g[k] < 0.0);
            if (!pushes)
                continue;
            pg[k] = 0.0;
            const bool inner_face = at_lo ? cell.lo[k] > 0.0 : cell.hi[k] < 1.0;
            if (inner_face && std::fabs(g[k]) > hop_slope) {
                hop_slope = std::fabs(g[k]);
                hop_axis = k;
            }
        }
        if (hop_axis < d && hops < hop_budget) {
            const auto br = ctx.breaks(hop_axis);
            if (g[hop_axis] < 0.0) {
                const auto it = std::upper_bound(br.begin(), br.end(), cell.hi[hop_axis]);
                cell.lo[hop_axis] = cell.hi[hop_axis];
                cell.hi[hop_axis] = *it;
                y[hop_axis] = cell.lo[hop_axis];
            } else {
                const auto it = std::lower_bound(br.begin(), br.end(), cell.lo[hop_axis]);
                cell.hi[hop_axis] = cell.lo[hop_axis];
                cell.lo[hop_axis] = *(it - 1);
                y[hop_axis] = cell.hi[hop_axis];
            }
            ++hops;
            step = dc.initial_step;
            continue;
        }

        double norm = 0.0;
        for (double v : pg)
            norm = std::max(norm, std::fabs(v));
        if (norm < dc.gradient_tolerance) {
            converged = hop_axis == d;
            break;
        }

        bool accepted = false;
        while (step > 1e-17) {
            double decrease = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                trial[k] = std::clamp(y[k] - step * g[k], cell.lo[k], upper_limit(cell.hi[k]));
                decrease += g[k] * (y[k] - trial[k]);
            }
            const double ft = functional_nd(trial, ctx);
            ++evaluations;
            if (ft <= fy - 1e-4 * decrease && ft <= fy && trial != y) {
                y = trial;
                fy = ft;
                accepted = true;
                step /= dc.shrink;
                break;
            }
            step *= dc.shrink;
        }
        if (!accepted) {
            // No representable move improves F: y is stationary to working precision.
            converged = hop_axis == d;
            break;
        }
    }
    return {y, fy, evaluations, converged};
}

OptimizeResult finish(const BestTracker& best, std::size_t evaluations, bool converged)
{
    OptimizeResult r;
    r.point = Point(best.point());
    r.fvalue = best.value();
    r.evaluations = evaluations;
    r.converged = converged;
    return r;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t t)
{
    Rng rng(seed, t + 1);
    return rng.next();
}

} // namespace

std::string to_string(Method m)
{
    switch (m) {
    case Method::random:
        return "random";
    case Method::grid:
        return "grid";
    case Method::graddesc:
        return "graddesc";
    case Method::multistart:
        return "multistart";
    }
    throw InternalError("unknown optimizer method");
}

Method parse_method(const std::string& name)
{
    for (Method m : {Method::random, Method::grid, Method::graddesc, Method::multistart})
        if (to_string(m) == name)
            return m;
    throw ValidationError("unknown method '" + name + "' (expected random, grid, graddesc or multistart)");
}

OptimizeResult minimize_random(const FunctionalContext& ctx, const OptimizerConfig& cfg)
{
    require_optimizable(ctx, cfg);
    const std::size_t d = ctx.d();
    Rng rng(cfg.seed);
    BestTracker best;
    std::vector<double> ys, fs;
    for (std::size_t begin = 0; begin < cfg.budget; begin += kChunk) {
        const std::size_t count = std::min(kChunk, cfg.budget - begin);
        ys.resize(count * d);
        fs.resize(count);
        for (double& v : ys)
            v = rng.uniform();
        evaluate_batch(ys, ctx, fs);
        for (std::size_t j = 0; j < count; ++j)
            best.offer(ys.data() + j * d, d, fs[j]);
    }
    return finish(best, cfg.budget, true);
}

OptimizeResult minimize_grid(const FunctionalContext& ctx, const OptimizerConfig& cfg)
{
    require_optimizable(ctx, cfg);
    const std::size_t m = cfg.grid_resolution;
    if (m < 2)
        throw ValidationError("grid resolution must be at least 2");
    const std::size_t d = ctx.d();
    const std::size_t total = lattice_size(m, d, cfg.budget);
    const auto scored = scan_lattice(ctx, m, total);
    BestTracker best;
    std::vector<double> y(d);
    for (const auto& [f, j] : scored) {
        lattice_point(j, m, d, y.data());
        best.offer(y.data(), d, f);
    }
    return finish(best, total, true);
}

OptimizeResult minimize_graddesc_from(const FunctionalContext& ctx, const OptimizerConfig& cfg,
                                      const std::vector<Point>& starts)
{
    require_optimizable(ctx, cfg);
    if (starts.empty())
        throw ValidationError("gradient descent needs at least one start");
    if (!(cfg.descent.shrink > 0.0 && cfg.descent.shrink < 1.0))
        throw ValidationError("descent shrink factor must lie in (0,1)");
    if (!(cfg.descent.initial_step > 0.0))
        throw ValidationError("descent initial step must be positive");

    std::vector<DescentOutcome> outcomes(starts.size());
    const auto count = static_cast<std::ptrdiff_t>(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < count; ++s)
        outcomes[static_cast<std::size_t>(s)] = descend(ctx, cfg.descent, starts[static_cast<std::size_t>(s)]);

    BestTracker best;
    std::size_t evaluations = 0;
    for (const auto& o : outcomes) {
        evaluations += o.evaluations;
        best.offer(o.point.coords.data(), ctx.d(), o.fvalue);
    }
    bool converged = false;
    for (const auto& o : outcomes)
        if (o.point.coords == best.point())
            converged = converged || o.converged;
    return finish(best, evaluations, converged);
}

OptimizeResult minimize_graddesc(const FunctionalContext& ctx, const OptimizerConfig& cfg)
{
    require_optimizable(ctx, cfg);
    const std::size_t m = cfg.grid_resolution;
    if (m < 2)
        throw ValidationError("grid resolution must be at least 2");
    if (cfg.starts < 1)
        throw ValidationError("descent needs at least one start");
    const std::size_t d = ctx.d();
    const std::size_t total = lattice_size(m, d, cfg.budget);
    auto scored = scan_lattice(ctx, m, total);
    const std::size_t keep = std::min(cfg.starts, total);
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end());

    std::vector<Point> starts;
    for (std::size_t s = 0; s < keep; ++s) {
        Point p;
        p.coords.resize(d);
        lattice_point(scored[s].second, m, d, p.coords.data());
        starts.push_back(std::move(p));
    }
    if (cfg.method == Method::multistart) {
        Rng rng(cfg.seed);
        for (std::size_t s = 0; s < cfg.starts; ++s) {
            Point p;
            p.coords.resize(d);
            for (double& v : p.coords)
                v = rng.uniform();
            starts.push_back(std::move(p));
        }
    }
    OptimizeResult r = minimize_graddesc_from(ctx, cfg, starts);
    r.evaluations += total;
    return r;
}

OptimizeResult minimize(const FunctionalContext& ctx, const OptimizerConfig& cfg)
{
    switch (cfg.method) {
    case Method::random:
        return minimize_random(ctx, cfg);
    case Method::grid:
        return minimize_grid(ctx, cfg);
    case Method::graddesc:
    case Method::multistart:
        return minimize_graddesc(ctx, cfg);
    }
    throw InternalError("unknown optimizer method");
}

PointSet generate_nd(const PointSet& init, std::size_t count, const OptimizerConfig& cfg)
{
    if (init.d < 1 || init.d > 3)
        throw ValidationError("generation supports d in {1,2,3}, got d=" + std::to_string(init.d));
    FunctionalContext ctx(init);
    PointSet out = init;
    out.points.reserve(init.size() + count);
    OptimizerConfig step_cfg = cfg;
    for (std::size_t t = 0; t < count; ++t) {
        step_cfg.seed = derive_seed(cfg.seed, t);
        const OptimizeResult r = minimize(ctx, step_cfg);
        ctx.add_point(r.point);
        out.points.push_back(r.point);
    }
    return out;
}

} // namespace glds
