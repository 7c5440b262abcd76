#include "glds/functional_nd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glds/compensated.hpp"

namespace glds {

namespace {

constexpr std::size_t kBlock = 256;

void require_in_domain(const Point& y, std::size_t d)
{
    if (y.dim() != d)
        throw ValidationError("point has dimension " + std::to_string(y.dim()) + ", context has " +
                              std::to_string(d));
    for (std::size_t k = 0; k < d; ++k)
        if (!(y[k] >= 0.0 && y[k] < 1.0))
            throw ValidationError("functional argument coordinate " + std::to_string(k) + " = " +
                                  format_real(y[k]) + " outside [0,1)");
}

// Sum over all points of prod_k (1 - max(x_ik, y_k)); block partial sums in
// plain double, blocks combined with compensation.
double pair_sum(const double* y, const FunctionalContext& ctx)
{
    const std::size_t n = ctx.n();
    const std::size_t d = ctx.d();
    CompensatedSum total;
    for (std::size_t begin = 0; begin < n; begin += kBlock) {
        const std::size_t end = std::min(n, begin + kBlock);
        double block = 0.0;
        if (d == 1) {
            const double* a = ctx.axis(0).data();
            const double y0 = y[0];
            for (std::size_t i = begin; i < end; ++i)
                block += 1.0 - std::max(a[i], y0);
        } else if (d == 2) {
            const double* a = ctx.axis(0).data();
            const double* b = ctx.axis(1).data();
            const double y0 = y[0], y1 = y[1];
            for (std::size_t i = begin; i < end; ++i)
                block += (1.0 - std::max(a[i], y0)) * (1.0 - std::max(b[i], y1));
        } else if (d == 3) {
            const double* a = ctx.axis(0).data();
            const double* b = ctx.axis(1).data();
            const double* c = ctx.axis(2).data();
            const double y0 = y[0], y1 = y[1], y2 = y[2];
            for (std::size_t i = begin; i < end; ++i)
                block += (1.0 - std::max(a[i], y0)) * (1.0 - std::max(b[i], y1)) * (1.0 - std::max(c[i], y2));
        } else {
            for (std::size_t i = begin; i < end; ++i) {
                double prod = 1.0;
                for (std::size_t k = 0; k < d; ++k)
                    prod *= 1.0 - std::max(ctx.axis(k)[i], y[k]);
                block += prod;
            }
        }
        total.add(block);
    }
    return total.value();
}

double evaluate_unchecked(const double* y, const FunctionalContext& ctx)
{
    const std::size_t d = ctx.d();
    double squares = 1.0, linear = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        squares *= (1.0 - y[k]) * (1.0 + y[k]);
        linear *= 1.0 - y[k];
    }
    const double lead = std::ldexp(static_cast<double>(ctx.n() + 1), 1 - static_cast<int>(d));
    CompensatedSum s;
    s.add(-lead * squares);
    s.add(linear);
    s.add(2.0 * pair_sum(y, ctx));
    return s.value();
}

} // namespace

FunctionalContext::FunctionalContext(std::size_t d) : d_(d), coords_(d), breaks_(d, std::vector<double>{0.0, 1.0})
{
    if (d == 0)
        throw ValidationError("dimension must be at least 1");
}

FunctionalContext::FunctionalContext(const PointSet& points) : FunctionalContext(points.d)
{
    require_valid(points, "functional context");
    for (auto& axis : coords_)
        axis.reserve(points.size());
    for (const auto& p : points.points)
        add_point(p);
}

void FunctionalContext::add_point(const Point& p)
{
    require_in_domain(p, d_);
    for (std::size_t k = 0; k < d_; ++k) {
        coords_[k].push_back(p[k]);
        auto& br = breaks_[k];
        const auto it = std::lower_bound(br.begin(), br.end(), p[k]);
        if (*it != p[k])
            br.insert(it, p[k]);
    }
    ++n_;
}

PointSet FunctionalContext::point_set() const
{
    PointSet ps(d_);
    ps.points.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        Point p;
        p.coords.resize(d_);
        for (std::size_t k = 0; k < d_; ++k)
            p[k] = coords_[k][i];
        ps.points.push_back(std::move(p));
    }
    return ps;
}

Cell Cell::locate(const Point& y, const FunctionalContext& ctx)
{
    require_in_domain(y, ctx.d());
    Cell cell;
    cell.lo.resize(ctx.d());
    cell.hi.resize(ctx.d());
    for (std::size_t k = 0; k < ctx.d(); ++k) {
        const auto br = ctx.breaks(k);
        const auto it = std::upper_bound(br.begin(), br.end(), y[k]);
        cell.hi[k] = *it;
        cell.lo[k] = *(it - 1);
    }
    return cell;
}

bool Cell::contains_strictly(const Point& y) const
{
    for (std::size_t k = 0; k < lo.size(); ++k)
        if (!(lo[k] < y[k] && y[k] < hi[k]))
            return false;
    return true;
}

bool Cell::contains_closed(const Point& y) const
{
    for (std::size_t k = 0; k < lo.size(); ++k)
        if (!(lo[k] <= y[k] && y[k] <= hi[k]))
            return false;
    return true;
}

double functional_nd(const Point& y, const FunctionalContext& ctx)
{
    require_in_domain(y, ctx.d());
    return evaluate_unchecked(y.coords.data(), ctx);
}

std::vector<double> cell_gradient(const Point& y, const Cell& cell, const FunctionalContext& ctx)
{
    const std::size_t d = ctx.d();
    const std::size_t n = ctx.n();
    if (y.dim() != d || cell.lo.size() != d)
        throw ValidationError("gradient: dimension mismatch");
    if (!cell.contains_closed(y))
        throw ValidationError("gradient: point outside the given cell");

    // Inside the cell, max(x_ik, y_k) is y_k exactly when x_ik <= lo_k.
    const double lead = std::ldexp(static_cast<double>(n + 1), 2 - static_cast<int>(d));
    std::vector<double> grad(d);
    std::vector<double> factor(d);
    std::vector<char> follows(d);
    std::vector<CompensatedSum> pair(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const double x = ctx.axis(k)[i];
            follows[k] = x <= cell.lo[k];
            factor[k] = 1.0 - (follows[k] ? y[k] : x);
        }
        for (std::size_t m = 0; m < d; ++m) {
            if (!follows[m])
                continue;
            double prod = 1.0;
            for (std::size_t k = 0; k < d; ++k)
                if (k != m)
                    prod *= factor[k];
            pair[m].add(prod);
        }
    }
    for (std::size_t m = 0; m < d; ++m) {
        double squares = 1.0, linear = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            if (k == m)
                continue;
            squares *= (1.0 - y[k]) * (1.0 + y[k]);
            linear *= 1.0 - y[k];
        }
        CompensatedSum s;
        s.add(lead * y[m] * squares);
        s.add(-linear);
        s.add(-2.0 * pair[m].value());
        grad[m] = s.value();
    }
    return grad;
}

std::vector<double> gradient_nd(const Point& y, const Cell& cell, const FunctionalContext& ctx)
{
    if (y.dim() != ctx.d() || cell.lo.size() != ctx.d())
        throw ValidationError("gradient: dimension mismatch");
    if (!cell.contains_strictly(y))
        throw ValidationError("gradient is undefined on a cell boundary");
    return cell_gradient(y, cell, ctx);
}

void evaluate_batch(std::span<const double> ys, const FunctionalContext& ctx, std::span<double> out)
{
    const std::size_t d = ctx.d();
    if (ys.size() % d != 0 || ys.size() / d != out.size())
        throw ValidationError("evaluate_batch: buffer sizes do not match");
    for (double v : ys)
        if (!(v >= 0.0 && v < 1.0))
            throw ValidationError("evaluate_batch: coordinate " + format_real(v) + " outside [0,1)");
    const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < count; ++j)
        out[static_cast<std::size_t>(j)] = evaluate_unchecked(ys.data() + static_cast<std::size_t>(j) * d, ctx);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

} // namespace glds
