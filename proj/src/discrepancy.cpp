#include "glds/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "glds/compensated.hpp"

namespace glds {

namespace {

void require_nonempty(const PointSet& ps, const char* what)
{
    if (ps.empty())
        throw ValidationError(std::string(what) + " needs at least one point");
    require_valid(ps);
}

// Anchored boxes indexed by one corner value per axis. A point belongs to the
// open box at corner J when J_k >= open_from[k] for every axis k, and to the
// closed box when J_k >= closed_from[k].
struct CornerProblem {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::vector<double>> axes;
    std::vector<std::uint32_t> open_from;   // n * d
    std::vector<std::uint32_t> closed_from; // n * d
};

inline double local_max(double volume, double open, double closed, double inv_n)
{
    return std::max(volume - open * inv_n, closed * inv_n - volume);
}

double corners_1d(const CornerProblem& p)
{
    const auto& ax = p.axes[0];
    const std::size_t m = ax.size();
    std::vector<std::uint32_t> ho(m + 1, 0), hc(m + 1, 0);
    for (std::size_t i = 0; i < p.n; ++i) {
        ++ho[p.open_from[i]];
        ++hc[p.closed_from[i]];
    }
    const double inv_n = 1.0 / static_cast<double>(p.n);
    double best = 0.0;
    std::uint32_t open = 0, closed = 0;
    for (std::size_t j = 0; j < m; ++j) {
        open += ho[j];
        closed += hc[j];
        best = std::max(best, local_max(ax[j], open, closed, inv_n));
    }
    return best;
}

double corners_2d(const CornerProblem& p)
{
    const auto& ax0 = p.axes[0];
    const auto& ax1 = p.axes[1];
    const std::size_t m0 = ax0.size();
    const std::size_t m1 = ax1.size();
    const double inv_n = 1.0 / static_cast<double>(p.n);
    double best = 0.0;
#pragma omp parallel
    {
        std::vector<std::uint32_t> ho(m1 + 1), hc(m1 + 1);
#pragma omp for schedule(dynamic, 4) reduction(max : best)
        for (std::size_t a = 0; a < m0; ++a) {
            std::fill(ho.begin(), ho.end(), 0u);
            std::fill(hc.begin(), hc.end(), 0u);
            for (std::size_t i = 0; i < p.n; ++i) {
                if (p.open_from[2 * i] <= a)
                    ++ho[p.open_from[2 * i + 1]];
                if (p.closed_from[2 * i] <= a)
                    ++hc[p.closed_from[2 * i + 1]];
            }
            std::uint32_t open = 0, closed = 0;
            for (std::size_t b = 0; b < m1; ++b) {
                open += ho[b];
                closed += hc[b];
                best = std::max(best, local_max(ax0[a] * ax1[b], open, closed, inv_n));
            }
        }
    }
    return best;
}

double corners_3d(const CornerProblem& p)
{
    const auto& ax0 = p.axes[0];
    const auto& ax1 = p.axes[1];
    const auto& ax2 = p.axes[2];
    const std::size_t m0 = ax0.size();
    const std::size_t m1 = ax1.size();
    const std::size_t m2 = ax2.size();
    const std::size_t stride = m2 + 1;
    const double inv_n = 1.0 / static_cast<double>(p.n);
    double best = 0.0;
#pragma omp parallel
    {
        // Inclusive 2-D prefix counts over (axis 1, axis 2) for one axis-0 slice.
        std::vector<std::uint32_t> po((m1 + 1) * stride), pc((m1 + 1) * stride);
#pragma omp for schedule(dynamic, 2) reduction(max : best)
        for (std::size_t a = 0; a < m0; ++a) {
            std::fill(po.begin(), po.end(), 0u);
            std::fill(pc.begin(), pc.end(), 0u);
            for (std::size_t i = 0; i < p.n; ++i) {
                const std::uint32_t* of = &p.open_from[3 * i];
                const std::uint32_t* cf = &p.closed_from[3 * i];
                if (of[0] <= a)
                    ++po[of[1] * stride + of[2]];
                if (cf[0] <= a)
                    ++pc[cf[1] * stride + cf[2]];
            }
            for (std::size_t b = 0; b < m1; ++b) {
                std::uint32_t row_o = 0, row_c = 0;
                const double vol_ab = ax0[a] * ax1[b];
                for (std::size_t c = 0; c < m2; ++c) {
                    row_o += po[b * stride + c];
                    row_c += pc[b * stride + c];
                    const std::uint32_t above_o = b > 0 ? po[(b - 1) * stride + c] : 0u;
                    const std::uint32_t above_c = b > 0 ? pc[(b - 1) * stride + c] : 0u;
                    // Rows hold raw counts until prefixed; rewrite in place as we go.
                    po[b * stride + c] = row_o + above_o;
                    pc[b * stride + c] = row_c + above_c;
                    best = std::max(best, local_max(vol_ab * ax2[c], po[b * stride + c], pc[b * stride + c], inv_n));
                }
            }
        }
    }
    return best;
}

double max_local_discrepancy(const CornerProblem& p)
{
    switch (p.d) {
    case 1:
        return corners_1d(p);
    case 2:
        return corners_2d(p);
    case 3:
        return corners_3d(p);
    default:
        throw ValidationError("corner enumeration supports d in {1,2,3}, got d=" + std::to_string(p.d));
    }
}

} // namespace

std::string to_string(DiscrepancyKind kind)
{
    switch (kind) {
    case DiscrepancyKind::linf_exact:
        return "linf";
    case DiscrepancyKind::linf_lower_bound:
        return "linf_lower_bound";
    case DiscrepancyKind::l2_squared:
        return "l2_squared";
    }
    return "unknown";
}

CriticalGrid CriticalGrid::of(const PointSet& ps)
{
    CriticalGrid g;
    g.axes.resize(ps.d);
    for (std::size_t k = 0; k < ps.d; ++k) {
        auto& ax = g.axes[k];
        ax.reserve(ps.size() + 1);
        for (const auto& p : ps.points)
            ax.push_back(p[k]);
        std::sort(ax.begin(), ax.end());
        ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
        ax.push_back(1.0);
    }
    return g;
}

std::size_t CriticalGrid::corner_count() const
{
    std::size_t c = 1;
    for (const auto& ax : axes)
        c *= ax.size();
    return c;
}

double linf_star_1d_sorted(std::span<const double> sorted)
{
    const double n = static_cast<double>(sorted.size());
    double best = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double x = sorted[i];
        best = std::max(best, std::max((static_cast<double>(i) + 1.0) / n - x, x - static_cast<double>(i) / n));
    }
    return best;
}

DiscrepancyValue linf_star_1d(const PointSet& ps)
{
    require_nonempty(ps, "L-infinity discrepancy");
    auto xs = ps.coords_1d();
    std::sort(xs.begin(), xs.end());
    return {linf_star_1d_sorted(xs), DiscrepancyKind::linf_exact, ps.size(), 1};
}

DiscrepancyValue linf_star_exact(const PointSet& ps)
{
    if (ps.d != 2 && ps.d != 3)
        throw ValidationError("exact critical-box enumeration supports d in {2,3}, got d=" + std::to_string(ps.d) +
                              (ps.d == 1 ? " (use the 1-D closed form)" : ""));
    require_nonempty(ps, "L-infinity discrepancy");
    CornerProblem p;
    p.n = ps.size();
    p.d = ps.d;
    p.axes = CriticalGrid::of(ps).axes;
    p.open_from.resize(p.n * p.d);
    p.closed_from.resize(p.n * p.d);
    for (std::size_t i = 0; i < p.n; ++i) {
        for (std::size_t k = 0; k < p.d; ++k) {
            const auto& ax = p.axes[k];
            const auto r = static_cast<std::uint32_t>(std::lower_bound(ax.begin(), ax.end(), ps[i][k]) - ax.begin());
            p.closed_from[i * p.d + k] = r;
            p.open_from[i * p.d + k] = r + 1;
        }
    }
    return {max_local_discrepancy(p), DiscrepancyKind::linf_exact, p.n, p.d};
}

DiscrepancyValue linf_star(const PointSet& ps)
{
    return ps.d == 1 ? linf_star_1d(ps) : linf_star_exact(ps);
}

DiscrepancyValue linf_star_sampled(const PointSet& ps, std::size_t m)
{
    if (m < 2)
        throw ValidationError("sampling resolution must be at least 2");
    if (ps.d < 1 || ps.d > 3)
        throw ValidationError("sampled L-infinity discrepancy supports d in {1,2,3}");
    require_nonempty(ps, "L-infinity discrepancy");
    CornerProblem p;
    p.n = ps.size();
    p.d = ps.d;
    std::vector<double> lattice(m + 1);
    for (std::size_t j = 0; j <= m; ++j)
        lattice[j] = static_cast<double>(j) / static_cast<double>(m);
    p.axes.assign(p.d, lattice);
    p.open_from.resize(p.n * p.d);
    p.closed_from.resize(p.n * p.d);
    for (std::size_t i = 0; i < p.n; ++i) {
        for (std::size_t k = 0; k < p.d; ++k) {
            const double x = ps[i][k];
            p.open_from[i * p.d + k] =
                static_cast<std::uint32_t>(std::upper_bound(lattice.begin(), lattice.end(), x) - lattice.begin());
            p.closed_from[i * p.d + k] =
                static_cast<std::uint32_t>(std::lower_bound(lattice.begin(), lattice.end(), x) - lattice.begin());
        }
    }
    return {max_local_discrepancy(p), DiscrepancyKind::linf_lower_bound, p.n, p.d};
}

DiscrepancyValue l2_star_warnock(const PointSet& ps)
{
    require_nonempty(ps, "Warnock's formula");
    const std::size_t n = ps.size();
    const std::size_t d = ps.d;
    const std::vector<double> x = ps.flat();

    // Row i of the pair sum: term(i,i) + 2 * sum_{j>i} term(i,j).
    std::vector<CompensatedSum> rows(n);
    const auto ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t ii = 0; ii < ni; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const double* xi = &x[i * d];
        CompensatedSum s;
        double diag = 1.0;
        for (std::size_t k = 0; k < d; ++k)
            diag *= 1.0 - xi[k];
        s.add(diag);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* xj = &x[j * d];
            double prod = 2.0;
            for (std::size_t k = 0; k < d; ++k)
                prod *= 1.0 - std::max(xi[k], xj[k]);
            s.add(prod);
        }
        rows[i] = s;
    }

    CompensatedSum pairs, singles;
    for (std::size_t i = 0; i < n; ++i) {
        pairs.add(rows[i]);
        double prod = 1.0;
        for (std::size_t k = 0; k < d; ++k)
            prod *= 1.0 - x[i * d + k] * x[i * d + k];
        singles.add(prod);
    }
    const double nd = static_cast<double>(n);
    CompensatedSum total;
    total.add(std::pow(3.0, -static_cast<double>(d)));
    total.add(-std::ldexp(1.0, 1 - static_cast<int>(d)) / nd * singles.value());
    total.add(pairs.value() / (nd * nd));
    return {total.value(), DiscrepancyKind::l2_squared, n, d};
}

std::vector<double> linf_star_1d_prefixes(std::span<const double> seq, std::span<const std::size_t> checkpoints)
{
    std::vector<double> out;
    out.reserve(checkpoints.size());
    std::vector<double> sorted;
    sorted.reserve(checkpoints.empty() ? 0 : checkpoints.back());
    std::size_t have = 0;
    for (std::size_t cp : checkpoints) {
        if (cp <= have || cp > seq.size())
            throw ValidationError("checkpoints must be strictly increasing, positive, and within the sequence");
        const auto mid = static_cast<std::ptrdiff_t>(sorted.size());
        sorted.insert(sorted.end(), seq.begin() + static_cast<std::ptrdiff_t>(have),
                      seq.begin() + static_cast<std::ptrdiff_t>(cp));
        std::sort(sorted.begin() + mid, sorted.end());
        std::inplace_merge(sorted.begin(), sorted.begin() + mid, sorted.end());
        have = cp;
        out.push_back(linf_star_1d_sorted(sorted));
    }
    return out;
}

} // namespace glds
