#include "glds/greedy1d.hpp"

#include "sweep_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

namespace glds {

namespace {

struct Scored {
    std::int64_t index;
    DoubleDouble f;
};

double ulp_of(double v)
{
    const double a = std::fabs(v);
    return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

// Smallest value wins; anything within 4 ulps of it counts as tied and the
// smallest index among the tied ones is returned.
const Scored& select_leftmost(const std::vector<Scored>& scored)
{
    if (scored.empty())
        throw InternalError("no admissible candidate for the greedy step");
    std::size_t best = 0;
    for (std::size_t k = 1; k < scored.size(); ++k)
        if ((scored[k].f - scored[best].f).value() < 0.0)
            best = k;
    const DoubleDouble fmin = scored[best].f;
    const double tol = 4.0 * ulp_of(fmin.hi);
    std::size_t pick = best;
    for (std::size_t k = 0; k < scored.size(); ++k) {
        if ((scored[k].f - fmin).value() <= tol && scored[k].index < scored[pick].index)
            pick = k;
    }
    return scored[pick];
}

constexpr std::size_t kResyncInterval = 256;

std::uint64_t pack_rational(std::int64_t num, std::int64_t den)
{
    return (static_cast<std::uint64_t>(num) << 32) | static_cast<std::uint64_t>(den);
}

} // namespace

SortedSet1D::SortedSet1D() : values_{-1.0, 2.0}, suffix_{0.0} {}

SortedSet1D::SortedSet1D(const std::vector<double>& xs) : SortedSet1D()
{
    for (double x : xs)
        insert(x);
}

int SortedSet1D::compare_to_entry(std::int64_t num, std::int64_t den, std::size_t idx) const
{
    const std::uint64_t id = ident_[idx];
    if (id != 0)
        return compare_exact(num, den, static_cast<std::int64_t>(id >> 32),
                             static_cast<std::int64_t>(id & 0xffffffffu));
    return compare_exact(num, den, values_[idx + 1]);
}

DoubleDouble SortedSet1D::exact_suffix_sum(std::size_t i) const
{
    const auto xs = values();
    return sum_unit_interval(xs.data() + i, xs.size() - i);
}

std::size_t SortedSet1D::insert_position(double x, std::int64_t num, std::int64_t den) const
{
    // First entry strictly greater than the new value.
    auto greater = [&](std::size_t idx) {
        if (den != 0)
            return compare_to_entry(num, den, idx) < 0;
        const std::uint64_t id = ident_[idx];
        if (id != 0)
            return compare_exact(static_cast<std::int64_t>(id >> 32), static_cast<std::int64_t>(id & 0xffffffffu),
                                 x) > 0;
        return values_[idx + 1] > x;
    };
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (greater(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

void SortedSet1D::insert_at(std::size_t pos, double x, std::uint64_t ident)
{
    const auto off = static_cast<std::ptrdiff_t>(pos);
    values_.insert(values_.begin() + off + 1, x);
    ident_.insert(ident_.begin() + off, ident);
    // The old suffix at pos becomes the suffix at pos+1; x joins every suffix at or below pos.
    suffix_.insert(suffix_.begin() + off, suffix_[pos]);
    double* s = suffix_.data();
    for (std::size_t j = 0; j <= pos; ++j)
        s[j] += x;
    if (++inserts_since_sync_ == kResyncInterval)
        resync_suffix();
}

void SortedSet1D::resync_suffix()
{
    // Plain running sums from the top, anchored to an accurate total every 64 entries.
    const auto xs = values();
    const std::size_t n = xs.size();
    DoubleDouble anchor;
    for (std::size_t top = n; top > 0;) {
        const std::size_t bottom = top >= 64 ? top - 64 : 0;
        double acc = anchor.value();
        anchor += sum_unit_interval(xs.data() + bottom, top - bottom);
        for (std::size_t j = top; j-- > bottom;) {
            acc += xs[j];
            suffix_[j] = acc;
        }
        top = bottom;
    }
    inserts_since_sync_ = 0;
}

void SortedSet1D::insert(double x)
{
    if (!(x >= 0.0 && x < 1.0))
        throw ValidationError("1-D point " + format_real(x) + " outside [0,1)");
    insert_at(insert_position(x, 0, 0), x, 0);
}

void SortedSet1D::insert(const CandidateRational& c)
{
    if (c.denominator() > 0xffffffffLL)
        throw ValidationError("sequence too long for exact candidate bookkeeping");
    insert_at(insert_position(0.0, c.numerator(), c.denominator()), c.value(),
              pack_rational(c.numerator(), c.denominator()));
}

std::vector<QuadCell> quad_cells(const SortedSet1D& ps)
{
    const auto n = static_cast<std::int64_t>(ps.size());
    const auto xs = ps.values();
    std::vector<QuadCell> cells(static_cast<std::size_t>(n + 1));
    QuadCell cur;
    cur.a = 2 * n + 1;
    for (std::int64_t i = n; i >= 0; --i) {
        const auto iu = static_cast<std::size_t>(i);
        cur.index = i;
        cur.lo = i > 0 ? xs[iu - 1] : 0.0;
        cur.hi = i < n ? xs[iu] : 1.0;
        cells[iu] = cur;
        if (i > 0) {
            cur.a -= 2;
            cur.b += 2.0 * xs[iu - 1];
        }
    }
    return cells;
}

double functional_1d(double y, std::span<const double> xs)
{
    if (!(y >= 0.0 && y < 1.0))
        throw ValidationError("functional argument " + format_real(y) + " outside [0,1)");
    const double n1 = static_cast<double>(xs.size() + 1);
    CompensatedSum s;
    s.add(n1 * y * y);
    s.add(-y);
    for (double x : xs)
        s.add(-2.0 * std::max(x, y));
    return s.value();
}

double functional_1d(double y, const SortedSet1D& ps) { return functional_1d(y, ps.values()); }

GreedyChoice next_point_sweep(const SortedSet1D& ps)
{
    const auto n = static_cast<std::int64_t>(ps.size());
    const auto cells = static_cast<std::size_t>(n + 1);
    const std::int64_t q = 2 * (n + 1);
    const double qd = static_cast<double>(q);
    const double inv_q = 1.0 / qd;
    const double inv_two_q = 0.5 / qd;
    const double* bounds = ps.padded().data();
    const double* suffix = ps.suffix_sums().data();
    constexpr double outside = detail::kScreenOutside;
    constexpr double uncertain = detail::kScreenUncertain;

    thread_local std::vector<double> rough;
    thread_local std::vector<std::size_t> near;
    thread_local std::vector<Scored> scored;
    rough.resize(cells);
    near.clear();
    scored.clear();

    // Cell i spans (bounds[i], bounds[i+1]) with A_i = 2i+1 and B_i = 2 * suffix[i],
    // the values the downward recurrence from A_n = 2n+1, B_n = 0 produces.
    // First pass: F_i at its vertex in plain double, with sentinels for cells
    // whose vertex is clearly outside or within rounding of a bound.
    double* f = rough.data();
    double fmin = detail::screen_cells(f, bounds, suffix, static_cast<int>(n), inv_q, inv_two_q);

    // Suffix sums drift by a bounded number of roundings between resyncs; the
    // slack comfortably covers that and the rounding of the first pass.
    auto slack_of = [](double m) { return 1e-10 * (1.0 + std::fabs(m)); };
    const double threshold = fmin + slack_of(fmin);
    for (std::size_t i = 0; i < cells; ++i)
        if (f[i] <= threshold)
            near.push_back(i);

    for (std::size_t i : near) {
        if (f[i] != uncertain)
            continue;
        const auto ii = static_cast<std::int64_t>(i);
        const std::int64_t a = 2 * ii + 1;
        const bool admissible = (i == 0 || ps.compare_to_entry(a, q, i - 1) > 0) &&
                                (ii == n || ps.compare_to_entry(a, q, i) < 0);
        const double ad = static_cast<double>(a);
        f[i] = admissible ? -(ad * ad) * inv_two_q - 2.0 * suffix[i] : outside;
        fmin = std::min(fmin, f[i]);
    }

    const double final_threshold = fmin + slack_of(fmin);
    for (std::size_t i : near) {
        if (f[i] > final_threshold)
            continue;
        const double ad = 2.0 * static_cast<double>(i) + 1.0;
        const DoubleDouble b = ps.exact_suffix_sum(i);
        // F_i at its vertex a/q: -a^2 / (4(n+1)) - B_i
        scored.push_back({static_cast<std::int64_t>(i), -DoubleDouble::divide(ad * ad, 2.0 * qd) - b - b});
    }
    const Scored& win = select_leftmost(scored);
    return {CandidateRational::of(win.index, n), win.f.value()};
}

GreedyChoice next_point_bruteforce(const SortedSet1D& ps)
{
    const auto n = static_cast<std::int64_t>(ps.size());
    const std::int64_t q = 2 * (n + 1);
    const double qd = static_cast<double>(q);
    const auto xs = ps.values();

    std::vector<Scored> scored;
    for (std::int64_t i = 0; i <= n; ++i) {
        const std::int64_t p = 2 * i + 1;
        const double v = static_cast<double>(p) / qd;
        bool coincides = false;
        std::int64_t below = 0;
        DoubleDouble above;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            int cmp; // sign(candidate - x_j)
            if (v != xs[j])
                cmp = v > xs[j] ? 1 : -1;
            else
                cmp = ps.compare_to_entry(p, q, j);
            if (cmp == 0) {
                coincides = true;
                break;
            }
            if (cmp > 0)
                ++below;
            else
                above += xs[j];
        }
        if (coincides)
            continue;
        const double pd = static_cast<double>(p);
        // (n+1)v^2 - v = (p^2 - 2p) / (2q); max(x, v) = v for the points below.
        DoubleDouble f = DoubleDouble::divide(pd * pd - 2.0 * pd, 2.0 * qd);
        f = f - DoubleDouble::divide(2.0 * static_cast<double>(below) * pd, qd);
        f = f - above - above;
        scored.push_back({i, f});
    }
    const Scored& win = select_leftmost(scored);
    return {CandidateRational::of(win.index, n), win.f.value()};
}

Generator1D::Generator1D(const PointSet& init) : points_(init)
{
    if (init.d != 1)
        throw ValidationError("1-D generator needs d=1, got d=" + std::to_string(init.d));
    require_valid(init, "initial set");
    sorted_ = SortedSet1D(init.coords_1d());
    init_size_ = init.size();
}

CandidateRational Generator1D::step()
{
    const GreedyChoice choice = next_point_sweep(sorted_);
    points_.points.push_back(Point{choice.point.value()});
    sorted_.insert(choice.point);
    generated_.push_back(choice.point);
    return choice.point;
}

void Generator1D::run(std::size_t count)
{
    points_.points.reserve(points_.size() + count);
    generated_.reserve(generated_.size() + count);
    for (std::size_t k = 0; k < count; ++k)
        step();
}

PointSet generate_1d(const PointSet& init, std::size_t count)
{
    Generator1D gen(init);
    gen.run(count);
    return gen.points();
}

} // namespace glds
