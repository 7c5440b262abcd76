#include <algorithm>
#include <cmath>

#include "glds/discrepancy.hpp"

namespace glds::reference {

double linf_star_naive(const PointSet& ps)
{
    if (ps.empty())
        throw ValidationError("L-infinity discrepancy needs at least one point");
    const auto grid = CriticalGrid::of(ps);
    const std::size_t d = ps.d;
    const double n = static_cast<double>(ps.size());
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> q(d);
    double best = 0.0;
    for (;;) {
        double volume = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            q[k] = grid.axes[k][idx[k]];
            volume *= q[k];
        }
        std::size_t open = 0, closed = 0;
        for (const auto& p : ps.points) {
            bool in_open = true, in_closed = true;
            for (std::size_t k = 0; k < d; ++k) {
                in_open = in_open && p[k] < q[k];
                in_closed = in_closed && p[k] <= q[k];
            }
            open += in_open;
            closed += in_closed;
        }
        best = std::max({best, volume - static_cast<double>(open) / n, static_cast<double>(closed) / n - volume});

        std::size_t k = 0;
        while (k < d && ++idx[k] == grid.axes[k].size())
            idx[k++] = 0;
        if (k == d)
            break;
    }
    return best;
}

double l2_star_warnock_naive(const PointSet& ps)
{
    if (ps.empty())
        throw ValidationError("Warnock's formula needs at least one point");
    const std::size_t d = ps.d;
    const double n = static_cast<double>(ps.size());
    double singles = 0.0;
    for (const auto& p : ps.points) {
        double prod = 1.0;
        for (std::size_t k = 0; k < d; ++k)
            prod *= 1.0 - p[k] * p[k];
        singles += prod;
    }
    double pairs = 0.0;
    for (const auto& a : ps.points) {
        for (const auto& b : ps.points) {
            double prod = 1.0;
            for (std::size_t k = 0; k < d; ++k)
                prod *= 1.0 - std::max(a[k], b[k]);
            pairs += prod;
        }
    }
    return std::pow(3.0, -static_cast<double>(d)) - std::ldexp(1.0, 1 - static_cast<int>(d)) / n * singles +
           pairs / (n * n);
}

} // namespace glds::reference
