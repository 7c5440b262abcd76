// Built with -ffinite-math-only -fno-signed-zeros -fno-trapping-math so the
// loop vectorizes; it only sees finite inputs and finite sentinels.
#include "sweep_kernel.hpp"

#include <algorithm>
#include <cmath>

namespace glds::detail {

double screen_cells(double* __restrict f, const double* __restrict bounds, const double* __restrict suffix,
                    int last, double inv_q, double inv_two_q)
{
    // |a * inv_q - a/q| stays far below this for values in (0,1).
    constexpr double margin = 1e-15;
    double fmin = kScreenOutside;
    for (int i = 0; i <= last; ++i) {
        const double a = 2.0 * static_cast<double>(i) + 1.0;
        const double v = a * inv_q;
        const double gap = std::min(v - bounds[i], bounds[i + 1] - v);
        const double val = -(a * a) * inv_two_q - 2.0 * suffix[i];
        const double r = gap > margin ? val : kScreenOutside;
        f[i] = std::fabs(gap) <= margin ? kScreenUncertain : r;
        fmin = std::min(fmin, r);
    }
    return fmin;
}

} // namespace glds::detail
