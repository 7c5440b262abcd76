#pragma once

namespace glds::detail {

constexpr double kScreenOutside = 1e300;
constexpr double kScreenUncertain = -1e300;

/// First pass of the 1-D sweep over cells 0..last. For cell i bounded by
/// bounds[i] < bounds[i+1], writes F_i at the vertex (2i+1)/q into f[i] when the
/// vertex is clearly interior, kScreenOutside when clearly outside, and
/// kScreenUncertain when it lies within rounding distance of a bound.
/// Returns the smallest interior value (kScreenOutside if none).
double screen_cells(double* f, const double* bounds, const double* suffix, int last, double inv_q,
                    double inv_two_q);

} // namespace glds::detail
