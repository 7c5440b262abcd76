#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace glds {

/// Error-free a + b = s + e.
inline void two_sum(double a, double b, double& s, double& e)
{
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

/// Unevaluated sum hi + lo carrying roughly 106 bits. Only the handful of
/// operations the greedy sweep and its oracle need.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    DoubleDouble() = default;
    DoubleDouble(double h) : hi(h) {}
    DoubleDouble(double h, double l) : hi(h), lo(l) {}

    DoubleDouble& operator+=(double x)
    {
        double s, e;
        two_sum(hi, x, s, e);
        e += lo;
        hi = s + e;
        lo = e - (hi - s);
        return *this;
    }
    DoubleDouble& operator+=(const DoubleDouble& x)
    {
        double s, e;
        two_sum(hi, x.hi, s, e);
        e += lo + x.lo;
        hi = s + e;
        lo = e - (hi - s);
        return *this;
    }
    DoubleDouble operator-() const { return {-hi, -lo}; }
    friend DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) { return a += b; }
    friend DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) { return a += -b; }

    /// Quotient of two exactly representable values.
    static DoubleDouble divide(double num, double den)
    {
        const double q = num / den;
        const double r = std::fma(-q, den, num);
        return {q, r / den};
    }

    /// Product of two exactly representable values.
    static DoubleDouble multiply(double a, double b)
    {
        const double p = a * b;
        return {p, std::fma(a, b, -p)};
    }

    double value() const { return hi + lo; }
};

/// Sum of values in [0,1) to about 1e-22 absolute error.
///
/// Each value is split into a multiple of 2^-40, accumulated exactly as an
/// integer, and a remainder below 2^-41 summed in double.
inline DoubleDouble sum_unit_interval(const double* xs, std::size_t count)
{
    constexpr double shifter = 6144.0; // 1.5 * 2^12: rounds to multiples of 2^-40
    constexpr double scale = 1099511627776.0; // 2^40
    constexpr std::size_t chunk = std::size_t{1} << 20;
    DoubleDouble total;
    for (std::size_t begin = 0; begin < count; begin += chunk) {
        const std::size_t end = std::min(count, begin + chunk);
        std::int64_t ints = 0;
        double rest = 0.0;
        for (std::size_t j = begin; j < end; ++j) {
            const double head = (xs[j] + shifter) - shifter;
            ints += static_cast<std::int64_t>(head * scale);
            rest += xs[j] - head;
        }
        // ints < 2^61: split so both halves convert exactly.
        const auto upper = static_cast<double>(ints >> 30) * 1073741824.0;
        const auto lower = static_cast<double>(ints & ((std::int64_t{1} << 30) - 1));
        total += upper / scale;
        total += lower / scale;
        total += rest;
    }
    return total;
}

/// Neumaier summation.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void add(const CompensatedSum& other)
    {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace glds
