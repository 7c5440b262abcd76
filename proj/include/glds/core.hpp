#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace glds {

/// Raised for malformed input: bad coordinates, unsupported dimensions,
/// inconsistent flags. The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an algorithm reaches a state its preconditions rule out.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A coordinate vector in [0,1)^d.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c) : coords(c) {}

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t k) const { return coords[k]; }
    double& operator[](std::size_t k) { return coords[k]; }

    bool operator==(const Point&) const = default;
};

/// Points in generation order; a prefix of length k is the sequence prefix P'_k.
struct PointSet {
    std::size_t d = 1;
    std::vector<Point> points;

    PointSet() = default;
    explicit PointSet(std::size_t dim) : d(dim) {}
    PointSet(std::size_t dim, std::vector<Point> pts) : d(dim), points(std::move(pts)) {}

    static PointSet from_1d(const std::vector<double>& xs);

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    const Point& operator[](std::size_t i) const { return points[i]; }

    PointSet prefix(std::size_t k) const;
    /// Coordinates of a 1-D set; throws ValidationError when d != 1.
    std::vector<double> coords_1d() const;
    /// Row-major flat copy: coordinate k of point i at [i*d + k].
    std::vector<double> flat() const;

    bool operator==(const PointSet&) const = default;
};

/// An element (2i+1)/(2(n+1)) of the candidate set for step n, kept as an
/// exact integer pair.
class CandidateRational {
public:
    /// Throws ValidationError unless numerator is odd, denominator is even
    /// and positive, and numerator < denominator.
    CandidateRational(std::int64_t numerator, std::int64_t denominator);

    /// The i-th candidate when n points are already placed.
    static CandidateRational of(std::int64_t i, std::int64_t n);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }
    /// Position i inside {0..n}.
    std::int64_t index() const { return (num_ - 1) / 2; }
    /// Number of points present when this candidate was drawn.
    std::int64_t step() const { return den_ / 2 - 1; }

    /// Correctly rounded numerator/denominator.
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool operator==(const CandidateRational&) const = default;

private:
    std::int64_t num_;
    std::int64_t den_;
};

double candidate_value(const CandidateRational& c);

/// Three-way exact comparison of the rational num/den with the exact binary
/// value of x. den > 0; both num and den must be exactly representable as double.
int compare_exact(std::int64_t num, std::int64_t den, double x);

/// Three-way exact comparison of two rationals.
int compare_exact(std::int64_t an, std::int64_t ad, std::int64_t bn, std::int64_t bd);

struct Violation {
    std::size_t point = 0;
    /// Coordinate index, or npos for a dimension mismatch.
    std::size_t coord = 0;
    std::string message;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationResult validate_point_set(const PointSet& ps);

/// Throws ValidationError carrying the first few violations.
void require_valid(const PointSet& ps, const std::string& what = "point set");

// Point-set text format: one point per line, coordinates separated by single
// spaces, '#' comment lines ignored, 17 significant digits on output.
PointSet read_point_set(std::istream& in);
PointSet read_point_set_file(const std::string& path);
void write_point_set(std::ostream& out, const PointSet& ps, const std::vector<std::string>& comments = {});
void write_point_set_file(const std::string& path, const PointSet& ps,
                          const std::vector<std::string>& comments = {});

/// %.17g rendering used by every text output in the project.
std::string format_real(double v);

} // namespace glds
