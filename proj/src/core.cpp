#include "glds/core.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace glds {

PointSet PointSet::from_1d(const std::vector<double>& xs)
{
    PointSet ps(1);
    ps.points.reserve(xs.size());
    for (double x : xs)
        ps.points.push_back(Point{x});
    return ps;
}

PointSet PointSet::prefix(std::size_t k) const
{
    if (k > points.size())
        throw ValidationError("prefix length " + std::to_string(k) + " exceeds set size " +
                              std::to_string(points.size()));
    return PointSet(d, std::vector<Point>(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(k)));
}

std::vector<double> PointSet::coords_1d() const
{
    if (d != 1)
        throw ValidationError("expected a 1-D point set, got d=" + std::to_string(d));
    std::vector<double> xs;
    xs.reserve(points.size());
    for (const auto& p : points)
        xs.push_back(p[0]);
    return xs;
}

std::vector<double> PointSet::flat() const
{
    std::vector<double> out;
    out.reserve(points.size() * d);
    for (const auto& p : points)
        out.insert(out.end(), p.coords.begin(), p.coords.end());
    return out;
}

CandidateRational::CandidateRational(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator)
{
    if (den_ <= 0 || den_ % 2 != 0)
        throw ValidationError("candidate denominator must be a positive even integer, got " +
                              std::to_string(den_));
    if (num_ < 0 || num_ % 2 == 0)
        throw ValidationError("candidate numerator must be odd and non-negative, got " +
                              std::to_string(num_));
    if (num_ >= den_)
        throw ValidationError("candidate value must lie in (0,1)");
}

CandidateRational CandidateRational::of(std::int64_t i, std::int64_t n)
{
    if (n < 0 || i < 0 || i > n)
        throw ValidationError("candidate index out of range");
    return CandidateRational(2 * i + 1, 2 * (n + 1));
}

double candidate_value(const CandidateRational& c) { return c.value(); }

int compare_exact(std::int64_t num, std::int64_t den, double x)
{
    // sign(num/den - x) == sign(num - x*den); x*den == prod + err exactly.
    const double a = static_cast<double>(num);
    const double dd = static_cast<double>(den);
    if (a == 0.0)
        return x > 0.0 ? -1 : (x < 0.0 ? 1 : 0);
    const double prod = x * dd;
    const double err = std::fma(x, dd, -prod);
    if (prod >= 2.0 * a || prod <= 0.5 * a)
        return a > prod ? 1 : -1;
    const double diff = a - prod; // exact (Sterbenz)
    if (diff > err)
        return 1;
    if (diff < err)
        return -1;
    return 0;
}

int compare_exact(std::int64_t an, std::int64_t ad, std::int64_t bn, std::int64_t bd)
{
    const __int128 lhs = static_cast<__int128>(an) * bd;
    const __int128 rhs = static_cast<__int128>(bn) * ad;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

ValidationResult validate_point_set(const PointSet& ps)
{
    ValidationResult res;
    if (ps.d < 1)
        res.violations.push_back({0, Violation::npos, "dimension must be at least 1"});
    for (std::size_t i = 0; i < ps.points.size(); ++i) {
        const auto& p = ps.points[i];
        if (p.dim() != ps.d) {
            res.violations.push_back({i, Violation::npos,
                                      "mixed dimensions: point has " + std::to_string(p.dim()) +
                                          " coordinates, set has d=" + std::to_string(ps.d)});
            continue;
        }
        for (std::size_t k = 0; k < p.dim(); ++k) {
            const double c = p[k];
            if (!(c >= 0.0 && c < 1.0))
                res.violations.push_back({i, k, "coordinate " + format_real(c) + " outside [0,1)"});
        }
    }
    return res;
}

void require_valid(const PointSet& ps, const std::string& what)
{
    const auto res = validate_point_set(ps);
    if (res.ok())
        return;
    std::ostringstream msg;
    msg << what << " is invalid:";
    std::size_t shown = 0;
    for (const auto& v : res.violations) {
        if (shown++ == 3) {
            msg << " (+" << res.violations.size() - 3 << " more)";
            break;
        }
        msg << " [point " << v.point;
        if (v.coord != Violation::npos)
            msg << ", coord " << v.coord;
        msg << ": " << v.message << "]";
    }
    throw ValidationError(msg.str());
}

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

PointSet read_point_set(std::istream& in)
{
    PointSet ps;
    bool have_dim = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::vector<double> coords;
        std::string tok;
        while (ls >> tok) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0')
                throw ValidationError("line " + std::to_string(lineno) + ": not a decimal literal: '" + tok + "'");
            coords.push_back(v);
        }
        if (coords.empty())
            continue;
        if (!have_dim) {
            ps.d = coords.size();
            have_dim = true;
        }
        ps.points.emplace_back(std::move(coords));
    }
    return ps;
}

PointSet read_point_set_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open point file '" + path + "'");
    return read_point_set(in);
}

void write_point_set(std::ostream& out, const PointSet& ps, const std::vector<std::string>& comments)
{
    for (const auto& c : comments)
        out << "# " << c << '\n';
    for (const auto& p : ps.points) {
        for (std::size_t k = 0; k < p.dim(); ++k) {
            if (k)
                out << ' ';
            out << format_real(p[k]);
        }
        out << '\n';
    }
}

void write_point_set_file(const std::string& path, const PointSet& ps, const std::vector<std::string>& comments)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write '" + path + "'");
    write_point_set(out, ps, comments);
    if (!out)
        throw ValidationError("write failed for '" + path + "'");
}

} // namespace glds
