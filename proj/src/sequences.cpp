#include "glds/sequences.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace glds {

namespace {

constexpr int kSobolBits = 32;

} // namespace

double kronecker_point(std::uint64_t n, double alpha)
{
    if (n >= (std::uint64_t{1} << 53))
        throw ValidationError("Kronecker index too large for exact conversion");
    const double nd = static_cast<double>(n);
    const double hi = nd * alpha;
    const double lo = std::fma(nd, alpha, -hi);
    double r = (hi - std::floor(hi)) + lo;
    if (r < 0.0)
        r += 1.0;
    if (r >= 1.0)
        r -= 1.0;
    // Rounding may still land on 1 (or a hair below 0 turned into 1).
    if (r >= 1.0)
        r = std::nextafter(1.0, 0.0);
    return r < 0.0 ? 0.0 : r;
}

PointSet kronecker(const KroneckerSpec& spec, std::size_t count)
{
    if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha))
        throw ValidationError("Kronecker alpha must be positive and finite");
    PointSet ps(1);
    ps.points.reserve(count);
    for (std::size_t j = 0; j < count; ++j)
        ps.points.push_back(Point{kronecker_point(spec.start_index + j, spec.alpha)});
    return ps;
}

VdcSpec::VdcSpec(unsigned base, std::vector<std::vector<unsigned>> permutations)
    : base_(base), perms_(std::move(permutations))
{
    if (base_ < 2)
        throw ValidationError("van der Corput base must be at least 2");
    for (std::size_t j = 0; j < perms_.size(); ++j) {
        const auto& p = perms_[j];
        if (p.size() != base_)
            throw ValidationError("permutation " + std::to_string(j) + " has " + std::to_string(p.size()) +
                                  " entries, base is " + std::to_string(base_));
        std::vector<bool> seen(base_, false);
        for (unsigned v : p) {
            if (v >= base_ || seen[v])
                throw ValidationError("permutation " + std::to_string(j) + " is not a bijection on {0..b-1}");
            seen[v] = true;
        }
    }
}

unsigned VdcSpec::digit_image(std::size_t position, unsigned digit) const
{
    if (perms_.empty())
        return digit;
    return perms_[position % perms_.size()][digit];
}

double radical_inverse(std::uint64_t i, const VdcSpec& spec)
{
    const std::uint64_t b = spec.base();
    std::vector<unsigned> digits;
    for (std::uint64_t r = i; r > 0; r /= b)
        digits.push_back(static_cast<unsigned>(r % b));
    // Horner from the deepest digit; exact whenever b is a power of two.
    const double bd = static_cast<double>(b);
    double v = 0.0;
    for (std::size_t j = digits.size(); j-- > 0;)
        v = (static_cast<double>(spec.digit_image(j, digits[j])) + v) / bd;
    return v >= 1.0 ? std::nextafter(1.0, 0.0) : v;
}

PointSet van_der_corput(const VdcSpec& spec, std::size_t count, std::uint64_t first)
{
    PointSet ps(1);
    ps.points.reserve(count);
    for (std::size_t j = 0; j < count; ++j)
        ps.points.push_back(Point{radical_inverse(first + j, spec)});
    return ps;
}

std::vector<std::vector<unsigned>> read_permutations(std::istream& in)
{
    std::vector<std::vector<unsigned>> perms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        std::vector<unsigned> p;
        long long v;
        while (ls >> v) {
            if (v < 0)
                throw ValidationError("permutation line " + std::to_string(lineno) + ": negative entry");
            p.push_back(static_cast<unsigned>(v));
        }
        if (!ls.eof())
            throw ValidationError("permutation line " + std::to_string(lineno) + ": not an integer list");
        perms.push_back(std::move(p));
    }
    return perms;
}

std::vector<std::vector<unsigned>> read_permutations_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open permutation file '" + path + "'");
    return read_permutations(in);
}

std::vector<std::uint32_t> sobol_direction_integers(std::size_t dimension)
{
    std::vector<std::uint32_t> m(kSobolBits);
    switch (dimension) {
    case 1:
        for (auto& v : m)
            v = 1;
        break;
    case 2:
        // x + 1: m_j = 2 m_{j-1} xor m_{j-1}
        m[0] = 1;
        for (int j = 1; j < kSobolBits; ++j)
            m[j] = (m[j - 1] << 1) ^ m[j - 1];
        break;
    case 3:
        // x^2 + x + 1: m_j = 2 m_{j-1} xor 4 m_{j-2} xor m_{j-2}
        m[0] = 1;
        m[1] = 3;
        for (int j = 2; j < kSobolBits; ++j)
            m[j] = (m[j - 1] << 1) ^ (m[j - 2] << 2) ^ m[j - 2];
        break;
    default:
        throw ValidationError("Sobol construction supports d <= 3, got dimension " + std::to_string(dimension));
    }
    return m;
}

PointSet sobol(const SobolSpec& spec, std::size_t count, std::uint64_t offset)
{
    if (spec.d < 1 || spec.d > 3)
        throw ValidationError("Sobol construction supports d in {1,2,3}, got d=" + std::to_string(spec.d));
    const std::uint64_t first = offset + (spec.skip_zero ? 1 : 0);
    if (first + count > (std::uint64_t{1} << kSobolBits))
        throw ValidationError("Sobol index range exceeds 2^32");

    std::vector<std::vector<std::uint32_t>> v(spec.d, std::vector<std::uint32_t>(kSobolBits));
    for (std::size_t k = 0; k < spec.d; ++k) {
        const auto m = sobol_direction_integers(k + 1);
        for (int j = 0; j < kSobolBits; ++j)
            v[k][j] = m[j] << (kSobolBits - 1 - j);
    }
    PointSet ps(spec.d);
    ps.points.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        const std::uint64_t i = first + t;
        Point p;
        p.coords.resize(spec.d);
        for (std::size_t k = 0; k < spec.d; ++k) {
            std::uint32_t x = 0;
            for (int j = 0; j < kSobolBits; ++j)
                if ((i >> j) & 1u)
                    x ^= v[k][j];
            p[k] = std::ldexp(static_cast<double>(x), -kSobolBits);
        }
        ps.points.push_back(std::move(p));
    }
    return ps;
}

} // namespace glds
