#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "glds/core.hpp"

namespace glds {

/// x_n = frac(n * alpha) for n = start_index, start_index + 1, ...
struct KroneckerSpec {
    double alpha = 1.6180339887498949; ///< golden ratio
    std::uint64_t start_index = 1; ///< 0 puts the origin first
};

/// frac(n * alpha) with the product carried to twice working precision,
/// clamped below 1.
double kronecker_point(std::uint64_t n, double alpha);

PointSet kronecker(const KroneckerSpec& spec, std::size_t count);

/// Base and per-digit-position permutations of the generalized van der
/// Corput sequence. Digit position j uses permutations[j mod size]; an empty
/// list means the identity everywhere.
class VdcSpec {
public:
    VdcSpec() : VdcSpec(2) {}
    explicit VdcSpec(unsigned base, std::vector<std::vector<unsigned>> permutations = {});

    unsigned base() const { return base_; }
    const std::vector<std::vector<unsigned>>& permutations() const { return perms_; }
    unsigned digit_image(std::size_t position, unsigned digit) const;

private:
    unsigned base_;
    std::vector<std::vector<unsigned>> perms_;
};

/// x_i = sum_j pi_j(a_j) b^(-j-1) over the base-b digits a_j of i.
double radical_inverse(std::uint64_t i, const VdcSpec& spec);

/// Points i = first, ..., first + count - 1 (first defaults to 1).
PointSet van_der_corput(const VdcSpec& spec, std::size_t count, std::uint64_t first = 1);

/// One permutation per line as space-separated images of 0..b-1; blank and
/// '#' lines are skipped.
std::vector<std::vector<unsigned>> read_permutations(std::istream& in);
std::vector<std::vector<unsigned>> read_permutations_file(const std::string& path);

struct SobolSpec {
    std::size_t d = 1;
    bool skip_zero = true; ///< start at index 1 instead of the origin
};

/// Binary Sobol points from 32-bit direction numbers: dimension 1 is the
/// base-2 van der Corput sequence, dimension 2 uses x + 1 with m = (1),
/// dimension 3 uses x^2 + x + 1 with m = (1, 3). Point j of the output has
/// Sobol index offset + j (+1 when skip_zero).
PointSet sobol(const SobolSpec& spec, std::size_t count, std::uint64_t offset = 0);

/// The direction integers m_1..m_32 of one Sobol dimension (1-based).
std::vector<std::uint32_t> sobol_direction_integers(std::size_t dimension);

} // namespace glds
