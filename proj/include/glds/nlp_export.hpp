#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "glds/core.hpp"

namespace glds {

enum class VarKind { continuous, fixed, binary };

struct Variable {
    std::string name;
    VarKind kind = VarKind::continuous;
    double lower = 0.0;
    double upper = 1.0;

    bool operator==(const Variable&) const = default;
};

/// coef * a * b, coef * a, or a bare constant when a (and b) are npos.
struct Term {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    double coef = 0.0;
    std::size_t a = npos;
    std::size_t b = npos;

    bool operator==(const Term&) const = default;
};

struct Expression {
    std::vector<Term> terms;

    double evaluate(const std::vector<double>& values) const;
    bool operator==(const Expression&) const = default;
};

enum class Sense { le, ge, eq };

struct Constraint {
    std::string name;
    Expression lhs;
    Sense sense = Sense::eq;
    double rhs = 0.0;

    bool operator==(const Constraint&) const = default;
};

/// Next-point problem in d = 2 as a mixed-integer program with bilinear
/// terms. Variables: y1 y2 v1 v2 v3, t_j, u_j, the fixed coordinates x_1..x_2n
/// and the binaries r_j, s_j. Constraints in the order fixing (x), max
/// indicators, max linking, then the products v1, v2, v3.
struct NlpModel {
    std::size_t n = 0;
    std::vector<Variable> variables;
    Expression objective; ///< minimized
    std::vector<Constraint> constraints;

    std::size_t index_of(const std::string& name) const;
    std::size_t count(VarKind kind) const;
    bool operator==(const NlpModel&) const = default;
};

NlpModel build_model(const PointSet& ps);

/// Text form: header comments, the objective line, `subject to`, one
/// `name: expr op rhs` line per constraint, `bounds`, `fixed:` and
/// `binaries:` lists, `end`. Deterministic and byte-stable.
void write_model(std::ostream& out, const NlpModel& m);
void export_model(const NlpModel& m, const std::string& path);
NlpModel parse_model(std::istream& in);
NlpModel read_model_file(const std::string& path);

struct SolutionReport {
    double objective = 0.0;
    double max_violation = 0.0;
    std::string worst; ///< constraint or variable with the largest violation
};

/// Evaluates every constraint, bound and integrality requirement. Missing
/// variables are rejected.
SolutionReport check_solution(const NlpModel& m, const std::map<std::string, double>& assignment);

/// The feasible assignment for the point (y1, y2): binaries follow the true
/// max pattern and every auxiliary variable takes its defining value. The
/// fixed coordinates are read back from the fixing constraints.
std::map<std::string, double> consistent_assignment(const NlpModel& m, double y1, double y2);

/// Objective minus functional_nd at a consistent assignment. The model's
/// objective is F_2 term for term, so this is zero.
double objective_offset(const NlpModel& m);

} // namespace glds
