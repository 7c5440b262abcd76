#include "glds/nlp_export.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace glds {

namespace {

const char* const kHeader[] = {
    "# Next-point placement for the L2 star discrepancy in d = 2 as a bilinear",
    "# mixed-integer program. The point set is fixed through the x variables;",
    "# y = (y1, y2) is the point to place.",
    "#",
    "# Point j is fixed at (x_{2j-1}, x_{2j}). The binaries select the max:",
    "#   t_j = (1 - r_j) y1 + r_j x_{2j-1} = max(x_{2j-1}, y1)",
    "#   u_j = (1 - s_j) y2 + s_j x_{2j}   = max(x_{2j}, y2)",
    "# and the objective is the next-point functional",
    "#   min -(n+1)/2 v3 + (1-y1)(1-y2) + 2 sum_j (1-t_j)(1-u_j)",
    "# with v3 = (1 - y1^2)(1 - y2^2).",
    "# Products are expanded, so the objective carries the constant 1 + 2n.",
};

std::string sense_token(Sense s)
{
    switch (s) {
    case Sense::le:
        return "<=";
    case Sense::ge:
        return ">=";
    case Sense::eq:
        return "=";
    }
    throw InternalError("unknown constraint sense");
}

void write_expression(std::ostream& out, const Expression& e, const NlpModel& m)
{
    if (e.terms.empty()) {
        out << "0";
        return;
    }
    bool first = true;
    for (const Term& t : e.terms) {
        if (first)
            out << format_real(t.coef);
        else
            out << (std::signbit(t.coef) ? " - " : " + ") << format_real(std::fabs(t.coef));
        if (t.a != Term::npos)
            out << ' ' << m.variables[t.a].name;
        if (t.b != Term::npos)
            out << " * " << m.variables[t.b].name;
        first = false;
    }
}

class ModelBuilder {
public:
    explicit ModelBuilder(NlpModel& m) : m_(m) {}

    std::size_t add_variable(const std::string& name, VarKind kind)
    {
        m_.variables.push_back({name, kind, 0.0, 1.0});
        return m_.variables.size() - 1;
    }

    static Term constant(double c) { return {c, Term::npos, Term::npos}; }
    static Term lin(double c, std::size_t a) { return {c, a, Term::npos}; }
    static Term bil(double c, std::size_t a, std::size_t b) { return {c, a, b}; }

    void add_constraint(std::string name, std::vector<Term> terms, Sense s, double rhs)
    {
        m_.constraints.push_back({std::move(name), Expression{std::move(terms)}, s, rhs});
    }

private:
    NlpModel& m_;
};

double parse_number(const std::string& token, std::size_t lineno)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size())
        throw ValidationError("model line " + std::to_string(lineno) + ": expected a number, got '" + token + "'");
    return v;
}

std::vector<std::string> split(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

} // namespace

double Expression::evaluate(const std::vector<double>& values) const
{
    double sum = 0.0, comp = 0.0;
    for (const Term& t : terms) {
        double v = t.coef;
        if (t.a != Term::npos)
            v *= values[t.a];
        if (t.b != Term::npos)
            v *= values[t.b];
        // Neumaier step
        const double s = sum + v;
        comp += std::fabs(sum) >= std::fabs(v) ? (sum - s) + v : (v - s) + sum;
        sum = s;
    }
    return sum + comp;
}

std::size_t NlpModel::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name)
            return i;
    return Term::npos;
}

std::size_t NlpModel::count(VarKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(variables.begin(), variables.end(), [kind](const Variable& v) { return v.kind == kind; }));
}

NlpModel build_model(const PointSet& ps)
{
    if (ps.d != 2)
        throw ValidationError("the NLP model is formulated for d=2 only, got d=" + std::to_string(ps.d));
    require_valid(ps, "NLP point set");
    NlpModel m;
    m.n = ps.size();
    const std::size_t n = m.n;
    ModelBuilder b(m);
    using MB = ModelBuilder;

    const std::size_t y1 = b.add_variable("y1", VarKind::continuous);
    const std::size_t y2 = b.add_variable("y2", VarKind::continuous);
    const std::size_t v1 = b.add_variable("v1", VarKind::continuous);
    const std::size_t v2 = b.add_variable("v2", VarKind::continuous);
    const std::size_t v3 = b.add_variable("v3", VarKind::continuous);
    std::vector<std::size_t> t(n), u(n), x(2 * n), r(n), s(n);
    for (std::size_t j = 0; j < n; ++j)
        t[j] = b.add_variable("t" + std::to_string(j + 1), VarKind::continuous);
    for (std::size_t j = 0; j < n; ++j)
        u[j] = b.add_variable("u" + std::to_string(j + 1), VarKind::continuous);
    for (std::size_t k = 0; k < 2 * n; ++k)
        x[k] = b.add_variable("x" + std::to_string(k + 1), VarKind::fixed);
    for (std::size_t j = 0; j < n; ++j)
        r[j] = b.add_variable("r" + std::to_string(j + 1), VarKind::binary);
    for (std::size_t j = 0; j < n; ++j)
        s[j] = b.add_variable("s" + std::to_string(j + 1), VarKind::binary);

    // -(n+1)/2 v3 + (1 - y1)(1 - y2) + 2 sum_j (1 - t_j)(1 - u_j), expanded.
    auto& obj = m.objective.terms;
    obj.push_back(MB::lin(-0.5 * static_cast<double>(n + 1), v3));
    obj.push_back(MB::constant(1.0 + 2.0 * static_cast<double>(n)));
    obj.push_back(MB::lin(-1.0, y1));
    obj.push_back(MB::lin(-1.0, y2));
    obj.push_back(MB::bil(1.0, y1, y2));
    for (std::size_t j = 0; j < n; ++j) {
        obj.push_back(MB::lin(-2.0, t[j]));
        obj.push_back(MB::lin(-2.0, u[j]));
        obj.push_back(MB::bil(2.0, t[j], u[j]));
    }

    const auto idx = [](const char* tag, std::size_t j) { return std::string(tag) + "_" + std::to_string(j + 1); };
    for (std::size_t j = 0; j < n; ++j)
        b.add_constraint(idx("fix_x", 2 * j), {MB::lin(1.0, x[2 * j])}, Sense::eq, ps[j][0]);
    for (std::size_t j = 0; j < n; ++j)
        b.add_constraint(idx("fix_x", 2 * j + 1), {MB::lin(1.0, x[2 * j + 1])}, Sense::eq, ps[j][1]);
    // r_j - 1 <= x_{2j-1} - y1 and r_j >= x_{2j-1} - y1, then the same for s_j.
    for (std::size_t j = 0; j < n; ++j)
        b.add_constraint(idx("rlo", j), {MB::lin(1.0, r[j]), MB::lin(-1.0, x[2 * j]), MB::lin(1.0, y1)}, Sense::le,
                         1.0);
    for (std::size_t j = 0; j < n; ++j)
        b.add_constraint(idx("rhi", j), {MB::lin(1.0, r[j]), MB::lin(-1.0, x[2 * j]), MB::lin(1.0, y1)}, Sense::ge,
                         0.0);
    for (std::size_t j = 0; j < n; ++j)
        b.add_constraint(idx("slo", j), {MB::lin(1.0, s[j]), MB::lin(-1.0, x[2 * j + 1]), MB::lin(1.0, y2)},
                         Sense::le, 1.0);
    for (std::size_t j = 0; j < n; ++j)
        b.add_constraint(idx("shi", j), {MB::lin(1.0, s[j]), MB::lin(-1.0, x[2 * j + 1]), MB::lin(1.0, y2)},
                         Sense::ge, 0.0);
    // t_j = (1 - r_j) y1 + r_j x_{2j-1}
    for (std::size_t j = 0; j < n; ++j)
        b.add_constraint(idx("tmax", j),
                         {MB::lin(1.0, t[j]), MB::lin(-1.0, y1), MB::bil(1.0, r[j], y1), MB::bil(-1.0, r[j], x[2 * j])},
                         Sense::eq, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        b.add_constraint(
            idx("umax", j),
            {MB::lin(1.0, u[j]), MB::lin(-1.0, y2), MB::bil(1.0, s[j], y2), MB::bil(-1.0, s[j], x[2 * j + 1])},
            Sense::eq, 0.0);
    b.add_constraint("v1def", {MB::lin(1.0, v1), MB::bil(-1.0, y1, y1)}, Sense::eq, 0.0);
    b.add_constraint("v2def", {MB::lin(1.0, v2), MB::bil(-1.0, y2, y2)}, Sense::eq, 0.0);
    // v3 = (1 - v1)(1 - v2)
    b.add_constraint("v3def", {MB::lin(1.0, v3), MB::lin(1.0, v1), MB::lin(1.0, v2), MB::bil(-1.0, v1, v2)},
                     Sense::eq, 1.0);
    return m;
}

void write_model(std::ostream& out, const NlpModel& m)
{
    for (const char* line : kHeader)
        out << line << '\n';
    out << "# n = " << m.n << '\n';
    out << "minimize: ";
    write_expression(out, m.objective, m);
    out << '\n';
    out << "subject to\n";
    for (const auto& c : m.constraints) {
        out << c.name << ": ";
        write_expression(out, c.lhs, m);
        out << ' ' << sense_token(c.sense) << ' ' << format_real(c.rhs) << '\n';
    }
    out << "bounds\n";
    for (const auto& v : m.variables)
        if (v.kind != VarKind::binary)
            out << format_real(v.lower) << " <= " << v.name << " <= " << format_real(v.upper) << '\n';
    out << "fixed:";
    for (const auto& v : m.variables)
        if (v.kind == VarKind::fixed)
            out << ' ' << v.name;
    out << '\n';
    out << "binaries:";
    for (const auto& v : m.variables)
        if (v.kind == VarKind::binary)
            out << ' ' << v.name;
    out << '\n';
    out << "end\n";
}

void export_model(const NlpModel& m, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot open model file '" + path + "' for writing");
    write_model(out, m);
    out.flush();
    if (!out)
        throw ValidationError("failed writing model file '" + path + "'");
}

NlpModel parse_model(std::istream& in)
{
    enum class Section { head, constraints, bounds, done };
    Section section = Section::head;
    NlpModel m;
    std::string objective_text;
    bool have_objective = false;
    std::vector<std::string> fixed_names, binary_names;

    std::string line;
    std::size_t lineno = 0;
    std::vector<std::pair<std::string, std::size_t>> constraint_lines;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        if (section == Section::done)
            throw ValidationError("model line " + std::to_string(lineno) + ": content after 'end'");
        if (line.rfind("minimize:", 0) == 0) {
            if (have_objective)
                throw ValidationError("model line " + std::to_string(lineno) + ": second objective");
            objective_text = line.substr(9);
            have_objective = true;
        } else if (line == "subject to") {
            section = Section::constraints;
        } else if (line == "bounds") {
            section = Section::bounds;
        } else if (line.rfind("fixed:", 0) == 0) {
            fixed_names = split(line.substr(6));
        } else if (line.rfind("binaries:", 0) == 0) {
            binary_names = split(line.substr(9));
        } else if (line == "end") {
            section = Section::done;
        } else if (section == Section::constraints) {
            constraint_lines.emplace_back(line, lineno);
        } else if (section == Section::bounds) {
            const auto tok = split(line);
            if (tok.size() != 5 || tok[1] != "<=" || tok[3] != "<=")
                throw ValidationError("model line " + std::to_string(lineno) + ": malformed bound");
            m.variables.push_back({tok[2], VarKind::continuous, parse_number(tok[0], lineno),
                                   parse_number(tok[4], lineno)});
        } else {
            throw ValidationError("model line " + std::to_string(lineno) + ": unexpected content");
        }
    }
    if (!have_objective)
        throw ValidationError("model has no objective line");
    if (section != Section::done)
        throw ValidationError("model is missing its 'end' line");
    for (const auto& name : fixed_names) {
        const std::size_t i = m.index_of(name);
        if (i == Term::npos)
            throw ValidationError("fixed variable '" + name + "' has no bound line");
        m.variables[i].kind = VarKind::fixed;
    }
    for (const auto& name : binary_names)
        m.variables.push_back({name, VarKind::binary, 0.0, 1.0});

    auto parse_expression = [&](const std::vector<std::string>& tok, std::size_t lineno) {
        Expression e;
        std::size_t p = 0;
        double sign = 1.0;
        auto var = [&](const std::string& name) {
            const std::size_t i = m.index_of(name);
            if (i == Term::npos)
                throw ValidationError("model line " + std::to_string(lineno) + ": unknown variable '" + name + "'");
            return i;
        };
        while (p < tok.size()) {
            Term t;
            t.coef = sign * parse_number(tok[p++], lineno);
            if (p < tok.size() && tok[p] != "+" && tok[p] != "-") {
                t.a = var(tok[p++]);
                if (p < tok.size() && tok[p] == "*") {
                    if (p + 1 >= tok.size())
                        throw ValidationError("model line " + std::to_string(lineno) + ": dangling '*'");
                    t.b = var(tok[p + 1]);
                    p += 2;
                }
            }
            e.terms.push_back(t);
            if (p < tok.size()) {
                if (tok[p] != "+" && tok[p] != "-")
                    throw ValidationError("model line " + std::to_string(lineno) + ": expected '+' or '-'");
                sign = tok[p] == "+" ? 1.0 : -1.0;
                if (++p == tok.size())
                    throw ValidationError("model line " + std::to_string(lineno) + ": dangling operator");
            }
        }
        return e;
    };

    m.objective = parse_expression(split(objective_text), 0);
    for (const auto& [text, ln] : constraint_lines) {
        const auto colon = text.find(": ");
        if (colon == std::string::npos)
            throw ValidationError("model line " + std::to_string(ln) + ": constraint without a name");
        auto tok = split(text.substr(colon + 2));
        if (tok.size() < 3)
            throw ValidationError("model line " + std::to_string(ln) + ": constraint too short");
        Constraint c;
        c.name = text.substr(0, colon);
        const std::string& op = tok[tok.size() - 2];
        if (op == "<=")
            c.sense = Sense::le;
        else if (op == ">=")
            c.sense = Sense::ge;
        else if (op == "=")
            c.sense = Sense::eq;
        else
            throw ValidationError("model line " + std::to_string(ln) + ": unknown relation '" + op + "'");
        c.rhs = parse_number(tok.back(), ln);
        tok.resize(tok.size() - 2);
        c.lhs = parse_expression(tok, ln);
        m.constraints.push_back(std::move(c));
    }
    m.n = m.count(VarKind::binary) / 2;
    return m;
}

NlpModel read_model_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open model file '" + path + "'");
    return parse_model(in);
}

SolutionReport check_solution(const NlpModel& m, const std::map<std::string, double>& assignment)
{
    std::vector<double> values(m.variables.size());
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
        const auto it = assignment.find(m.variables[i].name);
        if (it == assignment.end())
            throw ValidationError("assignment is missing variable '" + m.variables[i].name + "'");
        values[i] = it->second;
    }
    SolutionReport rep;
    rep.objective = m.objective.evaluate(values);
    auto note = [&rep](double violation, const std::string& what) {
        if (violation > rep.max_violation) {
            rep.max_violation = violation;
            rep.worst = what;
        }
    };
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
        const auto& v = m.variables[i];
        note(std::max({0.0, v.lower - values[i], values[i] - v.upper}), v.name + " bounds");
        if (v.kind == VarKind::binary)
            note(std::min(std::fabs(values[i]), std::fabs(values[i] - 1.0)), v.name + " integrality");
    }
    for (const auto& c : m.constraints) {
        const double lhs = c.lhs.evaluate(values);
        double viol = 0.0;
        switch (c.sense) {
        case Sense::le:
            viol = std::max(0.0, lhs - c.rhs);
            break;
        case Sense::ge:
            viol = std::max(0.0, c.rhs - lhs);
            break;
        case Sense::eq:
            viol = std::fabs(lhs - c.rhs);
            break;
        }
        note(viol, c.name);
    }
    return rep;
}

std::map<std::string, double> consistent_assignment(const NlpModel& m, double y1, double y2)
{
    std::map<std::string, double> a;
    a["y1"] = y1;
    a["y2"] = y2;
    a["v1"] = y1 * y1;
    a["v2"] = y2 * y2;
    a["v3"] = (1.0 - a["v1"]) * (1.0 - a["v2"]);
    std::vector<double> x(2 * m.n);
    for (const auto& c : m.constraints) {
        if (c.name.rfind("fix_x_", 0) != 0)
            continue;
        const std::size_t k = std::stoul(c.name.substr(6)) - 1;
        if (k >= x.size())
            throw ValidationError("fixing constraint '" + c.name + "' out of range");
        x[k] = c.rhs;
    }
    for (std::size_t k = 0; k < x.size(); ++k)
        a["x" + std::to_string(k + 1)] = x[k];
    for (std::size_t j = 0; j < m.n; ++j) {
        const std::string id = std::to_string(j + 1);
        const double xa = x[2 * j], xb = x[2 * j + 1];
        a["r" + id] = xa > y1 ? 1.0 : 0.0;
        a["s" + id] = xb > y2 ? 1.0 : 0.0;
        a["t" + id] = std::max(xa, y1);
        a["u" + id] = std::max(xb, y2);
    }
    return a;
}

double objective_offset(const NlpModel&) { return 0.0; }

} // namespace glds
