// Command-line front end: sequence generation, discrepancy measurement and
// the experiment drivers. Exit codes: 0 success, 2 invalid input, 1 internal
// failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "glds/core.hpp"
#include "glds/discrepancy.hpp"
#include "glds/functional_nd.hpp"
#include "glds/harness.hpp"
#include "glds/nlp_export.hpp"
#include "glds/sequences.hpp"

namespace {

using namespace glds;

struct SequenceFlags {
    std::string sequence = "kritzinger";
    std::size_t dim = 1;
    std::string init_file;
    std::optional<double> init_value;
    double alpha = KroneckerSpec{}.alpha;
    std::uint64_t start_index = KroneckerSpec{}.start_index;
    unsigned base = 2;
    std::string perm_file;
    bool skip_zero = true;
};

struct OptimizerFlags {
    std::string method = "random";
    std::size_t budget = OptimizerConfig{}.budget;
    std::size_t grid_res = OptimizerConfig{}.grid_resolution;
    std::uint64_t seed = 0;
    std::size_t starts = OptimizerConfig{}.starts;
    std::size_t max_iters = DescentConfig{}.max_iterations;
    double tol = DescentConfig{}.gradient_tolerance;
};

struct MeasureFlags {
    std::string measure = "linf";
    bool exact = false;
    std::size_t sampled = 0;
};

void add_sequence_flags(CLI::App* app, SequenceFlags& f, const std::string& sequence_help)
{
    app->add_option("--sequence", f.sequence, sequence_help)
        ->check(CLI::IsMember({"kritzinger", "kronecker", "vdc", "sobol"}))
        ->capture_default_str();
    app->add_option("-d,--dim", f.dim, "Dimension (kritzinger and sobol: 1-3)")->capture_default_str();
    app->add_option("--init", f.init_file, "Initial point set file for the greedy sequence");
    app->add_option("--init-value", f.init_value, "Single initial point x0 for the 1-D greedy sequence");
    app->add_option("--alpha", f.alpha, "Kronecker multiplier")->capture_default_str();
    app->add_option("--start-index", f.start_index, "Kronecker: first index n (0 starts at the origin)")
        ->capture_default_str();
    app->add_option("--base", f.base, "van der Corput base")->capture_default_str();
    app->add_option("--perm-file", f.perm_file, "van der Corput digit permutations, one per line");
    app->add_option("--skip-zero", f.skip_zero, "Sobol: start at index 1 instead of the origin")
        ->capture_default_str();
}

void add_optimizer_flags(CLI::App* app, OptimizerFlags& f)
{
    app->add_option("--method", f.method, "Next-point heuristic in d >= 2")
        ->check(CLI::IsMember({"random", "grid", "graddesc", "multistart"}))
        ->capture_default_str();
    app->add_option("--budget", f.budget, "Function evaluations per point")->capture_default_str();
    app->add_option("--grid-res", f.grid_res, "Lattice points per axis (grid search, descent seeding)")
        ->capture_default_str();
    app->add_option("--seed", f.seed, "Seed for every random draw")->capture_default_str();
    app->add_option("--starts", f.starts, "Descent starts")->capture_default_str();
    app->add_option("--max-iters", f.max_iters, "Descent iterations per start")->capture_default_str();
    app->add_option("--tol", f.tol, "Descent stop threshold on the projected gradient")->capture_default_str();
}

void add_measure_flags(CLI::App* app, MeasureFlags& f)
{
    app->add_option("--measure", f.measure, "linf (star discrepancy) or l2 (squared L2 star discrepancy)")
        ->check(CLI::IsMember({"linf", "l2"}))
        ->capture_default_str();
    auto* exact = app->add_flag("--exact", f.exact, "Exact L-infinity value (default)");
    auto* sampled = app->add_option("--sampled", f.sampled, "Lower bound from an (m+1)^d lattice");
    exact->excludes(sampled);
}

OptimizerConfig to_config(const OptimizerFlags& f)
{
    OptimizerConfig cfg;
    cfg.method = parse_method(f.method);
    cfg.budget = f.budget;
    cfg.grid_resolution = f.grid_res;
    cfg.seed = f.seed;
    cfg.starts = f.starts;
    cfg.descent.max_iterations = f.max_iters;
    cfg.descent.gradient_tolerance = f.tol;
    return cfg;
}

MeasureSpec to_measure(const MeasureFlags& f)
{
    MeasureSpec ms;
    ms.kind = parse_measure(f.measure);
    ms.sampled = f.sampled;
    if (f.sampled == 1)
        throw ValidationError("--sampled needs a resolution of at least 2");
    if (ms.kind == Measure::l2 && f.sampled)
        throw ValidationError("--sampled applies to the linf measure only");
    return ms;
}

SequenceSpec to_spec(const SequenceFlags& f, const OptimizerFlags& o)
{
    SequenceSpec spec;
    spec.kind = parse_sequence_kind(f.sequence);
    spec.d = f.dim;
    if (!f.init_file.empty() && f.init_value)
        throw ValidationError("--init and --init-value are mutually exclusive");
    if (!f.init_file.empty()) {
        spec.init = read_point_set_file(f.init_file);
        if (spec.init->empty())
            spec.init->d = f.dim;
        spec.init_label = "file:" + f.init_file;
    } else if (f.init_value) {
        if (f.dim != 1)
            throw ValidationError("--init-value applies to d=1");
        spec.init = PointSet::from_1d({*f.init_value});
        spec.init_label = "x0=" + format_real(*f.init_value);
    }
    if (spec.init)
        require_valid(*spec.init, "initial set");
    spec.kronecker.alpha = f.alpha;
    spec.kronecker.start_index = f.start_index;
    std::vector<std::vector<unsigned>> perms;
    if (!f.perm_file.empty())
        perms = read_permutations_file(f.perm_file);
    spec.vdc = VdcSpec(f.base, perms);
    spec.skip_zero = f.skip_zero;
    spec.optimizer = to_config(o);
    return spec;
}

// "-" selects standard output.
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (path == "-")
            return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_)
            throw ValidationError("cannot open '" + path + "' for writing");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void close(const std::string& path)
    {
        stream().flush();
        if (!stream())
            throw ValidationError("failed writing '" + path + "'");
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

template <typename Fn>
void write_to(const std::string& path, Fn&& fn)
{
    Output out(path);
    fn(out.stream());
    out.close(path);
}

std::string in_dir(const std::string& dir, const std::string& file)
{
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / file).string();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Greedy low-discrepancy sequences: generation, discrepancy measurement and experiments.\n"
                 "Greedy 1-D ties (equal functional values within 4 ulps) go to the smallest candidate."};
    app.require_subcommand(1);

    SequenceFlags seq;
    OptimizerFlags opt;
    MeasureFlags meas;
    std::size_t count = 0;
    std::size_t stride = 1000;
    double p = 1.0;
    std::string out = "-";
    std::string out_dir = ".";
    std::string points_file;

    auto* generate = app.add_subcommand("generate", "Write the first N points of a sequence");
    add_sequence_flags(generate, seq, "Sequence to generate");
    add_optimizer_flags(generate, opt);
    generate->add_option("-N,--count", count, "Number of points (greedy: including the initial set)")->required();
    generate->add_option("-o,--out", out, "Output file, - for stdout")->capture_default_str();

    auto* measure = app.add_subcommand("measure", "Discrepancy of a point set file");
    measure->add_option("--points", points_file, "Point set file")->required();
    add_measure_flags(measure, meas);
    measure->add_option("-o,--out", out, "Output file, - for stdout")->capture_default_str();

    auto* trace_cmd = app.add_subcommand("trace", "Discrepancy of growing prefixes as n,raw,scaled CSV");
    add_sequence_flags(trace_cmd, seq, "Sequence to trace");
    add_optimizer_flags(trace_cmd, opt);
    add_measure_flags(trace_cmd, meas);
    trace_cmd->add_option("-N,--count", count, "Largest prefix")->required();
    trace_cmd->add_option("--stride", stride, "Checkpoint spacing")->capture_default_str();
    trace_cmd->add_option("-p", p, "Scaling exponent: scaled = n raw / ln(n)^p")->capture_default_str();
    trace_cmd->add_option("-o,--out", out, "Output file, - for stdout")->capture_default_str();

    std::string versus = "kritzinger";
    auto* compare_cmd = app.add_subcommand("compare", "Proportion of checkpoints where sequence A is lower");
    add_sequence_flags(compare_cmd, seq, "Sequence A");
    add_optimizer_flags(compare_cmd, opt);
    add_measure_flags(compare_cmd, meas);
    compare_cmd->add_option("--versus", versus, "Sequence B (same flags, its default initialisation)")
        ->check(CLI::IsMember({"kritzinger", "kronecker", "vdc", "sobol"}))
        ->capture_default_str();
    compare_cmd->add_option("-N,--count", count, "Largest prefix")->required();
    compare_cmd->add_option("--stride", stride, "Checkpoint spacing")->capture_default_str();
    compare_cmd->add_option("-o,--out", out, "Output file, - for stdout")->capture_default_str();

    std::string mode = "single";
    std::size_t sets = 6, k = 5;
    auto* robust = app.add_subcommand("robustness", "Greedy 1-D sequences from many initialisations");
    robust->add_option("--mode", mode, "single: x0 = 0, 0.1, ..., 0.9, 0.9999; random: uniform initial sets")
        ->check(CLI::IsMember({"single", "random"}))
        ->capture_default_str();
    robust->add_option("--sets", sets, "Number of random initial sets")->capture_default_str();
    robust->add_option("--k", k, "Points per random initial set")->capture_default_str();
    robust->add_option("--seed", opt.seed, "Seed for the random initial sets")->capture_default_str();
    robust->add_option("-N,--count", count, "Largest prefix")->required();
    robust->add_option("--stride", stride, "Checkpoint spacing")->capture_default_str();
    robust->add_option("-p", p, "Scaling exponent")->capture_default_str();
    robust->add_option("--out-dir", out_dir, "Directory for one CSV per run plus envelope.csv")
        ->capture_default_str();

    std::size_t bad_count = 10000;
    auto* bad = app.add_subcommand("bad-init", "Greedy 1-D sequence from 100 points clustered in [0, 0.01)");
    bad->add_option("-N,--count", bad_count, "Largest prefix (at least 10000)")->capture_default_str();
    bad->add_option("--stride", stride, "Checkpoint spacing")->capture_default_str();
    bad->add_option("-p", p, "Scaling exponent")->capture_default_str();
    bad->add_option("-o,--out", out, "Output file, - for stdout")->capture_default_str();

    std::size_t nd_dim = 2;
    std::size_t nd_stride = 10;
    auto* nd = app.add_subcommand("nd-experiment", "Greedy sequence in d = 2 or 3 against Sobol");
    nd->add_option("-d,--dim", nd_dim, "Dimension")->check(CLI::IsMember({2, 3}))->capture_default_str();
    add_optimizer_flags(nd, opt);
    add_measure_flags(nd, meas);
    nd->add_option("-N,--count", count, "Largest prefix (default 500 in d=2, 300 in d=3)");
    nd->add_option("--stride", nd_stride, "Checkpoint spacing")->capture_default_str();
    nd->add_option("-p", p, "Scaling exponent")->capture_default_str();
    nd->add_option("--out-dir", out_dir, "Directory for kritzinger.csv and sobol.csv")->capture_default_str();

    auto* nlp = app.add_subcommand("nlp-export", "Write the next-point problem for a 2-D set as a model file");
    nlp->add_option("--points", points_file, "Point set file (d=2)")->required();
    nlp->add_option("-o,--out", out, "Model file, - for stdout")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (generate->parsed()) {
            const SequenceSpec spec = to_spec(seq, opt);
            const PointSet ps = generate_sequence(spec, count);
            require_valid(ps, "generated sequence");
            write_to(out, [&](std::ostream& os) { write_point_set(os, ps, spec.describe()); });
        } else if (measure->parsed()) {
            const MeasureSpec ms = to_measure(meas);
            const PointSet ps = read_point_set_file(points_file);
            require_valid(ps);
            DiscrepancyValue v;
            if (ms.kind == Measure::l2)
                v = l2_star_warnock(ps);
            else if (ms.sampled)
                v = linf_star_sampled(ps, ms.sampled);
            else
                v = linf_star(ps);
            write_to(out, [&](std::ostream& os) {
                os << "# points=" << points_file << '\n';
                os << "n,d,kind,value\n";
                os << v.n << ',' << v.d << ',' << to_string(v.kind) << ',' << format_real(v.value) << '\n';
            });
        } else if (trace_cmd->parsed()) {
            const SequenceSpec spec = to_spec(seq, opt);
            const DiscrepancyTrace t = trace(spec, count, stride, to_measure(meas), p);
            write_to(out, [&](std::ostream& os) { write_trace_csv(os, t); });
        } else if (compare_cmd->parsed()) {
            const SequenceSpec a = to_spec(seq, opt);
            SequenceSpec b;
            b.kind = parse_sequence_kind(versus);
            b.d = a.d;
            b.optimizer = a.optimizer;
            const ComparisonReport r = compare(a, b, count, stride, to_measure(meas));
            write_to(out, [&](std::ostream& os) { write_comparison_csv(os, r); });
        } else if (robust->parsed()) {
            const RobustnessResult r = mode == "single"
                                           ? robustness_single_starts(count, stride, p)
                                           : robustness_random_starts(sets, k, count, stride, opt.seed, p);
            for (const auto& t : r.traces) {
                const std::string path = in_dir(out_dir, t.label + ".csv");
                write_to(path, [&](std::ostream& os) { write_trace_csv(os, t); });
            }
            const std::string path = in_dir(out_dir, "envelope.csv");
            write_to(path, [&](std::ostream& os) {
                write_envelope_csv(os, r.envelope,
                                   {"mode=" + mode, "N=" + std::to_string(count), "stride=" + std::to_string(stride),
                                    "p=" + format_real(p), "seed=" + std::to_string(opt.seed),
                                    "envelope of scaled values"});
            });
        } else if (bad->parsed()) {
            const DiscrepancyTrace t = bad_init_experiment(bad_count, stride, p);
            write_to(out, [&](std::ostream& os) { write_trace_csv(os, t); });
        } else if (nd->parsed()) {
            const std::size_t n_max = count ? count : (nd_dim == 2 ? 500 : 300);
            const NdExperiment r = nd_experiment(nd_dim, to_config(opt), n_max, nd_stride, p, to_measure(meas));
            write_to(in_dir(out_dir, "kritzinger.csv"), [&](std::ostream& os) { write_trace_csv(os, r.kritzinger); });
            write_to(in_dir(out_dir, "sobol.csv"), [&](std::ostream& os) { write_trace_csv(os, r.sobol); });
        } else if (nlp->parsed()) {
            PointSet ps = read_point_set_file(points_file);
            if (ps.empty())
                ps.d = 2; // an empty file describes the first point
            const NlpModel m = build_model(ps);
            write_to(out, [&](std::ostream& os) { write_model(os, m); });
        }
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 0;
}
