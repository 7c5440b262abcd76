#include "glds/harness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "glds/discrepancy.hpp"
#include "glds/greedy1d.hpp"

namespace glds {

namespace {

std::string config_line(const std::string& key, const std::string& value) { return key + "=" + value; }

void write_config(std::ostream& out, const std::vector<std::string>& config)
{
    for (const auto& line : config)
        out << "# " << line << '\n';
}

} // namespace

std::string to_string(SequenceKind kind)
{
    switch (kind) {
    case SequenceKind::kritzinger:
        return "kritzinger";
    case SequenceKind::kronecker:
        return "kronecker";
    case SequenceKind::vdc:
        return "vdc";
    case SequenceKind::sobol:
        return "sobol";
    }
    throw InternalError("unknown sequence kind");
}

SequenceKind parse_sequence_kind(const std::string& name)
{
    for (auto k : {SequenceKind::kritzinger, SequenceKind::kronecker, SequenceKind::vdc, SequenceKind::sobol})
        if (to_string(k) == name)
            return k;
    throw ValidationError("unknown sequence '" + name + "' (expected kritzinger, kronecker, vdc or sobol)");
}

std::string SequenceSpec::name() const { return label.empty() ? to_string(kind) : label; }

std::vector<std::string> SequenceSpec::describe() const
{
    std::vector<std::string> out;
    out.push_back(config_line("sequence", to_string(kind)));
    out.push_back(config_line("d", std::to_string(d)));
    switch (kind) {
    case SequenceKind::kritzinger:
        out.push_back(config_line("init", init_label.empty() ? (init ? "custom" : "centre") : init_label));
        out.push_back(config_line("init_size", std::to_string(init ? init->size() : 1)));
        if (d >= 2) {
            out.push_back(config_line("method", to_string(optimizer.method)));
            out.push_back(config_line("budget", std::to_string(optimizer.budget)));
            out.push_back(config_line("grid_res", std::to_string(optimizer.grid_resolution)));
            out.push_back(config_line("seed", std::to_string(optimizer.seed)));
            out.push_back(config_line("starts", std::to_string(optimizer.starts)));
            out.push_back(config_line("max_iters", std::to_string(optimizer.descent.max_iterations)));
            out.push_back(config_line("tol", format_real(optimizer.descent.gradient_tolerance)));
        }
        break;
    case SequenceKind::kronecker:
        out.push_back(config_line("alpha", format_real(kronecker.alpha)));
        out.push_back(config_line("start_index", std::to_string(kronecker.start_index)));
        break;
    case SequenceKind::vdc:
        out.push_back(config_line("base", std::to_string(vdc.base())));
        out.push_back(config_line("permutations", std::to_string(vdc.permutations().size())));
        break;
    case SequenceKind::sobol:
        out.push_back(config_line("skip_zero", skip_zero ? "true" : "false"));
        break;
    }
    return out;
}

PointSet centre_point(std::size_t d)
{
    PointSet ps(d);
    ps.points.push_back(Point(std::vector<double>(d, 0.5)));
    return ps;
}

PointSet generate_sequence(const SequenceSpec& spec, std::size_t total)
{
    if (spec.d < 1 || spec.d > 3)
        throw ValidationError("sequences are supported for d in {1,2,3}, got d=" + std::to_string(spec.d));
    switch (spec.kind) {
    case SequenceKind::kritzinger: {
        const PointSet init = spec.init ? *spec.init : centre_point(spec.d);
        if (init.d != spec.d)
            throw ValidationError("initial set has d=" + std::to_string(init.d) + ", sequence has d=" +
                                  std::to_string(spec.d));
        if (total <= init.size())
            return init.prefix(total);
        const std::size_t extra = total - init.size();
        return spec.d == 1 ? generate_1d(init, extra) : generate_nd(init, extra, spec.optimizer);
    }
    case SequenceKind::kronecker:
        if (spec.d != 1)
            throw ValidationError("the Kronecker sequence is provided for d=1");
        return kronecker(spec.kronecker, total);
    case SequenceKind::vdc:
        if (spec.d != 1)
            throw ValidationError("the van der Corput sequence is provided for d=1");
        return van_der_corput(spec.vdc, total);
    case SequenceKind::sobol:
        return sobol(SobolSpec{spec.d, spec.skip_zero}, total);
    }
    throw InternalError("unknown sequence kind");
}

std::string to_string(Measure m) { return m == Measure::linf ? "linf" : "l2"; }

Measure parse_measure(const std::string& name)
{
    if (name == "linf")
        return Measure::linf;
    if (name == "l2")
        return Measure::l2;
    throw ValidationError("unknown measure '" + name + "' (expected linf or l2)");
}

std::vector<std::string> MeasureSpec::describe() const
{
    std::vector<std::string> out;
    out.push_back(config_line("measure", kind == Measure::linf ? "linf" : "l2_squared"));
    if (kind == Measure::linf)
        out.push_back(sampled ? config_line("linf", "sampled_lower_bound m=" + std::to_string(sampled))
                              : config_line("linf", "exact"));
    return out;
}

std::size_t exact_limit(std::size_t d)
{
    switch (d) {
    case 1:
        return static_cast<std::size_t>(-1);
    case 2:
        return 4000;
    case 3:
        return 400;
    default:
        return 0;
    }
}

double scale_value(std::size_t n, double raw, double p)
{
    return static_cast<double>(n) * raw / std::pow(std::log(static_cast<double>(n)), p);
}

std::vector<std::size_t> checkpoints(std::size_t n_max, std::size_t stride)
{
    if (stride < 1)
        throw ValidationError("stride must be at least 1");
    if (n_max < stride)
        throw ValidationError("N must be at least the stride");
    std::vector<std::size_t> at;
    for (std::size_t n = stride; n <= n_max; n += stride)
        at.push_back(n);
    return at;
}

std::vector<double> measure_prefixes(const PointSet& seq, const std::vector<std::size_t>& at, const MeasureSpec& ms)
{
    if (!at.empty() && at.back() > seq.size())
        throw ValidationError("checkpoint beyond the sequence length");
    std::vector<double> out(at.size());
    if (ms.kind == Measure::linf && ms.sampled == 0) {
        if (seq.d == 1) {
            const auto xs = seq.coords_1d();
            return linf_star_1d_prefixes(xs, at);
        }
        if (!at.empty() && at.back() > exact_limit(seq.d))
            throw ValidationError("exact L-infinity in d=" + std::to_string(seq.d) + " is limited to N <= " +
                                  std::to_string(exact_limit(seq.d)) + "; use --sampled m");
    }
    if (ms.kind == Measure::linf && ms.sampled == 1)
        throw ValidationError("sampled resolution must be at least 2");
    for (std::size_t c = 0; c < at.size(); ++c) {
        const PointSet prefix = seq.prefix(at[c]);
        if (ms.kind == Measure::l2)
            out[c] = l2_star_warnock(prefix).value;
        else if (ms.sampled)
            out[c] = linf_star_sampled(prefix, ms.sampled).value;
        else
            out[c] = linf_star(prefix).value;
    }
    return out;
}

DiscrepancyTrace trace_of(const PointSet& seq, const std::string& label, std::size_t n_max, std::size_t stride,
                          const MeasureSpec& ms, double p, std::vector<std::string> config)
{
    const auto at = checkpoints(n_max, stride);
    const auto raw = measure_prefixes(seq, at, ms);
    DiscrepancyTrace t;
    t.label = label;
    t.p = p;
    t.config.push_back(config_line("series", label));
    t.config.insert(t.config.end(), config.begin(), config.end());
    for (auto& line : ms.describe())
        t.config.push_back(std::move(line));
    t.config.push_back(config_line("N", std::to_string(n_max)));
    t.config.push_back(config_line("stride", std::to_string(stride)));
    t.config.push_back(config_line("p", format_real(p)));
    t.config.push_back("scaled=n*raw/ln(n)^p");
    for (std::size_t c = 0; c < at.size(); ++c)
        t.records.push_back({at[c], raw[c], scale_value(at[c], raw[c], p)});
    return t;
}

DiscrepancyTrace trace(const SequenceSpec& spec, std::size_t n_max, std::size_t stride, const MeasureSpec& ms,
                       double p)
{
    checkpoints(n_max, stride);
    const PointSet seq = generate_sequence(spec, n_max);
    return trace_of(seq, spec.name(), n_max, stride, ms, p, spec.describe());
}

ComparisonReport compare_traces(const DiscrepancyTrace& a, const DiscrepancyTrace& b)
{
    if (a.records.size() != b.records.size())
        throw ValidationError("compared traces have different checkpoints");
    ComparisonReport r;
    r.label_a = a.label;
    r.label_b = b.label;
    double total = 0.0;
    for (std::size_t c = 0; c < a.records.size(); ++c) {
        const auto& ra = a.records[c];
        const auto& rb = b.records[c];
        if (ra.n != rb.n)
            throw ValidationError("compared traces have different checkpoints");
        ComparisonRecord rec;
        rec.n = ra.n;
        rec.raw_a = ra.raw;
        rec.raw_b = rb.raw;
        rec.score_a = ra.raw < rb.raw ? 1.0 : (ra.raw == rb.raw ? 0.5 : 0.0);
        total += rec.score_a;
        rec.proportion_a = total / static_cast<double>(c + 1);
        r.records.push_back(rec);
    }
    return r;
}

ComparisonReport compare(const SequenceSpec& a, const SequenceSpec& b, std::size_t n_max, std::size_t stride,
                         const MeasureSpec& ms)
{
    const DiscrepancyTrace ta = trace(a, n_max, stride, ms, 1.0);
    const DiscrepancyTrace tb = trace(b, n_max, stride, ms, 1.0);
    ComparisonReport r = compare_traces(ta, tb);
    for (const auto& line : a.describe())
        r.config.push_back("a." + line);
    for (const auto& line : b.describe())
        r.config.push_back("b." + line);
    for (auto& line : ms.describe())
        r.config.push_back(std::move(line));
    r.config.push_back(config_line("N", std::to_string(n_max)));
    r.config.push_back(config_line("stride", std::to_string(stride)));
    r.config.push_back("score_a: 1 when a is lower, 0.5 on a tie");
    return r;
}

std::vector<EnvelopeRecord> envelope_of(const std::vector<DiscrepancyTrace>& traces)
{
    std::vector<EnvelopeRecord> env;
    if (traces.empty())
        return env;
    const std::size_t count = traces.front().records.size();
    for (const auto& t : traces)
        if (t.records.size() != count)
            throw ValidationError("envelope traces have different checkpoints");
    for (std::size_t c = 0; c < count; ++c) {
        EnvelopeRecord e;
        e.n = traces.front().records[c].n;
        e.min = e.max = traces.front().records[c].scaled;
        double sum = 0.0;
        for (const auto& t : traces) {
            if (t.records[c].n != e.n)
                throw ValidationError("envelope traces have different checkpoints");
            const double v = t.records[c].scaled;
            e.min = std::min(e.min, v);
            e.max = std::max(e.max, v);
            sum += v;
        }
        e.mean = sum / static_cast<double>(traces.size());
        env.push_back(e);
    }
    return env;
}

std::vector<double> single_start_values()
{
    std::vector<double> starts;
    for (int j = 0; j <= 9; ++j)
        starts.push_back(0.1 * j);
    starts.push_back(0.9999);
    return starts;
}

namespace {

RobustnessResult run_inits(const std::vector<PointSet>& inits, const std::vector<std::string>& labels,
                           std::size_t n_max, std::size_t stride, double p)
{
    checkpoints(n_max, stride);
    RobustnessResult r;
    r.traces.resize(inits.size());
    const auto count = static_cast<std::ptrdiff_t>(inits.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < count; ++s) {
        const auto u = static_cast<std::size_t>(s);
        SequenceSpec spec;
        spec.init = inits[u];
        spec.init_label = labels[u];
        spec.label = "kritzinger_" + labels[u];
        r.traces[u] = trace(spec, n_max, stride, MeasureSpec{}, p);
    }
    r.envelope = envelope_of(r.traces);
    return r;
}

} // namespace

RobustnessResult robustness_single_starts(std::size_t n_max, std::size_t stride, double p)
{
    std::vector<PointSet> inits;
    std::vector<std::string> labels;
    for (double x : single_start_values()) {
        inits.push_back(PointSet::from_1d({x}));
        labels.push_back("x0=" + format_real(x));
    }
    return run_inits(inits, labels, n_max, stride, p);
}

RobustnessResult robustness_random_starts(std::size_t sets, std::size_t k, std::size_t n_max, std::size_t stride,
                                          std::uint64_t seed, double p)
{
    if (sets < 1 || k < 1)
        throw ValidationError("random starts need at least one set of at least one point");
    Rng rng(seed);
    std::vector<PointSet> inits;
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < sets; ++s) {
        std::vector<double> xs(k);
        for (double& x : xs)
            x = rng.uniform();
        inits.push_back(PointSet::from_1d(xs));
        labels.push_back("random" + std::to_string(s + 1) + "_seed" + std::to_string(seed));
    }
    return run_inits(inits, labels, n_max, stride, p);
}

PointSet bad_init_set()
{
    std::vector<double> xs;
    for (int i = 0; i < 100; ++i)
        xs.push_back(i * 1e-4);
    return PointSet::from_1d(xs);
}

DiscrepancyTrace bad_init_experiment(std::size_t n_max, std::size_t stride, double p)
{
    if (n_max < 10000)
        throw ValidationError("the bad-initialization experiment needs N >= 10000");
    SequenceSpec spec;
    spec.init = bad_init_set();
    spec.init_label = "clustered_100_step_1e-4";
    spec.label = "kritzinger_bad_init";
    return trace(spec, n_max, stride, MeasureSpec{}, p);
}

NdExperiment nd_experiment(std::size_t d, const OptimizerConfig& cfg, std::size_t n_max, std::size_t stride,
                           double p, const MeasureSpec& ms)
{
    if (d != 2 && d != 3)
        throw ValidationError("the d-dimensional experiment supports d in {2,3}, got d=" + std::to_string(d));
    if (ms.kind == Measure::linf && ms.sampled == 0 && n_max > exact_limit(d))
        throw ValidationError("exact L-infinity in d=" + std::to_string(d) + " is limited to N <= " +
                              std::to_string(exact_limit(d)) + "; use --sampled m");
    SequenceSpec greedy;
    greedy.d = d;
    greedy.optimizer = cfg;
    greedy.init_label = "centre";
    SequenceSpec sob;
    sob.kind = SequenceKind::sobol;
    sob.d = d;
    NdExperiment r;
    r.kritzinger = trace(greedy, n_max, stride, ms, p);
    r.sobol = trace(sob, n_max, stride, ms, p);
    return r;
}

void write_trace_csv(std::ostream& out, const DiscrepancyTrace& t)
{
    write_config(out, t.config);
    out << "n,raw,scaled\n";
    for (const auto& r : t.records)
        out << r.n << ',' << format_real(r.raw) << ',' << format_real(r.scaled) << '\n';
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& r)
{
    std::vector<std::string> config = r.config;
    config.insert(config.begin(), {config_line("a", r.label_a), config_line("b", r.label_b)});
    write_config(out, config);
    out << "n,raw_a,raw_b,score_a,proportion_a\n";
    for (const auto& rec : r.records)
        out << rec.n << ',' << format_real(rec.raw_a) << ',' << format_real(rec.raw_b) << ','
            << format_real(rec.score_a) << ',' << format_real(rec.proportion_a) << '\n';
}

void write_envelope_csv(std::ostream& out, const std::vector<EnvelopeRecord>& env,
                        const std::vector<std::string>& config)
{
    write_config(out, config);
    out << "n,min,mean,max\n";
    for (const auto& e : env)
        out << e.n << ',' << format_real(e.min) << ',' << format_real(e.mean) << ',' << format_real(e.max) << '\n';
}

} // namespace glds
