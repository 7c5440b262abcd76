#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "glds/core.hpp"
#include "glds/functional_nd.hpp"
#include "glds/sequences.hpp"

namespace glds {

enum class SequenceKind { kritzinger, kronecker, vdc, sobol };

std::string to_string(SequenceKind kind);
SequenceKind parse_sequence_kind(const std::string& name);

/// Everything needed to reproduce one sequence.
struct SequenceSpec {
    SequenceKind kind = SequenceKind::kritzinger;
    std::size_t d = 1;
    std::optional<PointSet> init; ///< greedy start; the centre point when unset
    std::string init_label;       ///< how the init was chosen, echoed into outputs
    KroneckerSpec kronecker;
    VdcSpec vdc;
    bool skip_zero = true;
    OptimizerConfig optimizer;    ///< greedy construction in d >= 2
    std::string label;            ///< series name; derived from kind when empty

    std::string name() const;
    std::vector<std::string> describe() const;
};

/// The single point (0.5, ..., 0.5).
PointSet centre_point(std::size_t d);

/// The first `total` points of the sequence. For the greedy sequence the
/// initial points count toward the total.
PointSet generate_sequence(const SequenceSpec& spec, std::size_t total);

enum class Measure { linf, l2 };

std::string to_string(Measure m);
Measure parse_measure(const std::string& name);

struct MeasureSpec {
    Measure kind = Measure::linf;
    std::size_t sampled = 0; ///< lattice resolution for the lower bound; 0 = exact

    std::vector<std::string> describe() const;
};

/// Largest prefix length measured exactly in d = 2 and d = 3.
std::size_t exact_limit(std::size_t d);

struct TraceRecord {
    std::size_t n = 0;
    double raw = 0.0;
    double scaled = 0.0;
};

struct DiscrepancyTrace {
    std::string label;
    double p = 1.0;
    std::vector<std::string> config;
    std::vector<TraceRecord> records;
};

/// n * raw / ln(n)^p.
double scale_value(std::size_t n, double raw, double p);

/// stride, 2 stride, ... up to N.
std::vector<std::size_t> checkpoints(std::size_t n_max, std::size_t stride);

/// The measure of every requested prefix of seq.
std::vector<double> measure_prefixes(const PointSet& seq, const std::vector<std::size_t>& at, const MeasureSpec& ms);

/// Trace of an already generated sequence.
DiscrepancyTrace trace_of(const PointSet& seq, const std::string& label, std::size_t n_max, std::size_t stride,
                          const MeasureSpec& ms, double p, std::vector<std::string> config = {});

DiscrepancyTrace trace(const SequenceSpec& spec, std::size_t n_max, std::size_t stride, const MeasureSpec& ms,
                       double p);

struct ComparisonRecord {
    std::size_t n = 0;
    double raw_a = 0.0;
    double raw_b = 0.0;
    double score_a = 0.0;      ///< 1 if A is lower, 0.5 on a tie, 0 otherwise
    double proportion_a = 0.0; ///< cumulative mean of score_a
};

struct ComparisonReport {
    std::string label_a;
    std::string label_b;
    std::vector<std::string> config;
    std::vector<ComparisonRecord> records;

    double final_proportion() const { return records.empty() ? 0.0 : records.back().proportion_a; }
};

/// Checkpoint-by-checkpoint comparison of raw values; both traces must share n.
ComparisonReport compare_traces(const DiscrepancyTrace& a, const DiscrepancyTrace& b);

ComparisonReport compare(const SequenceSpec& a, const SequenceSpec& b, std::size_t n_max, std::size_t stride,
                         const MeasureSpec& ms = {});

struct EnvelopeRecord {
    std::size_t n = 0;
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

/// Pointwise min, mean and max of the scaled values.
std::vector<EnvelopeRecord> envelope_of(const std::vector<DiscrepancyTrace>& traces);

struct RobustnessResult {
    std::vector<DiscrepancyTrace> traces;
    std::vector<EnvelopeRecord> envelope;
};

/// Starts 0.1 j for j = 0..9 and 0.9999.
std::vector<double> single_start_values();

RobustnessResult robustness_single_starts(std::size_t n_max, std::size_t stride, double p = 1.0);

/// `sets` initial sets of k uniform points each.
RobustnessResult robustness_random_starts(std::size_t sets, std::size_t k, std::size_t n_max, std::size_t stride,
                                          std::uint64_t seed, double p = 1.0);

/// The 100 clustered points 0, 1e-4, ..., 99e-4.
PointSet bad_init_set();

DiscrepancyTrace bad_init_experiment(std::size_t n_max, std::size_t stride = 1000, double p = 1.0);

struct NdExperiment {
    DiscrepancyTrace kritzinger;
    DiscrepancyTrace sobol;
};

/// Greedy sequence from the centre point and the Sobol sequence, measured at
/// identical checkpoints.
NdExperiment nd_experiment(std::size_t d, const OptimizerConfig& cfg, std::size_t n_max, std::size_t stride,
                           double p, const MeasureSpec& ms);

// CSV output: '#' config lines, a header row, then records. Numbers use 17
// significant digits so equal inputs give identical bytes.
void write_trace_csv(std::ostream& out, const DiscrepancyTrace& t);
void write_comparison_csv(std::ostream& out, const ComparisonReport& r);
void write_envelope_csv(std::ostream& out, const std::vector<EnvelopeRecord>& env,
                        const std::vector<std::string>& config = {});

} // namespace glds
