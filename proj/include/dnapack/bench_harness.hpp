#ifndef DNAPACK_BENCH_HARNESS_HPP
#define DNAPACK_BENCH_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dnapack/error.hpp"
#include "dnapack/sequence_io.hpp"

namespace dnapack::bench {

struct NoNRuns
{
};

/// `length` Ns at the start of the sequence.
struct LeadingNs
{
    std::uint64_t length = 0;
};

/// `length` Ns starting at `position`.
struct InteriorNs
{
    std::uint64_t length = 0;
    std::uint64_t position = 0;
};

struct NRun
{
    std::uint64_t position = 0;
    std::uint64_t length = 0;
};

struct CustomNRuns
{
    std::vector<NRun> runs;
};

using NRunProfile = std::variant<NoNRuns, LeadingNs, InteriorNs, CustomNRuns>;

struct CorpusEntry
{
    std::string name;
    std::uint64_t base_count = 0;
    NRunProfile n_runs = NoNRuns{};
    std::uint64_t seed = 1;
};

struct SyntheticCorpusSpec
{
    std::vector<CorpusEntry> entries;
};

/// Published per-sequence lengths of the standard DNA benchmark corpus, with
/// the bits/base the fixed-length format achieves on each (scaled by 10^4).
struct ReferenceSequence
{
    std::string_view name;
    std::uint64_t bases;
    std::uint64_t ratio_e4;
};

std::span<const ReferenceSequence> reference_corpus() noexcept;

/// N-free synthetic stand-ins for every reference sequence.
SyntheticCorpusSpec reference_corpus_spec(std::uint64_t seed = 1);

/// Deterministic in the entry's seed. Throws ContractViolation when an N run
/// falls outside the sequence.
std::string synthesize(const CorpusEntry& entry);

/// Writes `<name>.seq` per entry (60 symbols per line) and returns the paths.
std::vector<std::filesystem::path> generate_corpus(const SyntheticCorpusSpec& spec,
                                                   const std::filesystem::path& out_dir);

struct ExternalResult
{
    std::uint64_t bytes = 0;
    double ms = 0.0;
};

struct BenchRow
{
    std::string name;
    std::uint64_t bases = 0;
    std::uint64_t n_bases = 0;
    std::uint64_t sections = 0;
    std::uint64_t bytes = 0;            ///< measured on disk
    std::uint64_t predicted_bytes = 0;  ///< from the size law
    double encode_ms = 0.0;             ///< median over repeats
    double decode_ms = 0.0;
    std::optional<ExternalResult> external;  ///< unset when no command or it was unavailable

    /// Four-decimal bits/base, or "n/a" for an empty file.
    std::string bits_per_base() const;
    std::string external_bits_per_base() const;
};

struct CorpusReport
{
    std::vector<BenchRow> rows;
    bool external_requested = false;

    /// Unweighted mean of per-file bits/base over non-empty files.
    std::optional<double> average_bits_per_base() const;
    std::optional<double> average_external_bits_per_base() const;

    std::string to_text() const;
    std::string to_csv() const;
    std::string to_markdown() const;
    std::string to_json() const;
};

/// Everything in the report except wall-clock columns.
bool same_except_timing(const CorpusReport& a, const CorpusReport& b);

/// Benchmarks must never report numbers for a broken codec.
class RoundTripMismatch : public Error
{
public:
    using Error::Error;
};

struct BenchOptions
{
    std::size_t repeats = 1;
    /// Run as `CMD {input}`; "{input}" is replaced by the quoted file path,
    /// or the path is appended when the placeholder is absent.
    std::optional<std::string> external;
    /// FASTA mode is switched on per file when it starts with '>'.
    IngestPolicy policy{};
    /// Scratch directory for compressed files; a fresh temp directory when empty.
    std::filesystem::path scratch;
};

CorpusReport run_bench(const std::filesystem::path& corpus_dir, const BenchOptions& options = {});

struct ScalingPoint
{
    std::uint64_t bases = 0;
    double encode_ms = 0.0;
    double decode_ms = 0.0;
};

struct ScalingResult
{
    std::vector<ScalingPoint> points;
    double encode_slope = 0.0;
    double decode_slope = 0.0;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// In-memory encode/decode timing over N-free sequences of `base_bases * f`
/// for each factor, median of `repeats`.
ScalingResult measure_scaling(std::uint64_t base_bases, std::span<const std::uint64_t> factors, std::size_t repeats,
                              std::uint64_t seed = 1);

double median(std::vector<double> values);

}  // namespace dnapack::bench

#endif  // DNAPACK_BENCH_HARNESS_HPP
