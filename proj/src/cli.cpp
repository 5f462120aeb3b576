#include "dnapack/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dnapack/bench_harness.hpp"
#include "dnapack/error.hpp"
#include "dnapack/section_model.hpp"
#include "dnapack/sequence_io.hpp"
#include "dnapack/stream_codec.hpp"
#include "json.hpp"

namespace dnapack::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

constexpr const char* kStdio = "-";

struct Options
{
    std::string input;
    std::string output;
    bool fasta = false;
    bool iupac_to_n = false;
    bool no_case_fold = false;
    std::optional<std::size_t> line_width;
    std::string format = "text";
    bool compressed_input = false;
    bool synthetic = false;
    std::size_t repeats = 1;
    std::optional<std::string> external;
};

IngestPolicy policy_from(const Options& o)
{
    IngestPolicy p;
    p.fasta_mode = o.fasta;
    p.case_fold = !o.no_case_fold;
    p.iupac_to_n = o.iupac_to_n;
    p.strict = !o.iupac_to_n;
    return p;
}

std::string display_name(const std::string& path) { return path == kStdio ? "<stdin>" : path; }

/// Input file or the injected stdin.
class Input
{
public:
    Input(const std::string& path, std::istream& stdin_stream)
    {
        if (path == kStdio) {
            stream_ = &stdin_stream;
            return;
        }
        file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
        if (!*file_) throw IoError("cannot open input: " + path);
        stream_ = file_.get();
    }

    std::istream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ifstream> file_;
    std::istream* stream_ = nullptr;
};

/// Writes to a sibling temp file and renames over the target on commit. The
/// temp file is removed if the output is never committed.
class AtomicOutput
{
public:
    AtomicOutput(const std::string& path, std::ostream& stdout_stream)
    {
        if (path == kStdio) {
            stream_ = &stdout_stream;
            return;
        }
        target_ = fs::path(path);
        std::random_device rd;
        temp_ = target_;
        temp_ += ".tmp-" + std::to_string(rd());
        file_ = std::make_unique<std::ofstream>(temp_, std::ios::binary | std::ios::trunc);
        if (!*file_) throw IoError("cannot create output: " + temp_.string());
        stream_ = file_.get();
    }

    ~AtomicOutput()
    {
        if (file_ && !committed_) {
            file_.reset();
            std::error_code ec;
            fs::remove(temp_, ec);
        }
    }

    AtomicOutput(const AtomicOutput&) = delete;
    AtomicOutput& operator=(const AtomicOutput&) = delete;

    std::ostream& stream() { return *stream_; }
    bool is_stdout() const { return !file_; }

    void commit()
    {
        stream_->flush();
        if (!*stream_) throw IoError("failed to write output");
        if (!file_) return;
        file_->close();
        if (!*file_) throw IoError("failed to write output: " + temp_.string());
        std::error_code ec;
        fs::rename(temp_, target_, ec);
        if (ec) throw IoError("cannot move output into place at " + target_.string() + ": " + ec.message());
        committed_ = true;
    }

private:
    fs::path target_;
    fs::path temp_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
    bool committed_ = false;
};

struct Summary
{
    std::uint64_t bases = 0;
    std::uint64_t n_bases = 0;
    std::uint64_t sections = 0;
    std::uint64_t bytes = 0;
    double elapsed_ms = 0.0;

    std::string ratio() const { return bases == 0 ? "n/a" : format_ratio(bytes, bases); }
};

Summary summary_of(const CodecStats& s)
{
    return {s.bases, s.n_bases, s.sections, s.compressed_bytes,
            std::chrono::duration<double, std::milli>(s.elapsed).count()};
}

void print_summary(std::ostream& os, const std::string& label, const Summary& s, const std::string& format)
{
    if (format == "json") {
        nlohmann::ordered_json j;
        j["bases"] = s.bases;
        j["n_bases"] = s.n_bases;
        j["sections"] = s.sections;
        j["bytes"] = s.bytes;
        j["bits_per_base"] = s.bases == 0 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(std::stod(s.ratio()));
        j["elapsed_ms"] = s.elapsed_ms;
        os << j.dump() << '\n';
    } else if (format == "csv") {
        os << "bases,n_bases,sections,bytes,bits_per_base,elapsed_ms\n"
           << s.bases << ',' << s.n_bases << ',' << s.sections << ',' << s.bytes << ',' << s.ratio() << ','
           << std::fixed << std::setprecision(3) << s.elapsed_ms << '\n';
    } else {
        os << label << s.bases << " bases, " << s.n_bases << " N, " << s.sections << " sections, " << s.bytes
           << " bytes, " << s.ratio() << " bits/base, " << std::fixed << std::setprecision(3) << s.elapsed_ms
           << " ms\n";
    }
}

int cmd_compress(const Options& o, StdStreams io)
{
    Input in(o.input, io.in);
    AtomicOutput out(o.output, io.out);
    TextIngestor ingestor(in.stream(), policy_from(o));
    CompressOptions copts;
    // Standard output may be a pipe; files are always seekable.
    copts.mode = out.is_stdout() ? SinkMode::BufferSection : SinkMode::PatchInPlace;
    const CodecStats stats = compress(ingestor, out.stream(), copts);
    out.commit();
    print_summary(io.err, "compress: ", summary_of(stats), o.format);
    return kOk;
}

int cmd_decompress(const Options& o, StdStreams io)
{
    Input in(o.input, io.in);
    AtomicOutput out(o.output, io.out);
    TextRenderer renderer(out.stream(), o.line_width);
    const CodecStats stats = decompress(in.stream(), renderer);
    renderer.finish();
    out.commit();
    print_summary(io.err, "decompress: ", summary_of(stats), o.format);
    return kOk;
}

int cmd_verify(const Options& o, StdStreams io)
{
    Input in(o.input, io.in);
    const auto start = Clock::now();
    const VerifyReport r = verify(in.stream(), {.permissive = true});
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();

    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["well_formed"] = r.well_formed;
        j["sections"] = r.sections;
        j["bases"] = r.bases;
        j["n_bases"] = r.n_bases;
        j["bytes"] = r.bytes;
        j["canonical_padding"] = r.canonical_padding;
        j["non_canonical_sections"] = r.non_canonical_sections;
        j["error"] = r.well_formed ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.message);
        j["elapsed_ms"] = ms;
        io.out << j.dump() << '\n';
    } else {
        io.out << "well_formed: " << (r.well_formed ? "yes" : "no") << '\n'
               << "sections: " << r.sections << '\n'
               << "bases: " << r.bases << '\n'
               << "n_bases: " << r.n_bases << '\n'
               << "bytes: " << r.bytes << '\n'
               << "padding: " << (r.canonical_padding ? "canonical" : "non-canonical");
        if (!r.canonical_padding) io.out << " (" << r.non_canonical_sections << " sections)";
        io.out << '\n';
    }
    if (!r.well_formed) {
        io.err << "dnapack: " << display_name(o.input) << ": " << r.message << '\n';
        return kMalformedStream;
    }
    return kOk;
}

int cmd_stats(const Options& o, StdStreams io)
{
    Input in(o.input, io.in);
    const auto start = Clock::now();
    Summary s;
    if (o.compressed_input) {
        const VerifyReport r = verify(in.stream());
        s = {r.bases, r.n_bases, r.sections, r.bytes, 0.0};
    } else {
        const NormalizedSequence seq = ingest(in.stream(), policy_from(o));
        const SectionList sections = sectionize(seq.symbols);
        s.bases = seq.symbols.size();
        for (const auto& sec : sections) s.n_bases += sec.header.n_count;
        s.sections = sections.size();
        s.bytes = compressed_size_bytes(sections);
    }
    s.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();

    if (o.format == "text") {
        io.out << "bases: " << s.bases << '\n'
               << "n_bases: " << s.n_bases << '\n'
               << "sections: " << s.sections << '\n'
               << "bytes: " << s.bytes << '\n'
               << "bits_per_base: " << s.ratio() << '\n'
               << "elapsed_ms: " << std::fixed << std::setprecision(3) << s.elapsed_ms << '\n';
    } else {
        print_summary(io.out, "", s, o.format);
    }
    return kOk;
}

int cmd_bench(const Options& o, StdStreams io)
{
    std::optional<fs::path> owned_dir;
    fs::path corpus = o.input;
    if (o.synthetic) {
        if (corpus.empty()) {
            corpus = fs::temp_directory_path() / ("dnapack-corpus-" + std::to_string(std::random_device{}()));
            owned_dir = corpus;
        }
        bench::generate_corpus(bench::reference_corpus_spec(), corpus);
    } else if (corpus.empty()) {
        throw ContractViolation("bench needs a corpus directory or --synthetic");
    }

    struct Cleanup
    {
        std::optional<fs::path>& dir;
        ~Cleanup()
        {
            std::error_code ec;
            if (dir) fs::remove_all(*dir, ec);
        }
    } cleanup{owned_dir};

    bench::BenchOptions bopts;
    bopts.repeats = o.repeats;
    bopts.external = o.external;
    bopts.policy = policy_from(o);
    const bench::CorpusReport report = bench::run_bench(corpus, bopts);

    if (o.format == "csv") {
        io.out << report.to_csv();
    } else if (o.format == "json") {
        io.out << report.to_json();
    } else if (o.format == "markdown") {
        io.out << report.to_markdown();
    } else {
        io.out << report.to_text();
    }
    if (o.external) {
        for (const auto& row : report.rows) {
            if (!row.external) io.err << "dnapack: external compressor unavailable for " << row.name << '\n';
        }
    }
    return kOk;
}

void add_policy_flags(CLI::App* app, Options& o)
{
    app->add_flag("--fasta", o.fasta, "Drop lines starting with '>'");
    app->add_flag("--iupac-to-n", o.iupac_to_n, "Map IUPAC ambiguity codes to N");
    app->add_flag("--no-case-fold", o.no_case_fold, "Reject lowercase symbols instead of folding them");
}

void add_format(CLI::App* app, Options& o, std::vector<std::string> choices)
{
    app->add_option("--format", o.format, "Report format")->check(CLI::IsMember(std::move(choices)));
}

}  // namespace

int run(const std::vector<std::string>& args, StdStreams io)
{
    CLI::App app{"Fixed-length 2-bit DNA sequence compressor", "dnapack"};
    app.require_subcommand(1);
    Options o;

    auto* compress_cmd = app.add_subcommand("compress", "Compress a sequence file");
    compress_cmd->add_option("input", o.input, "Sequence file, or - for stdin")->required();
    compress_cmd->add_option("-o,--output", o.output, "Compressed file, or - for stdout")->required();
    add_policy_flags(compress_cmd, o);
    add_format(compress_cmd, o, {"text", "csv", "json"});

    auto* decompress_cmd = app.add_subcommand("decompress", "Decompress to plain sequence text");
    decompress_cmd->add_option("input", o.input, "Compressed file, or - for stdin")->required();
    decompress_cmd->add_option("-o,--output", o.output, "Sequence file, or - for stdout")->required();
    decompress_cmd->add_option("--line-width", o.line_width, "Wrap output lines")->check(CLI::PositiveNumber);
    add_format(decompress_cmd, o, {"text", "csv", "json"});

    auto* verify_cmd = app.add_subcommand("verify", "Check a compressed file for structural errors");
    verify_cmd->add_option("input", o.input, "Compressed file, or - for stdin")->required();
    add_format(verify_cmd, o, {"text", "json"});

    auto* stats_cmd = app.add_subcommand("stats", "Print predicted (or actual) compression statistics");
    stats_cmd->add_option("input", o.input, "Sequence file, or - for stdin")->required();
    stats_cmd->add_flag("--compressed", o.compressed_input, "Input is already compressed");
    add_policy_flags(stats_cmd, o);
    add_format(stats_cmd, o, {"text", "csv", "json"});

    auto* bench_cmd = app.add_subcommand("bench", "Benchmark every file in a corpus directory");
    bench_cmd->add_option("corpus", o.input, "Corpus directory");
    bench_cmd->add_flag("--synthetic", o.synthetic, "Generate the reference-length synthetic corpus first");
    bench_cmd->add_option("--repeats", o.repeats, "Timing repeats per file (median reported)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--external", o.external, "External compressor command, run as CMD {input}");
    add_policy_flags(bench_cmd, o);
    add_format(bench_cmd, o, {"text", "csv", "json", "markdown"});

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        io.out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        io.out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        io.err << "dnapack: " << e.what() << '\n';
        return kUsage;
    }

    const std::string subject = display_name(o.input);
    try {
        if (compress_cmd->parsed()) return cmd_compress(o, io);
        if (decompress_cmd->parsed()) return cmd_decompress(o, io);
        if (verify_cmd->parsed()) return cmd_verify(o, io);
        if (stats_cmd->parsed()) return cmd_stats(o, io);
        return cmd_bench(o, io);
    } catch (const FormatError& e) {
        io.err << "dnapack: " << subject << ": " << e.what() << '\n';
        return kMalformedStream;
    } catch (const InvalidSymbolError& e) {
        io.err << "dnapack: " << subject << ": " << e.what() << '\n';
        return kInvalidInput;
    } catch (const ContractViolation& e) {
        io.err << "dnapack: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        io.err << "dnapack: " << subject << ": " << e.what() << '\n';
        return kIoFailure;
    }
}

}  // namespace dnapack::cli
