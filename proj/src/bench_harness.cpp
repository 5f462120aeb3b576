#include "dnapack/bench_harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "dnapack/section_model.hpp"
#include "dnapack/stream_codec.hpp"
#include "json.hpp"

namespace dnapack::bench {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::array<ReferenceSequence, 18> kReference = {{
    {"atatsgs", 9647, 20068},      {"atef1a23", 6022, 20113},   {"atrdnaf", 10014, 20068},
    {"atrdnai", 5287, 20125},      {"chmpxx", 121024, 20005},   {"chntxx", 155939, 20004},
    {"hehcmvcg", 229354, 20003},   {"hsg6pdgen", 52173, 20013}, {"humdystrop", 38770, 20018},
    {"humghcsa", 66495, 20010},    {"humhdabcd", 58864, 20011}, {"humhprtb", 56737, 20012},
    {"mmzp3g", 10833, 20065},      {"mpomtcg", 186609, 20004},  {"mtpacg", 100314, 20007},
    {"vaccg", 191737, 20004},      {"xlxfg512", 19338, 20035},  {"chr10_rice", 22432531, 20000},
}};

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fixed4(double v)
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << v;
    return out.str();
}

std::string fixed3(double v)
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << v;
    return out.str();
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed to read " + path.string());
    return std::move(ss).str();
}

std::string shell_quote(const std::string& s)
{
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

std::optional<ExternalResult> run_external(const std::string& command, const fs::path& input, std::size_t repeats)
{
    std::string cmd = command;
    const std::string quoted = shell_quote(input.string());
    if (const auto at = cmd.find("{input}"); at != std::string::npos) {
        cmd.replace(at, 7, quoted);
    } else {
        cmd += " " + quoted;
    }
    cmd += " 2>/dev/null";

    std::vector<double> times;
    std::uint64_t bytes = 0;
    for (std::size_t r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        FILE* pipe = ::popen(cmd.c_str(), "r");
        if (pipe == nullptr) return std::nullopt;
        std::array<char, 64 * 1024> buf{};
        std::uint64_t got = 0;
        while (const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) got += n;
        const int status = ::pclose(pipe);
        times.push_back(ms_since(start));
        if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) return std::nullopt;
        bytes = got;
    }
    return ExternalResult{bytes, median(times)};
}

struct ScratchDir
{
    fs::path path;
    bool owned = false;

    explicit ScratchDir(const fs::path& requested)
    {
        if (!requested.empty()) {
            path = requested;
            fs::create_directories(path);
            return;
        }
        std::random_device rd;
        for (int attempt = 0; attempt < 16; ++attempt) {
            fs::path candidate = fs::temp_directory_path() / ("dnapack-bench-" + std::to_string(rd()));
            if (fs::create_directory(candidate)) {
                path = candidate;
                owned = true;
                return;
            }
        }
        throw IoError("cannot create a scratch directory");
    }

    ~ScratchDir()
    {
        std::error_code ec;
        if (owned) fs::remove_all(path, ec);
    }

    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;
};

BenchRow bench_file(const fs::path& file, const fs::path& scratch, const BenchOptions& options)
{
    const std::string text = read_file(file);
    IngestPolicy policy = options.policy;
    policy.fasta_mode = policy.fasta_mode || looks_like_fasta(text);
    const NormalizedSequence seq = ingest(text, policy);

    BenchRow row;
    row.name = file.filename().string();
    row.predicted_bytes = compressed_size_bytes(sectionize(seq.symbols));

    const fs::path packed = scratch / (row.name + ".dfc");
    std::vector<double> enc_times;
    std::vector<double> dec_times;
    CodecStats stats;
    for (std::size_t r = 0; r < options.repeats; ++r) {
        {
            std::ofstream out(packed, std::ios::binary | std::ios::trunc);
            if (!out) throw IoError("cannot create " + packed.string());
            const auto start = Clock::now();
            stats = compress(seq.symbols, out);
            out.close();
            enc_times.push_back(ms_since(start));
        }
        {
            std::ifstream in(packed, std::ios::binary);
            if (!in) throw IoError("cannot open " + packed.string());
            StringSymbolSink sink;
            const auto start = Clock::now();
            decompress(in, sink);
            dec_times.push_back(ms_since(start));
            if (sink.str() != seq.symbols) {
                throw RoundTripMismatch("round trip mismatch for " + file.string());
            }
        }
    }

    row.bases = stats.bases;
    row.n_bases = stats.n_bases;
    row.sections = stats.sections;
    row.bytes = fs::file_size(packed);
    if (row.bytes != row.predicted_bytes) {
        throw RoundTripMismatch("compressed size of " + file.string() + " is " + std::to_string(row.bytes) +
                                " bytes, size law predicts " + std::to_string(row.predicted_bytes));
    }
    row.encode_ms = median(enc_times);
    row.decode_ms = median(dec_times);
    fs::remove(packed);

    if (options.external) row.external = run_external(*options.external, file, options.repeats);
    return row;
}

template <typename Field>
std::optional<double> mean_ratio(const std::vector<BenchRow>& rows, Field field)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows) {
        if (r.bases == 0) continue;
        if (const auto bytes = field(r)) {
            sum += compression_ratio(*bytes, r.bases);
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

std::string optional_fixed4(std::optional<double> v) { return v ? fixed4(*v) : "n/a"; }

// Discards decoded symbols, keeping only a count.
class CountingSink final : public SymbolSink
{
public:
    void write(std::string_view symbols) override { count_ += symbols.size(); }
    std::uint64_t count() const { return count_; }

private:
    std::uint64_t count_ = 0;
};

}  // namespace

std::span<const ReferenceSequence> reference_corpus() noexcept { return kReference; }

SyntheticCorpusSpec reference_corpus_spec(std::uint64_t seed)
{
    SyntheticCorpusSpec spec;
    for (const auto& ref : kReference) {
        spec.entries.push_back({std::string(ref.name), ref.bases, NoNRuns{}, seed});
    }
    return spec;
}

std::string synthesize(const CorpusEntry& entry)
{
    std::string seq(entry.base_count, 'A');
    std::mt19937_64 rng(entry.seed);
    static constexpr std::array<char, 4> kAlphabet = {'A', 'C', 'G', 'T'};
    for (std::size_t i = 0; i < seq.size();) {
        std::uint64_t word = rng();
        for (int k = 0; k < 32 && i < seq.size(); ++k, ++i) {
            seq[i] = kAlphabet[word & 3u];
            word >>= 2;
        }
    }

    auto place = [&](std::uint64_t position, std::uint64_t length) {
        if (position > seq.size() || length > seq.size() - position) {
            throw ContractViolation("N run [" + std::to_string(position) + ", +" + std::to_string(length) +
                                    ") does not fit in " + entry.name);
        }
        std::fill_n(seq.begin() + static_cast<std::ptrdiff_t>(position), length, 'N');
    };
    std::visit(
        [&](const auto& profile) {
            using P = std::decay_t<decltype(profile)>;
            if constexpr (std::is_same_v<P, LeadingNs>) {
                place(0, profile.length);
            } else if constexpr (std::is_same_v<P, InteriorNs>) {
                place(profile.position, profile.length);
            } else if constexpr (std::is_same_v<P, CustomNRuns>) {
                for (const auto& run : profile.runs) place(run.position, run.length);
            }
        },
        entry.n_runs);
    return seq;
}

std::vector<fs::path> generate_corpus(const SyntheticCorpusSpec& spec, const fs::path& out_dir)
{
    fs::create_directories(out_dir);
    std::vector<fs::path> files;
    for (const auto& entry : spec.entries) {
        const fs::path path = out_dir / (entry.name + ".seq");
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot create " + path.string());
        render(synthesize(entry), 60, out);
        out.close();
        if (!out) throw IoError("failed to write " + path.string());
        files.push_back(path);
    }
    return files;
}

std::string BenchRow::bits_per_base() const { return bases == 0 ? "n/a" : format_ratio(bytes, bases); }

std::string BenchRow::external_bits_per_base() const
{
    if (!external || bases == 0) return "n/a";
    return format_ratio(external->bytes, bases);
}

std::optional<double> CorpusReport::average_bits_per_base() const
{
    return mean_ratio(rows, [](const BenchRow& r) -> std::optional<std::uint64_t> { return r.bytes; });
}

std::optional<double> CorpusReport::average_external_bits_per_base() const
{
    return mean_ratio(rows, [](const BenchRow& r) -> std::optional<std::uint64_t> {
        if (!r.external) return std::nullopt;
        return r.external->bytes;
    });
}

std::string CorpusReport::to_text() const
{
    std::ostringstream out;
    out << std::left << std::setw(24) << "name" << std::right << std::setw(12) << "bases" << std::setw(10) << "n_bases"
        << std::setw(10) << "sections" << std::setw(12) << "bytes" << std::setw(10) << "bits/base" << std::setw(12)
        << "encode_ms" << std::setw(12) << "decode_ms";
    if (external_requested) out << std::setw(12) << "ext_bpb" << std::setw(12) << "ext_ms";
    out << '\n';
    for (const auto& r : rows) {
        out << std::left << std::setw(24) << r.name << std::right << std::setw(12) << r.bases << std::setw(10)
            << r.n_bases << std::setw(10) << r.sections << std::setw(12) << r.bytes << std::setw(10)
            << r.bits_per_base() << std::setw(12) << fixed3(r.encode_ms) << std::setw(12) << fixed3(r.decode_ms);
        if (external_requested) {
            out << std::setw(12) << r.external_bits_per_base() << std::setw(12)
                << (r.external ? fixed3(r.external->ms) : "n/a");
        }
        out << '\n';
    }
    out << std::left << std::setw(24) << "average" << std::right << std::setw(54) << ""
        << std::setw(10) << optional_fixed4(average_bits_per_base());
    if (external_requested) out << std::setw(24) << "" << std::setw(12) << optional_fixed4(average_external_bits_per_base());
    out << '\n';
    return out.str();
}

std::string CorpusReport::to_csv() const
{
    std::ostringstream out;
    out << "name,bases,n_bases,sections,bytes,bits_per_base,encode_ms,decode_ms,ext_bits_per_base,ext_ms\n";
    for (const auto& r : rows) {
        out << r.name << ',' << r.bases << ',' << r.n_bases << ',' << r.sections << ',' << r.bytes << ','
            << r.bits_per_base() << ',' << fixed3(r.encode_ms) << ',' << fixed3(r.decode_ms) << ','
            << r.external_bits_per_base() << ',' << (r.external ? fixed3(r.external->ms) : "n/a") << '\n';
    }
    return out.str();
}

std::string CorpusReport::to_markdown() const
{
    std::ostringstream out;
    out << "| sequence | size | bits/base |";
    if (external_requested) out << " external bits/base |";
    out << "\n|---|---:|---:|";
    if (external_requested) out << "---:|";
    out << '\n';
    for (const auto& r : rows) {
        out << "| " << r.name << " | " << r.bases << " | " << r.bits_per_base() << " |";
        if (external_requested) out << ' ' << r.external_bits_per_base() << " |";
        out << '\n';
    }
    out << "| Average | -- | " << optional_fixed4(average_bits_per_base()) << " |";
    if (external_requested) out << ' ' << optional_fixed4(average_external_bits_per_base()) << " |";
    out << "\n\n| sequence |";
    if (external_requested) out << " external (ms) |";
    out << " encode (ms) | decode (ms) |\n|---|";
    if (external_requested) out << "---:|";
    out << "---:|---:|\n";
    for (const auto& r : rows) {
        out << "| " << r.name << " |";
        if (external_requested) out << ' ' << (r.external ? fixed3(r.external->ms) : "n/a") << " |";
        out << ' ' << fixed3(r.encode_ms) << " | " << fixed3(r.decode_ms) << " |\n";
    }
    return out.str();
}

std::string CorpusReport::to_json() const
{
    nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["name"] = r.name;
        row["bases"] = r.bases;
        row["n_bases"] = r.n_bases;
        row["sections"] = r.sections;
        row["bytes"] = r.bytes;
        row["bits_per_base"] = r.bases == 0 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.bits_per_base());
        row["encode_ms"] = r.encode_ms;
        row["decode_ms"] = r.decode_ms;
        if (r.external) {
            row["ext_bits_per_base"] = r.external_bits_per_base();
            row["ext_ms"] = r.external->ms;
        } else {
            row["ext_bits_per_base"] = nullptr;
            row["ext_ms"] = nullptr;
        }
        rows_json.push_back(std::move(row));
    }
    nlohmann::ordered_json doc;
    doc["rows"] = std::move(rows_json);
    const auto avg = average_bits_per_base();
    doc["average_bits_per_base"] = avg ? nlohmann::ordered_json(fixed4(*avg)) : nlohmann::ordered_json(nullptr);
    return doc.dump(2) + "\n";
}

bool same_except_timing(const CorpusReport& a, const CorpusReport& b)
{
    if (a.rows.size() != b.rows.size() || a.external_requested != b.external_requested) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& x = a.rows[i];
        const auto& y = b.rows[i];
        if (x.name != y.name || x.bases != y.bases || x.n_bases != y.n_bases || x.sections != y.sections ||
            x.bytes != y.bytes || x.predicted_bytes != y.predicted_bytes ||
            x.external.has_value() != y.external.has_value()) {
            return false;
        }
        if (x.external && x.external->bytes != y.external->bytes) return false;
    }
    return true;
}

CorpusReport run_bench(const fs::path& corpus_dir, const BenchOptions& options)
{
    if (options.repeats == 0) throw ContractViolation("repeats must be at least 1");
    if (!fs::is_directory(corpus_dir)) throw IoError("not a directory: " + corpus_dir.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    ScratchDir scratch(options.scratch);
    CorpusReport report;
    report.external_requested = options.external.has_value();
    for (const auto& file : files) report.rows.push_back(bench_file(file, scratch.path, options));
    return report;
}

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw ContractViolation("slope fit needs two or more matched points");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

ScalingResult measure_scaling(std::uint64_t base_bases, std::span<const std::uint64_t> factors, std::size_t repeats,
                              std::uint64_t seed)
{
    if (repeats == 0) throw ContractViolation("repeats must be at least 1");
    ScalingResult result;
    std::vector<double> xs;
    std::vector<double> enc;
    std::vector<double> dec;
    for (const std::uint64_t f : factors) {
        const std::string seq = synthesize({"scaling", base_bases * f, NoNRuns{}, seed});
        std::vector<double> enc_times;
        std::vector<double> dec_times;
        for (std::size_t r = 0; r < repeats; ++r) {
            std::ostringstream out(std::ios::binary);
            auto start = Clock::now();
            compress(seq, out);
            enc_times.push_back(ms_since(start));

            const std::string packed = std::move(out).str();
            std::istringstream in(packed, std::ios::binary);
            CountingSink sink;
            start = Clock::now();
            decompress(in, sink);
            dec_times.push_back(ms_since(start));
            if (sink.count() != seq.size()) throw RoundTripMismatch("decoded length mismatch in scaling run");
            if (r == 0) {
                std::istringstream again(packed, std::ios::binary);
                StringSymbolSink check;
                decompress(again, check);
                if (check.str() != seq) throw RoundTripMismatch("round trip mismatch in scaling run");
            }
        }
        result.points.push_back({base_bases * f, median(enc_times), median(dec_times)});
        xs.push_back(static_cast<double>(base_bases * f));
        enc.push_back(result.points.back().encode_ms);
        dec.push_back(result.points.back().decode_ms);
    }
    result.encode_slope = loglog_slope(xs, enc);
    result.decode_slope = loglog_slope(xs, dec);
    return result;
}

double median(std::vector<double> values)
{
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

}  // namespace dnapack::bench
