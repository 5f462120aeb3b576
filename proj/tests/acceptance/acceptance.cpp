// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "dnapack/bench_harness.hpp"
#include "dnapack/section_model.hpp"
#include "dnapack/stream_codec.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

#ifndef DNAPACK_CLI_PATH
#error "DNAPACK_CLI_PATH must name the dnapack executable"
#endif

namespace fs = std::filesystem;
using namespace dnapack;

namespace {

using Clock = std::chrono::steady_clock;
using Bytes = std::vector<std::uint8_t>;

struct Outcome
{
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) detail.clear();
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double v, int precision = 3)
{
    std::ostringstream out;
    out << std::fixed;
    out.precision(precision);
    out << v;
    return out.str();
}

struct TempDir
{
    fs::path path = fs::temp_directory_path() / ("dnapack-accept-" + std::to_string(std::random_device{}()));
    TempDir() { fs::create_directories(path); }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

// The shared random population for criteria 2 and 3: 1000 sequences, 250 per N probability.
std::vector<std::string> random_population()
{
    std::mt19937_64 rng(20240611);
    std::vector<std::string> out;
    for (double p : {0.0, 0.01, 0.5, 1.0}) {
        for (int i = 0; i < 250; ++i) out.push_back(testgen::random_sequence(rng, rng() % 10001, p));
    }
    return out;
}

Outcome ratio_reproduction()
{
    Outcome o;
    const auto start = Clock::now();
    const std::vector<std::pair<std::uint64_t, std::string>> expected = {
        {9647, "2.0068"}, {121024, "2.0005"}, {155939, "2.0004"}, {229354, "2.0003"}, {22432531, "2.0000"}};
    for (const auto& [length, ratio] : expected) {
        const std::string seq = bench::synthesize({"table1", length, bench::NoNRuns{}, 1});
        std::ostringstream out(std::ios::binary);
        const CodecStats stats = compress(seq, out);
        const std::uint64_t bytes = out.str().size();
        const std::string got = format_ratio(bytes, stats.bases);
        const double err = std::abs(compression_ratio(bytes, stats.bases) - std::stod(ratio));
        if (got != ratio || err > 0.00005) o.fail(std::to_string(length) + " -> " + got + " (want " + ratio + ")");
    }
    const double secs = seconds_since(start);
    if (secs >= 10.0) o.fail("took " + fmt(secs) + " s");
    if (o.pass) o.detail = "5/5 lengths rounding-exact in " + fmt(secs) + " s";
    return o;
}

Outcome exact_size_law(const std::vector<std::string>& population)
{
    Outcome o;
    for (const auto& s : population) {
        std::uint64_t law = 0;
        for (const auto& sec : sectionize(s)) law += 8 + (std::uint64_t{sec.header.b_count} + 3) / 4;
        const std::uint64_t actual = compress_to_bytes(s).size();
        if (actual != law) {
            o.fail("length " + std::to_string(s.size()) + ": " + std::to_string(actual) + " != " + std::to_string(law));
            break;
        }
    }
    if (o.pass) o.detail = std::to_string(population.size()) + " sequences, zero mismatches";
    return o;
}

Outcome lossless_round_trip(const std::vector<std::string>& population)
{
    Outcome o;
    std::vector<std::string> cases = population;
    const auto adversarial = testgen::adversarial_sequences();
    cases.insert(cases.end(), adversarial.begin(), adversarial.end());
    for (const auto& s : cases) {
        if (decompress_bytes(compress_to_bytes(s)) != s) {
            o.fail("mismatch at length " + std::to_string(s.size()));
            break;
        }
    }
    if (o.pass) o.detail = std::to_string(cases.size()) + " sequences (" + std::to_string(adversarial.size()) +
                           " adversarial), all exact";
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    auto cases = testgen::all_sequences_up_to(4, "ACGTN");
    if (cases.size() != 781) o.fail("enumerated " + std::to_string(cases.size()) + " short sequences, want 781");
    std::mt19937_64 rng(404);
    for (int i = 0; i < 200; ++i) cases.push_back(testgen::random_sequence(rng, rng() % 257, 0.15));
    for (const auto& s : cases) {
        if (compress_to_bytes(s) != oracle::naive_compress(s)) {
            o.fail("differs on \"" + s.substr(0, 40) + "\"");
            break;
        }
    }
    if (o.pass) o.detail = std::to_string(cases.size()) + " sequences byte-identical";
    return o;
}

Outcome golden_fixtures()
{
    Outcome o;
    const Bytes atgc{0, 0, 0, 0, 4, 0, 0, 0, 0x1B};
    const Bytes n{1, 0, 0, 0, 0, 0, 0, 0};
    if (oracle::naive_compress("ATGC") != atgc || oracle::naive_compress("N") != n) o.fail("oracle disagrees");
    if (compress_to_bytes("ATGC") != atgc) o.fail("ATGC encodes wrong");
    if (compress_to_bytes("N") != n) o.fail("N encodes wrong");
    if (decompress_bytes(atgc) != "ATGC") o.fail("ATGC decodes wrong");
    if (decompress_bytes(n) != "N") o.fail("N decodes wrong");
    if (o.pass) o.detail = "ATGC and N bit-exact both ways";
    return o;
}

Outcome throughput()
{
    Outcome o;
    constexpr std::uint64_t kBases = 22'400'000;
    TempDir dir;
    const fs::path packed = dir.path / "big.dfc";
    const std::string seq = bench::synthesize({"big", kBases, bench::NoNRuns{}, 7});

    auto start = Clock::now();
    {
        std::ofstream out(packed, std::ios::binary);
        compress(seq, out);
    }
    const double enc = seconds_since(start);

    start = Clock::now();
    StringSymbolSink sink;
    {
        std::ifstream in(packed, std::ios::binary);
        decompress(in, sink);
    }
    const double dec = seconds_since(start);
    if (sink.str() != seq) o.fail("round trip mismatch");
    if (enc >= 2.0) o.fail("encode " + fmt(enc) + " s");
    if (dec >= 2.0) o.fail("decode " + fmt(dec) + " s");

    const std::vector<std::uint64_t> factors = {1, 4, 16};
    const auto scaling = bench::measure_scaling(kBases / 16, factors, 11);
    for (const auto& [label, slope] : {std::pair{"encode", scaling.encode_slope}, {"decode", scaling.decode_slope}}) {
        if (slope < 0.8 || slope > 1.2) o.fail(std::string(label) + " slope " + fmt(slope));
    }
    if (o.pass) {
        o.detail = "encode " + fmt(enc) + " s, decode " + fmt(dec) + " s; slopes " + fmt(scaling.encode_slope) +
                   " / " + fmt(scaling.decode_slope);
    }
    return o;
}

Outcome truncation_sweep()
{
    Outcome o;
    const Bytes full = compress_to_bytes("ATGC");
    int checked = 0;
    for (std::size_t cut = 1; cut < full.size(); ++cut) {
        const Bytes part(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(cut));
        const bool in_head = cut < kHeaderBytes;
        try {
            decompress_bytes(part);
            o.fail("cut at " + std::to_string(cut) + " decoded silently");
        } catch (const TruncatedHeaderError&) {
            if (!in_head) o.fail("cut at " + std::to_string(cut) + " reported as header truncation");
        } catch (const TruncatedPayloadError&) {
            if (in_head) o.fail("cut at " + std::to_string(cut) + " reported as payload truncation");
        }
        ++checked;
    }
    if (checked != 8) o.fail("swept " + std::to_string(checked) + " cuts, want 8");
    if (o.pass) o.detail = "8/8 truncation points detected with the right error";
    return o;
}

int shell(const std::string& command)
{
    const int status = std::system(command.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_contract()
{
    Outcome o;
    TempDir dir;
    const std::string cli = DNAPACK_CLI_PATH;
    const std::string d = dir.path.string();
    const auto quiet = [](const std::string& cmd) { return "{ " + cmd + "; } >/dev/null 2>&1"; };
    {
        std::ofstream(dir.path / "in.seq") << bench::synthesize({"in", 121024, bench::NoNRuns{}, 3}) << "\nNNNACGT\n";
        std::ofstream(dir.path / "bad.seq") << std::string(500000, 'C') << "Q\n";
    }

    const auto expect = [&](const std::string& what, const std::string& cmd, int want) {
        const int got = shell(quiet(cmd));
        if (got != want) o.fail(what + " exited " + std::to_string(got) + ", want " + std::to_string(want));
    };

    expect("compress", cli + " compress " + d + "/in.seq -o " + d + "/in.dfc", 0);
    expect("decompress", cli + " decompress " + d + "/in.dfc -o " + d + "/out.seq", 0);
    expect("missing input", cli + " compress " + d + "/nope.seq -o " + d + "/nope.dfc", 1);
    {
        std::string packed = slurp(dir.path / "in.dfc");
        packed.pop_back();
        std::ofstream(dir.path / "cut.dfc", std::ios::binary) << packed;
    }
    expect("verify truncated", cli + " verify " + d + "/cut.dfc", 2);
    expect("invalid symbol", cli + " compress " + d + "/bad.seq -o " + d + "/bad.dfc", 3);
    expect("usage", cli + " compress " + d + "/in.seq", 64);

    if (fs::exists(dir.path / "bad.dfc")) o.fail("partial output left after failed compress");
    for (const auto& entry : fs::directory_iterator(dir.path)) {
        if (entry.path().filename().string().find(".tmp-") != std::string::npos) o.fail("temp file left behind");
    }

    expect("stdio compress", "cat " + d + "/in.seq | " + cli + " compress - -o - > " + d + "/piped.dfc", 0);
    if (slurp(dir.path / "piped.dfc") != slurp(dir.path / "in.dfc")) o.fail("stdout differs from file mode");
    expect("stdio decompress", "cat " + d + "/in.dfc | " + cli + " decompress - -o - > " + d + "/piped.seq", 0);
    if (slurp(dir.path / "piped.seq") != slurp(dir.path / "out.seq")) o.fail("stdout decode differs from file mode");

    const std::string normalized = slurp(dir.path / "out.seq");
    if (normalized.size() != 121024 + 7 || normalized.substr(121024) != "NNNACGT") o.fail("decoded content wrong");

    if (o.pass) o.detail = "exit codes 0/1/2/3/64, atomic output, stdio byte-identical";
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::string> population = random_population();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1 ratio reproduction", ratio_reproduction},
        {"AC2 exact size law", [&] { return exact_size_law(population); }},
        {"AC3 lossless round trip", [&] { return lossless_round_trip(population); }},
        {"AC4 oracle equivalence", oracle_equivalence},
        {"AC5 golden fixtures", golden_fixtures},
        {"AC6 throughput floor and scaling", throughput},
        {"AC7 structural error detection", truncation_sweep},
        {"AC8 CLI contract", cli_contract},
    };

    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
        if (!o.pass) ++failures;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
