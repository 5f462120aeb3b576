#include "dnapack/stream_codec.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "dnapack/base_codec.hpp"
#include "dnapack/error.hpp"

namespace dnapack {

namespace {

constexpr std::size_t kChunk = 64 * 1024;

using Clock = std::chrono::steady_clock;

// Streams sections to the sink. In patch mode payload bytes pass through a
// fixed chunk buffer and the head is filled in afterwards; in buffer mode the
// whole payload of the current section is held until the section closes.
class SectionWriter
{
public:
    SectionWriter(std::ostream& sink, bool patch, const SectionLimits& limits)
        : sink_(sink), patch_(patch), max_ns_(limits.max_ns), max_bases_(limits.max_bases)
    {
        if (patch_) {
            origin_ = sink_.tellp();
            payload_.reserve(kChunk);
        }
    }

    void feed(std::span<const char> symbols, std::uint64_t offset)
    {
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            const char c = symbols[i];
            const std::uint8_t code = detail::kCodeOf[static_cast<unsigned char>(c)];
            if (code != detail::kNotABase) {
                if (b_ == max_bases_) close();
                if (!open_) open();
                acc_ = static_cast<std::uint8_t>((acc_ << 2) | code);
                if ((++b_ & 3u) == 0) {
                    push(acc_);
                    acc_ = 0;
                }
            } else if (c == 'N') {
                if (b_ > 0 || n_ == max_ns_) close();
                if (!open_) open();
                ++n_;
                ++stats_.n_bases;
            } else {
                throw InvalidSymbolError(c, offset + i);
            }
        }
        stats_.bases += symbols.size();
    }

    CodecStats finish()
    {
        if (open_) close();
        sink_.flush();
        if (!sink_) throw IoError("failed to flush compressed output");
        return stats_;
    }

private:
    void open()
    {
        open_ = true;
        if (patch_) {
            head_at_ = written_;
            static constexpr HeaderBytes kBlank{};
            put(kBlank.data(), kBlank.size());
        }
    }

    void push(std::uint8_t byte)
    {
        payload_.push_back(byte);
        if (payload_.size() > stats_.peak_buffer_bytes) stats_.peak_buffer_bytes = payload_.size();
        if (patch_ && payload_.size() == kChunk) flush_payload();
    }

    void flush_payload()
    {
        put(payload_.data(), payload_.size());
        payload_.clear();
    }

    void close()
    {
        if (const auto tail = b_ & 3u; tail != 0) {
            push(static_cast<std::uint8_t>(acc_ << (2 * (4 - tail))));
            acc_ = 0;
        }
        const auto head = write_header({static_cast<std::uint32_t>(n_), static_cast<std::uint32_t>(b_)});
        if (patch_) {
            flush_payload();
            sink_.seekp(origin_ + static_cast<std::streamoff>(head_at_));
            sink_.write(reinterpret_cast<const char*>(head.data()), head.size());
            sink_.seekp(origin_ + static_cast<std::streamoff>(written_));
            if (!sink_) throw IoError("failed to patch section head in compressed output");
        } else {
            put(head.data(), head.size());
            flush_payload();
        }
        ++stats_.sections;
        stats_.compressed_bytes = written_;
        n_ = 0;
        b_ = 0;
        open_ = false;
    }

    void put(const std::uint8_t* data, std::size_t size)
    {
        sink_.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
        if (!sink_) throw IoError("failed to write compressed output");
        written_ += size;
    }

    std::ostream& sink_;
    bool patch_;
    std::uint64_t max_ns_;
    std::uint64_t max_bases_;
    std::streampos origin_{};
    std::uint64_t written_ = 0;
    std::uint64_t head_at_ = 0;
    std::vector<std::uint8_t> payload_;
    std::uint64_t n_ = 0;
    std::uint64_t b_ = 0;
    std::uint8_t acc_ = 0;
    bool open_ = false;
    CodecStats stats_;
};

// Reads until `out` is full or the stream ends; returns the count read.
std::size_t read_fully(std::istream& in, std::uint8_t* out, std::size_t size)
{
    std::size_t got = 0;
    while (got < size && in) {
        in.read(reinterpret_cast<char*>(out + got), static_cast<std::streamsize>(size - got));
        got += static_cast<std::size_t>(in.gcount());
    }
    if (in.bad()) throw IoError("failed to read compressed input");
    return got;
}

constexpr std::array<std::array<char, 4>, 256> make_quad_table()
{
    std::array<std::array<char, 4>, 256> table{};
    for (std::size_t byte = 0; byte < 256; ++byte) {
        for (std::size_t i = 0; i < 4; ++i) {
            table[byte][i] = decode_base(static_cast<std::uint8_t>(byte >> (6 - 2 * i)));
        }
    }
    return table;
}

constexpr auto kQuadTable = make_quad_table();

// Walks sections one at a time. The visitor sees each head and then the
// payload in chunks; it decides what to do with the bytes.
template <typename OnHeader, typename OnPayload>
void walk_sections(std::istream& source, CodecStats& stats, OnHeader&& on_header, OnPayload&& on_payload)
{
    std::array<std::uint8_t, kHeaderBytes> head_buf{};
    std::vector<std::uint8_t> chunk(kChunk);
    std::uint64_t offset = 0;
    for (;;) {
        const std::size_t got = read_fully(source, head_buf.data(), head_buf.size());
        if (got == 0) break;
        if (got < kHeaderBytes) throw TruncatedHeaderError(offset, got);
        const SectionHeader h = read_header(head_buf);
        on_header(h);

        const std::uint64_t need = payload_bytes(h.b_count);
        std::uint64_t done = 0;
        std::uint64_t bases_left = h.b_count;
        while (done < need) {
            const auto want = static_cast<std::size_t>(std::min<std::uint64_t>(need - done, chunk.size()));
            const std::size_t n = read_fully(source, chunk.data(), want);
            done += n;
            if (n < want) throw TruncatedPayloadError(offset, need, done);
            const std::uint64_t bases = std::min<std::uint64_t>(bases_left, std::uint64_t{n} * 4);
            on_payload(std::span<const std::uint8_t>(chunk.data(), n), bases);
            bases_left -= bases;
        }

        ++stats.sections;
        stats.n_bases += h.n_count;
        stats.bases += std::uint64_t{h.n_count} + h.b_count;
        offset += kHeaderBytes + need;
        stats.compressed_bytes = offset;
    }
}

}  // namespace

std::size_t MemorySymbolSource::read(std::span<char> out)
{
    const std::size_t n = std::min(out.size(), rest_.size());
    std::copy_n(rest_.data(), n, out.data());
    rest_.remove_prefix(n);
    return n;
}

void OstreamSymbolSink::write(std::string_view symbols)
{
    out_.write(symbols.data(), static_cast<std::streamsize>(symbols.size()));
    if (!out_) throw IoError("failed to write decompressed output");
}

CodecStats compress(SymbolSource& source, std::ostream& sink, const CompressOptions& options)
{
    options.limits.validate();
    const auto start = Clock::now();
    bool patch = options.mode == SinkMode::PatchInPlace;
    if (options.mode == SinkMode::Auto) patch = sink.tellp() != std::streampos(-1);
    if (patch && sink.tellp() == std::streampos(-1)) {
        throw ContractViolation("patch-in-place compression needs a seekable sink");
    }

    SectionWriter writer(sink, patch, options.limits);
    std::vector<char> buf(kChunk);
    std::uint64_t offset = 0;
    while (const std::size_t n = source.read(buf)) {
        writer.feed(std::span<const char>(buf.data(), n), offset);
        offset += n;
    }
    CodecStats stats = writer.finish();
    stats.elapsed = Clock::now() - start;
    return stats;
}

CodecStats compress(std::string_view symbols, std::ostream& sink, const CompressOptions& options)
{
    MemorySymbolSource source(symbols);
    return compress(source, sink, options);
}

CodecStats decompress(std::istream& source, SymbolSink& sink)
{
    const auto start = Clock::now();
    CodecStats stats;
    std::string out;
    out.reserve(kChunk * 4);
    const std::string ns(kChunk, 'N');

    walk_sections(
        source, stats,
        [&](const SectionHeader& h) {
            for (std::uint64_t left = h.n_count; left > 0;) {
                const auto n = static_cast<std::size_t>(std::min<std::uint64_t>(left, ns.size()));
                sink.write(std::string_view(ns.data(), n));
                left -= n;
            }
        },
        [&](std::span<const std::uint8_t> payload, std::uint64_t bases) {
            out.resize(payload.size() * 4);
            char* p = out.data();
            for (const std::uint8_t byte : payload) {
                std::copy_n(kQuadTable[byte].data(), 4, p);
                p += 4;
            }
            sink.write(std::string_view(out.data(), static_cast<std::size_t>(bases)));
            stats.peak_buffer_bytes = std::max<std::uint64_t>(stats.peak_buffer_bytes, payload.size());
        });

    stats.elapsed = Clock::now() - start;
    return stats;
}

std::vector<std::uint8_t> compress_to_bytes(std::string_view symbols, const CompressOptions& options)
{
    std::ostringstream out(std::ios::binary);
    compress(symbols, out, options);
    const std::string s = std::move(out).str();
    return {s.begin(), s.end()};
}

std::string decompress_bytes(std::span<const std::uint8_t> bytes)
{
    std::istringstream in(std::string(bytes.begin(), bytes.end()), std::ios::binary);
    StringSymbolSink sink;
    decompress(in, sink);
    return sink.take();
}

VerifyReport verify(std::istream& source, const VerifyOptions& options)
{
    VerifyReport report;
    CodecStats stats;
    std::uint64_t effective_in_last = 0;
    try {
        walk_sections(
            source, stats, [&](const SectionHeader& h) { effective_in_last = h.b_count % kBasesPerByte; },
            [&](std::span<const std::uint8_t> payload, std::uint64_t bases) {
                // Only the section's final byte can carry padding.
                if (effective_in_last == 0 || bases == std::uint64_t{payload.size()} * 4) return;
                if ((payload.back() & padding_mask(effective_in_last)) != 0) {
                    report.canonical_padding = false;
                    ++report.non_canonical_sections;
                }
            });
    } catch (const FormatError& e) {
        if (!options.permissive) throw;
        report.well_formed = false;
        report.problem = dynamic_cast<const TruncatedHeaderError*>(&e) != nullptr ? StreamProblem::TruncatedHeader
                                                                                  : StreamProblem::TruncatedPayload;
        report.message = e.what();
    }
    report.sections = stats.sections;
    report.bases = stats.bases;
    report.n_bases = stats.n_bases;
    report.bytes = stats.compressed_bytes;
    return report;
}

VerifyReport verify_bytes(std::span<const std::uint8_t> bytes, const VerifyOptions& options)
{
    std::istringstream in(std::string(bytes.begin(), bytes.end()), std::ios::binary);
    return verify(in, options);
}

}  // namespace dnapack
