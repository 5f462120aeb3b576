#ifndef DNAPACK_STREAM_CODEC_HPP
#define DNAPACK_STREAM_CODEC_HPP

// Single-pass compression and decompression over the section format.
//
// File layout (bit-exact): zero or more sections, each an 8-byte head
// (N count, base count; 32-bit little-endian) followed by ceil(b/4) payload
// bytes, earliest base in the high bits, zero padding in the low bits of the
// final byte. No magic, global header, or trailer.

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnapack/section_model.hpp"

namespace dnapack {

/// Pull-style producer of normalized symbols.
class SymbolSource
{
public:
    virtual ~SymbolSource() = default;

    /// Fill a prefix of `out`; returning 0 means end of input.
    virtual std::size_t read(std::span<char> out) = 0;
};

/// Push-style consumer of decoded symbols.
class SymbolSink
{
public:
    virtual ~SymbolSink() = default;
    virtual void write(std::string_view symbols) = 0;
};

class MemorySymbolSource final : public SymbolSource
{
public:
    explicit MemorySymbolSource(std::string_view symbols) : rest_(symbols) {}
    std::size_t read(std::span<char> out) override;

private:
    std::string_view rest_;
};

class StringSymbolSink final : public SymbolSink
{
public:
    void write(std::string_view symbols) override { out_.append(symbols); }
    const std::string& str() const noexcept { return out_; }
    std::string take() noexcept { return std::move(out_); }

private:
    std::string out_;
};

/// Writes raw symbols to a byte stream, throwing IoError on failure.
class OstreamSymbolSink final : public SymbolSink
{
public:
    explicit OstreamSymbolSink(std::ostream& out) : out_(out) {}
    void write(std::string_view symbols) override;

private:
    std::ostream& out_;
};

struct CodecStats
{
    std::uint64_t bases = 0;  ///< all symbols, N included
    std::uint64_t n_bases = 0;
    std::uint64_t sections = 0;
    std::uint64_t compressed_bytes = 0;  ///< written by compress, consumed by decompress
    std::uint64_t peak_buffer_bytes = 0;  ///< largest payload buffer held at once
    std::chrono::nanoseconds elapsed{0};
};

enum class SinkMode {
    Auto,           ///< patch when the sink reports a position, otherwise buffer
    PatchInPlace,   ///< reserve the head, stream the payload, seek back to fill the head
    BufferSection,  ///< hold one section's payload and emit head then payload
};

struct CompressOptions
{
    SinkMode mode = SinkMode::Auto;
    SectionLimits limits = kDefaultLimits;
};

/// On error the sink holds partial, invalid output.
CodecStats compress(SymbolSource& source, std::ostream& sink, const CompressOptions& options = {});
CodecStats compress(std::string_view symbols, std::ostream& sink, const CompressOptions& options = {});

CodecStats decompress(std::istream& source, SymbolSink& sink);

std::vector<std::uint8_t> compress_to_bytes(std::string_view symbols, const CompressOptions& options = {});
std::string decompress_bytes(std::span<const std::uint8_t> bytes);

enum class StreamProblem { None, TruncatedHeader, TruncatedPayload };

struct VerifyReport
{
    bool well_formed = true;
    std::uint64_t sections = 0;
    std::uint64_t bases = 0;
    std::uint64_t n_bases = 0;
    std::uint64_t bytes = 0;
    bool canonical_padding = true;
    std::uint64_t non_canonical_sections = 0;
    StreamProblem problem = StreamProblem::None;
    std::string message;
};

struct VerifyOptions
{
    /// Record structural errors in the report instead of throwing.
    bool permissive = false;
};

VerifyReport verify(std::istream& source, const VerifyOptions& options = {});
VerifyReport verify_bytes(std::span<const std::uint8_t> bytes, const VerifyOptions& options = {});

}  // namespace dnapack

#endif  // DNAPACK_STREAM_CODEC_HPP
