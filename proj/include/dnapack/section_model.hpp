#ifndef DNAPACK_SECTION_MODEL_HPP
#define DNAPACK_SECTION_MODEL_HPP

// A section is a run of Ns followed by the run of non-N bases that ends just
// before the next N. On disk each section is an 8-byte head (N count, then
// base count, both 32-bit little-endian) followed by ceil(b/4) payload bytes.

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnapack/error.hpp"

namespace dnapack {

inline constexpr std::size_t kHeaderBytes = 8;

struct SectionHeader
{
    std::uint32_t n_count = 0;
    std::uint32_t b_count = 0;

    friend bool operator==(const SectionHeader&, const SectionHeader&) = default;
};

using HeaderBytes = std::array<std::uint8_t, kHeaderBytes>;

HeaderBytes write_header(SectionHeader header) noexcept;

/// Throws TruncatedHeaderError when fewer than 8 bytes are given.
SectionHeader read_header(std::span<const std::uint8_t> bytes);

/// Per-section field limits. Non-N runs are split at `max_bases`, which must be
/// a nonzero multiple of 4 so split payloads need no interior padding.
struct SectionLimits
{
    std::uint32_t max_ns = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t max_bases = std::numeric_limits<std::uint32_t>::max() - 3;

    /// Throws ContractViolation for a zero or non-multiple-of-4 split point.
    void validate() const;
};

inline constexpr SectionLimits kDefaultLimits{};

struct Section
{
    SectionHeader header;
    std::string bases;

    friend bool operator==(const Section&, const Section&) = default;
};

using SectionList = std::vector<Section>;

/// Greedy partition of a sequence over {A,C,G,T,N}. Throws InvalidSymbolError.
SectionList sectionize(std::string_view sequence, const SectionLimits& limits = kDefaultLimits);

/// Concatenate each section's Ns and bases.
std::string reconstruct(const SectionList& sections);

constexpr std::uint64_t payload_bytes(std::uint64_t b_count) noexcept { return (b_count + 3) / 4; }

constexpr std::uint64_t section_bytes(SectionHeader header) noexcept
{
    return kHeaderBytes + payload_bytes(header.b_count);
}

/// Exact encoded size: sum over sections of 8 + ceil(b/4).
std::uint64_t compressed_size_bytes(const SectionList& sections) noexcept;

/// 8 * compressed bytes / total bases. Throws UndefinedRatioError for zero bases.
double compression_ratio(std::uint64_t compressed_bytes, std::uint64_t total_bases);
double compression_ratio(const SectionList& sections, std::uint64_t total_bases);

/// Bits per base scaled by 10^4 and rounded half-to-even, computed exactly in
/// integer arithmetic (20005 means 2.0005).
std::uint64_t ratio_e4(std::uint64_t compressed_bytes, std::uint64_t total_bases);

/// Four-decimal rendering of ratio_e4, e.g. "2.0005".
std::string format_ratio(std::uint64_t compressed_bytes, std::uint64_t total_bases);

}  // namespace dnapack

#endif  // DNAPACK_SECTION_MODEL_HPP
