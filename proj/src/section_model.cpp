#include "dnapack/section_model.hpp"

#include "dnapack/base_codec.hpp"
#include "dnapack/error.hpp"

namespace dnapack {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

HeaderBytes write_header(SectionHeader header) noexcept
{
    HeaderBytes out{};
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] = static_cast<std::uint8_t>(header.n_count >> (8 * i));
        out[4 + i] = static_cast<std::uint8_t>(header.b_count >> (8 * i));
    }
    return out;
}

SectionHeader read_header(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kHeaderBytes) throw TruncatedHeaderError(0, bytes.size());
    SectionHeader h;
    for (std::size_t i = 0; i < 4; ++i) {
        h.n_count |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
        h.b_count |= static_cast<std::uint32_t>(bytes[4 + i]) << (8 * i);
    }
    return h;
}

void SectionLimits::validate() const
{
    if (max_ns == 0) throw ContractViolation("section N limit must be nonzero");
    if (max_bases == 0 || max_bases % kBasesPerByte != 0) {
        throw ContractViolation("section base limit must be a nonzero multiple of 4, got " +
                                std::to_string(max_bases));
    }
}

SectionList sectionize(std::string_view sequence, const SectionLimits& limits)
{
    limits.validate();
    SectionList sections;
    std::size_t i = 0;
    const std::size_t size = sequence.size();
    while (i < size) {
        std::uint64_t ns = 0;
        while (i < size && sequence[i] == 'N') {
            ++ns;
            ++i;
        }
        while (ns > limits.max_ns) {
            sections.push_back({{limits.max_ns, 0}, {}});
            ns -= limits.max_ns;
        }

        const std::size_t run_start = i;
        while (i < size && sequence[i] != 'N') {
            if (!is_base_symbol(sequence[i])) throw InvalidSymbolError(sequence[i], i);
            ++i;
        }
        std::string_view run = sequence.substr(run_start, i - run_start);

        // The remainder of the N-run opens the first section of this base run.
        auto lead_ns = static_cast<std::uint32_t>(ns);
        do {
            const std::size_t take = std::min<std::size_t>(run.size(), limits.max_bases);
            if (lead_ns == 0 && take == 0) break;
            sections.push_back({{lead_ns, static_cast<std::uint32_t>(take)}, std::string(run.substr(0, take))});
            run.remove_prefix(take);
            lead_ns = 0;
        } while (!run.empty());
    }
    return sections;
}

std::string reconstruct(const SectionList& sections)
{
    std::string out;
    for (const auto& s : sections) {
        out.append(s.header.n_count, 'N');
        out += s.bases;
    }
    return out;
}

std::uint64_t compressed_size_bytes(const SectionList& sections) noexcept
{
    std::uint64_t total = 0;
    for (const auto& s : sections) total += section_bytes(s.header);
    return total;
}

double compression_ratio(std::uint64_t compressed_bytes, std::uint64_t total_bases)
{
    if (total_bases == 0) throw UndefinedRatioError();
    return 8.0 * static_cast<double>(compressed_bytes) / static_cast<double>(total_bases);
}

double compression_ratio(const SectionList& sections, std::uint64_t total_bases)
{
    return compression_ratio(compressed_size_bytes(sections), total_bases);
}

std::uint64_t ratio_e4(std::uint64_t compressed_bytes, std::uint64_t total_bases)
{
    if (total_bases == 0) throw UndefinedRatioError();
    const u128 scaled = static_cast<u128>(compressed_bytes) * 80000u;
    auto quotient = static_cast<std::uint64_t>(scaled / total_bases);
    const auto twice_rem = 2 * static_cast<u128>(scaled % total_bases);
    if (twice_rem > total_bases || (twice_rem == total_bases && (quotient & 1u))) ++quotient;
    return quotient;
}

std::string format_ratio(std::uint64_t compressed_bytes, std::uint64_t total_bases)
{
    const std::uint64_t v = ratio_e4(compressed_bytes, total_bases);
    std::string frac = std::to_string(v % 10000);
    frac.insert(0, 4 - frac.size(), '0');
    return std::to_string(v / 10000) + "." + frac;
}

}  // namespace dnapack
