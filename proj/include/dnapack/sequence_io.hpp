#ifndef DNAPACK_SEQUENCE_IO_HPP
#define DNAPACK_SEQUENCE_IO_HPP

// Text in, text out. All alphabet and whitespace policy lives here so the
// codec only ever sees uppercase A, C, G, T and N. Line breaks, case and FASTA
// headers are not preserved by a round trip.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dnapack/stream_codec.hpp"

namespace dnapack {

struct IngestPolicy
{
    bool fasta_mode = false;  ///< drop lines that begin with '>'
    bool case_fold = true;
    bool iupac_to_n = false;  ///< R Y S W K M B D H V become N
    bool strict = true;

    /// strict and iupac_to_n cannot both be set.
    void validate() const;

    /// Policy that maps ambiguity codes to N (and so is not strict).
    static IngestPolicy lenient()
    {
        IngestPolicy p;
        p.iupac_to_n = true;
        p.strict = false;
        return p;
    }
};

struct NormalizationLog
{
    std::uint64_t case_folded = 0;
    std::uint64_t whitespace_stripped = 0;
    std::uint64_t header_lines_dropped = 0;
    std::uint64_t iupac_substituted = 0;

    friend bool operator==(const NormalizationLog&, const NormalizationLog&) = default;
};

struct NormalizedSequence
{
    std::string symbols;
    NormalizationLog origin;
};

/// Streams normalized symbols out of raw or FASTA text. Throws IngestError on
/// the first rejected character.
class TextIngestor final : public SymbolSource
{
public:
    TextIngestor(std::istream& in, IngestPolicy policy);

    std::size_t read(std::span<char> out) override;

    const NormalizationLog& log() const noexcept { return log_; }

private:
    bool refill();

    std::istream& in_;
    IngestPolicy policy_;
    NormalizationLog log_;
    std::vector<char> raw_;
    std::size_t raw_pos_ = 0;
    std::size_t raw_len_ = 0;
    std::uint64_t offset_ = 0;
    std::uint64_t line_ = 1;
    std::uint64_t column_ = 0;
    bool at_line_start_ = true;
    bool in_header_ = false;
};

NormalizedSequence ingest(std::istream& text, const IngestPolicy& policy = {});
NormalizedSequence ingest(std::string_view text, const IngestPolicy& policy = {});

/// True when the first non-whitespace character is '>'.
bool looks_like_fasta(std::string_view text);

/// Writes uppercase symbols, optionally wrapped to `line_width` with a final LF.
class TextRenderer final : public SymbolSink
{
public:
    TextRenderer(std::ostream& out, std::optional<std::size_t> line_width);

    void write(std::string_view symbols) override;

    /// Terminate a partial last line. Returns total bytes written.
    std::uint64_t finish();

private:
    void put(std::string_view bytes);

    std::ostream& out_;
    std::optional<std::size_t> width_;
    std::size_t column_ = 0;
    std::uint64_t written_ = 0;
    std::string staging_;
};

std::uint64_t render(std::string_view symbols, std::optional<std::size_t> line_width, std::ostream& sink);

}  // namespace dnapack

#endif  // DNAPACK_SEQUENCE_IO_HPP
