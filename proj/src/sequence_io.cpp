#include "dnapack/sequence_io.hpp"

#include <array>
#include <sstream>

#include "dnapack/error.hpp"

namespace dnapack {

namespace {

constexpr std::size_t kRawChunk = 64 * 1024;

enum class CharClass : std::uint8_t { Reject, Symbol, Lower, Iupac, LowerIupac, Space, Newline };

constexpr std::array<CharClass, 256> make_class_table()
{
    std::array<CharClass, 256> t{};
    for (auto& c : t) c = CharClass::Reject;
    for (char c : std::string_view("ACGTN")) {
        t[static_cast<unsigned char>(c)] = CharClass::Symbol;
        t[static_cast<unsigned char>(c - 'A' + 'a')] = CharClass::Lower;
    }
    for (char c : std::string_view("RYSWKMBDHV")) {
        t[static_cast<unsigned char>(c)] = CharClass::Iupac;
        t[static_cast<unsigned char>(c - 'A' + 'a')] = CharClass::LowerIupac;
    }
    t[' '] = CharClass::Space;
    t['\t'] = CharClass::Space;
    t['\r'] = CharClass::Space;
    t['\n'] = CharClass::Newline;
    return t;
}

constexpr auto kClass = make_class_table();

constexpr char upper(char c) { return static_cast<char>(c - 'a' + 'A'); }

}  // namespace

void IngestPolicy::validate() const
{
    if (strict && iupac_to_n) throw ContractViolation("ingest policy cannot be both strict and iupac-to-N");
}

TextIngestor::TextIngestor(std::istream& in, IngestPolicy policy) : in_(in), policy_(policy), raw_(kRawChunk)
{
    policy_.validate();
}

bool TextIngestor::refill()
{
    in_.read(raw_.data(), static_cast<std::streamsize>(raw_.size()));
    raw_len_ = static_cast<std::size_t>(in_.gcount());
    raw_pos_ = 0;
    if (in_.bad()) throw IoError("failed to read sequence input");
    return raw_len_ > 0;
}

std::size_t TextIngestor::read(std::span<char> out)
{
    std::size_t produced = 0;
    while (produced < out.size()) {
        if (raw_pos_ == raw_len_ && !refill()) break;
        for (; raw_pos_ < raw_len_ && produced < out.size(); ++raw_pos_) {
            const char c = raw_[raw_pos_];
            ++offset_;
            ++column_;
            const bool line_start = at_line_start_;
            at_line_start_ = false;

            const CharClass cls = kClass[static_cast<unsigned char>(c)];
            if (cls == CharClass::Newline) {
                if (in_header_) {
                    in_header_ = false;
                } else {
                    ++log_.whitespace_stripped;
                }
                ++line_;
                column_ = 0;
                at_line_start_ = true;
                continue;
            }
            if (in_header_) continue;
            if (line_start && c == '>' && policy_.fasta_mode) {
                in_header_ = true;
                ++log_.header_lines_dropped;
                continue;
            }

            switch (cls) {
            case CharClass::Symbol:
                out[produced++] = c;
                continue;
            case CharClass::Space:
                ++log_.whitespace_stripped;
                continue;
            case CharClass::Lower:
                if (!policy_.case_fold) break;
                ++log_.case_folded;
                out[produced++] = upper(c);
                continue;
            case CharClass::Iupac:
                if (!policy_.iupac_to_n) break;
                ++log_.iupac_substituted;
                out[produced++] = 'N';
                continue;
            case CharClass::LowerIupac:
                if (!policy_.iupac_to_n || !policy_.case_fold) break;
                ++log_.case_folded;
                ++log_.iupac_substituted;
                out[produced++] = 'N';
                continue;
            default:
                break;
            }
            throw IngestError(c, offset_ - 1, line_, column_);
        }
    }
    return produced;
}

NormalizedSequence ingest(std::istream& text, const IngestPolicy& policy)
{
    TextIngestor ingestor(text, policy);
    NormalizedSequence seq;
    std::array<char, kRawChunk> buf{};
    while (const std::size_t n = ingestor.read(buf)) seq.symbols.append(buf.data(), n);
    seq.origin = ingestor.log();
    return seq;
}

NormalizedSequence ingest(std::string_view text, const IngestPolicy& policy)
{
    std::istringstream in{std::string(text)};
    return ingest(in, policy);
}

bool looks_like_fasta(std::string_view text)
{
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string_view::npos && text[pos] == '>';
}

TextRenderer::TextRenderer(std::ostream& out, std::optional<std::size_t> line_width) : out_(out), width_(line_width)
{
    if (width_ && *width_ == 0) throw ContractViolation("line width must be at least 1");
}

void TextRenderer::put(std::string_view bytes)
{
    out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out_) throw IoError("failed to write sequence output");
    written_ += bytes.size();
}

void TextRenderer::write(std::string_view symbols)
{
    if (!width_) {
        put(symbols);
        return;
    }
    staging_.clear();
    while (!symbols.empty()) {
        const std::size_t take = std::min(symbols.size(), *width_ - column_);
        staging_.append(symbols.substr(0, take));
        symbols.remove_prefix(take);
        column_ += take;
        if (column_ == *width_) {
            staging_.push_back('\n');
            column_ = 0;
        }
    }
    put(staging_);
}

std::uint64_t TextRenderer::finish()
{
    if (width_ && column_ > 0) {
        put("\n");
        column_ = 0;
    }
    out_.flush();
    if (!out_) throw IoError("failed to flush sequence output");
    return written_;
}

std::uint64_t render(std::string_view symbols, std::optional<std::size_t> line_width, std::ostream& sink)
{
    TextRenderer renderer(sink, line_width);
    renderer.write(symbols);
    return renderer.finish();
}

}  // namespace dnapack
