#ifndef DNAPACK_BASE_CODEC_HPP
#define DNAPACK_BASE_CODEC_HPP

// Fixed-length coding of non-N bases: A=00, T=01, G=10, C=11, four bases per
// byte. The first base of a byte sits in its two most significant bits; unused
// low bits are written as zero and ignored on decode.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dnapack/error.hpp"

namespace dnapack {

enum class Base : std::uint8_t { A = 0b00, T = 0b01, G = 0b10, C = 0b11 };

inline constexpr std::size_t kBasesPerByte = 4;

namespace detail {

inline constexpr std::uint8_t kNotABase = 0xFF;

constexpr std::array<std::uint8_t, 256> make_code_table()
{
    std::array<std::uint8_t, 256> table{};
    for (auto& v : table) v = kNotABase;
    table['A'] = 0b00;
    table['T'] = 0b01;
    table['G'] = 0b10;
    table['C'] = 0b11;
    return table;
}

/// Uppercase symbol -> 2-bit code, kNotABase for everything else (including 'N').
inline constexpr std::array<std::uint8_t, 256> kCodeOf = make_code_table();
inline constexpr std::array<char, 4> kSymbolOf = {'A', 'T', 'G', 'C'};

}  // namespace detail

constexpr char to_symbol(Base b) noexcept { return detail::kSymbolOf[static_cast<std::uint8_t>(b)]; }
constexpr std::uint8_t to_code(Base b) noexcept { return static_cast<std::uint8_t>(b); }

constexpr bool is_base_symbol(char c) noexcept
{
    return detail::kCodeOf[static_cast<unsigned char>(c)] != detail::kNotABase;
}

/// Map an uppercase A/T/G/C to its 2-bit code. Throws InvalidSymbolError otherwise.
std::uint8_t encode_base(char symbol, std::optional<std::uint64_t> position = std::nullopt);

/// Total over 2-bit values; only the low two bits of `code` are used.
constexpr char decode_base(std::uint8_t code) noexcept { return detail::kSymbolOf[code & 0b11]; }

/// One payload byte holding 1..4 bases.
struct PackedQuad
{
    std::uint8_t byte = 0;
    std::uint8_t count = 0;

    friend bool operator==(const PackedQuad&, const PackedQuad&) = default;
};

PackedQuad pack_quad(std::string_view bases);
std::string unpack_quad(PackedQuad quad);

/// Mask covering the padding bits of a byte holding `count` effective bases.
constexpr std::uint8_t padding_mask(std::size_t count) noexcept
{
    return static_cast<std::uint8_t>(0xFFu >> (2 * count));
}

}  // namespace dnapack

#endif  // DNAPACK_BASE_CODEC_HPP
