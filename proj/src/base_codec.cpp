#include "dnapack/base_codec.hpp"

namespace dnapack {

std::uint8_t encode_base(char symbol, std::optional<std::uint64_t> position)
{
    const std::uint8_t code = detail::kCodeOf[static_cast<unsigned char>(symbol)];
    if (code == detail::kNotABase) throw InvalidSymbolError(symbol, position);
    return code;
}

PackedQuad pack_quad(std::string_view bases)
{
    if (bases.empty() || bases.size() > kBasesPerByte) {
        throw ContractViolation("pack_quad expects 1..4 bases, got " + std::to_string(bases.size()));
    }
    std::uint8_t byte = 0;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        byte |= static_cast<std::uint8_t>(encode_base(bases[i], i) << (6 - 2 * i));
    }
    return {byte, static_cast<std::uint8_t>(bases.size())};
}

std::string unpack_quad(PackedQuad quad)
{
    if (quad.count == 0 || quad.count > kBasesPerByte) {
        throw ContractViolation("unpack_quad expects a count of 1..4, got " + std::to_string(quad.count));
    }
    std::string out(quad.count, '\0');
    for (std::size_t i = 0; i < quad.count; ++i) {
        out[i] = decode_base(static_cast<std::uint8_t>(quad.byte >> (6 - 2 * i)));
    }
    return out;
}

}  // namespace dnapack
