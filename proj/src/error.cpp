#include "dnapack/error.hpp"

#include <sstream>

namespace dnapack {

namespace {

std::string describe_symbol(char symbol)
{
    std::ostringstream out;
    const auto u = static_cast<unsigned char>(symbol);
    if (u >= 0x20 && u < 0x7F) {
        out << '\'' << symbol << '\'';
    } else {
        out << "byte 0x" << std::hex << static_cast<int>(u);
    }
    return out.str();
}

std::string invalid_symbol_message(char symbol, std::optional<std::uint64_t> position)
{
    std::string msg = "invalid symbol " + describe_symbol(symbol);
    if (position) msg += " at offset " + std::to_string(*position);
    return msg;
}

}  // namespace

InvalidSymbolError::InvalidSymbolError(char symbol, std::optional<std::uint64_t> position)
    : Error(invalid_symbol_message(symbol, position)), symbol_(symbol), position_(position)
{
}

IngestError::IngestError(char symbol, std::uint64_t offset, std::uint64_t line, std::uint64_t column)
    : InvalidSymbolError(invalid_symbol_message(symbol, offset) + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")",
                         symbol, offset),
      offset_(offset),
      line_(line),
      column_(column)
{
}

TruncatedHeaderError::TruncatedHeaderError(std::uint64_t offset, std::size_t available)
    : FormatError("truncated section head at offset " + std::to_string(offset) + ": expected 8 bytes, got " +
                      std::to_string(available),
                  offset),
      available_(available)
{
}

TruncatedPayloadError::TruncatedPayloadError(std::uint64_t offset, std::uint64_t expected, std::uint64_t available)
    : FormatError("truncated payload in section at offset " + std::to_string(offset) + ": expected " +
                      std::to_string(expected) + " bytes, got " + std::to_string(available),
                  offset),
      expected_(expected),
      available_(available)
{
}

}  // namespace dnapack
