#ifndef DNAPACK_ERROR_HPP
#define DNAPACK_ERROR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace dnapack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (wrong quad length, bad policy combination, ...).
class ContractViolation : public Error
{
public:
    using Error::Error;
};

/// A character outside the accepted alphabet reached the codec.
class InvalidSymbolError : public Error
{
public:
    InvalidSymbolError(char symbol, std::optional<std::uint64_t> position);

    char symbol() const noexcept { return symbol_; }
    std::optional<std::uint64_t> position() const noexcept { return position_; }

protected:
    InvalidSymbolError(const std::string& what, char symbol, std::optional<std::uint64_t> position)
        : Error(what), symbol_(symbol), position_(position)
    {
    }

private:
    char symbol_;
    std::optional<std::uint64_t> position_;
};

/// Text ingestion rejected a character; carries the 1-based line/column and byte offset.
class IngestError : public InvalidSymbolError
{
public:
    IngestError(char symbol, std::uint64_t offset, std::uint64_t line, std::uint64_t column);

    std::uint64_t offset() const noexcept { return offset_; }
    std::uint64_t line() const noexcept { return line_; }
    std::uint64_t column() const noexcept { return column_; }

private:
    std::uint64_t offset_;
    std::uint64_t line_;
    std::uint64_t column_;
};

/// The compressed stream is structurally malformed.
class FormatError : public Error
{
public:
    FormatError(const std::string& what, std::uint64_t offset) : Error(what), offset_(offset) {}

    /// Byte offset of the section (or head) where the problem was detected.
    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

class TruncatedHeaderError : public FormatError
{
public:
    TruncatedHeaderError(std::uint64_t offset, std::size_t available);

    std::size_t available() const noexcept { return available_; }

private:
    std::size_t available_;
};

class TruncatedPayloadError : public FormatError
{
public:
    TruncatedPayloadError(std::uint64_t offset, std::uint64_t expected, std::uint64_t available);

    std::uint64_t expected() const noexcept { return expected_; }
    std::uint64_t available() const noexcept { return available_; }

private:
    std::uint64_t expected_;
    std::uint64_t available_;
};

/// Reading from a source or writing to a sink failed.
class IoError : public Error
{
public:
    using Error::Error;
};

/// Compression ratio requested for zero bases.
class UndefinedRatioError : public Error
{
public:
    UndefinedRatioError() : Error("compression ratio is undefined for an empty sequence") {}
};

}  // namespace dnapack

#endif  // DNAPACK_ERROR_HPP
