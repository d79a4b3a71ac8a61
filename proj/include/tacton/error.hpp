#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tacton {

enum class Errc {
    OutOfRange,
    InconsistentSuperposition,
    DegenerateNoStimulation,
    MissingField,
    InvalidType,
    UndefinedForPoint,
    RateTooLow,
    CarrierRateTooLow,
    NegativeDistance,
    EmptyWaveform,
    EmptySpectrum,
    SpacingOutOfRange,
    ParseError,
    MismatchedUnits,
    Io,
};

std::string_view to_string(Errc code);

/// Error raised by every engine operation. `field()` names the offending
/// Tacton field (canonical JSON name) when the error is field-specific.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string field, const std::string& message)
        : std::runtime_error(message), code_(code), field_(std::move(field)) {}

    Errc code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    Errc code_;
    std::string field_;
};

/// Parse failure in an input file; line is 1-based, 0 when not line-specific.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& message)
        : Error(Errc::ParseError, {}, format(file, line, message)),
          file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& file, std::size_t line, const std::string& msg) {
        std::string out = file.empty() ? std::string("<input>") : file;
        if (line > 0) out += ":" + std::to_string(line);
        return out + ": " + msg;
    }

    std::string file_;
    std::size_t line_;
};

}  // namespace tacton
