#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ftc/fis.hpp"

namespace ftc {

/// Parse failure with the 1-based source position of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", col " +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Parse the sectioned key=value FIS text format:
///
///   [System]
///   Name='traffic'
///   Type='mamdani'
///   ...
///   [Input1]
///   Name='W'
///   Range=[0 50]
///   NumMFs=5
///   MF1='VS':'gaussmf',[2 0]
///   ...
///   [Rules]
///   1 1, 1 (1) : 1
///
/// gaussmf parameters are [sigma center]. Rule lines hold 1-based term
/// indices (0 = don't care), the consequent index, a weight in (0, 1], and
/// connective code 1 (AND). Lines starting with '%' are comments. The parser
/// is whitespace-tolerant but rejects anything that would build an invalid
/// system, reporting the offending line.
Fis parse_fis(std::string_view text);

/// Canonical serialization: fixed section order, one MF per line, numbers
/// with up to 6 significant digits, LF newlines. serialize(parse(s)) is a
/// fixed point for any valid document s.
std::string serialize_fis(const Fis& fis);

}  // namespace ftc
