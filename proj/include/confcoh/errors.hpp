#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confcoh {

// Bad index, mismatched ring parameters, invalid label passed where a valid one is required.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed text or document. line is 1-based, 0 when unknown.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Strict-mode pairing lookup of a key absent from the table.
class missing_entry_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested computation outside the supported parameter range (e.g. parity certificate for even n).
class unsupported_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace confcoh
