#pragma once

#include <stdexcept>
#include <string>

namespace aris {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text: JSON lines, fenced model replies.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::string raw = {}, std::size_t line = 0)
        : Error(what), raw_(std::move(raw)), line_(line) {}

    [[nodiscard]] const std::string& raw() const noexcept { return raw_; }
    /// 1-based line number inside the offending file, 0 when not file-backed.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::string raw_;
    std::size_t line_;
};

/// Well-formed input that breaks a domain invariant (span/text mismatch, confidence range).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// An identifier that does not resolve (unknown doc_id, missing file).
class ReferenceError : public Error {
  public:
    using Error::Error;
};

class LookupError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Caller broke an operation precondition.
class ContractError : public Error {
  public:
    using Error::Error;
};

/// Upstream stages produced inconsistent data (e.g. overlapping partitions).
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

/// A chat backend could not be reached or kept failing after retries.
class OrchestrationError : public Error {
  public:
    using Error::Error;
};

}  // namespace aris
