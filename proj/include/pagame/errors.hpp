#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pagame {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A curve or profile was evaluated outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Some p_i(e) fell outside [-tau_p, 1 + tau_p].
class ProbabilityRangeError : public Error {
public:
    using Error::Error;
};

/// Vector lengths disagree (contract vs outcomes, profile vs outcomes, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Two-outcome linear analysis requested on a scenario that is not one.
class NotTwoOutcomeLinear : public Error {
public:
    using Error::Error;
};

/// A contract family enumerates more candidates than its cap allows.
class EnumerationCapExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed scenario document. `line`/`column` are 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

enum class IssueKind { Domain, ProbabilityRange, Dimension };

const char* to_string(IssueKind kind) noexcept;

struct ValidationIssue {
    IssueKind kind;
    std::string message;

    bool operator==(const ValidationIssue&) const = default;
};

/// Aggregated scenario validation failure; carries every issue found.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);

    const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

}  // namespace pagame
