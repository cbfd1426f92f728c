#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace exlab {

/// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string & what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

/// Structurally well-formed data that violates a domain invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A resource guard (size envelope) rejected the request before any work.
class ResourceGuard : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A Las Vegas loop or staged search gave up. The report names the stage
/// and carries whatever statistics were measured on the best attempt.
class SearchFailure : public std::runtime_error {
public:
    SearchFailure(std::string stage, const std::string & what, nlohmann::json report = {})
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), report_(std::move(report))
    {
    }
    const std::string & stage() const { return stage_; }
    const nlohmann::json & report() const { return report_; }

private:
    std::string stage_;
    nlohmann::json report_;
};

} // namespace exlab
