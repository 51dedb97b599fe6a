#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pathgen {

struct SourcePos {
    int line = 1;
    int column = 1;
};

// Syntax error from the lexer or parser. Carries the position and the
// token set that would have been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, SourcePos pos, std::vector<std::string> expected = {})
        : std::runtime_error(format(message, pos)),
          pos_(pos),
          expected_(std::move(expected)) {}

    SourcePos pos() const { return pos_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(const std::string& message, SourcePos pos) {
        return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
    }

    SourcePos pos_;
    std::vector<std::string> expected_;
};

// Well-formed syntax that violates the language rules (undeclared name,
// non-integer condition, call expression, ...).
class SemanticError : public std::runtime_error {
public:
    SemanticError(std::string message, SourcePos pos)
        : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                             ": " + message),
          pos_(pos) {}

    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

// Schema/program mismatch. Collects every issue, not just the first.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "schema mismatch:";
        for (const auto& issue : issues) out += "\n  - " + issue;
        return out;
    }

    std::vector<std::string> issues_;
};

class InfeasibleConstraint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownDecision : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OracleTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownConstruct : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedFormat : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ReplayMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pathgen
