#pragma once

#include <stdexcept>
#include <string>

namespace wpcn {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A Scenario or config field outside its allowed range.
class InvalidFieldError : public DomainError {
public:
    InvalidFieldError(std::string field, const std::string& what) : DomainError(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A time allocation that violates the block-time constraint.
class FeasibilityError : public std::invalid_argument {
public:
    FeasibilityError(std::string constraint, const std::string& what)
        : std::invalid_argument(what), constraint_(std::move(constraint)) {}

    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string constraint_;
};

/// Bisection hit its iteration cap. Carries the last bracket.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double lower, double upper)
        : std::runtime_error(what), lower_(lower), upper_(upper) {}

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

/// Malformed or invalid configuration input. `line` is 1-based, 0 if unknown.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, int line, const std::string& message)
        : std::runtime_error(format(key, line, message)), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& key, int line, const std::string& message) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ": ";
        if (!key.empty()) out += "`" + key + "`: ";
        return out + message;
    }

    std::string key_;
    int line_;
};

}  // namespace wpcn
