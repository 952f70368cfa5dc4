#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qklab {

/// Precondition violation on a numeric argument (out-of-domain input).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Kernel weight vanishes identically on (0,1]; phi_K is undefined.
class UndefinedKernelError : public DomainError {
public:
    explicit UndefinedKernelError(const std::string& what) : DomainError(what) {}
};

/// Radicand is zero where the fractional power has a singular derivative.
class SingularPowerError : public DomainError {
public:
    explicit SingularPowerError(const std::string& what) : DomainError(what) {}
};

/// Equation does not meet the exponent pattern required by a theorem.
class HypothesisError : public DomainError {
public:
    explicit HypothesisError(const std::string& what) : DomainError(what) {}
};

/// Scenario file failed validation; carries one message per offending field.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "scenario validation failed:";
        for (const auto& s : issues) {
            out += "\n  - " + s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

}  // namespace qklab
