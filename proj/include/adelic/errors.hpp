#pragma once

#include <stdexcept>
#include <string>

namespace adelic {

// Two families: DomainError means the caller asked for something outside an
// operation's domain (bad arguments, poles, divergent series). NumericError
// means the arguments were fine but the numerics did not reach the target.
class Error : public std::runtime_error {
  public:
    Error(std::string kind, const std::string &detail)
        : std::runtime_error(detail), kind_(std::move(kind)) {}
    const std::string &kind() const noexcept { return kind_; }

  private:
    std::string kind_;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

class NumericError : public Error {
  public:
    using Error::Error;
};

struct InvalidArgument : DomainError {
    explicit InvalidArgument(const std::string &d) : DomainError("InvalidArgument", d) {}
};

struct PoleError : DomainError {
    explicit PoleError(const std::string &d) : DomainError("PoleError", d) {}
};

struct DivergenceError : DomainError {
    explicit DivergenceError(const std::string &d) : DomainError("DivergenceError", d) {}
};

struct InvalidComposition : DomainError {
    explicit InvalidComposition(const std::string &d) : DomainError("InvalidComposition", d) {}
};

struct DivergentWord : DomainError {
    explicit DivergentWord(const std::string &d) : DomainError("DivergentWord", d) {}
};

struct NonConvergence : NumericError {
    explicit NonConvergence(const std::string &d) : NumericError("NonConvergence", d) {}
};

struct ConvergenceError : NumericError {
    explicit ConvergenceError(const std::string &d) : NumericError("ConvergenceError", d) {}
};

struct TailTooLarge : NumericError {
    explicit TailTooLarge(const std::string &d) : NumericError("TailTooLarge", d) {}
};

} // namespace adelic
