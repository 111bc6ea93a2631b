#pragma once

#include <stdexcept>
#include <string>

namespace jstab {

// Shape or parameter violations detected at construction time.
class InvalidArgumentError : public std::invalid_argument {
public:
    explicit InvalidArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A map or subspace fails to stay inside the algebra it claims to live in.
class ClosureViolationError : public std::runtime_error {
public:
    explicit ClosureViolationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Scaling past the floating-point range, e.g. r^N * |a| beyond 1e300.
class ScaleOverflowError : public std::runtime_error {
public:
    explicit ScaleOverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

// A required analytic hypothesis fails empirically (homogeneity, contraction, limit condition).
class HypothesisNotMetError : public std::runtime_error {
public:
    explicit HypothesisNotMetError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace jstab
