#pragma once

#include <stdexcept>

namespace liftexp {

/// Invalid input: dimension mismatches, malformed files, out-of-range
/// parameters. CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed input on which the requested algorithm cannot proceed
/// (e.g. an unresolvable branch crossing). CLI maps this to exit code 3.
class AlgorithmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace liftexp
