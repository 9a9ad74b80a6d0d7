#pragma once

#include <stdexcept>
#include <string>

namespace liftspectra {

// Bad user-supplied data: malformed files, out-of-range parameters.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: eigensolver out of iterations, order over cap.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace liftspectra
