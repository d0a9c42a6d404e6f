#pragma once

#include <stdexcept>
#include <string>

namespace orthoforge {

// Invalid mathematical input: non-positive lengths, bad signatures,
// malformed gluings.  Mapped to CLI exit code 2.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured cap (queue size, hexagon count, precision ceiling) was hit.
// The result would be incomplete, so no result is returned.  Exit code 3.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative method exhausted its iteration budget without meeting its
// tolerance.  Exit code 4.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal signal: a floating-point result is inconsistent with the exact
// geometry (e.g. two provably disjoint lines come out as intersecting).
// Callers react by raising the working precision, never by guessing.
class precision_failure : public std::runtime_error {
public:
    explicit precision_failure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace orthoforge
