#pragma once

#include <stdexcept>
#include <string>

namespace finsymp {

/// Malformed or out-of-contract input: bad factor lists, matrices that do not
/// define a homomorphism, subgroups outside their ambient group, and so on.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A theorem-shaped identity failed to hold. If one of these fires on valid
/// input, there is a bug in the library, not in the caller.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// An enumeration was asked to walk a group larger than the configured bound.
struct BoundExceeded : InvalidInput {
    long long required;
    long long bound;
    BoundExceeded(long long req, long long bnd)
        : InvalidInput("enumeration bound exceeded: group order " + std::to_string(req) +
                       " > bound " + std::to_string(bnd)),
          required(req), bound(bnd) {}
};

} // namespace finsymp
