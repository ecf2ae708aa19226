#pragma once

#include <stdexcept>
#include <string>

namespace pvss {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// x ≡ 0 (mod q) has no inverse.
struct ZeroInverseError : Error {
    ZeroInverseError() : Error("inverse of zero residue mod q") {}
};

// A group element reduced to 0 mod q where the protocol needs its inverse
// in the exponent. Protocol-level abort signal, not a bug.
struct DegenerateExponentError : Error {
    DegenerateExponentError() : Error("group element is 0 mod q; inverse exponent undefined") {}
};

// Decrypted share decoded to a value >= q.
struct NonCanonicalShareError : Error {
    NonCanonicalShareError() : Error("decrypted share is not canonical (>= q)") {}
};

struct InsufficientValidSharesError : Error {
    InsufficientValidSharesError() : Error("fewer than k submissions verified") {}
};

struct DuplicateIndexError : Error {
    DuplicateIndexError() : Error("duplicate share index") {}
};

struct IndexOutOfRangeError : Error {
    IndexOutOfRangeError() : Error("share index out of range") {}
};

// Bounded parameter search ran out of candidates.
struct SearchExhaustedError : Error {
    using Error::Error;
};

// Protocol operation invoked out of phase order.
struct ProtocolOrderError : Error {
    using Error::Error;
};

// Bad operation arguments (k/n ranges, malformed inputs).
struct ParameterError : Error {
    using Error::Error;
};

}  // namespace pvss
