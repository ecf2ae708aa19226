#pragma once

#include <cstddef>

#include "pvss/scheme.hpp"

namespace pvss {

// Interactive membership proof: the prover shows possession of s_i without
// revealing it. Challenge a is drawn from [1, q-1]; a = 0 would collapse
// (g^a)^{s_i} to 1 and prove nothing.

struct MembershipChallenge {
    Scalar a;     // verifier's ephemeral secret
    Element g_a;  // g^a, sent to the prover
};

inline MembershipChallenge membership_challenge(const GroupParams& params, SeededRng& rng) {
    Scalar a = 1 + rng.below(params.q - 1);
    return {a, mod_exp(params, params.g, a)};
}

// R_P = g^{[(g^a)^{s_i}]^{-1}}
inline Element membership_respond(const GroupParams& params, const Scalar& share,
                                  const Element& g_a) {
    if (share < 0 || share >= params.q) throw ParameterError("share outside [0, q-1]");
    return masked_inverse_exp(params, mod_exp(params, g_a, share));
}

// R_V = g^{[(g^{s_i})^a]^{-1}}, from the public share image; accept iff R_V == R_P.
inline bool membership_verify(const GroupParams& params, const Scalar& a,
                              const Element& share_image, const Element& prover_response) {
    return masked_inverse_exp(params, mod_exp(params, share_image, a)) == prover_response;
}

}  // namespace pvss
