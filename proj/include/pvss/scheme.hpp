#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pvss/group.hpp"
#include "pvss/shamir.hpp"

namespace pvss {

struct KeyPair {
    Scalar sk;   // a_i in [1, q-1]
    Element pk;  // g^{a_i}
};

// Fixed-width byte string E_i = s_i XOR (pk_i)^{s_i}, both operands encoded
// on byte_len bytes so the group-element mask is never truncated.
using EncryptedShare = Bytes;

struct DealOutput {
    std::vector<Element> commitments;                     // C_j = g^{F_j}, j = 0..k-1
    std::vector<Element> share_images;                    // g^{s_i}, i = 0..n
    std::map<std::size_t, EncryptedShare> encrypted_shares;  // i = 1..n; no E_0 exists
};

// Everything public: the paper's implicit broadcast channel as a value.
struct BulletinBoard {
    GroupParams params;
    std::size_t k = 0;
    std::size_t n = 0;
    DealOutput deal;
    std::map<std::size_t, Element> pubkeys;  // i = 1..n
};

inline KeyPair keygen(const GroupParams& params, SeededRng& rng) {
    Scalar sk = 1 + rng.below(params.q - 1);
    return {sk, mod_exp(params, params.g, sk)};
}

// Bytewise XOR of the fixed-width encodings. Self-inverse in the first
// argument, which is all the scheme's encryption amounts to.
inline Bytes xor_mask(const Scalar& value, const Element& mask, std::size_t byte_len) {
    count_xor();
    return xor_bytes(encode_fixed(value, byte_len), encode_fixed(mask, byte_len));
}

// prod_{j=0}^{k-1} C_j^{i^j} mod p = g^{F(i)} for honest commitments.
// Exponents i^j live in Z_q.
inline Element expected_share_image(const GroupParams& params,
                                    const std::vector<Element>& commitments, std::size_t i) {
    if (commitments.empty()) throw ParameterError("no commitments");
    Element acc = commitments[0];
    BigInt e = 1;
    for (std::size_t j = 1; j < commitments.size(); ++j) {
        e = e * i % params.q;
        acc = acc * mod_exp(params, commitments[j], e) % params.p;
    }
    return acc;
}

// Dealing with a caller-supplied polynomial: commitments to every
// coefficient, public share images for i = 0..n, one encrypted share per
// participant (no E_0 exists; s_0 is the secret).
inline DealOutput deal_with_polynomial(const GroupParams& params, const SharePolynomial& poly,
                                       std::size_t n,
                                       const std::map<std::size_t, Element>& pubkeys) {
    const std::size_t k = poly.threshold();
    if (k < 1 || k > n) throw ParameterError("need 1 <= k <= n");
    if (BigInt(n) >= params.q) throw ParameterError("need n < q");
    for (std::size_t i = 1; i <= n; ++i)
        if (!pubkeys.contains(i)) throw ParameterError("missing public key for index " + std::to_string(i));

    DealOutput out;
    out.commitments.reserve(k);
    for (const auto& coeff : poly.coeffs)
        out.commitments.push_back(mod_exp(params, params.g, coeff));
    out.share_images.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        out.share_images.push_back(mod_exp(params, params.g, eval_share(params, poly, i).share));
    for (std::size_t i = 1; i <= n; ++i) {
        const Scalar s_i = eval_share(params, poly, i).share;
        const Element mask = mod_exp(params, pubkeys.at(i), s_i);
        out.encrypted_shares.emplace(i, xor_mask(s_i, mask, params.byte_len));
    }
    return out;
}

// Standard dealing: sample the polynomial, then publish. The polynomial is
// returned because the dealer needs it again in a disputation.
inline std::pair<SharePolynomial, DealOutput> deal(const GroupParams& params,
                                                   const Scalar& secret, std::size_t k,
                                                   std::size_t n,
                                                   const std::map<std::size_t, Element>& pubkeys,
                                                   SeededRng& rng) {
    if (k < 1 || k > n) throw ParameterError("need 1 <= k <= n");
    auto poly = sample_polynomial(params, secret, k, rng);
    auto out = deal_with_polynomial(params, poly, n, pubkeys);
    return {std::move(poly), std::move(out)};
}

// Shareholder decryption: mask = (g^{s_i})^{a_i}. A decoded value >= q is
// rejected rather than reduced; reduction would let non-canonical encodings
// verify while differing on the wire.
inline Scalar decrypt_share(const GroupParams& params, const EncryptedShare& encrypted,
                            const Scalar& sk, const Element& share_image) {
    if (encrypted.size() != params.byte_len) throw ParameterError("encrypted share has wrong width");
    const Element mask = mod_exp(params, share_image, sk);
    count_xor();
    const BigInt value = decode_bytes(xor_bytes(encrypted, encode_fixed(mask, params.byte_len)));
    if (value >= params.q) throw NonCanonicalShareError();
    return value;
}

// g^{s_i} == prod C_j^{i^j}; reject means the shareholder complains.
inline bool verify_share(const GroupParams& params, const Scalar& share,
                         const std::vector<Element>& commitments, std::size_t i) {
    if (share < 0 || share >= params.q) return false;
    return mod_exp(params, params.g, share) == expected_share_image(params, commitments, i);
}

// Public audit anyone can run: every published image must match the
// commitment product. Returns the inconsistent indices (empty = accept).
inline std::vector<std::size_t> verify_bulletin(const BulletinBoard& board) {
    const auto& deal = board.deal;
    if (deal.commitments.size() != board.k) throw ParameterError("commitment count != k");
    if (deal.share_images.size() != board.n + 1) throw ParameterError("share image count != n+1");
    if (board.pubkeys.size() != board.n) throw ParameterError("pubkey count != n");
    for (std::size_t i = 1; i <= board.n; ++i) {
        auto it = deal.encrypted_shares.find(i);
        if (it == deal.encrypted_shares.end()) throw ParameterError("missing encrypted share " + std::to_string(i));
        if (it->second.size() != board.params.byte_len) throw ParameterError("encrypted share width");
    }
    std::vector<std::size_t> inconsistent;
    for (std::size_t i = 0; i <= board.n; ++i)
        if (deal.share_images[i] != expected_share_image(board.params, deal.commitments, i))
            inconsistent.push_back(i);
    return inconsistent;
}

// Submission for reconstruction reuses the dealing-phase encryption with the
// reconstructor's key: E = s_i XOR (pk_R)^{s_i}. Decrypting with sk_R and the
// public g^{s_i} extracts and authenticates the share in one step.
inline EncryptedShare encrypt_for_submission(const GroupParams& params, const IndexedShare& share,
                                             const Element& reconstructor_pk) {
    const Element mask = mod_exp(params, reconstructor_pk, share.share);
    return xor_mask(share.share, mask, params.byte_len);
}

struct RejectedSubmission {
    std::size_t index = 0;
    std::string reason;
};

struct ReconstructionResult {
    Scalar secret;
    std::vector<std::size_t> used;  // the k indices interpolated
    std::vector<RejectedSubmission> rejected;
};

// Decrypt each submission with the reconstructor key and the public image,
// verify it against the commitments, interpolate the first k valid ones.
inline ReconstructionResult reconstruct(
    const std::vector<std::pair<std::size_t, EncryptedShare>>& submissions,
    const Scalar& reconstructor_sk, const BulletinBoard& board) {
    std::set<std::size_t> seen;
    for (const auto& [i, enc] : submissions) {
        (void)enc;
        if (!seen.insert(i).second) throw DuplicateIndexError();
    }

    ReconstructionResult result;
    std::vector<IndexedShare> valid;
    for (const auto& [i, enc] : submissions) {
        if (valid.size() == board.k) break;
        if (i < 1 || i > board.n) {
            result.rejected.push_back({i, "index outside 1..n"});
            continue;
        }
        Scalar share;
        try {
            share = decrypt_share(board.params, enc, reconstructor_sk, board.deal.share_images[i]);
        } catch (const NonCanonicalShareError&) {
            result.rejected.push_back({i, "non-canonical share"});
            continue;
        }
        if (!verify_share(board.params, share, board.deal.commitments, i)) {
            result.rejected.push_back({i, "share does not match commitments"});
            continue;
        }
        valid.push_back({i, share});
    }
    if (valid.size() < board.k) throw InsufficientValidSharesError();
    result.secret = interpolate_secret(board.params, valid);
    for (const auto& s : valid) result.used.push_back(s.index);
    return result;
}

}  // namespace pvss
