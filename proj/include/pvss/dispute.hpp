#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "pvss/scheme.hpp"

namespace pvss {

// Five-step disputation between dealer D, shareholder Pr_i, and arbiter R.
//
//   1. Pr_i restates his registered public key.
//   2. D and Pr_i independently publish g^{[(g^{a_i})^{s_i}]^{-1}}; R compares.
//      On mismatch Pr_i reveals a_i and R adjudicates directly.
//   3. D publishes lambda = s_i XOR (g^{a_i})^{s_i}.
//   4. Pr_i computes alpha = lambda XOR (g^{s_i})^{a_i}; if g^alpha matches the
//      commitment product he accepts, otherwise he forwards alpha to R.
//   5. R rules from g^{1/(lambda XOR alpha)} against the step-2 value.

enum class DisputePhase { Init, MaskedPublished, KeyRevealBranch, LambdaPublished, Responded, Closed };

enum class DisputeOutcome { DealerLied, ParticipantLied, Resolved, Unresolvable };

inline std::string to_string(DisputeOutcome v) {
    switch (v) {
        case DisputeOutcome::DealerLied: return "dealer_lied";
        case DisputeOutcome::ParticipantLied: return "participant_lied";
        case DisputeOutcome::Resolved: return "resolved";
        case DisputeOutcome::Unresolvable: return "unresolvable";
    }
    return "unresolvable";
}

struct DisputeResponse {
    bool accept = false;  // step-4 acknowledgment; closes the dispute
    BigInt alpha;         // forwarded to R when !accept
};

// Step 2, dealer side: he knows the dealt share and the registered key.
inline Element dealer_masked_value(const GroupParams& params, const Element& pk_i,
                                   const Scalar& s_dealt) {
    return masked_inverse_exp(params, mod_exp(params, pk_i, s_dealt));
}

// Step 2, participant side: his private key and the public share image.
// He never needs the decrypted share for this.
inline Element participant_masked_value(const GroupParams& params, const Scalar& sk,
                                        const Element& share_image) {
    return masked_inverse_exp(params, mod_exp(params, share_image, sk));
}

// Step 3: for an honest dealer this reproduces E_i bit for bit.
inline Bytes dealer_lambda(const GroupParams& params, const Scalar& s_dealt, const Element& pk_i) {
    return xor_mask(s_dealt, mod_exp(params, pk_i, s_dealt), params.byte_len);
}

// Step 4. Accept when the unmasked value hits the commitment product.
inline DisputeResponse participant_respond(const GroupParams& params, const Bytes& lambda,
                                           const Scalar& sk, const BulletinBoard& board,
                                           std::size_t i) {
    if (lambda.size() != params.byte_len) throw ParameterError("lambda has wrong width");
    const Element mask = mod_exp(params, board.deal.share_images[i], sk);
    count_xor();
    const BigInt alpha = decode_bytes(xor_bytes(lambda, encode_fixed(mask, params.byte_len)));
    const Element image = expected_share_image(params, board.deal.commitments, i);
    if (mod_exp(params, params.g, alpha % params.q) == image) return {true, alpha};
    return {false, alpha};
}

// Step 5. A vacuous complaint (g^alpha equals the image after all) resolves
// without accusing anyone; a zero residue in the exponent is surfaced as
// Unresolvable instead of a guessed verdict.
inline DisputeOutcome adjudicate_response(const GroupParams& params, const Bytes& lambda,
                                          const BigInt& alpha, const Element& agreed_masked,
                                          const BulletinBoard& board, std::size_t i) {
    if (lambda.size() != params.byte_len) throw ParameterError("lambda has wrong width");
    if (alpha < 0) throw ParameterError("negative alpha");
    const Element image = expected_share_image(params, board.deal.commitments, i);
    if (mod_exp(params, params.g, alpha % params.q) == image) return DisputeOutcome::Resolved;
    count_xor();
    // t is a raw byte-string XOR, not a group element, so the inverse
    // exponent is taken on its residue directly.
    const BigInt t = decode_bytes(xor_bytes(lambda, encode_fixed(alpha, params.byte_len)));
    if (t % params.q == 0) return DisputeOutcome::Unresolvable;
    const Element derived = mod_exp(params, params.g, inv_mod_q(params, t));
    return derived == agreed_masked ? DisputeOutcome::DealerLied : DisputeOutcome::ParticipantLied;
}

// Step-2 mismatch branch: Pr_i reveals a_i, R recomputes both sides.
inline DisputeOutcome key_reveal_adjudicate(const GroupParams& params, const Scalar& revealed_key,
                                            const Element& registered_pk,
                                            const Element& dealer_masked,
                                            const Element& participant_masked,
                                            const BulletinBoard& board, std::size_t i) {
    if (mod_exp(params, params.g, revealed_key) != registered_pk)
        return DisputeOutcome::ParticipantLied;
    const Element image = expected_share_image(params, board.deal.commitments, i);
    const Element recomputed = masked_inverse_exp(params, mod_exp(params, image, revealed_key));
    if (dealer_masked != recomputed) return DisputeOutcome::DealerLied;
    if (participant_masked != recomputed) return DisputeOutcome::ParticipantLied;
    return DisputeOutcome::Resolved;
}

// Single-owner state machine; every transition is allowed exactly once and
// only in phase order.
class DisputeState {
public:
    DisputeState(std::size_t index, Element registered_pk)
        : index_(index), registered_pk_(std::move(registered_pk)) {}

    DisputePhase phase() const { return phase_; }
    std::size_t index() const { return index_; }
    const Element& registered_pk() const { return registered_pk_; }
    const std::optional<Element>& dealer_masked() const { return dealer_masked_; }
    const std::optional<Element>& participant_masked() const { return participant_masked_; }
    const std::optional<Bytes>& lambda() const { return lambda_; }
    const std::optional<DisputeResponse>& response() const { return response_; }
    const std::optional<DisputeOutcome>& verdict() const { return verdict_; }

    void publish_masked(Element dealer_value, Element participant_value) {
        require_phase(DisputePhase::Init, "publish_masked");
        dealer_masked_ = std::move(dealer_value);
        participant_masked_ = std::move(participant_value);
        phase_ = DisputePhase::MaskedPublished;
    }

    // True: the two step-2 values agree and the protocol proceeds to step 3.
    // False: key-reveal branch.
    bool check_masked() {
        require_phase(DisputePhase::MaskedPublished, "check_masked");
        if (checked_) throw ProtocolOrderError("check_masked already ran");
        checked_ = true;
        if (*dealer_masked_ == *participant_masked_) return true;
        phase_ = DisputePhase::KeyRevealBranch;
        return false;
    }

    DisputeOutcome key_reveal(const Scalar& revealed_key, const BulletinBoard& board) {
        require_phase(DisputePhase::KeyRevealBranch, "key_reveal");
        DisputeOutcome outcome;
        try {
            outcome = key_reveal_adjudicate(board.params, revealed_key, registered_pk_,
                                            *dealer_masked_, *participant_masked_, board, index_);
        } catch (const DegenerateExponentError&) {
            outcome = DisputeOutcome::Unresolvable;
        }
        close(outcome);
        return outcome;
    }

    void publish_lambda(Bytes lambda) {
        require_phase(DisputePhase::MaskedPublished, "publish_lambda");
        if (!checked_) throw ProtocolOrderError("step-2 check has not run");
        lambda_ = std::move(lambda);
        phase_ = DisputePhase::LambdaPublished;
    }

    // Accept closes the dispute: the complaint evaporated at step 4.
    void respond(DisputeResponse response) {
        require_phase(DisputePhase::LambdaPublished, "respond");
        response_ = std::move(response);
        phase_ = DisputePhase::Responded;
        if (response_->accept) close(DisputeOutcome::Resolved);
    }

    DisputeOutcome adjudicate(const BulletinBoard& board) {
        require_phase(DisputePhase::Responded, "adjudicate");
        if (response_->accept) throw ProtocolOrderError("dispute already resolved");
        const DisputeOutcome outcome = adjudicate_response(
            board.params, *lambda_, response_->alpha, *dealer_masked_, board, index_);
        close(outcome);
        return outcome;
    }

private:
    void require_phase(DisputePhase expected, const char* op) const {
        if (phase_ != expected) throw ProtocolOrderError(std::string(op) + " called out of phase order");
    }

    void close(DisputeOutcome outcome) {
        verdict_ = outcome;
        phase_ = DisputePhase::Closed;
    }

    DisputePhase phase_ = DisputePhase::Init;
    std::size_t index_;
    Element registered_pk_;
    bool checked_ = false;
    std::optional<Element> dealer_masked_;
    std::optional<Element> participant_masked_;
    std::optional<Bytes> lambda_;
    std::optional<DisputeResponse> response_;
    std::optional<DisputeOutcome> verdict_;
};

}  // namespace pvss
