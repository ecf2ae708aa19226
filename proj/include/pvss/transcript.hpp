#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pvss/dispute.hpp"
#include "pvss/membership.hpp"
#include "pvss/serial.hpp"

namespace pvss {

// Replayable record of one protocol run: an ordered message list terminated
// by a verdict. Feeding a transcript back through the replay functions
// re-derives the same verdict from public data alone.

struct TranscriptEntry {
    int step = 0;
    std::string actor;    // "D", "P", "R" (dispute) / "P", "V" (membership)
    std::string kind;     // field role; see leak checker
    std::string message;  // hex or enum token
};

struct Transcript {
    std::string protocol;  // "dispute" | "membership"
    std::size_t index = 0;
    std::vector<TranscriptEntry> entries;
    std::string verdict;
};

inline Json to_json(const Transcript& t) {
    Json list = Json::array();
    for (const auto& e : t.entries)
        list.push_back(Json{{"step", e.step}, {"actor", e.actor}, {"kind", e.kind}, {"message", e.message}});
    list.push_back(Json{{"verdict", t.verdict}});
    return Json{{"protocol", t.protocol}, {"index", t.index}, {"transcript", list}};
}

inline Transcript transcript_from_json(const Json& j) {
    Transcript t;
    t.protocol = j.at("protocol").get<std::string>();
    t.index = j.at("index").get<std::size_t>();
    for (const auto& item : j.at("transcript")) {
        if (item.contains("verdict")) {
            t.verdict = item.at("verdict").get<std::string>();
        } else {
            t.entries.push_back({item.at("step").get<int>(), item.at("actor").get<std::string>(),
                                 item.at("kind").get<std::string>(),
                                 item.at("message").get<std::string>()});
        }
    }
    return t;
}

// ---- dispute driver ----------------------------------------------------

struct DisputeDealerView {
    Scalar dealt_share;                     // s_i from the dealer's polynomial
    std::optional<Element> masked_override; // step-2 lie
    std::optional<Bytes> lambda_override;   // step-3 lie
};

struct DisputeParticipantView {
    Scalar sk;                              // a_i
    std::optional<Element> masked_override; // step-2 lie
    std::optional<BigInt> alpha_override;   // step-4 lie
};

struct DisputeRun {
    DisputeOutcome outcome = DisputeOutcome::Unresolvable;
    Transcript transcript;
};

inline DisputeRun run_dispute(const BulletinBoard& board, std::size_t index,
                              const DisputeDealerView& dealer,
                              const DisputeParticipantView& participant) {
    const GroupParams& params = board.params;
    const Element registered_pk = board.pubkeys.at(index);
    DisputeRun run;
    run.transcript.protocol = "dispute";
    run.transcript.index = index;
    auto& entries = run.transcript.entries;
    auto close = [&](DisputeOutcome outcome) {
        run.outcome = outcome;
        run.transcript.verdict = to_string(outcome);
        return run;
    };

    entries.push_back({1, "P", "public_key", to_hex(registered_pk)});

    DisputeState state(index, registered_pk);
    Element d_masked, p_masked;
    try {
        d_masked = dealer.masked_override
                       ? *dealer.masked_override
                       : dealer_masked_value(params, registered_pk, dealer.dealt_share);
        p_masked = participant.masked_override
                       ? *participant.masked_override
                       : participant_masked_value(params, participant.sk,
                                                  board.deal.share_images[index]);
    } catch (const DegenerateExponentError&) {
        entries.push_back({2, "R", "abort", "degenerate_exponent"});
        return close(DisputeOutcome::Unresolvable);
    }
    entries.push_back({2, "D", "masked_value", to_hex(d_masked)});
    entries.push_back({2, "P", "masked_value", to_hex(p_masked)});
    state.publish_masked(d_masked, p_masked);

    if (!state.check_masked()) {
        entries.push_back({2, "P", "revealed_key", to_hex(participant.sk)});
        return close(state.key_reveal(participant.sk, board));
    }

    Bytes lambda = dealer.lambda_override
                       ? *dealer.lambda_override
                       : dealer_lambda(params, dealer.dealt_share, registered_pk);
    entries.push_back({3, "D", "lambda", bytes_to_hex(lambda)});
    state.publish_lambda(lambda);

    DisputeResponse response = participant_respond(params, lambda, participant.sk, board, index);
    if (participant.alpha_override) response = {false, *participant.alpha_override};
    if (response.accept) {
        entries.push_back({4, "P", "accept", "accept"});
        state.respond(response);
        return close(DisputeOutcome::Resolved);
    }
    entries.push_back({4, "P", "alpha", to_hex(response.alpha)});
    state.respond(response);
    return close(state.adjudicate(board));
}

// Re-derives the verdict from the recorded messages and the public board.
inline std::string replay_dispute(const Transcript& t, const BulletinBoard& board) {
    const GroupParams& params = board.params;
    auto find = [&](const std::string& kind) -> const TranscriptEntry* {
        for (const auto& e : t.entries)
            if (e.kind == kind) return &e;
        return nullptr;
    };
    if (find("abort")) return to_string(DisputeOutcome::Unresolvable);

    std::optional<Element> d_masked, p_masked;
    for (const auto& e : t.entries)
        if (e.kind == "masked_value")
            (e.actor == "D" ? d_masked : p_masked) = from_hex(e.message);
    if (!d_masked || !p_masked) throw ParameterError("transcript missing step-2 values");

    if (*d_masked != *p_masked) {
        const auto* key = find("revealed_key");
        if (!key) throw ParameterError("transcript missing revealed key");
        DisputeOutcome outcome;
        try {
            outcome = key_reveal_adjudicate(params, from_hex(key->message),
                                            board.pubkeys.at(t.index), *d_masked, *p_masked,
                                            board, t.index);
        } catch (const DegenerateExponentError&) {
            outcome = DisputeOutcome::Unresolvable;
        }
        return to_string(outcome);
    }

    if (find("accept")) return to_string(DisputeOutcome::Resolved);
    const auto* lambda = find("lambda");
    const auto* alpha = find("alpha");
    if (!lambda || !alpha) throw ParameterError("transcript missing lambda or alpha");
    return to_string(adjudicate_response(params, hex_to_bytes(lambda->message),
                                         from_hex(alpha->message), *d_masked, board, t.index));
}

// ---- membership driver -------------------------------------------------

struct MembershipRun {
    bool accepted = false;
    bool degenerate = false;  // a masked computation aborted; no verdict
    Transcript transcript;
};

// The verifier's ephemeral secret is disclosed in the terminal record so the
// transcript stays replayable; the proof is over by then and `a` reveals
// nothing about the share.
inline MembershipRun run_membership(const BulletinBoard& board, std::size_t index,
                                    const Scalar& prover_share,
                                    const MembershipChallenge& challenge) {
    const GroupParams& params = board.params;
    MembershipRun run;
    run.transcript.protocol = "membership";
    run.transcript.index = index;
    auto& entries = run.transcript.entries;
    entries.push_back({1, "V", "challenge", to_hex(challenge.g_a)});
    Element response, recomputed;
    try {
        response = membership_respond(params, prover_share, challenge.g_a);
        entries.push_back({2, "P", "response", to_hex(response)});
        const Element image = expected_share_image(params, board.deal.commitments, index);
        recomputed = masked_inverse_exp(params, mod_exp(params, image, challenge.a));
    } catch (const DegenerateExponentError&) {
        entries.push_back({3, "V", "abort", "degenerate_exponent"});
        run.degenerate = true;
        run.transcript.verdict = "degenerate";
        return run;
    }
    entries.push_back({3, "V", "recomputed", to_hex(recomputed)});
    entries.push_back({4, "V", "challenge_secret", to_hex(challenge.a)});
    run.accepted = (recomputed == response);
    run.transcript.verdict = run.accepted ? "accepted" : "rejected";
    return run;
}

inline std::string replay_membership(const Transcript& t, const BulletinBoard& board) {
    const GroupParams& params = board.params;
    const TranscriptEntry* challenge = nullptr;
    const TranscriptEntry* response = nullptr;
    const TranscriptEntry* secret = nullptr;
    for (const auto& e : t.entries) {
        if (e.kind == "abort") return "degenerate";
        if (e.kind == "challenge") challenge = &e;
        if (e.kind == "response") response = &e;
        if (e.kind == "challenge_secret") secret = &e;
    }
    if (!challenge || !response || !secret) throw ParameterError("transcript incomplete");
    const Scalar a = from_hex(secret->message);
    if (mod_exp(params, params.g, a) != from_hex(challenge->message))
        throw ParameterError("challenge secret does not match recorded challenge");
    const Element image = expected_share_image(params, board.deal.commitments, t.index);
    const bool ok = membership_verify(params, a, image, from_hex(response->message));
    return ok ? "accepted" : "rejected";
}

}  // namespace pvss
