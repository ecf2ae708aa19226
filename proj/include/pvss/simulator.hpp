#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pvss/transcript.hpp"

namespace pvss {

// Deterministic multi-party scenario engine: one dealer, n shareholders, a
// reconstructor and an arbiter wired through the full protocol under
// configurable adversary strategies. Identical configs (seed included)
// produce byte-identical reports.

enum class Role { Dealer, Participant, Outsider };

enum class StrategyVariant {
    Honest,
    DealerInvalidShare,        // corrupted E_i goes out in the deal
    DealerLambdaVariant,       // corrupted deal, then one of the 7 lambda forms
    ParticipantFakeAlpha,      // valid share, false complaint, fake alpha at step 4
    ParticipantFalseComplaint, // false complaint, then honest behavior
    OutsiderImpostor           // membership attempt with a share he never held
};

struct SubstitutionRule {
    enum class Mode { Fixed, ExhaustAll };
    Mode mode = Mode::Fixed;
    BigInt value = 0;
};

struct AdversaryStrategy {
    Role role = Role::Dealer;
    StrategyVariant variant = StrategyVariant::Honest;
    std::size_t target = 1;  // disputed index, or the impostor's claimed index
    int lambda_form = 1;     // 1..7, DealerLambdaVariant only
    SubstitutionRule share_sub;  // s'
    SubstitutionRule pk_sub;     // exponent a' standing in for the key (pk' = g^{a'})
    SubstitutionRule alpha_sub;  // alpha'
};

enum class Phase { Deal, Verify, Dispute, Membership, Reconstruct };

struct ScenarioConfig {
    std::string name = "scenario";
    bool fixed_params = true;  // canonical toy group; else generated from q_bits
    unsigned q_bits = 32;
    std::size_t k = 2;
    std::size_t n = 3;
    std::optional<Scalar> secret;  // nullopt: drawn from the seed
    std::uint64_t seed = 0;
    std::vector<AdversaryStrategy> strategies;
    std::vector<Phase> phases{Phase::Deal, Phase::Verify, Phase::Dispute, Phase::Membership,
                              Phase::Reconstruct};
};

struct DisputeRecord {
    std::size_t index = 0;
    std::string verdict;
    std::string expected;
    Transcript transcript;
};

struct MembershipRecord {
    std::size_t index = 0;
    bool impostor = false;
    std::string result;
    Transcript transcript;
};

struct DegenerateEvent {
    std::string phase;
    std::string cause;
};

struct ScenarioReport {
    std::string name;
    std::string fixture_hash;
    bool bulletin_consistent = true;
    std::vector<std::size_t> complaints;
    std::vector<DisputeRecord> disputes;
    std::vector<MembershipRecord> memberships;
    bool reconstruction_ran = false;
    bool reconstruction_ok = false;
    Scalar reconstructed = 0;
    Scalar true_secret = 0;
    std::string expected_cheater = "none";
    std::string ruled_cheater = "none";
    bool detection_sound = true;
    std::map<std::string, OpTally> op_counts;
    std::vector<DegenerateEvent> degenerate_log;
    bool transcript_leak_free = true;
};

// ---- strategy helpers ----------------------------------------------------

// The seven corrupted-lambda forms: substitutions of s' for the share and/or
// pk' for the key inside lambda = s XOR pk^s.
//   1: s'^ pk^s    2: s ^ pk^s'   3: s' ^ pk^s'  4: s ^ pk'^s
//   5: s' ^ pk'^s  6: s ^ pk'^s'  7: s' ^ pk'^s'
inline Bytes lambda_variant(const GroupParams& params, int form, const Scalar& s,
                            const Scalar& s_sub, const Element& pk, const Element& pk_sub) {
    if (form < 1 || form > 7) throw ParameterError("lambda form must be 1..7");
    const bool sub_in_xor = form == 1 || form == 3 || form == 5 || form == 7;
    const bool sub_in_exp = form == 2 || form == 3 || form == 6 || form == 7;
    const bool sub_key = form >= 4;
    const Scalar& x = sub_in_xor ? s_sub : s;
    const Scalar& e = sub_in_exp ? s_sub : s;
    const Element& base = sub_key ? pk_sub : pk;
    return xor_mask(x, mod_exp(params, base, e), params.byte_len);
}

// ---- lemma-1 exhaustion ----------------------------------------------------

struct Lemma1Row {
    int form = 0;  // 0 marks the honest control row
    std::optional<Scalar> share_sub;
    std::optional<Element> pk_sub;
    std::string outcome;
    std::string cause;  // set on degenerate rows
};

struct DealtFixture {
    BulletinBoard board;
    SharePolynomial poly;
    std::map<std::size_t, KeyPair> keys;
};

// Runs every corrupted-lambda form against an honest participant and arbiter:
// s' exhausted over Z_q \ {s_i}, pk' over the other q-1 subgroup elements.
// Rows where the dispute cannot reach a liar verdict are labeled with their
// cause instead of a verdict.
inline std::vector<Lemma1Row> enumerate_lemma1_matrix(const DealtFixture& fixture,
                                                      std::size_t target) {
    const GroupParams& params = fixture.board.params;
    if (params.q > 64) throw ParameterError("lemma-1 exhaustion is restricted to q <= 64");
    const Scalar s = eval_share(params, fixture.poly, target).share;
    const Element pk = fixture.board.pubkeys.at(target);
    const Scalar sk = fixture.keys.at(target).sk;

    std::vector<Lemma1Row> rows;
    auto run_row = [&](int form, std::optional<Scalar> s_sub, std::optional<Element> pk_sub,
                       const Bytes& lambda) {
        Lemma1Row row{form, std::move(s_sub), std::move(pk_sub), "", ""};
        DisputeDealerView dealer{s, std::nullopt, lambda};
        DisputeParticipantView participant{sk, std::nullopt, std::nullopt};
        const DisputeRun run = run_dispute(fixture.board, target, dealer, participant);
        row.outcome = to_string(run.outcome);
        if (run.outcome == DisputeOutcome::Resolved && form != 0)
            row.cause = "alpha congruent to dealt share mod q; participant accepted";
        if (run.outcome == DisputeOutcome::Unresolvable)
            row.cause = "degenerate exponent during adjudication";
        rows.push_back(std::move(row));
    };

    run_row(0, std::nullopt, std::nullopt, dealer_lambda(params, s, pk));  // control

    std::vector<Scalar> share_subs;
    for (BigInt v = 0; v < params.q; ++v)
        if (v != s) share_subs.push_back(v);
    std::vector<Element> pk_subs;
    for (BigInt e = 0; e < params.q; ++e) {
        Element candidate = mod_exp(params, params.g, e);
        if (candidate != pk) pk_subs.push_back(candidate);
    }

    for (int form = 1; form <= 7; ++form) {
        const bool uses_share = form != 4;
        const bool uses_pk = form >= 4;
        const auto& s_range = uses_share ? share_subs : std::vector<Scalar>{s};
        const auto& pk_range = uses_pk ? pk_subs : std::vector<Element>{pk};
        for (const auto& pk_sub : pk_range) {
            for (const auto& s_sub : s_range) {
                run_row(form, uses_share ? std::optional(s_sub) : std::nullopt,
                        uses_pk ? std::optional(pk_sub) : std::nullopt,
                        lambda_variant(params, form, s, s_sub, pk, pk_sub));
            }
        }
    }
    return rows;
}

// ---- scenario engine -------------------------------------------------------

namespace detail {

inline const AdversaryStrategy* find_strategy(const std::vector<AdversaryStrategy>& strategies,
                                              StrategyVariant variant) {
    for (const auto& s : strategies)
        if (s.variant == variant) return &s;
    return nullptr;
}

inline BigInt rule_value(const SubstitutionRule& rule, const char* what) {
    if (rule.mode != SubstitutionRule::Mode::Fixed)
        throw ParameterError(std::string("run_scenario needs a fixed ") + what +
                             "; exhaustion belongs to the matrix operations");
    return rule.value;
}

// True share never appears outside masked bytes and the key-reveal branch.
// The only clear scalar a party ever forwards is alpha, and the protocol
// sends it exactly when it differs from the share.
inline bool transcript_leaks_share(const Transcript& t, const Scalar& true_share) {
    for (const auto& e : t.entries)
        if (e.kind == "alpha" && from_hex(e.message) == true_share) return true;
    return false;
}

}  // namespace detail

inline void validate_config(const ScenarioConfig& config) {
    if (config.k < 1 || config.k > config.n) throw ParameterError("scenario needs 1 <= k <= n");
    std::size_t dealer_strategies = 0;
    for (const auto& s : config.strategies) {
        const bool dealer_variant = s.variant == StrategyVariant::DealerInvalidShare ||
                                    s.variant == StrategyVariant::DealerLambdaVariant;
        const bool participant_variant = s.variant == StrategyVariant::ParticipantFakeAlpha ||
                                         s.variant == StrategyVariant::ParticipantFalseComplaint;
        const bool outsider_variant = s.variant == StrategyVariant::OutsiderImpostor;
        if (dealer_variant && s.role != Role::Dealer)
            throw ParameterError("dealer variant assigned to non-dealer role");
        if (participant_variant && s.role != Role::Participant)
            throw ParameterError("participant variant assigned to non-participant role");
        if (outsider_variant && s.role != Role::Outsider)
            throw ParameterError("outsider variant assigned to non-outsider role");
        if (dealer_variant) ++dealer_strategies;
        if (s.variant != StrategyVariant::Honest && (s.target < 1 || s.target > config.n))
            throw ParameterError("strategy target outside 1..n");
    }
    if (dealer_strategies > 1) throw ParameterError("at most one dealer strategy");
}

inline ScenarioReport run_scenario(const ScenarioConfig& config) {
    validate_config(config);
    ScenarioReport report;
    report.name = config.name;
    SeededRng rng(config.seed);

    const GroupParams params =
        config.fixed_params ? fixed_toy_params() : generate_params(config.q_bits, rng.next_word());
    const auto phase_on = [&](Phase p) {
        return std::find(config.phases.begin(), config.phases.end(), p) != config.phases.end();
    };

    std::map<std::size_t, KeyPair> keys;
    std::map<std::size_t, Element> pubkeys;
    for (std::size_t i = 1; i <= config.n; ++i) {
        keys.emplace(i, keygen(params, rng));
        pubkeys.emplace(i, keys.at(i).pk);
    }
    const Scalar secret = config.secret ? *config.secret : rng.below(params.q);
    report.true_secret = secret;

    const auto* dealer_cheat = detail::find_strategy(config.strategies, StrategyVariant::DealerInvalidShare);
    const auto* lambda_cheat = detail::find_strategy(config.strategies, StrategyVariant::DealerLambdaVariant);
    const auto* fake_alpha = detail::find_strategy(config.strategies, StrategyVariant::ParticipantFakeAlpha);
    const auto* false_complaint =
        detail::find_strategy(config.strategies, StrategyVariant::ParticipantFalseComplaint);

    // Deal. A zero share is a degenerate draw: logged, re-dealt once.
    BulletinBoard board;
    SharePolynomial poly;
    if (!phase_on(Phase::Deal)) return report;
    {
        TallyScope scope(report.op_counts["deal"]);
        SeededRng deal_rng = rng.fork();
        for (int attempt = 0;; ++attempt) {
            auto [sampled, output] = deal(params, secret, config.k, config.n, pubkeys, deal_rng);
            poly = std::move(sampled);
            board = BulletinBoard{params, config.k, config.n, std::move(output), pubkeys};
            std::size_t zero_at = 0;
            for (std::size_t i = 1; i <= config.n; ++i)
                if (eval_share(params, poly, i).share == 0) zero_at = i;
            if (zero_at == 0) break;
            report.degenerate_log.push_back(
                {"deal", "zero share at index " + std::to_string(zero_at)});
            if (attempt == 1) break;  // re-seeded once already; keep the draw, stays logged
            deal_rng = rng.fork();
        }
        const auto* corrupter = dealer_cheat ? dealer_cheat : lambda_cheat;
        if (corrupter) {
            const Scalar s_sub = detail::rule_value(corrupter->share_sub, "share substitution") % params.q;
            const Element mask = mod_exp(params, pubkeys.at(corrupter->target), s_sub);
            board.deal.encrypted_shares[corrupter->target] =
                xor_mask(s_sub, mask, params.byte_len);
        }
    }
    report.fixture_hash = board_fingerprint(board);

    // Verify: every shareholder decrypts and checks; anyone audits the board.
    std::map<std::size_t, Scalar> decrypted;
    if (phase_on(Phase::Verify)) {
        TallyScope scope(report.op_counts["verify"]);
        report.bulletin_consistent = verify_bulletin(board).empty();
        for (std::size_t i = 1; i <= config.n; ++i) {
            try {
                const Scalar share = decrypt_share(params, board.deal.encrypted_shares.at(i),
                                                   keys.at(i).sk, board.deal.share_images[i]);
                if (verify_share(params, share, board.deal.commitments, i))
                    decrypted.emplace(i, share);
                else
                    report.complaints.push_back(i);
            } catch (const NonCanonicalShareError&) {
                report.complaints.push_back(i);
            }
        }
        for (const auto* liar : {fake_alpha, false_complaint})
            if (liar && decrypted.count(liar->target))
                report.complaints.push_back(liar->target);
    }

    // Dispute: one run per complaint.
    if (phase_on(Phase::Dispute)) {
        TallyScope scope(report.op_counts["dispute"]);
        for (std::size_t index : report.complaints) {
            DisputeDealerView dealer{eval_share(params, poly, index).share, std::nullopt,
                                     std::nullopt};
            DisputeParticipantView participant{keys.at(index).sk, std::nullopt, std::nullopt};
            std::string expected = "resolved";
            if (dealer_cheat && dealer_cheat->target == index) {
                // A consistent cheater re-publishes the corrupted encryption.
                const Scalar s_sub = detail::rule_value(dealer_cheat->share_sub, "share substitution") % params.q;
                dealer.lambda_override =
                    xor_mask(s_sub, mod_exp(params, board.pubkeys.at(index), s_sub), params.byte_len);
                expected = "dealer_lied";
            } else if (lambda_cheat && lambda_cheat->target == index) {
                const Scalar s = eval_share(params, poly, index).share;
                const Scalar s_sub = detail::rule_value(lambda_cheat->share_sub, "share substitution") % params.q;
                const Element pk_sub =
                    mod_exp(params, params.g, detail::rule_value(lambda_cheat->pk_sub, "key substitution"));
                dealer.lambda_override = lambda_variant(params, lambda_cheat->lambda_form, s,
                                                        s_sub, board.pubkeys.at(index), pk_sub);
                expected = "dealer_lied";
            } else if (fake_alpha && fake_alpha->target == index) {
                participant.alpha_override = detail::rule_value(fake_alpha->alpha_sub, "alpha substitution");
                expected = "participant_lied";
            }
            const DisputeRun run = run_dispute(board, index, dealer, participant);
            if (run.outcome == DisputeOutcome::Unresolvable)
                report.degenerate_log.push_back(
                    {"dispute", "unresolvable at index " + std::to_string(index)});
            if (expected == "dealer_lied" && run.outcome == DisputeOutcome::Resolved)
                report.degenerate_log.push_back(
                    {"dispute", "corrupted lambda still yielded the dealt share at index " +
                                    std::to_string(index)});
            report.disputes.push_back({index, to_string(run.outcome), expected, run.transcript});
        }
    }

    // Membership: honest proof per verified shareholder, impostor attempts on top.
    if (phase_on(Phase::Membership)) {
        TallyScope scope(report.op_counts["membership"]);
        auto attempt = [&](std::size_t index, const Scalar& share, bool impostor) {
            for (int tries = 0; tries < 2; ++tries) {
                SeededRng challenge_rng = rng.fork();
                const MembershipChallenge challenge = membership_challenge(params, challenge_rng);
                const MembershipRun run = run_membership(board, index, share, challenge);
                if (run.degenerate) {
                    report.degenerate_log.push_back(
                        {"membership",
                         "degenerate exponent at index " + std::to_string(index) +
                             (tries == 0 ? "; re-challenged" : "; giving up")});
                    continue;
                }
                report.memberships.push_back(
                    {index, impostor, run.accepted ? "accepted" : "rejected", run.transcript});
                return;
            }
            report.memberships.push_back({index, impostor, "degenerate", {}});
        };
        for (const auto& [index, share] : decrypted) {
            if (share == 0)
                report.degenerate_log.push_back(
                    {"membership", "zero share at index " + std::to_string(index) +
                                       "; mask is the identity"});
            attempt(index, share, false);
        }
        for (const auto& s : config.strategies) {
            if (s.variant != StrategyVariant::OutsiderImpostor) continue;
            attempt(s.target, detail::rule_value(s.share_sub, "impostor share") % params.q, true);
        }
    }

    // Reconstruct: verified shareholders submit re-encrypted shares.
    if (phase_on(Phase::Reconstruct)) {
        TallyScope scope(report.op_counts["reconstruct"]);
        const KeyPair reconstructor = keygen(params, rng);
        std::vector<std::pair<std::size_t, EncryptedShare>> submissions;
        for (const auto& [index, share] : decrypted)
            submissions.emplace_back(
                index, encrypt_for_submission(params, {index, share}, reconstructor.pk));
        report.reconstruction_ran = true;
        try {
            const auto result = reconstruct(submissions, reconstructor.sk, board);
            report.reconstructed = result.secret;
            report.reconstruction_ok = (result.secret == secret);
        } catch (const InsufficientValidSharesError&) {
            report.reconstruction_ok = false;
        }
    }

    // Detection summary: does the ruled cheater match the configured one?
    for (const auto& s : config.strategies) {
        if (s.variant == StrategyVariant::Honest) continue;
        report.expected_cheater = s.role == Role::Dealer       ? "dealer"
                                  : s.role == Role::Participant ? "participant"
                                                                : "outsider";
        break;  // at most one effective cheater per scenario by convention
    }
    for (const auto& d : report.disputes) {
        if (d.verdict == "dealer_lied") report.ruled_cheater = "dealer";
        if (d.verdict == "participant_lied") report.ruled_cheater = "participant";
    }
    for (const auto& m : report.memberships)
        if (m.impostor && m.result == "rejected") report.ruled_cheater = "outsider";
    const bool degenerate_run = !report.degenerate_log.empty();
    if (report.expected_cheater == "none") {
        report.detection_sound = (report.ruled_cheater == "none");
    } else if (false_complaint && report.expected_cheater == "participant") {
        // Withdrawing at step 4 resolves the dispute without naming a liar.
        bool resolved = false;
        for (const auto& d : report.disputes)
            if (d.index == false_complaint->target && d.verdict == "resolved") resolved = true;
        report.detection_sound = resolved && report.ruled_cheater == "none";
    } else {
        report.detection_sound = (report.ruled_cheater == report.expected_cheater) || degenerate_run;
    }

    // Structural secrecy check over every transcript.
    for (const auto& d : report.disputes) {
        const Scalar true_share = eval_share(params, poly, d.index).share;
        if (detail::transcript_leaks_share(d.transcript, true_share))
            report.transcript_leak_free = false;
    }
    for (const auto& m : report.memberships) {
        if (m.transcript.entries.empty()) continue;
        const Scalar true_share = eval_share(params, poly, m.index).share;
        if (detail::transcript_leaks_share(m.transcript, true_share))
            report.transcript_leak_free = false;
    }
    return report;
}

// The worked desk-scale fixture: toy group, polynomial [7, 3], keys 4/7/2.
inline DealtFixture make_toy_fixture() {
    DealtFixture fixture;
    const GroupParams params = fixed_toy_params();
    fixture.poly.coeffs = {7, 3};
    const int secret_keys[] = {4, 7, 2};
    for (std::size_t i = 1; i <= 3; ++i) {
        const Scalar sk = secret_keys[i - 1];
        fixture.keys.emplace(i, KeyPair{sk, mod_exp(params, params.g, sk)});
    }
    std::map<std::size_t, Element> pubkeys;
    for (const auto& [i, kp] : fixture.keys) pubkeys.emplace(i, kp.pk);
    fixture.board = BulletinBoard{params, 2, 3,
                                  deal_with_polynomial(params, fixture.poly, 3, pubkeys), pubkeys};
    return fixture;
}

// ---- config / report serialization ------------------------------------------

inline std::string to_string(Phase p) {
    switch (p) {
        case Phase::Deal: return "deal";
        case Phase::Verify: return "verify";
        case Phase::Dispute: return "dispute";
        case Phase::Membership: return "membership";
        case Phase::Reconstruct: return "reconstruct";
    }
    return "deal";
}

inline Phase phase_from_string(const std::string& s) {
    if (s == "deal") return Phase::Deal;
    if (s == "verify") return Phase::Verify;
    if (s == "dispute") return Phase::Dispute;
    if (s == "membership") return Phase::Membership;
    if (s == "reconstruct") return Phase::Reconstruct;
    throw ParameterError("unknown phase: " + s);
}

inline std::string to_string(StrategyVariant v) {
    switch (v) {
        case StrategyVariant::Honest: return "honest";
        case StrategyVariant::DealerInvalidShare: return "dealer_invalid_share";
        case StrategyVariant::DealerLambdaVariant: return "dealer_lambda_variant";
        case StrategyVariant::ParticipantFakeAlpha: return "participant_fake_alpha";
        case StrategyVariant::ParticipantFalseComplaint: return "participant_false_complaint";
        case StrategyVariant::OutsiderImpostor: return "outsider_impostor";
    }
    return "honest";
}

inline StrategyVariant variant_from_string(const std::string& s) {
    if (s == "honest") return StrategyVariant::Honest;
    if (s == "dealer_invalid_share") return StrategyVariant::DealerInvalidShare;
    if (s == "dealer_lambda_variant") return StrategyVariant::DealerLambdaVariant;
    if (s == "participant_fake_alpha") return StrategyVariant::ParticipantFakeAlpha;
    if (s == "participant_false_complaint") return StrategyVariant::ParticipantFalseComplaint;
    if (s == "outsider_impostor") return StrategyVariant::OutsiderImpostor;
    throw ParameterError("unknown strategy variant: " + s);
}

inline std::string to_string(Role r) {
    switch (r) {
        case Role::Dealer: return "dealer";
        case Role::Participant: return "participant";
        case Role::Outsider: return "outsider";
    }
    return "dealer";
}

inline Role role_from_string(const std::string& s) {
    if (s == "dealer") return Role::Dealer;
    if (s == "participant") return Role::Participant;
    if (s == "outsider") return Role::Outsider;
    throw ParameterError("unknown role: " + s);
}

inline Json to_json(const SubstitutionRule& rule) {
    if (rule.mode == SubstitutionRule::Mode::ExhaustAll) return Json{{"mode", "exhaust_all"}};
    return Json{{"mode", "fixed"}, {"value", to_hex(rule.value)}};
}

inline SubstitutionRule rule_from_json(const Json& j) {
    SubstitutionRule rule;
    if (j.at("mode").get<std::string>() == "exhaust_all") {
        rule.mode = SubstitutionRule::Mode::ExhaustAll;
    } else {
        rule.mode = SubstitutionRule::Mode::Fixed;
        rule.value = from_hex(j.at("value").get<std::string>());
    }
    return rule;
}

inline Json to_json(const AdversaryStrategy& s) {
    return Json{{"role", to_string(s.role)},
                {"variant", to_string(s.variant)},
                {"target", s.target},
                {"lambda_form", s.lambda_form},
                {"share_sub", to_json(s.share_sub)},
                {"pk_sub", to_json(s.pk_sub)},
                {"alpha_sub", to_json(s.alpha_sub)}};
}

inline AdversaryStrategy strategy_from_json(const Json& j) {
    AdversaryStrategy s;
    s.role = role_from_string(j.at("role").get<std::string>());
    s.variant = variant_from_string(j.at("variant").get<std::string>());
    s.target = j.value("target", std::size_t{1});
    s.lambda_form = j.value("lambda_form", 1);
    if (j.contains("share_sub")) s.share_sub = rule_from_json(j.at("share_sub"));
    if (j.contains("pk_sub")) s.pk_sub = rule_from_json(j.at("pk_sub"));
    if (j.contains("alpha_sub")) s.alpha_sub = rule_from_json(j.at("alpha_sub"));
    return s;
}

inline Json to_json(const ScenarioConfig& config) {
    Json strategies = Json::array();
    for (const auto& s : config.strategies) strategies.push_back(to_json(s));
    Json phases = Json::array();
    for (const auto& p : config.phases) phases.push_back(to_string(p));
    Json j{{"name", config.name},
           {"k", config.k},
           {"n", config.n},
           {"seed", config.seed},
           {"strategies", strategies},
           {"phases", phases}};
    j["params"] = config.fixed_params ? Json{{"source", "fixed_toy"}}
                                      : Json{{"source", "generated"}, {"q_bits", config.q_bits}};
    j["secret"] = config.secret ? Json{{"mode", "explicit"}, {"value", to_hex(*config.secret)}}
                                : Json{{"mode", "random"}};
    return j;
}

inline ScenarioConfig config_from_json(const Json& j) {
    ScenarioConfig config;
    config.name = j.value("name", std::string("scenario"));
    config.k = j.at("k").get<std::size_t>();
    config.n = j.at("n").get<std::size_t>();
    config.seed = j.at("seed").get<std::uint64_t>();
    const Json& params = j.at("params");
    config.fixed_params = params.at("source").get<std::string>() == "fixed_toy";
    if (!config.fixed_params) config.q_bits = params.at("q_bits").get<unsigned>();
    const Json& secret = j.at("secret");
    if (secret.at("mode").get<std::string>() == "explicit")
        config.secret = from_hex(secret.at("value").get<std::string>());
    config.strategies.clear();
    for (const auto& s : j.value("strategies", Json::array()))
        config.strategies.push_back(strategy_from_json(s));
    config.phases.clear();
    for (const auto& p : j.at("phases")) config.phases.push_back(phase_from_string(p.get<std::string>()));
    return config;
}

inline Json to_json(const OpTally& t) {
    return Json{{"exps", t.exps}, {"invs", t.invs}, {"xors", t.xors}};
}

inline Json to_json(const ScenarioReport& report) {
    Json disputes = Json::array();
    for (const auto& d : report.disputes)
        disputes.push_back(Json{{"index", d.index},
                                {"verdict", d.verdict},
                                {"expected", d.expected},
                                {"transcript", to_json(d.transcript)}});
    Json memberships = Json::array();
    for (const auto& m : report.memberships)
        memberships.push_back(Json{{"index", m.index},
                                   {"impostor", m.impostor},
                                   {"result", m.result},
                                   {"transcript", to_json(m.transcript)}});
    Json op_counts = Json::object();
    for (const auto& [phase, tally] : report.op_counts) op_counts[phase] = to_json(tally);
    Json degenerate = Json::array();
    for (const auto& d : report.degenerate_log)
        degenerate.push_back(Json{{"phase", d.phase}, {"cause", d.cause}});
    Json reconstruction{{"ran", report.reconstruction_ran}};
    if (report.reconstruction_ran) {
        reconstruction["ok"] = report.reconstruction_ok;
        reconstruction["secret"] = to_hex(report.reconstructed);
        reconstruction["expected"] = to_hex(report.true_secret);
    }
    return Json{{"name", report.name},
                {"fixture_hash", report.fixture_hash},
                {"bulletin_consistent", report.bulletin_consistent},
                {"complaints", report.complaints},
                {"disputes", disputes},
                {"memberships", memberships},
                {"reconstruction", reconstruction},
                {"detection", Json{{"expected_cheater", report.expected_cheater},
                                   {"ruled_cheater", report.ruled_cheater},
                                   {"sound", report.detection_sound}}},
                {"op_counts", op_counts},
                {"degenerate_log", degenerate},
                {"transcript_leak_free", report.transcript_leak_free}};
}

// ---- cost table ------------------------------------------------------------

inline std::string op_count_report(const ScenarioReport& report) {
    std::ostringstream out;
    out << "phase         exps  invs  xors\n";
    static const char* order[] = {"deal", "verify", "dispute", "membership", "reconstruct"};
    for (const char* phase : order) {
        auto it = report.op_counts.find(phase);
        const OpTally tally = it == report.op_counts.end() ? OpTally{} : it->second;
        out << phase << std::string(14 - std::string(phase).size(), ' ');
        std::string e = std::to_string(tally.exps), i = std::to_string(tally.invs),
                    x = std::to_string(tally.xors);
        out << std::string(4 - std::min<std::size_t>(4, e.size()), ' ') << e << "  "
            << std::string(4 - std::min<std::size_t>(4, i.size()), ' ') << i << "  "
            << std::string(4 - std::min<std::size_t>(4, x.size()), ' ') << x << "\n";
    }
    return out.str();
}

}  // namespace pvss
