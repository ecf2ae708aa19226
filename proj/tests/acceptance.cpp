// Acceptance runner: one pass/fail line per check on stdout, supporting
// detail on stderr, exit code = number of failed checks.
//
// Expected values come from tests/oracle.hpp (direct uint64 modular
// arithmetic), never from the library under test. Two checks probe claims
// that do not hold at desk scale — the step-4 alpha channel of the
// disputation is malleable mod q, and the masked membership pipeline is not
// injective on the subgroup — and those report FAIL with the offending rows
// listed. They document protocol limits, not implementation bugs; the
// remaining checks must pass exactly.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "pvss/simulator.hpp"

namespace fs = std::filesystem;
using namespace pvss;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, double budget_ms,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (ms > budget_ms) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("%s %2d %-28s (%.0f ms)\n", ok ? "PASS" : "FAIL", id, name.c_str(), ms);
    if (!detail.empty()) std::fprintf(stderr, "  [%d] %s\n", id, detail.c_str());
    if (!ok) ++failures;
}

const oracle::Fixture ofix = oracle::make_fixture(23, 11, 2, {7, 3}, {4, 7, 2});
const DealtFixture lfix = make_toy_fixture();
const GroupParams toy = fixed_toy_params();

bool toy_fixture_vectors(std::string& detail) {
    bool ok = true;
    for (std::size_t j = 0; j < 2; ++j)
        ok &= lfix.board.deal.commitments[j] == ofix.commitments[j];
    for (std::size_t i = 0; i <= 3; ++i)
        ok &= lfix.board.deal.share_images[i] == ofix.images[i];
    for (std::size_t i = 1; i <= 3; ++i)
        ok &= lfix.board.deal.encrypted_shares.at(i) ==
              Bytes{static_cast<std::uint8_t>(ofix.encrypted[i - 1])};
    const uint64_t mask = oracle::pow_mod(ofix.pubkeys[0], ofix.shares[1], 23);
    ok &= dealer_masked_value(toy, 16, 10) == oracle::masked_inverse_exp(mask, 23, 11, 2);
    ok &= participant_masked_value(toy, 4, 12) == oracle::masked_inverse_exp(mask, 23, 11, 2);
    const uint64_t rp = oracle::masked_inverse_exp(
        oracle::pow_mod(oracle::pow_mod(2, 5, 23), ofix.shares[1], 23), 23, 11, 2);
    ok &= membership_respond(toy, 10, mod_exp(toy, toy.g, 5)) == rp;
    ok &= rp == 3 && mask == 13;
    if (!ok) detail = "library fixture diverges from the brute-force oracle";
    return ok;
}

bool roundtrip_exhaustion(std::string& detail) {
    for (uint64_t share = 0; share <= 10; ++share) {
        for (uint64_t sk = 1; sk <= 10; ++sk) {
            const uint64_t pk = oracle::pow_mod(2, sk, 23);
            const uint64_t image = oracle::pow_mod(2, share, 23);
            const Bytes encrypted = xor_mask(share, mod_exp(toy, pk, share), 1);
            if (encrypted != Bytes{static_cast<std::uint8_t>(
                                 share ^ oracle::pow_mod(pk, share, 23))} ||
                decrypt_share(toy, encrypted, sk, image) != Scalar(share) ||
                mod_exp(toy, pk, share) != mod_exp(toy, image, sk)) {
                detail = "failed at share=" + std::to_string(share) + " sk=" + std::to_string(sk);
                return false;
            }
        }
    }
    return true;
}

bool verification_soundness(std::string& detail) {
    for (std::size_t i = 0; i <= 3; ++i) {
        for (uint64_t candidate = 0; candidate <= 10; ++candidate) {
            const bool expected = candidate == ofix.shares[i];
            if (verify_share(toy, candidate, lfix.board.deal.commitments, i) != expected) {
                detail = "index " + std::to_string(i) + " candidate " + std::to_string(candidate);
                return false;
            }
        }
    }
    return true;
}

bool lemma1_matrix(std::string& detail) {
    const auto rows = enumerate_lemma1_matrix(lfix, 1);
    const uint64_t s = ofix.shares[1];
    const uint64_t mask = oracle::pow_mod(ofix.pubkeys[0], s, 23);
    std::size_t adversarial = 0, dealer_lied = 0, degenerate = 0, unlabeled = 0, wrong = 0;
    for (const auto& row : rows) {
        if (row.form == 0) continue;  // control
        ++adversarial;
        // oracle route: the honest participant unmasks with the true mask
        const uint64_t s_sub =
            row.share_sub ? static_cast<uint64_t>(*row.share_sub) : s;
        const uint64_t pk_sub =
            row.pk_sub ? static_cast<uint64_t>(*row.pk_sub) : ofix.pubkeys[0];
        const bool sub_in_xor = row.form == 1 || row.form == 3 || row.form == 5 || row.form == 7;
        const bool sub_in_exp = row.form == 2 || row.form == 3 || row.form == 6 || row.form == 7;
        const uint64_t lambda = (sub_in_xor ? s_sub : s) ^
                                oracle::pow_mod(row.form >= 4 ? pk_sub : ofix.pubkeys[0],
                                                sub_in_exp ? s_sub : s, 23);
        const uint64_t alpha = lambda ^ mask;
        const std::string expected =
            oracle::pow_mod(2, alpha % 11, 23) == ofix.images[1] ? "resolved" : "dealer_lied";
        if (row.outcome != expected) ++wrong;
        if (row.outcome == "dealer_lied") ++dealer_lied;
        else if (!row.cause.empty()) ++degenerate;
        else ++unlabeled;
    }
    std::ostringstream ss;
    ss << adversarial << " adversarial rows: " << dealer_lied << " dealer_lied, " << degenerate
       << " degenerate (logged), " << unlabeled << " unlabeled, " << wrong
       << " diverging from the oracle";
    detail = ss.str();
    return wrong == 0 && unlabeled == 0 && dealer_lied + degenerate == adversarial &&
           degenerate * 5 < adversarial;
}

bool lemma2_matrix(std::string& detail) {
    // honest lambda, every alpha' != alpha: the gate demands participant_lied
    // on every non-vacuous row
    std::size_t rows = 0, participant_lied = 0;
    std::ostringstream exceptions;
    for (std::size_t i = 1; i <= 3; ++i) {
        const Scalar s = ofix.shares[i];
        for (BigInt alpha = 0; alpha < 11; ++alpha) {
            if (alpha == s) continue;
            ++rows;
            DisputeDealerView dealer{s, std::nullopt, std::nullopt};
            DisputeParticipantView participant{lfix.keys.at(i).sk, std::nullopt, alpha};
            const DisputeRun run = run_dispute(lfix.board, i, dealer, participant);
            if (run.outcome == DisputeOutcome::ParticipantLied) {
                ++participant_lied;
            } else {
                exceptions << " [i=" << i << " alpha'=" << alpha << " -> "
                           << to_string(run.outcome) << "]";
            }
        }
    }
    std::ostringstream ss;
    ss << participant_lied << "/" << rows << " rows ruled participant_lied; exceptions:"
       << exceptions.str()
       << " -- the alpha channel is malleable mod q: a shareholder who knows his own mask can"
          " aim lambda XOR alpha' at mask+q (framing the dealer) or at 0 (unresolvable)";
    detail = ss.str();
    return participant_lied == rows;
}

bool membership_soundness(std::string& detail) {
    std::size_t honest_total = 0, honest_accepted = 0;
    for (std::size_t i = 1; i <= 3; ++i) {
        const Scalar s = ofix.shares[i];
        for (Scalar a = 1; a < 11; ++a) {
            ++honest_total;
            if (membership_verify(toy, a, lfix.board.deal.share_images[i],
                                  membership_respond(toy, s, mod_exp(toy, toy.g, a))))
                ++honest_accepted;
        }
    }
    std::size_t impostor_rows = 0, rejected = 0, degenerate = 0;
    std::ostringstream exceptions;
    for (std::size_t i = 1; i <= 3; ++i) {
        const Scalar s = ofix.shares[i];
        for (Scalar a = 1; a < 11; ++a) {
            const Element g_a = mod_exp(toy, toy.g, a);
            for (Scalar fake = 0; fake < 11; ++fake) {
                if (fake == s) continue;
                const bool accepted = membership_verify(
                    toy, a, lfix.board.deal.share_images[i], membership_respond(toy, fake, g_a));
                if (fake == 0) {
                    ++degenerate;  // zero share: identity mask, logged not judged
                    continue;
                }
                ++impostor_rows;
                if (!accepted)
                    ++rejected;
                else
                    exceptions << " [i=" << i << " a=" << a << " s'=" << fake << "]";
            }
        }
    }
    std::ostringstream ss;
    ss << "honest " << honest_accepted << "/" << honest_total << " accepted; impostor "
       << rejected << "/" << impostor_rows << " rejected (" << degenerate
       << " zero-share rows logged degenerate); accepted impostor rows:" << exceptions.str()
       << " -- distinct subgroup elements colliding mod q make the masked pipeline non-injective";
    detail = ss.str();
    return honest_accepted == honest_total && rejected == impostor_rows;
}

bool reconstruction_completeness(std::string& detail) {
    int deals = 0;
    for (std::uint64_t seed = 0; deals < 100; ++seed) {
        const std::size_t k = 1 + seed % 3;
        const std::size_t n = k + seed % (6 - k);
        SeededRng rng(seed * 7919 + 17);
        std::map<std::size_t, KeyPair> keys;
        std::map<std::size_t, Element> pubkeys;
        for (std::size_t i = 1; i <= n; ++i) {
            keys.emplace(i, keygen(toy, rng));
            pubkeys.emplace(i, keys.at(i).pk);
        }
        const Scalar secret = rng.below(toy.q);
        const auto [poly, output] = deal(toy, secret, k, n, pubkeys, rng);
        const BulletinBoard board{toy, k, n, output, pubkeys};
        const KeyPair reconstructor = keygen(toy, rng);
        ++deals;

        auto submit = [&](std::size_t i) {
            const Scalar share = eval_share(toy, poly, i).share;
            return std::pair{i, encrypt_for_submission(toy, {i, share}, reconstructor.pk)};
        };

        // every qualified subset
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + k, true);
        do {
            std::vector<std::pair<std::size_t, EncryptedShare>> submissions;
            for (std::size_t t = 0; t < n; ++t)
                if (pick[t]) submissions.push_back(submit(t + 1));
            const auto result = reconstruct(submissions, reconstructor.sk, board);
            if (result.secret != secret) {
                detail = "subset reconstruction diverged at seed " + std::to_string(seed);
                return false;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));

        // one corrupted submission among k honest ones
        if (n > k) {
            std::vector<std::pair<std::size_t, EncryptedShare>> submissions;
            submissions.push_back(submit(1));
            submissions.front().second[0] ^= 0x01;
            for (std::size_t i = 2; i <= k + 1; ++i) submissions.push_back(submit(i));
            const auto result = reconstruct(submissions, reconstructor.sk, board);
            const bool corrupted_rejected =
                result.rejected.size() == 1 && result.rejected[0].index == 1;
            if (result.secret != secret || !corrupted_rejected) {
                detail = "corrupted-submission run diverged at seed " + std::to_string(seed);
                return false;
            }
        }
    }
    detail = "100 seeded deals, all qualified subsets exact";
    return true;
}

bool scale_check(std::string& detail) {
    const GroupParams params = generate_params(256, 2024);
    if (!validate_params(params).ok) {
        detail = "generated 256-bit parameters failed validation";
        return false;
    }
    SeededRng rng(99);
    std::map<std::size_t, KeyPair> keys;
    std::map<std::size_t, Element> pubkeys;
    for (std::size_t i = 1; i <= 3; ++i) {
        keys.emplace(i, keygen(params, rng));
        pubkeys.emplace(i, keys.at(i).pk);
    }
    const Scalar secret = rng.below(params.q);
    const auto [poly, output] = deal(params, secret, 2, 3, pubkeys, rng);
    const BulletinBoard board{params, 2, 3, output, pubkeys};
    if (!verify_bulletin(board).empty()) {
        detail = "bulletin audit failed";
        return false;
    }
    for (std::size_t i = 1; i <= 3; ++i) {
        const Scalar share = decrypt_share(params, output.encrypted_shares.at(i), keys.at(i).sk,
                                           output.share_images[i]);
        if (!verify_share(params, share, output.commitments, i)) {
            detail = "share verification failed at scale";
            return false;
        }
    }
    DisputeDealerView dealer{eval_share(params, poly, 1).share, std::nullopt, std::nullopt};
    DisputeParticipantView participant{keys.at(1).sk, std::nullopt, std::nullopt};
    if (run_dispute(board, 1, dealer, participant).outcome != DisputeOutcome::Resolved) {
        detail = "honest dispute did not resolve at scale";
        return false;
    }
    const MembershipChallenge challenge = membership_challenge(params, rng);
    const Scalar s1 = eval_share(params, poly, 1).share;
    if (!run_membership(board, 1, s1, challenge).accepted) {
        detail = "honest membership rejected at scale";
        return false;
    }
    const KeyPair reconstructor = keygen(params, rng);
    std::vector<std::pair<std::size_t, EncryptedShare>> submissions;
    for (std::size_t i = 1; i <= 2; ++i)
        submissions.emplace_back(i, encrypt_for_submission(
                                        params, {i, eval_share(params, poly, i).share},
                                        reconstructor.pk));
    if (reconstruct(submissions, reconstructor.sk, board).secret != secret) {
        detail = "reconstruction diverged at scale";
        return false;
    }
    detail = "256-bit q, p of " + std::to_string(bit_length(params.p)) + " bits";
    return true;
}

bool simulate_determinism(std::string& detail) {
    const char* cli = PVSS_CLI_PATH;
    const fs::path root = fs::temp_directory_path() / "pvss_acceptance_sim";
    fs::remove_all(root);
    fs::create_directories(root);
    ScenarioConfig config;
    config.name = "determinism";
    config.k = 2;
    config.n = 4;
    config.seed = 31337;
    auto strategy = AdversaryStrategy{};
    strategy.role = Role::Dealer;
    strategy.variant = StrategyVariant::DealerInvalidShare;
    strategy.target = 2;
    strategy.share_sub.value = 9;
    config.strategies.push_back(strategy);
    std::ofstream(root / "scenario.json") << to_json(config).dump(2);

    auto run_once = [&](const std::string& tag) -> std::string {
        const std::string cmd = std::string(cli) + " --workspace " + (root / tag).string() +
                                " simulate --config " + (root / "scenario.json").string() +
                                " > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) return "";
        std::ifstream in(root / tag / "reports" / "determinism.json");
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string first = run_once("a");
    const std::string second = run_once("b");
    fs::remove_all(root);
    if (first.empty() || second.empty()) {
        detail = "cmd_simulate did not produce a report";
        return false;
    }
    if (first != second) {
        detail = "reports differ between runs";
        return false;
    }
    detail = "byte-identical reports, " + std::to_string(first.size()) + " bytes";
    return true;
}

bool transcript_secrecy(std::string& detail) {
    // No secrecy claim is made for the XOR encryption itself at desk scale;
    // instead: plaintext shares never appear in a transcript outside masked
    // byte strings and the key-reveal branch.
    std::vector<ScenarioConfig> configs;
    {
        ScenarioConfig honest;
        honest.name = "honest";
        honest.secret = 7;
        honest.seed = 1;
        configs.push_back(honest);

        ScenarioConfig invalid = honest;
        invalid.name = "invalid-share";
        AdversaryStrategy s1;
        s1.role = Role::Dealer;
        s1.variant = StrategyVariant::DealerInvalidShare;
        s1.target = 1;
        s1.share_sub.value = 6;
        invalid.strategies.push_back(s1);
        configs.push_back(invalid);

        ScenarioConfig lambda = honest;
        lambda.name = "lambda";
        AdversaryStrategy s2 = s1;
        s2.variant = StrategyVariant::DealerLambdaVariant;
        s2.lambda_form = 5;
        s2.pk_sub.value = 3;
        lambda.strategies.push_back(s2);
        configs.push_back(lambda);

        ScenarioConfig alpha = honest;
        alpha.name = "fake-alpha";
        AdversaryStrategy s3;
        s3.role = Role::Participant;
        s3.variant = StrategyVariant::ParticipantFakeAlpha;
        s3.target = 2;
        s3.alpha_sub.value = 9;
        alpha.strategies.push_back(s3);
        configs.push_back(alpha);

        ScenarioConfig impostor = honest;
        impostor.name = "impostor";
        AdversaryStrategy s4;
        s4.role = Role::Outsider;
        s4.variant = StrategyVariant::OutsiderImpostor;
        s4.target = 1;
        s4.share_sub.value = 6;
        impostor.strategies.push_back(s4);
        configs.push_back(impostor);
    }
    std::size_t transcripts = 0;
    for (const auto& config : configs) {
        const ScenarioReport report = run_scenario(config);
        if (!report.transcript_leak_free) {
            detail = "scenario " + config.name + " leaked a share";
            return false;
        }
        transcripts += report.disputes.size() + report.memberships.size();
    }
    // key-reveal branch: the revealed value is the private key, not the share
    DisputeDealerView lying_dealer{10, Element(4), std::nullopt};
    DisputeParticipantView participant{4, std::nullopt, std::nullopt};
    const DisputeRun run = run_dispute(lfix.board, 1, lying_dealer, participant);
    ++transcripts;
    for (const auto& e : run.transcript.entries) {
        if (e.kind == "alpha" && from_hex(e.message) == 10) {
            detail = "key-reveal transcript carried the share";
            return false;
        }
    }
    detail = std::to_string(transcripts) + " transcripts checked, no plaintext share fields";
    return true;
}

}  // namespace

int main() {
    criterion(1, "toy-fixture-vectors", 1000, toy_fixture_vectors);
    criterion(2, "roundtrip-exhaustion", 1000, roundtrip_exhaustion);
    criterion(3, "verification-soundness", 1000, verification_soundness);
    criterion(4, "lemma1-matrix", 5000, lemma1_matrix);
    criterion(5, "lemma2-matrix", 1000, lemma2_matrix);
    criterion(6, "membership-soundness", 2000, membership_soundness);
    criterion(7, "reconstruction-complete", 10000, reconstruction_completeness);
    criterion(8, "scale-256bit", 10000, scale_check);
    criterion(9, "simulate-determinism", 30000, simulate_determinism);
    criterion(10, "transcript-secrecy", 5000, transcript_secrecy);
    std::printf("%d/10 checks passed\n", 10 - failures);
    return failures;
}
