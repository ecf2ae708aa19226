// Command-line driver: file-based workspace holding the group parameters,
// bulletin board, key material, transcripts and simulator reports.
//
// Exit codes: 0 protocol success, 1 protocol-level reject or lie verdict,
// 2 usage / missing-file / internal errors, 3 parameter search exhausted,
// 4 workspace locked by another invocation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pvss/simulator.hpp"

namespace fs = std::filesystem;
using namespace pvss;

namespace {

struct FileMissingError : Error {
    explicit FileMissingError(const fs::path& p) : Error("missing file: " + p.string()) {}
};

struct Workspace {
    fs::path root;

    fs::path params_path() const { return root / "params.json"; }
    fs::path board_path() const { return root / "board.json"; }
    fs::path key_path(std::size_t index) const {
        return root / "keys" / (std::to_string(index) + ".json");
    }
    fs::path dealer_path() const { return root / "keys" / "dealer.json"; }
    fs::path transcript_path(const std::string& name) const {
        return root / "transcripts" / (name + ".json");
    }
    fs::path report_path(const std::string& name) const {
        return root / "reports" / (name + ".json");
    }

    Json load(const fs::path& path) const {
        std::ifstream in(path);
        if (!in) throw FileMissingError(path);
        Json j;
        in >> j;
        return j;
    }

    // temp + rename so readers never observe a half-written file
    void write(const fs::path& path, const Json& j) const {
        fs::create_directories(path.parent_path());
        const fs::path tmp = path.string() + ".tmp";
        {
            std::ofstream out(tmp);
            out << j.dump(2) << "\n";
        }
        fs::rename(tmp, path);
    }

    GroupParams params() const { return params_from_json(load(params_path())); }
    BulletinBoard board() const { return board_from_json(load(board_path())); }
    KeyPair key(std::size_t index) const { return keypair_from_json(load(key_path(index))); }
};

// One command per workspace at a time; a second invocation exits 4.
class WorkspaceLock {
public:
    explicit WorkspaceLock(const fs::path& root) : lock_(root / ".lock") {
        fs::create_directories(root);
        std::FILE* f = std::fopen(lock_.string().c_str(), "wx");
        if (!f) {
            std::cerr << "workspace is locked: " << lock_.string() << "\n";
            std::exit(4);
        }
        std::fclose(f);
    }
    ~WorkspaceLock() {
        std::error_code ec;
        fs::remove(lock_, ec);
    }

private:
    fs::path lock_;
};

BigInt parse_value(const std::string& text) {
    if (text.starts_with("0x") || text.starts_with("0X")) return from_hex(text.substr(2));
    BigInt v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw ParameterError("expected a decimal or 0x-hex value: " + text);
        v = v * 10 + (c - '0');
    }
    return v;
}

// "lambda<form>:<s'>[,<a'>]"; a' is the exponent of the substituted key.
struct DealerCheatSpec {
    int form = 1;
    BigInt share_sub;
    std::optional<BigInt> key_exp_sub;
};

DealerCheatSpec parse_dealer_cheat(const std::string& spec) {
    if (!spec.starts_with("lambda")) throw ParameterError("dealer cheat must look like lambda<form>:<s'>[,<a'>]");
    const auto colon = spec.find(':');
    if (colon == std::string::npos || colon <= 6) throw ParameterError("dealer cheat missing ':'");
    DealerCheatSpec out;
    out.form = std::stoi(spec.substr(6, colon - 6));
    std::string rest = spec.substr(colon + 1);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) {
        out.share_sub = parse_value(rest);
    } else {
        out.share_sub = parse_value(rest.substr(0, comma));
        out.key_exp_sub = parse_value(rest.substr(comma + 1));
    }
    return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoul(item));
    }
    if (out.empty()) throw ParameterError("empty index list");
    return out;
}

int exit_for_verdict(const std::string& verdict) {
    return verdict == "resolved" ? 0 : 1;
}

int cmd_params(const Workspace& ws, bool fixed_toy, unsigned q_bits, std::uint64_t seed) {
    const GroupParams params = fixed_toy ? fixed_toy_params() : generate_params(q_bits, seed);
    const auto report = validate_params(params);
    if (!report.ok) throw Error("generated parameters failed validation: " + report.violation);
    ws.write(ws.params_path(), to_json(params));
    std::cout << "OK params p=" << to_hex(params.p) << " q=" << to_hex(params.q)
              << " g=" << to_hex(params.g) << "\n";
    return 0;
}

int cmd_keygen(const Workspace& ws, std::size_t index, std::uint64_t seed) {
    const GroupParams params = ws.params();
    SeededRng rng(seed);
    const KeyPair kp = keygen(params, rng);
    ws.write(ws.key_path(index), keypair_to_json(index, kp));
    std::cout << "OK keygen index=" << index << " pk=" << to_hex(kp.pk) << "\n";
    return 0;
}

int cmd_deal(const Workspace& ws, const std::string& secret_text, std::size_t k, std::size_t n,
             std::uint64_t seed) {
    const GroupParams params = ws.params();
    const Scalar secret = parse_value(secret_text);
    if (secret >= params.q) throw ParameterError("secret must be below q");
    std::map<std::size_t, Element> pubkeys;
    for (std::size_t i = 1; i <= n; ++i) pubkeys.emplace(i, ws.key(i).pk);
    SeededRng rng(seed);
    const auto [poly, output] = deal(params, secret, k, n, pubkeys, rng);
    const BulletinBoard board{params, k, n, output, pubkeys};
    if (!verify_bulletin(board).empty()) throw Error("freshly dealt board failed its own audit");
    ws.write(ws.board_path(), to_json(board));
    ws.write(ws.dealer_path(), dealer_state_to_json(poly, k, n));
    std::cout << "OK deal k=" << k << " n=" << n
              << " fixture_hash=" << board_fingerprint(board) << "\n";
    return 0;
}

int cmd_verify(const Workspace& ws, std::size_t index) {
    const BulletinBoard board = ws.board();
    const KeyPair kp = ws.key(index);
    Scalar share;
    try {
        share = decrypt_share(board.params, board.deal.encrypted_shares.at(index), kp.sk,
                              board.deal.share_images.at(index));
    } catch (const NonCanonicalShareError&) {
        std::cout << "REJECT non-canonical share index=" << index << "\n";
        return 1;
    }
    if (!verify_share(board.params, share, board.deal.commitments, index)) {
        std::cout << "REJECT share does not match commitments index=" << index << "\n";
        return 1;
    }
    std::cout << "OK share=" << share << " verified\n";
    return 0;
}

int cmd_decrypt(const Workspace& ws, std::size_t index) {
    const BulletinBoard board = ws.board();
    const KeyPair kp = ws.key(index);
    try {
        const Scalar share = decrypt_share(board.params, board.deal.encrypted_shares.at(index),
                                           kp.sk, board.deal.share_images.at(index));
        std::cout << "OK share=" << share << "\n";
        return 0;
    } catch (const NonCanonicalShareError&) {
        std::cout << "REJECT non-canonical share index=" << index << "\n";
        return 1;
    }
}

int cmd_dispute(const Workspace& ws, std::size_t index, const std::string& dealer_cheat,
                const std::string& participant_cheat, const std::string& replay_file) {
    const BulletinBoard board = ws.board();
    if (!replay_file.empty()) {
        const Transcript t = transcript_from_json(ws.load(replay_file));
        const std::string derived = replay_dispute(t, board);
        if (derived != t.verdict)
            throw Error("replay mismatch: recorded " + t.verdict + ", derived " + derived);
        std::cout << "VERDICT " << derived << "\n";
        return exit_for_verdict(derived);
    }

    const SharePolynomial poly = dealer_state_from_json(ws.load(ws.dealer_path()));
    const KeyPair kp = ws.key(index);
    DisputeDealerView dealer{eval_share(board.params, poly, index).share, std::nullopt,
                             std::nullopt};
    DisputeParticipantView participant{kp.sk, std::nullopt, std::nullopt};
    if (!dealer_cheat.empty()) {
        const DealerCheatSpec spec = parse_dealer_cheat(dealer_cheat);
        const Element pk = board.pubkeys.at(index);
        const Element pk_sub = spec.key_exp_sub
                                   ? mod_exp(board.params, board.params.g, *spec.key_exp_sub)
                                   : pk;
        dealer.lambda_override = lambda_variant(board.params, spec.form, dealer.dealt_share,
                                                spec.share_sub % board.params.q, pk, pk_sub);
    }
    if (!participant_cheat.empty()) participant.alpha_override = parse_value(participant_cheat);

    const DisputeRun run = run_dispute(board, index, dealer, participant);
    ws.write(ws.transcript_path("dispute_" + std::to_string(index)), to_json(run.transcript));
    std::cout << "VERDICT " << run.transcript.verdict << "\n";
    return exit_for_verdict(run.transcript.verdict);
}

int cmd_membership(const Workspace& ws, std::size_t index, const std::string& impostor_share,
                   std::uint64_t challenge_seed, const std::string& replay_file) {
    const BulletinBoard board = ws.board();
    if (!replay_file.empty()) {
        const Transcript t = transcript_from_json(ws.load(replay_file));
        const std::string derived = replay_membership(t, board);
        if (derived != t.verdict)
            throw Error("replay mismatch: recorded " + t.verdict + ", derived " + derived);
        std::cout << (derived == "accepted" ? "OK member" : "REJECT not member") << " index="
                  << index << "\n";
        return derived == "accepted" ? 0 : 1;
    }

    Scalar share;
    if (!impostor_share.empty()) {
        share = parse_value(impostor_share) % board.params.q;
    } else {
        const KeyPair kp = ws.key(index);
        share = decrypt_share(board.params, board.deal.encrypted_shares.at(index), kp.sk,
                              board.deal.share_images.at(index));
    }
    SeededRng rng(challenge_seed);
    const MembershipChallenge challenge = membership_challenge(board.params, rng);
    const MembershipRun run = run_membership(board, index, share, challenge);
    ws.write(ws.transcript_path("membership_" + std::to_string(index)), to_json(run.transcript));
    if (run.degenerate) {
        std::cout << "REJECT degenerate challenge index=" << index << "\n";
        return 1;
    }
    std::cout << (run.accepted ? "OK member" : "REJECT not member") << " index=" << index << "\n";
    return run.accepted ? 0 : 1;
}

int cmd_reconstruct(const Workspace& ws, const std::string& indices_text,
                    const std::string& reconstructor_key_file) {
    const BulletinBoard board = ws.board();
    const KeyPair reconstructor = keypair_from_json(ws.load(reconstructor_key_file));
    std::vector<std::pair<std::size_t, EncryptedShare>> submissions;
    for (std::size_t index : parse_index_list(indices_text)) {
        const KeyPair kp = ws.key(index);
        const Scalar share = decrypt_share(board.params, board.deal.encrypted_shares.at(index),
                                           kp.sk, board.deal.share_images.at(index));
        submissions.emplace_back(
            index, encrypt_for_submission(board.params, {index, share}, reconstructor.pk));
    }
    try {
        const auto result = reconstruct(submissions, reconstructor.sk, board);
        std::cout << "OK secret=" << result.secret << "\n";
        return 0;
    } catch (const InsufficientValidSharesError&) {
        std::cout << "REJECT insufficient valid shares\n";
        return 1;
    }
}

int cmd_simulate(const Workspace& ws, const std::string& config_file) {
    const ScenarioConfig config = config_from_json(ws.load(config_file));
    const ScenarioReport report = run_scenario(config);
    const fs::path out = ws.report_path(report.name);
    ws.write(out, to_json(report));
    std::cerr << op_count_report(report);
    std::cerr << "detection: expected=" << report.expected_cheater
              << " ruled=" << report.ruled_cheater << (report.detection_sound ? " (sound)" : " (UNSOUND)")
              << "\n";
    std::cout << "OK report=" << out.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"publicly verifiable secret sharing with disputation and membership proofs"};
    app.require_subcommand(1);
    std::string workspace_dir = ".";
    app.add_option("--workspace", workspace_dir, "workspace directory (default: current)");

    // params
    auto* params_cmd = app.add_subcommand("params", "generate or pin group parameters");
    unsigned q_bits = 0;
    std::uint64_t seed = 0;
    bool fixed_toy = false;
    auto* qbits_opt = params_cmd->add_option("--q-bits", q_bits, "bit width of the subgroup order");
    auto* seed_opt = params_cmd->add_option("--seed", seed, "deterministic search seed");
    auto* toy_flag = params_cmd->add_flag("--fixed-toy", fixed_toy, "use the canonical toy group");
    toy_flag->excludes(qbits_opt)->excludes(seed_opt);
    qbits_opt->needs(seed_opt);

    // keygen
    auto* keygen_cmd = app.add_subcommand("keygen", "generate a participant key pair");
    std::size_t index = 1;
    std::uint64_t key_seed = 0;
    keygen_cmd->add_option("--index", index, "participant index")->required();
    keygen_cmd->add_option("--seed", key_seed, "key generation seed")->required();

    // deal
    auto* deal_cmd = app.add_subcommand("deal", "deal a secret to n participants");
    std::string secret_text;
    std::size_t k = 0, n = 0;
    std::uint64_t deal_seed = 0;
    deal_cmd->add_option("--secret", secret_text, "secret (decimal or 0x-hex)")->required();
    deal_cmd->add_option("--k", k, "threshold")->required();
    deal_cmd->add_option("--n", n, "participant count")->required();
    deal_cmd->add_option("--seed", deal_seed, "polynomial sampling seed")->required();

    // verify / decrypt
    auto* verify_cmd = app.add_subcommand("verify", "decrypt and verify one share");
    std::size_t verify_index = 1;
    verify_cmd->add_option("--index", verify_index, "participant index")->required();
    auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt one share");
    std::size_t decrypt_index = 1;
    decrypt_cmd->add_option("--index", decrypt_index, "participant index")->required();

    // dispute
    auto* dispute_cmd = app.add_subcommand("dispute", "run or replay a disputation");
    std::size_t dispute_index = 1;
    std::string dealer_cheat, participant_cheat, dispute_replay;
    dispute_cmd->add_option("--index", dispute_index, "disputed index");
    dispute_cmd->add_option("--dealer-cheat", dealer_cheat, "lambda<form>:<s'>[,<a'>]");
    dispute_cmd->add_option("--participant-cheat", participant_cheat, "alpha' to send at step 4");
    dispute_cmd->add_option("--replay", dispute_replay, "re-derive the verdict of a transcript");

    // membership
    auto* membership_cmd = app.add_subcommand("membership", "run or replay a membership proof");
    std::size_t membership_index = 1;
    std::string impostor_share, membership_replay;
    std::uint64_t challenge_seed = 0;
    membership_cmd->add_option("--index", membership_index, "claimed index");
    auto* chal_opt = membership_cmd->add_option("--challenge-seed", challenge_seed, "verifier seed");
    membership_cmd->add_option("--impostor-share", impostor_share, "prove with this share instead");
    auto* mem_replay_opt =
        membership_cmd->add_option("--replay", membership_replay, "re-derive a transcript verdict");
    chal_opt->excludes(mem_replay_opt);

    // reconstruct
    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "pool shares and reconstruct");
    std::string indices_text, reconstructor_key_file;
    reconstruct_cmd->add_option("--indices", indices_text, "comma-separated submitter indices")->required();
    reconstruct_cmd->add_option("--reconstructor-key", reconstructor_key_file, "key file of the reconstructing party")->required();

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "run a scenario config");
    std::string config_file;
    simulate_cmd->add_option("--config", config_file, "scenario config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const Workspace ws{fs::path(workspace_dir)};
    WorkspaceLock lock(ws.root);
    try {
        if (params_cmd->parsed()) {
            if (!fixed_toy && qbits_opt->count() == 0)
                throw ParameterError("params needs --fixed-toy or --q-bits with --seed");
            return cmd_params(ws, fixed_toy, q_bits, seed);
        }
        if (keygen_cmd->parsed()) return cmd_keygen(ws, index, key_seed);
        if (deal_cmd->parsed()) return cmd_deal(ws, secret_text, k, n, deal_seed);
        if (verify_cmd->parsed()) return cmd_verify(ws, verify_index);
        if (decrypt_cmd->parsed()) return cmd_decrypt(ws, decrypt_index);
        if (dispute_cmd->parsed())
            return cmd_dispute(ws, dispute_index, dealer_cheat, participant_cheat, dispute_replay);
        if (membership_cmd->parsed()) {
            if (membership_replay.empty() && chal_opt->count() == 0)
                throw ParameterError("membership needs --challenge-seed (or --replay)");
            return cmd_membership(ws, membership_index, impostor_share, challenge_seed,
                                  membership_replay);
        }
        if (reconstruct_cmd->parsed())
            return cmd_reconstruct(ws, indices_text, reconstructor_key_file);
        if (simulate_cmd->parsed()) return cmd_simulate(ws, config_file);
    } catch (const SearchExhaustedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
