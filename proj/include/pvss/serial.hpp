#pragma once

#include <cstddef>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "pvss/scheme.hpp"

namespace pvss {

using Json = nlohmann::json;

// All big integers travel as lowercase hex without prefix; encrypted shares
// as hex of their fixed-width byte strings. nlohmann objects keep keys
// sorted, so dump() output is diff-stable.

inline Json to_json(const GroupParams& params) {
    return Json{{"p", to_hex(params.p)},
                {"q", to_hex(params.q)},
                {"g", to_hex(params.g)},
                {"byte_len", params.byte_len}};
}

inline GroupParams params_from_json(const Json& j) {
    return GroupParams{from_hex(j.at("p").get<std::string>()),
                       from_hex(j.at("q").get<std::string>()),
                       from_hex(j.at("g").get<std::string>()),
                       j.at("byte_len").get<std::size_t>()};
}

inline Json to_json(const BulletinBoard& board) {
    Json commitments = Json::array();
    for (const auto& c : board.deal.commitments) commitments.push_back(to_hex(c));
    Json images = Json::array();
    for (const auto& s : board.deal.share_images) images.push_back(to_hex(s));
    Json encrypted = Json::object();
    for (const auto& [i, e] : board.deal.encrypted_shares) encrypted[std::to_string(i)] = bytes_to_hex(e);
    Json pubkeys = Json::object();
    for (const auto& [i, pk] : board.pubkeys) pubkeys[std::to_string(i)] = to_hex(pk);
    return Json{{"params", to_json(board.params)},
                {"k", board.k},
                {"n", board.n},
                {"commitments", commitments},
                {"share_images", images},
                {"encrypted_shares", encrypted},
                {"pubkeys", pubkeys}};
}

inline BulletinBoard board_from_json(const Json& j) {
    BulletinBoard board;
    board.params = params_from_json(j.at("params"));
    board.k = j.at("k").get<std::size_t>();
    board.n = j.at("n").get<std::size_t>();
    for (const auto& c : j.at("commitments")) board.deal.commitments.push_back(from_hex(c.get<std::string>()));
    for (const auto& s : j.at("share_images")) board.deal.share_images.push_back(from_hex(s.get<std::string>()));
    for (const auto& [key, value] : j.at("encrypted_shares").items())
        board.deal.encrypted_shares.emplace(std::stoul(key), hex_to_bytes(value.get<std::string>()));
    for (const auto& [key, value] : j.at("pubkeys").items())
        board.pubkeys.emplace(std::stoul(key), from_hex(value.get<std::string>()));
    return board;
}

inline Json keypair_to_json(std::size_t index, const KeyPair& kp) {
    return Json{{"index", index}, {"sk", to_hex(kp.sk)}, {"pk", to_hex(kp.pk)}};
}

inline KeyPair keypair_from_json(const Json& j) {
    return KeyPair{from_hex(j.at("sk").get<std::string>()), from_hex(j.at("pk").get<std::string>())};
}

// Dealer's private post-deal state; a disputation needs the polynomial back.
inline Json dealer_state_to_json(const SharePolynomial& poly, std::size_t k, std::size_t n) {
    Json coeffs = Json::array();
    for (const auto& c : poly.coeffs) coeffs.push_back(to_hex(c));
    return Json{{"coeffs", coeffs}, {"k", k}, {"n", n}};
}

inline SharePolynomial dealer_state_from_json(const Json& j) {
    SharePolynomial poly;
    for (const auto& c : j.at("coeffs")) poly.coeffs.push_back(from_hex(c.get<std::string>()));
    return poly;
}

inline std::string board_fingerprint(const BulletinBoard& board) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(to_json(board).dump())));
    return buf;
}

}  // namespace pvss
