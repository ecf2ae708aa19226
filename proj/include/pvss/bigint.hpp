#pragma once

#include <cstdint>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pvss/errors.hpp"

namespace pvss {

using BigInt = boost::multiprecision::cpp_int;
using Bytes = std::vector<std::uint8_t>;

// Exponents, shares, keys, polynomial coefficients: integers in [0, q-1].
using Scalar = BigInt;
// Members of the order-q subgroup of Z_p*: integers in [1, p-1].
using Element = BigInt;

inline std::size_t bit_length(const BigInt& v) {
    return v == 0 ? 0 : msb(v) + 1;
}

// Big-endian, fixed width, zero-padded. Values must fit.
inline Bytes encode_fixed(const BigInt& v, std::size_t width) {
    if (v < 0 || bit_length(v) > 8 * width) throw ParameterError("value does not fit encoding width");
    Bytes out;
    out.reserve(width);
    export_bits(v, std::back_inserter(out), 8);  // empty for v == 0
    out.insert(out.begin(), width - out.size(), 0);
    return out;
}

inline BigInt decode_bytes(const Bytes& bytes) {
    BigInt v = 0;
    if (!bytes.empty()) import_bits(v, bytes.begin(), bytes.end(), 8);
    return v;
}

inline Bytes xor_bytes(const Bytes& a, const Bytes& b) {
    if (a.size() != b.size()) throw ParameterError("xor operands differ in width");
    Bytes out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

// Lowercase hex without prefix, minimal length ("0" for zero).
inline std::string to_hex(const BigInt& v) {
    if (v == 0) return "0";
    static const char digits[] = "0123456789abcdef";
    std::string out;
    for (BigInt t = v; t > 0; t >>= 4) out.push_back(digits[static_cast<unsigned>(t & 0xf)]);
    return {out.rbegin(), out.rend()};
}

inline BigInt from_hex(std::string_view hex) {
    if (hex.empty()) throw ParameterError("empty hex string");
    BigInt v = 0;
    for (char c : hex) {
        unsigned d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw ParameterError(std::string("invalid hex digit: ") + c);
        v = (v << 4) | d;
    }
    return v;
}

inline std::string bytes_to_hex(const Bytes& bytes) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size());
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

inline Bytes hex_to_bytes(std::string_view hex) {
    if (hex.size() % 2 != 0) throw ParameterError("hex byte string has odd length");
    Bytes out(hex.size() / 2);
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ParameterError(std::string("invalid hex digit: ") + c);
    };
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return out;
}

// FNV-1a; used for reproducibility fingerprints, not security.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace pvss
