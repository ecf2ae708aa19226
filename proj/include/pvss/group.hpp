#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <boost/multiprecision/miller_rabin.hpp>

#include "pvss/bigint.hpp"
#include "pvss/errors.hpp"
#include "pvss/rng.hpp"
#include "pvss/tally.hpp"

namespace pvss {

// Prime-order subgroup G_q of Z_p*: q | p-1 and g generates the order-q
// subgroup. byte_len is the canonical encoding width, ceil(bitlen(p)/8).
struct GroupParams {
    BigInt p;
    BigInt q;
    Element g;
    std::size_t byte_len = 0;

    bool operator==(const GroupParams&) const = default;
};

inline std::size_t encoding_width(const BigInt& p) {
    return (bit_length(p) + 7) / 8;
}

// 40 Miller-Rabin rounds: error bound 4^-40 = 2^-80. The witness stream is
// fixed-seeded so primality answers are reproducible.
inline bool is_probable_prime(const BigInt& n, unsigned rounds = 40) {
    if (n < 2) return false;
    std::mt19937_64 witness_gen(0x9e3779b97f4a7c15ull);
    return boost::multiprecision::miller_rabin_test(n, rounds, witness_gen);
}

// Raw square-and-multiply; no subgroup assumptions, used where the base is
// not (yet) a group element.
inline BigInt pow_mod(BigInt base, BigInt exp, const BigInt& mod) {
    if (mod <= 0) throw ParameterError("modulus must be positive");
    BigInt acc = 1;
    base %= mod;
    if (base < 0) base += mod;
    for (; exp > 0; exp >>= 1) {
        if (bit_test(exp, 0)) acc = acc * base % mod;
        base = base * base % mod;
    }
    return acc;
}

// Group exponentiation. The exponent is reduced mod q first; every base in
// the scheme has order q, so this is exact.
inline Element mod_exp(const GroupParams& params, const Element& base, const BigInt& exp) {
    if (base <= 0 || base >= params.p) throw ParameterError("base outside [1, p-1]");
    if (exp < 0) throw ParameterError("negative exponent");
    count_exp();
    return pow_mod(base, exp % params.q, params.p);
}

// Inverse in Z_q by extended Euclid.
inline Scalar inv_mod_q(const GroupParams& params, const BigInt& x) {
    BigInt r = x % params.q;
    if (r < 0) r += params.q;
    if (r == 0) throw ZeroInverseError();
    count_inv();
    BigInt t0 = 0, t1 = 1, r0 = params.q, r1 = r;
    while (r1 != 0) {
        BigInt quot = r0 / r1;
        BigInt tmp = t0 - quot * t1;
        t0 = t1;
        t1 = tmp;
        tmp = r0 - quot * r1;
        r0 = r1;
        r1 = tmp;
    }
    return t0 < 0 ? t0 + params.q : t0;
}

// g^((h mod q)^-1 mod q): a group element's integer value is pulled into the
// exponent field, inverted there, and re-exponentiated. This is the one
// canonical reading of g^{[h]^{-1}} used by disputation and membership; both
// sides of either protocol must agree on it.
inline Element masked_inverse_exp(const GroupParams& params, const Element& h) {
    if (h <= 0 || h >= params.p) throw ParameterError("element outside [1, p-1]");
    if (h % params.q == 0) throw DegenerateExponentError();
    return mod_exp(params, params.g, inv_mod_q(params, h));
}

struct ValidationReport {
    bool ok = true;
    std::string violation;  // first failed invariant when !ok
};

inline ValidationReport validate_params(const GroupParams& candidate) {
    auto fail = [](std::string why) { return ValidationReport{false, std::move(why)}; };
    if (!is_probable_prime(candidate.p)) return fail("p not prime");
    if (!is_probable_prime(candidate.q)) return fail("q not prime");
    if ((candidate.p - 1) % candidate.q != 0) return fail("q does not divide p-1");
    if (candidate.g == 1) return fail("generator is identity");
    if (candidate.g <= 0 || candidate.g >= candidate.p) return fail("generator outside [1, p-1]");
    if (pow_mod(candidate.g, candidate.q, candidate.p) != 1) return fail("generator order is not q");
    if (candidate.byte_len != encoding_width(candidate.p)) return fail("byte_len mismatch");
    return {};
}

// Searches a random q_bits prime q, then p = r*q + 1 over successive even r,
// then g = h^((p-1)/q) over successive h until != 1. Deterministic per seed.
inline GroupParams generate_params(unsigned q_bits, std::uint64_t seed) {
    if (q_bits < 4) throw ParameterError("q_bits must be at least 4");
    SeededRng rng(seed);

    BigInt q = rng.bits(q_bits) | (BigInt(1) << (q_bits - 1)) | 1;
    const BigInt q_limit = BigInt(1) << q_bits;
    BigInt q_candidates = q_limit >> 2;  // odd values of q_bits width
    while (!is_probable_prime(q)) {
        q += 2;
        if (q >= q_limit) q = (BigInt(1) << (q_bits - 1)) | 1;
        if (--q_candidates <= 0) throw SearchExhaustedError("no prime q found");
    }

    BigInt p;
    bool found = false;
    for (BigInt r = 2; r <= 2 * 10000; r += 2) {
        p = r * q + 1;
        if (is_probable_prime(p)) {
            found = true;
            break;
        }
    }
    if (!found) throw SearchExhaustedError("no prime p = r*q + 1 within 10000 candidates");

    const BigInt cofactor = (p - 1) / q;
    Element g = 1;
    for (BigInt h = 2; g == 1; ++h) {
        if (h >= p) throw SearchExhaustedError("no generator found");
        g = pow_mod(h, cofactor, p);
    }

    return GroupParams{p, q, g, encoding_width(p)};
}

// The canonical desk-scale fixture.
inline GroupParams fixed_toy_params() {
    return GroupParams{23, 11, 2, 1};
}

}  // namespace pvss
