#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "pvss/group.hpp"

namespace pvss {

// F(x) = F_0 + F_1 x + ... + F_{k-1} x^{k-1} over Z_q; coeffs[0] is the secret.
struct SharePolynomial {
    std::vector<Scalar> coeffs;

    std::size_t threshold() const { return coeffs.size(); }
};

struct IndexedShare {
    std::size_t index = 0;  // evaluation point, 1..n (0 is the secret itself)
    Scalar share;
};

inline SharePolynomial sample_polynomial(const GroupParams& params, const Scalar& secret,
                                         std::size_t k, SeededRng& rng) {
    if (k < 1 || BigInt(k) > params.q) throw ParameterError("threshold k outside [1, q]");
    if (secret < 0 || secret >= params.q) throw ParameterError("secret outside [0, q-1]");
    SharePolynomial poly;
    poly.coeffs.reserve(k);
    poly.coeffs.push_back(secret);
    for (std::size_t j = 1; j < k; ++j) poly.coeffs.push_back(rng.below(params.q));
    return poly;
}

// Horner evaluation of F(i) mod q. i = 0 yields the secret.
inline IndexedShare eval_share(const GroupParams& params, const SharePolynomial& poly,
                               std::size_t i) {
    Scalar acc = 0;
    for (std::size_t j = poly.coeffs.size(); j-- > 0;)
        acc = (acc * i + poly.coeffs[j]) % params.q;
    return {i, acc};
}

// Lagrange coefficients at x = 0: w_i = prod_{j != i} j * (j - i)^-1 mod q.
inline std::vector<Scalar> lagrange_weights(const GroupParams& params,
                                            const std::vector<std::size_t>& indices) {
    std::set<std::size_t> seen;
    for (std::size_t i : indices) {
        if (!seen.insert(i).second) throw DuplicateIndexError();
        if (i == 0 || BigInt(i) >= params.q) throw IndexOutOfRangeError();
    }
    std::vector<Scalar> weights;
    weights.reserve(indices.size());
    for (std::size_t i : indices) {
        Scalar num = 1, den = 1;
        for (std::size_t j : indices) {
            if (j == i) continue;
            num = num * j % params.q;
            den = den * ((BigInt(j) - BigInt(i)) % params.q + params.q) % params.q;
        }
        weights.push_back(num * inv_mod_q(params, den) % params.q);
    }
    return weights;
}

// sum w_i * s_i mod q; equals F(0) when the shares lie on one degree-<k polynomial.
inline Scalar interpolate_secret(const GroupParams& params,
                                 const std::vector<IndexedShare>& shares) {
    std::vector<std::size_t> indices;
    indices.reserve(shares.size());
    for (const auto& s : shares) indices.push_back(s.index);
    const auto weights = lagrange_weights(params, indices);
    Scalar acc = 0;
    for (std::size_t t = 0; t < shares.size(); ++t)
        acc = (acc + weights[t] * shares[t].share) % params.q;
    return acc;
}

}  // namespace pvss
