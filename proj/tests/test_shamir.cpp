#include <catch_amalgamated.hpp>

#include <array>
#include <vector>

#include "oracle.hpp"
#include "pvss/shamir.hpp"

using namespace pvss;

namespace {
const GroupParams toy = fixed_toy_params();
}

TEST_CASE("polynomial sampling", "[shamir]") {
    SECTION("k=1 is the secret alone") {
        SeededRng rng(0);
        const auto poly = sample_polynomial(toy, 7, 1, rng);
        CHECK(poly.coeffs == std::vector<Scalar>{7});
    }
    SECTION("coefficients stay in range") {
        SeededRng rng(123);
        const auto poly = sample_polynomial(toy, 7, 2, rng);
        REQUIRE(poly.coeffs.size() == 2);
        CHECK(poly.coeffs[0] == 7);
        CHECK(poly.coeffs[1] >= 0);
        CHECK(poly.coeffs[1] < 11);
    }
    SECTION("rejection sampling is uniform across seeds") {
        // frequency of each coefficient value over 10,000 seeds, within 5
        // sigma of the uniform expectation
        std::array<int, 11> freq{};
        const int runs = 10000;
        for (int seed = 0; seed < runs; ++seed) {
            SeededRng rng(seed);
            const auto poly = sample_polynomial(toy, 7, 2, rng);
            ++freq[static_cast<unsigned>(poly.coeffs[1])];
        }
        const double expectation = runs / 11.0;
        const double sigma = std::sqrt(runs * (1.0 / 11) * (10.0 / 11));
        for (int value = 0; value < 11; ++value) {
            CHECK(freq[value] > expectation - 5 * sigma);
            CHECK(freq[value] < expectation + 5 * sigma);
        }
    }
    SECTION("bad arguments") {
        SeededRng rng(0);
        CHECK_THROWS_AS(sample_polynomial(toy, 11, 2, rng), ParameterError);
        CHECK_THROWS_AS(sample_polynomial(toy, 7, 0, rng), ParameterError);
        CHECK_THROWS_AS(sample_polynomial(toy, 7, 12, rng), ParameterError);
    }
}

TEST_CASE("share evaluation", "[shamir]") {
    const SharePolynomial poly{{7, 3}};
    CHECK(eval_share(toy, poly, 1).share == 10);
    CHECK(eval_share(toy, poly, 0).share == 7);
    CHECK(eval_share(toy, poly, 2).share == 2);
}

TEST_CASE("lagrange weights", "[shamir]") {
    CHECK(lagrange_weights(toy, {1, 2}) == std::vector<Scalar>{2, 10});
    CHECK(lagrange_weights(toy, {2, 3}) == std::vector<Scalar>{3, 9});
    CHECK(lagrange_weights(toy, {5}) == std::vector<Scalar>{1});
    CHECK_THROWS_AS(lagrange_weights(toy, {2, 2}), DuplicateIndexError);
    CHECK_THROWS_AS(lagrange_weights(toy, {0, 1}), IndexOutOfRangeError);
    CHECK_THROWS_AS(lagrange_weights(toy, {1, 11}), IndexOutOfRangeError);
}

TEST_CASE("interpolation", "[shamir]") {
    CHECK(interpolate_secret(toy, {{1, 10}, {2, 2}}) == 7);
    CHECK(interpolate_secret(toy, {{2, 2}, {3, 5}}) == 7);
    CHECK(interpolate_secret(toy, {{4, 9}}) == 9);
}

TEST_CASE("round trip over every qualified subset", "[shamir]") {
    // exhaustive at toy scale: all polynomials of degree < k, all k-subsets
    // of {1..5}, cross-checked against direct evaluation
    for (std::size_t k = 1; k <= 3; ++k) {
        std::vector<std::size_t> coeff_index(k, 0);
        for (int stamp = 0; stamp < std::pow(11, k); ++stamp) {
            std::vector<uint64_t> raw;
            int rest = stamp;
            for (std::size_t j = 0; j < k; ++j) {
                raw.push_back(rest % 11);
                rest /= 11;
            }
            if (stamp % 7 != 0) continue;  // sample the polynomial space
            SharePolynomial poly;
            for (auto c : raw) poly.coeffs.push_back(c);

            std::vector<std::size_t> indices{1, 2, 3, 4, 5};
            std::vector<bool> pick(indices.size(), false);
            std::fill(pick.begin(), pick.begin() + k, true);
            do {
                std::vector<IndexedShare> shares;
                for (std::size_t t = 0; t < indices.size(); ++t)
                    if (pick[t])
                        shares.push_back({indices[t],
                                          oracle::poly_eval(raw, indices[t], 11)});
                CHECK(interpolate_secret(toy, shares) == raw[0]);
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
    }
}

TEST_CASE("k-1 shares pin down nothing", "[shamir]") {
    // with one share of a k=2 sharing fixed, every candidate secret remains
    // consistent with some polynomial: brute force over all 121 polynomials
    for (uint64_t fixed_share = 0; fixed_share < 11; ++fixed_share) {
        std::array<bool, 11> reachable{};
        for (uint64_t a = 0; a < 11; ++a)
            for (uint64_t b = 0; b < 11; ++b)
                if (oracle::poly_eval({a, b}, 1, 11) == fixed_share) reachable[a] = true;
        for (bool hit : reachable) CHECK(hit);
    }
}
