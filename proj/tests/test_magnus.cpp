#include <gtest/gtest.h>

#include <random>

#include "ntriv/magnus.hpp"

using namespace ntriv;

namespace {

Word W(std::string_view s) { return parse_word(s); }

NCPolynomial poly(int D, std::initializer_list<std::pair<Monomial, std::int64_t>> terms) {
    NCPolynomial p(D);
    for (const auto& [m, c] : terms) p.set(m, c);
    return p;
}

// Oracle: multiply the images of the letters one at a time with nc_mul.
NCPolynomial naive_expand(const Word& w, int D) {
    NCPolynomial acc = NCPolynomial::one(D);
    for (const Letter& l : w) {
        NCPolynomial g = NCPolynomial::generator(l.gen, D);
        acc = nc_mul(acc, l.sign > 0 ? g : nc_inverse(g));
    }
    return acc;
}

Word random_word(std::mt19937& rng, int max_len, int alphabet) {
    std::uniform_int_distribution<int> len(0, max_len), gen(1, alphabet), sign(0, 1);
    std::vector<Letter> ls;
    for (int i = len(rng); i > 0; --i) ls.push_back({gen(rng), sign(rng) ? 1 : -1});
    return Word(ls);
}

}  // namespace

TEST(NCPolynomial, Arithmetic) {
    const auto X = NCPolynomial::generator(1, 2);
    EXPECT_TRUE(nc_mul(X, poly(2, {{{}, 1}, {{1}, -1}, {{1, 1}, 1}})).is_one());
    EXPECT_EQ(nc_mul(X, NCPolynomial::generator(2, 2)), poly(2, {{{}, 1}, {{1}, 1}, {{2}, 1}, {{1, 2}, 1}}));
    const auto inv = nc_inverse(poly(2, {{{}, 1}, {{1}, 1}, {{2}, 1}}));
    EXPECT_EQ(inv, poly(2, {{{}, 1}, {{1}, -1}, {{2}, -1}, {{1, 1}, 1}, {{1, 2}, 1}, {{2, 1}, 1}, {{2, 2}, 1}}));
    EXPECT_THROW(nc_mul(X, NCPolynomial::generator(1, 3)), std::invalid_argument);
    EXPECT_THROW(nc_inverse(poly(2, {{{}, 2}})), std::invalid_argument);
}

TEST(Expand, Examples) {
    EXPECT_EQ(expand(W("g1"), 3), poly(3, {{{}, 1}, {{1}, 1}}));
    EXPECT_EQ(expand(W("g1^-1"), 3), poly(3, {{{}, 1}, {{1}, -1}, {{1, 1}, 1}, {{1, 1, 1}, -1}}));
    EXPECT_EQ(expand(W("g1 g2 g1^-1 g2^-1"), 2), poly(2, {{{}, 1}, {{1, 2}, 1}, {{2, 1}, -1}}));
    EXPECT_TRUE(expand(Word{}, 4).is_one());
}

TEST(Expand, DenseMatchesNaiveOracle) {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 150; ++trial) {
        const Word w = random_word(rng, 14, 3);
        const int D = 1 + trial % 5;
        EXPECT_EQ(expand(w, D), naive_expand(w, D)) << format_word(w);
    }
}

TEST(Expand, ParallelMatchesSerial) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Word w = random_word(rng, 400, 3);
        std::vector<int> alpha{1, 2, 3};
        const auto a = expand_dense_serial(w, alpha, 5);
        const auto b = expand_dense_parallel(w, alpha, 5, 16);
        EXPECT_EQ(a.by_degree, b.by_degree);
    }
}

TEST(Expand, BudgetIsEnforced) {
    Word w = W("g1 g2 g3 g4 g5 g6 g7 g8");
    EXPECT_THROW(expand(w, 12), ExpansionBudgetExceeded);
}

TEST(LcsDegree, Examples) {
    const Word xy = commutator(W("g1"), W("g2"));
    EXPECT_EQ(lcs_degree(xy, 4), 2);
    EXPECT_EQ(lcs_degree(W("g1"), 4), 1);
    EXPECT_EQ(lcs_degree(commutator(xy, W("g3")), 4), 3);
    EXPECT_EQ(lcs_degree(Word{}, 4), 5);
    EXPECT_EQ(lcs_degree(commutator(commutator(xy, W("g3")), W("g1")), 3), 4);
}

TEST(LcsDegree, Superadditive) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const Word u = random_word(rng, 6, 3), v = random_word(rng, 6, 3);
        const int D = 6;
        const int du = lcs_degree(u, D), dv = lcs_degree(v, D);
        EXPECT_GE(lcs_degree(commutator(u, v), D), std::min(D + 1, du + dv));
    }
}

TEST(Fox, Examples) {
    const Word xy = commutator(W("g1"), W("g2"));
    EXPECT_EQ(fox_coefficient(W("g1"), {1}), 1);
    EXPECT_EQ(fox_coefficient(xy, {1, 2}), 1);
    EXPECT_EQ(fox_coefficient(xy, {2, 1}), -1);
    EXPECT_EQ(fox_coefficient(Word{}, {1, 2, 1}), 0);
    EXPECT_EQ(fox_coefficient(W("g1 g2"), {}), 1);
}

TEST(Fox, AgreesWithExpansion) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const Word w = random_word(rng, 12, 3);
        const auto p = expand(w, 4);
        for (const auto& [m, c] : p.terms()) EXPECT_EQ(fox_coefficient(w, m), c);
        EXPECT_EQ(fox_coefficient(w, {3, 1, 2, 2}), p.coefficient({3, 1, 2, 2}));
    }
}

TEST(Milnor, Hopf) {
    const LongitudeSystem hopf(2, {W("g2"), W("g1")});
    EXPECT_EQ(milnor_invariant(hopf, {1, 2}).value, 1);
    EXPECT_FALSE(milnor_vanish_upto(hopf, 1));
    EXPECT_FALSE(longitudes_in_lcs_term(hopf, 1));
}

TEST(Milnor, Borromean) {
    const Word g1 = W("g1"), g2 = W("g2"), g3 = W("g3");
    const LongitudeSystem bor(3, {commutator(g2, g3), commutator(g3, g1), commutator(g1, g2)});
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) EXPECT_EQ(milnor_invariant(bor, {i, j}).value, 0);
    EXPECT_EQ(milnor_invariant(bor, {1, 2, 3}).value, 1);
    EXPECT_EQ(milnor_invariant(bor, {2, 3, 1}).value, 1);
    EXPECT_EQ(milnor_invariant(bor, {2, 1, 3}).value, -1);
    EXPECT_TRUE(milnor_vanish_upto(bor, 1));
    EXPECT_FALSE(milnor_vanish_upto(bor, 2));
    EXPECT_EQ(milnor_invariant(bor, {1, 2, 3}, MilnorMode::gcd).indeterminacy, 0);
}

TEST(Milnor, GcdReduction) {
    // l3 = g1^2 [g1,g2]: mu(13) = 2, mu(23) = mu(12) = 0, mu(123) = 1
    const Word l3 = W("g1 g1") * commutator(W("g1"), W("g2"));
    const LongitudeSystem L(3, {Word{}, Word{}, l3});
    EXPECT_EQ(milnor_invariant(L, {1, 3}).raw, 2);
    const auto v = milnor_invariant(L, {1, 2, 3}, MilnorMode::gcd);
    EXPECT_EQ(v.raw, 1);
    EXPECT_EQ(v.indeterminacy, 2);
    EXPECT_EQ(v.value, 1);
    const auto w = milnor_invariant(L, {1, 1, 3}, MilnorMode::gcd);
    EXPECT_EQ(w.raw, 1);  // X1^2 coefficient of g1^2
    EXPECT_EQ(w.indeterminacy, 2);
    EXPECT_EQ(w.value, 1);
}

TEST(Milnor, Errors) {
    EXPECT_THROW(LongitudeSystem(2, {W("g3"), W("g1")}), std::invalid_argument);
    EXPECT_THROW(LongitudeSystem(0, {}), std::invalid_argument);
    const LongitudeSystem hopf(2, {W("g2"), W("g1")});
    EXPECT_THROW(milnor_invariant(hopf, {1, 3}), std::out_of_range);
    EXPECT_THROW(milnor_invariant(hopf, {1}), std::invalid_argument);
}

TEST(Milnor, TrivialSystem) {
    const LongitudeSystem triv(3, {Word{}, Word{}, Word{}});
    EXPECT_EQ(milnor_invariant(triv, {1, 2, 3}).value, 0);
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(milnor_vanish_upto(triv, n));
}

TEST(Milnor, TwoRoutesAgreeOnRandomSystems) {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<Word> ls;
        for (int i = 0; i < 3; ++i) {
            Word w = random_word(rng, 3, 3);
            // bias toward deep longitudes so both outcomes occur
            if (trial % 2 == 0) w = commutator(w, random_word(rng, 3, 3));
            ls.push_back(w);
        }
        const LongitudeSystem L(3, ls);
        for (int n = 1; n <= 3; ++n) EXPECT_EQ(milnor_vanish_upto(L, n), longitudes_in_lcs_term(L, n));
    }
}
