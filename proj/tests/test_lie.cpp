#include <gtest/gtest.h>

#include <random>

#include "ntriv/lie.hpp"
#include "ntriv/schreier.hpp"

using namespace ntriv;

namespace {

Word W(std::string_view s) { return parse_word(s); }
const Letter x{1, 1}, y{2, 1}, z{3, 1};

Word random_word(std::mt19937& rng, int max_len, int alphabet) {
    std::uniform_int_distribution<int> len(0, max_len), gen(1, alphabet), sign(0, 1);
    std::vector<Letter> ls;
    for (int i = len(rng); i > 0; --i) ls.push_back({gen(rng), sign(rng) ? 1 : -1});
    return Word(ls);
}

Word random_in_closure(std::mt19937& rng, const std::set<int>& S, int alphabet) {
    std::vector<int> s(S.begin(), S.end());
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    std::uniform_int_distribution<int> count(1, 4), sign(0, 1);
    Word w;
    for (int i = count(rng); i > 0; --i)
        w = w * conjugate(Word::generator(s[pick(rng)], sign(rng) ? 1 : -1), random_word(rng, 4, alphabet));
    return w;
}

void expect_decomposition(const Word& w, int m, int D) {
    const auto comb = decompose(w, m, D);
    EXPECT_EQ(product_word(comb.factors) * comb.residual, w);
    EXPECT_GT(lcs_degree(comb.residual, D), D);
    EXPECT_EQ(comb.valid_mod_degree, D);
    for (const auto& f : comb.factors) EXPECT_GE(f.entries.weight(), m + 1);
}

}  // namespace

TEST(Lyndon, CountsMatchNecklaceFormula) {
    // 2 letters: 2,1,2,3,6,9 ; 3 letters: 3,3,8,18
    const std::vector<std::size_t> two{2, 1, 2, 3, 6, 9}, three{3, 3, 8, 18};
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(lyndon_words({1, 2}, n).size(), two[n - 1]);
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(lyndon_words({1, 2, 3}, n).size(), three[n - 1]);
    EXPECT_TRUE(is_lyndon({1, 1, 2}));
    EXPECT_FALSE(is_lyndon({1, 2, 1}));
    EXPECT_FALSE(is_lyndon({1, 1}));
}

TEST(Lyndon, StandardBracketingHasLyndonLeadingTerm) {
    for (int n = 2; n <= 5; ++n)
        for (const auto& l : lyndon_words({1, 2, 3}, n)) {
            HomogeneousPart sum;
            for (const auto& [entries, c] : standard_bracketing_left_normed(l))
                for (const auto& [mono, d] : left_normed_polynomial(entries)) sum[mono] += c * d;
            std::erase_if(sum, [](const auto& kv) { return kv.second == 0; });
            ASSERT_FALSE(sum.empty());
            EXPECT_EQ(sum.begin()->first, l);
            EXPECT_EQ(sum.begin()->second, 1);
        }
}

TEST(LieComponent, Examples) {
    const Word xy = commutator(W("g1"), W("g2"));
    EXPECT_EQ(lie_component(xy, 2), (HomogeneousPart{{{1, 2}, 1}, {{2, 1}, -1}}));
    EXPECT_TRUE(lie_component(Word{}, 3).empty());
    EXPECT_EQ(lie_component(xy * xy, 2), (HomogeneousPart{{{1, 2}, 2}, {{2, 1}, -2}}));
    EXPECT_THROW(lie_component(W("g1"), 2), std::invalid_argument);
}

TEST(Decompose, Examples) {
    const Word xy = commutator(W("g1"), W("g2"));
    const auto c = decompose(xy, 1, 2);
    ASSERT_EQ(c.factors.size(), 1u);
    EXPECT_EQ(c.factors[0].entries, EntrySequence({x, y}));
    EXPECT_EQ(c.factors[0].exponent, 1);

    const Word two = xy * commutator(W("g2"), W("g3"));
    const auto c2 = decompose(two, 1, 2);
    EXPECT_EQ(c2.factors.size(), 2u);
    for (const auto& f : c2.factors) EXPECT_EQ(f.entries.weight(), 2);
    EXPECT_GE(lcs_degree(c2.residual, 2), 3);

    const Word xyz = commutator(xy, W("g3"));
    expect_decomposition(conjugate(xyz, W("g2 g3^-1 g1")), 2, 5);
}

TEST(Decompose, PreconditionsAndSingleFactor) {
    EXPECT_THROW(decompose(W("g1"), 1, 3), std::invalid_argument);
    EXPECT_THROW(decompose(commutator(W("g1"), W("g2")), 2, 2), std::invalid_argument);
    const Word c = commutator_word(EntrySequence({x, y, y, z}));
    const auto comb = decompose(c, 3, 4);
    ASSERT_GE(comb.factors.size(), 1u);
    EXPECT_EQ(comb.factors[0].entries.weight(), 4);
    EXPECT_TRUE(decompose(Word{}, 2, 4).factors.empty());
}

TEST(Decompose, RandomConjugatedProducts) {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        Word w;
        for (int f = 0; f < 2; ++f) {
            const Word c = commutator(commutator(random_word(rng, 2, 3), random_word(rng, 2, 3)), random_word(rng, 2, 3));
            w = w * conjugate(c, random_word(rng, 3, 3));
        }
        if (lcs_degree(w, 3) < 3) continue;
        expect_decomposition(w, 2, 5);
    }
}

TEST(Schreier, Examples) {
    const auto r1 = schreier_rewrite(W("g1"), {1});
    ASSERT_EQ(r1.alphabet.size(), 1u);
    EXPECT_TRUE(r1.alphabet[0].conjugator.empty());
    EXPECT_EQ(r1.alphabet[0].base, 1);

    const auto r2 = schreier_rewrite(W("g2 g1 g2^-1"), {1});
    ASSERT_EQ(r2.alphabet.size(), 1u);
    EXPECT_EQ(r2.alphabet[0].conjugator, W("g2"));

    const Word w = commutator(W("g3 g1 g3^-1"), W("g2"));
    const auto r3 = schreier_rewrite(w, {1, 2});
    EXPECT_EQ(r3.alphabet.size(), 2u);
    EXPECT_EQ(r3.word.size(), 4u);
    EXPECT_EQ(r3.substitute(), w);
    EXPECT_EQ(lcs_degree(r3.word, 3), 2);

    EXPECT_THROW(schreier_rewrite(W("g2"), {1}), NotInNormalClosure);
}

TEST(Schreier, NormalClosureDegree) {
    EXPECT_EQ(normal_closure_lcs_degree(commutator(W("g1"), W("g3 g2 g3^-1")), {1, 2}, 4), 2);
    EXPECT_EQ(normal_closure_lcs_degree(W("g1"), {1}, 4), 1);
    // [x, y x y^-1] is a weight-2 commutator in F but has degree 2 only; in the
    // normal closure of x it is a commutator of two distinct Schreier letters
    EXPECT_EQ(normal_closure_lcs_degree(commutator(W("g1"), W("g2 g1 g2^-1")), {1}, 4), 2);
    // x y x^-1 y^-1 = x (y x^-1 y^-1): degree 1 in the closure of x
    EXPECT_EQ(normal_closure_lcs_degree(commutator(W("g1"), W("g2")), {1}, 4), 1);
}

TEST(Schreier, RoundTripAndFullSubset) {
    std::mt19937 rng(8080);
    for (int trial = 0; trial < 100; ++trial) {
        const Word w = random_in_closure(rng, {1, 3}, 3);
        EXPECT_EQ(schreier_rewrite(w, {1, 3}).substitute(), w);
        const Word v = random_word(rng, 10, 3);
        EXPECT_EQ(normal_closure_lcs_degree(v, {1, 2, 3}, 5), lcs_degree(v, 5));
    }
}

TEST(Schreier, ConjugationInvariance) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const Word w = commutator(random_in_closure(rng, {1}, 3), random_in_closure(rng, {1}, 3));
        const Word u = kill_generators(random_word(rng, 4, 3), {1});
        EXPECT_EQ(normal_closure_lcs_degree(w, {1}, 5), normal_closure_lcs_degree(conjugate(w, u), {1}, 5));
    }
}
