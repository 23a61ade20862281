#include <gtest/gtest.h>

#include <random>

#include "ntriv/word.hpp"

using namespace ntriv;

namespace {

Word W(std::string_view s) { return parse_word(s); }
const Letter x{1, 1}, y{2, 1}, z{3, 1};

}  // namespace

TEST(Word, ReducesOnConstruction) {
    EXPECT_TRUE(W("g1 g1^-1").empty());
    EXPECT_TRUE(W("g1 g2 g2^-1 g1^-1").empty());
    EXPECT_EQ(W("g1 g2 g1^-1").size(), 3u);
    EXPECT_EQ(W("1 2 -1"), W("g1 g2 g1^-1"));
}

TEST(Word, GroupLaws) {
    const Word w = W("g1 g2 g3^-1 g2");
    EXPECT_TRUE(conjugate(Word{}, w).empty());
    EXPECT_TRUE(concat(w, invert(w)).empty());
    EXPECT_EQ(invert(W("g1 g2")), W("g2^-1 g1^-1"));
    EXPECT_EQ(power(W("g1 g2"), -2), W("g2^-1 g1^-1 g2^-1 g1^-1"));
    EXPECT_TRUE(power(w, 0).empty());
}

TEST(Word, KillGenerators) {
    EXPECT_EQ(kill_generators(W("g1 g2 g1^-1"), {1}), W("g2"));
    EXPECT_TRUE(kill_generators(commutator(W("g1"), W("g2")), {1, 2}).empty());
    const Word w = W("g3 g1 g3^-1");
    EXPECT_EQ(kill_generators(w, {}), w);
}

TEST(Word, ParseErrorsCarryPosition) {
    try {
        parse_word("g1 g0", 7);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 7);
        EXPECT_EQ(e.column, 4);
    }
    EXPECT_THROW(parse_word("g1 h2"), ParseError);
    EXPECT_THROW(parse_word("g1^2"), ParseError);
    EXPECT_NO_THROW(parse_word(""));
}

TEST(Word, FormatRoundTrip) {
    const Word w = W("g1 g2^-1 g10");
    EXPECT_EQ(parse_word(format_word(w)), w);
    EXPECT_EQ(format_word(Word{}), "");  // "1" would read back as g1
}

TEST(SimpleCommutator, WeightTwoTags) {
    const auto c = simple_commutator(EntrySequence({x, y}));
    ASSERT_EQ(c.size(), 4u);
    std::vector<int> tags;
    for (const auto& t : c) tags.push_back(t.origin);
    EXPECT_EQ(tags, (std::vector<int>{1, 2, 1, 2}));
    EXPECT_EQ(strip(c), W("g1 g2 g1^-1 g2^-1"));
}

TEST(SimpleCommutator, WeightThree) {
    const auto c = simple_commutator(EntrySequence({x, y, z}));
    EXPECT_EQ(strip(c), W("g1 g2 g1^-1 g2^-1 g3 g2 g1 g2^-1 g1^-1 g3^-1"));
    EXPECT_EQ(std::count_if(c.begin(), c.end(), [](const TaggedLetter& t) { return t.origin == 1; }), 4);
    EXPECT_TRUE(strip(simple_commutator(EntrySequence({x, x}))).empty());
}

TEST(SimpleCommutator, InsertionsAndDeletion) {
    const auto c = simple_commutator(EntrySequence({x, y}));
    const auto ins = insert_canceling_pair(c, 2, z);
    EXPECT_EQ(format_letters([&] {
                  std::vector<Letter> ls;
                  for (const auto& t : ins) ls.push_back(t.letter);
                  return ls;
              }()),
              "g1 g2 g3 g3^-1 g1^-1 g2^-1");
    EXPECT_EQ(strip(ins), strip(c));
    EXPECT_EQ(strip(insert_canceling_pair(insert_canceling_pair(c, 0, y), 5, x)), strip(c));
    EXPECT_TRUE(strip(insert_canceling_pair({}, 0, x)).empty());

    const auto c3 = simple_commutator(EntrySequence({x, y, z}));
    std::set<std::size_t> ones;
    for (std::size_t i = 0; i < c3.size(); ++i)
        if (c3[i].origin == 1) ones.insert(i);
    EXPECT_TRUE(delete_letters(c3, ones).empty());
    EXPECT_EQ(delete_letters(c3, {}), strip(c3));
    EXPECT_THROW(delete_letters(c3, {99}), std::out_of_range);
}

TEST(SimpleCommutator, SuccessiveEntries) {
    EXPECT_TRUE(successive_entry_check(EntrySequence({x, y, y, z})));
    EXPECT_FALSE(successive_entry_check(EntrySequence({x, y, y, y})));
    EXPECT_TRUE(successive_entry_check(EntrySequence({x, y})));
    EXPECT_THROW(EntrySequence({x}), std::invalid_argument);
}

TEST(WordProperty, ReductionIsIdempotentAndInverseCancels) {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> gen(1, 4), sign(0, 1), len(0, 20);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Letter> ls;
        for (int i = len(rng); i > 0; --i) ls.push_back({gen(rng), sign(rng) ? 1 : -1});
        const Word w(ls);
        EXPECT_EQ(reduce(w.letters()), w);
        for (std::size_t i = 1; i < w.size(); ++i) EXPECT_FALSE(w[i - 1].cancels(w[i]));
        EXPECT_TRUE((w * invert(w)).empty());
    }
}
