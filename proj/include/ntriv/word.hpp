#pragma once

// Free-group words on generators g1, g2, ... and the commutator calculus
// used throughout the library.

#include <compare>
#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ntriv {

struct Letter {
    int gen = 1;   // >= 1
    int sign = 1;  // +1 or -1

    constexpr Letter inverse() const { return {gen, -sign}; }
    constexpr bool cancels(const Letter& o) const { return gen == o.gen && sign == -o.sign; }
    friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

// Validates gen >= 1 and sign in {+1,-1}.
Letter make_letter(int gen, int sign = 1);

/// A freely reduced word. Construction always reduces, so two Words are equal
/// iff they represent the same element of the free group.
class Word {
public:
    Word() = default;
    explicit Word(std::span<const Letter> letters);
    Word(std::initializer_list<Letter> letters);

    static Word generator(int gen, int sign = 1) { return Word{{make_letter(gen, sign)}}; }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }

    int max_generator() const;
    std::set<int> generators() const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) {
        // shortlex: the canonical order for coset representatives
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.letters_ <=> b.letters_;
    }

private:
    std::vector<Letter> letters_;
};

Word reduce(std::span<const Letter> letters);
Word concat(const Word& u, const Word& v);
Word operator*(const Word& u, const Word& v);
Word invert(const Word& w);
/// u w u^-1
Word conjugate(const Word& w, const Word& u);
/// [u, v] = u v u^-1 v^-1
Word commutator(const Word& u, const Word& v);
Word power(const Word& w, long exponent);

/// Image of w under the quotient by the normal closure of the generators in
/// `killed`; the quotient is free on the remaining generators.
Word kill_generators(const Word& w, const std::set<int>& killed);

/// Entries y_1..y_{m+1} of the left-normed commutator [[..[y1,y2],..],y_{m+1}].
class EntrySequence {
public:
    explicit EntrySequence(std::vector<Letter> entries);
    const std::vector<Letter>& entries() const { return entries_; }
    int weight() const { return static_cast<int>(entries_.size()); }
    std::set<int> generators() const;
    friend bool operator==(const EntrySequence&, const EntrySequence&) = default;
    friend auto operator<=>(const EntrySequence&, const EntrySequence&) = default;

private:
    std::vector<Letter> entries_;
};

/// True iff no generator (up to sign) fills three or more consecutive entries.
bool successive_entry_check(const EntrySequence& entries);

inline constexpr int kInsertedOrigin = 0;

struct TaggedLetter {
    Letter letter;
    int origin = kInsertedOrigin;  // 1-based entry index, or kInsertedOrigin
    friend bool operator==(const TaggedLetter&, const TaggedLetter&) = default;
};

/// Unreduced letter sequence that remembers where every letter came from.
using TaggedWord = std::vector<TaggedLetter>;

TaggedWord simple_commutator(const EntrySequence& entries);
TaggedWord insert_canceling_pair(const TaggedWord& w, std::size_t position, Letter g);
Word strip(const TaggedWord& w);
/// Deletes the letters at `positions` (indices into w) and reduces.
Word delete_letters(const TaggedWord& w, const std::set<std::size_t>& positions);

// Text syntax: "g1 g3^-1 g1^-1", or signed integers "1 -3 -1".

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line, int column);
    int line;
    int column;
};

/// Parses one word; `line` is used only for diagnostics.
Word parse_word(std::string_view text, int line = 1);
std::vector<Letter> parse_letters(std::string_view text, int line = 1);
std::string format_word(const Word& w);
std::string format_letters(std::span<const Letter> letters);
std::string format_letter(Letter l);

}  // namespace ntriv
