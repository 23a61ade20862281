#pragma once

// Reidemeister-Schreier rewriting for the normal closure of a generator subset.
//
// The normal closure N of S in F is the kernel of kill_generators(., S). Coset
// representatives are the reduced words on the complement of S (the unique
// shortlex-minimal element of each coset), so N is free on the letters
// u s u^-1 with u such a word and s in S.

#include <set>
#include <stdexcept>
#include <vector>

#include "ntriv/word.hpp"

namespace ntriv {

struct SchreierLetter {
    Word conjugator;  // reduced, no generator of S
    int base = 1;     // generator in S

    Word substitute() const { return conjugate(Word::generator(base), conjugator); }
    friend bool operator==(const SchreierLetter&, const SchreierLetter&) = default;
    friend auto operator<=>(const SchreierLetter& a, const SchreierLetter& b) {
        if (auto c = a.conjugator <=> b.conjugator; c != 0) return c;
        return a.base <=> b.base;
    }
};

struct NotInNormalClosure : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// `word` is over generators 1..alphabet.size(); generator i stands for alphabet[i-1].
struct SchreierRewrite {
    std::vector<SchreierLetter> alphabet;  // sorted, only the occurring letters
    Word word;

    /// Substitutes u s u^-1 back and reduces.
    Word substitute() const;
};

SchreierRewrite schreier_rewrite(const Word& w, const std::set<int>& S);

/// The Schreier letters a rewrite walks through, in reading order, with signs.
std::vector<std::pair<SchreierLetter, int>> schreier_letters(const Word& w, const std::set<int>& S);

/// LCS degree of w inside the normal closure of S (itself a free group).
/// Returns D+1 when it exceeds D.
int normal_closure_lcs_degree(const Word& w, const std::set<int>& S, int D);

}  // namespace ntriv
