#pragma once

// Disjoint letter sets C_1..C_{m+1} in a product of simple quasi-commutators
// such that deleting the letters of any nonempty subfamily trivializes it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ntriv/word.hpp"

namespace ntriv {

class LetterSetFamily {
public:
    /// Validates: at least two sets, pairwise disjoint.
    explicit LetterSetFamily(std::vector<std::vector<std::size_t>> sets);
    const std::vector<std::vector<std::size_t>>& sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }

private:
    std::vector<std::vector<std::size_t>> sets_;
};

struct Insertion {
    std::size_t position;  // index into the concatenated tagged word at insertion time
    Letter letter;
};

struct TrivializerWord {
    TaggedWord word;
    LetterSetFamily family;
};

/// C_i collects every letter whose origin is entry i, across all factors;
/// inserted pairs belong to no set. All factors must share one weight.
TrivializerWord build_letter_sets(const std::vector<EntrySequence>& factors,
                                  const std::vector<Insertion>& insertions = {});

struct FamilyReport {
    bool ok = true;
    std::uint64_t subfamilies_checked = 0;
    /// First failing subfamily (0-based set indices), smallest bitmask first.
    std::optional<std::vector<std::size_t>> failing;
};

/// Checks all 2^(m+1)-1 nonempty subfamilies; OpenMP-parallel over subfamilies.
FamilyReport verify_family(const TaggedWord& w, const LetterSetFamily& family);
/// Serial reference implementation of verify_family.
FamilyReport verify_family_serial(const TaggedWord& w, const LetterSetFamily& family);

/// [x0, y1,y1, x0,x0, ..., yk,yk, x0,x0, y1,y1, ..., yk,yk] with x0 = g1 and
/// y_i = g_{i+1}, fitted to m+1 entries.
EntrySequence extremal_entry_word(int k, int m);

}  // namespace ntriv
