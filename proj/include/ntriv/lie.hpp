#pragma once

// Degreewise decomposition of lower-central-series elements into simple
// (left-normed) commutators, solved in Lyndon coordinates.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ntriv/magnus.hpp"
#include "ntriv/word.hpp"

namespace ntriv {

/// Homogeneous element of the tensor algebra: monomial -> coefficient.
using HomogeneousPart = std::map<Monomial, std::int64_t>;

/// Degree-m coefficients of expand(w, m). Requires lcs_degree(w) >= m.
HomogeneousPart lie_component(const Word& w, int m);

/// Lyndon words of length `length` over the sorted alphabet, in lexicographic order.
std::vector<Monomial> lyndon_words(const std::vector<int>& alphabet, int length);
bool is_lyndon(const Monomial& word);

/// Left-normed bracket [a1,..,ak] -> coefficient; a combination whose Lie
/// polynomial equals the standard bracketing of the Lyndon word.
std::map<Monomial, std::int64_t> standard_bracketing_left_normed(const Monomial& lyndon);
/// Lie polynomial of a left-normed bracket of generators.
HomogeneousPart left_normed_polynomial(const Monomial& entries);

struct CommutatorFactor {
    EntrySequence entries;
    int exponent = 1;  // +1 or -1
};

/// w == (product of factors) * residual, exactly; the residual has Magnus
/// degree > valid_mod_degree.
struct CommutatorCombination {
    std::vector<CommutatorFactor> factors;
    Word residual;
    int valid_mod_degree = 0;
};

Word commutator_word(const EntrySequence& entries);
Word product_word(const std::vector<CommutatorFactor>& factors);

/// Peels w in F^(m+1) degree by degree (m+1..D) into left-normed commutators.
CommutatorCombination decompose(const Word& w, int m, int D);

}  // namespace ntriv
