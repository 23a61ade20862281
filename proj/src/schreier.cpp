#include "ntriv/schreier.hpp"

#include <algorithm>
#include <map>

#include "ntriv/magnus.hpp"

namespace ntriv {

std::vector<std::pair<SchreierLetter, int>> schreier_letters(const Word& w, const std::set<int>& S) {
    std::vector<std::pair<SchreierLetter, int>> out;
    std::vector<Letter> coset;  // reduced word on the complement: current coset representative
    for (const Letter& l : w) {
        if (S.contains(l.gen)) {
            out.push_back({SchreierLetter{Word(coset), l.gen}, l.sign});
        } else if (!coset.empty() && coset.back().cancels(l)) {
            coset.pop_back();
        } else {
            coset.push_back(l);
        }
    }
    if (!coset.empty()) throw NotInNormalClosure("word is not in the normal closure: its image after killing is " + format_letters(coset));
    return out;
}

SchreierRewrite schreier_rewrite(const Word& w, const std::set<int>& S) {
    auto letters = schreier_letters(w, S);
    std::vector<SchreierLetter> alphabet;
    for (const auto& [sl, sign] : letters) alphabet.push_back(sl);
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

    std::vector<Letter> relabeled;
    relabeled.reserve(letters.size());
    for (const auto& [sl, sign] : letters) {
        auto it = std::lower_bound(alphabet.begin(), alphabet.end(), sl);
        relabeled.push_back({static_cast<int>(it - alphabet.begin()) + 1, sign});
    }
    SchreierRewrite r;
    r.word = Word(relabeled);
    // free cancellation can remove letters entirely; keep only those still used
    auto used = r.word.generators();
    if (used.size() != alphabet.size()) {
        std::vector<SchreierLetter> kept;
        std::map<int, int> renumber;
        for (int g : used) {
            kept.push_back(alphabet[static_cast<std::size_t>(g - 1)]);
            renumber[g] = static_cast<int>(kept.size());
        }
        std::vector<Letter> again;
        for (const Letter& l : r.word) again.push_back({renumber[l.gen], l.sign});
        r.word = Word(again);
        alphabet = std::move(kept);
    }
    r.alphabet = std::move(alphabet);
    return r;
}

Word SchreierRewrite::substitute() const {
    std::vector<Letter> out;
    for (const Letter& l : word) {
        Word piece = alphabet.at(static_cast<std::size_t>(l.gen - 1)).substitute();
        if (l.sign < 0) piece = invert(piece);
        out.insert(out.end(), piece.begin(), piece.end());
    }
    return Word(out);
}

int normal_closure_lcs_degree(const Word& w, const std::set<int>& S, int D) {
    return lcs_degree(schreier_rewrite(w, S).word, D);
}

}  // namespace ntriv
