#include "ntriv/lie.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntriv {

namespace {

using Combination = std::map<Monomial, std::int64_t>;

void add_term(Combination& c, const Monomial& m, std::int64_t v) {
    if (v == 0) return;
    auto [it, inserted] = c.emplace(m, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) c.erase(it);
    }
}

// [a, a, ...] = 0 and [b, a, ...] = -[a, b, ...]
void add_left_normed(Combination& c, Monomial seq, std::int64_t v) {
    if (seq.size() >= 2) {
        if (seq[0] == seq[1]) return;
        if (seq[0] > seq[1]) {
            std::swap(seq[0], seq[1]);
            v = -v;
        }
    }
    add_term(c, seq, v);
}

Combination append_letter(const Combination& x, int letter) {
    Combination out;
    for (const auto& [seq, v] : x) {
        Monomial s = seq;
        s.push_back(letter);
        add_left_normed(out, std::move(s), v);
    }
    return out;
}

// [X, Y] for a combination X of left-normed brackets and one left-normed bracket Y,
// rewritten into left-normed brackets through [X,[V,c]] = [[X,V],c] - [[X,c],V].
Combination bracket_with(const Combination& x, const Monomial& y) {
    if (y.size() == 1) return append_letter(x, y[0]);
    const int c = y.back();
    const Monomial v(y.begin(), y.end() - 1);
    Combination first = append_letter(bracket_with(x, v), c);
    Combination second = bracket_with(append_letter(x, c), v);
    for (const auto& [seq, val] : second) add_term(first, seq, -val);
    return first;
}

Combination left_normed_of_tree(const Monomial& lyndon);

Combination bracket_combinations(const Combination& x, const Combination& y) {
    Combination out;
    for (const auto& [seq, v] : y)
        for (const auto& [s2, v2] : bracket_with(x, seq)) add_term(out, s2, v * v2);
    return out;
}

Combination left_normed_of_tree(const Monomial& lyndon) {
    if (lyndon.size() == 1) return {{lyndon, 1}};
    // standard factorization: v is the longest proper Lyndon suffix
    std::size_t split = 1;
    for (; split < lyndon.size(); ++split)
        if (is_lyndon(Monomial(lyndon.begin() + static_cast<std::ptrdiff_t>(split), lyndon.end()))) break;
    const Monomial u(lyndon.begin(), lyndon.begin() + static_cast<std::ptrdiff_t>(split));
    const Monomial v(lyndon.begin() + static_cast<std::ptrdiff_t>(split), lyndon.end());
    return bracket_combinations(left_normed_of_tree(u), left_normed_of_tree(v));
}

HomogeneousPart multiply(const HomogeneousPart& a, const HomogeneousPart& b) {
    HomogeneousPart out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            add_term(out, m, ca * cb);
        }
    return out;
}

}  // namespace

HomogeneousPart lie_component(const Word& w, int m) {
    if (m < 1) throw std::invalid_argument("lie_component needs m >= 1");
    if (lcs_degree(w, m) < m) throw std::invalid_argument("word does not lie in the requested lower-central term");
    if (w.empty()) return {};
    auto gens = w.generators();
    DenseSeries s = expand_dense_parallel(w, {gens.begin(), gens.end()}, m);
    const NCPolynomial poly = s.to_polynomial();
    HomogeneousPart out;
    for (const auto& [mono, c] : poly.terms())
        if (static_cast<int>(mono.size()) == m) out.emplace(mono, c);
    return out;
}

bool is_lyndon(const Monomial& w) {
    if (w.empty()) return false;
    // strictly smaller than every proper rotation
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<std::ptrdiff_t>(i), w.end()) ||
            std::equal(w.begin() + static_cast<std::ptrdiff_t>(i), w.end(), w.begin()))
            return false;
    }
    return true;
}

std::vector<Monomial> lyndon_words(const std::vector<int>& alphabet, int length) {
    std::vector<Monomial> out;
    const int r = static_cast<int>(alphabet.size());
    if (r == 0 || length < 1) return out;
    // Duval's generation in lexicographic order
    std::vector<int> w{-1};
    while (!w.empty()) {
        ++w.back();
        if (static_cast<int>(w.size()) == length) {
            Monomial m;
            for (int i : w) m.push_back(alphabet[static_cast<std::size_t>(i)]);
            out.push_back(std::move(m));
        }
        const std::size_t n = w.size();
        while (static_cast<int>(w.size()) < length) w.push_back(w[w.size() - n]);
        while (!w.empty() && w.back() == r - 1) w.pop_back();
    }
    return out;
}

std::map<Monomial, std::int64_t> standard_bracketing_left_normed(const Monomial& lyndon) {
    if (!is_lyndon(lyndon)) throw std::invalid_argument("not a Lyndon word");
    return left_normed_of_tree(lyndon);
}

HomogeneousPart left_normed_polynomial(const Monomial& entries) {
    if (entries.empty()) return {};
    HomogeneousPart p{{{entries[0]}, 1}};
    for (std::size_t i = 1; i < entries.size(); ++i) {
        HomogeneousPart x{{{entries[i]}, 1}};
        HomogeneousPart px = multiply(p, x);
        for (const auto& [m, c] : multiply(x, p)) add_term(px, m, -c);
        p = std::move(px);
    }
    return p;
}

Word commutator_word(const EntrySequence& entries) { return strip(simple_commutator(entries)); }

Word product_word(const std::vector<CommutatorFactor>& factors) {
    std::vector<Letter> letters;
    for (const auto& f : factors) {
        Word c = commutator_word(f.entries);
        if (f.exponent < 0) c = invert(c);
        letters.insert(letters.end(), c.begin(), c.end());
    }
    return Word(letters);
}

CommutatorCombination decompose(const Word& w, int m, int D) {
    if (m < 1) throw std::invalid_argument("decompose needs m >= 1");
    if (D < m + 1) throw std::invalid_argument("decompose needs D >= m+1");
    if (lcs_degree(w, m + 1) < m + 1) throw std::invalid_argument("word does not lie in F^(m+1)");

    CommutatorCombination result;
    result.valid_mod_degree = D;
    Word remainder = w;
    std::map<Monomial, Combination> bracket_cache;
    std::map<Monomial, HomogeneousPart> poly_cache;

    for (int d = m + 1; d <= D; ++d) {
        HomogeneousPart target = lie_component(remainder, d);
        Combination total;
        while (!target.empty()) {
            const Monomial lead = target.begin()->first;
            const std::int64_t c = target.begin()->second;
            if (!is_lyndon(lead)) throw std::logic_error("decompose: leading word of a Lie element is not Lyndon");
            auto [bit, fresh] = bracket_cache.try_emplace(lead);
            if (fresh) bit->second = left_normed_of_tree(lead);
            for (const auto& [seq, coeff] : bit->second) {
                auto [pit, pfresh] = poly_cache.try_emplace(seq);
                if (pfresh) pit->second = left_normed_polynomial(seq);
                for (const auto& [mono, v] : pit->second) add_term(target, mono, -c * coeff * v);
                add_term(total, seq, c * coeff);
            }
            if (target.contains(lead)) throw std::logic_error("decompose: Lyndon elimination did not clear the leading word");
        }
        std::vector<CommutatorFactor> stage;
        for (const auto& [seq, t] : total) {
            std::vector<Letter> entries;
            for (int g : seq) entries.push_back(make_letter(g, 1));
            EntrySequence es(entries);
            for (std::int64_t i = 0; i < (t < 0 ? -t : t); ++i) stage.push_back({es, t < 0 ? -1 : 1});
        }
        remainder = invert(product_word(stage)) * remainder;
        if (lcs_degree(remainder, d) <= d) throw std::logic_error("decompose: remainder did not drop to the next term");
        result.factors.insert(result.factors.end(), stage.begin(), stage.end());
    }
    result.residual = remainder;
    return result;
}

}  // namespace ntriv
