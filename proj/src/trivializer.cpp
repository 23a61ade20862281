#include "ntriv/trivializer.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace ntriv {

LetterSetFamily::LetterSetFamily(std::vector<std::vector<std::size_t>> sets) : sets_(std::move(sets)) {
    if (sets_.size() < 2) throw std::invalid_argument("a letter-set family needs at least two sets");
    if (sets_.size() > 62) throw std::invalid_argument("letter-set families are limited to 62 sets");
    std::set<std::size_t> seen;
    for (auto& s : sets_) {
        std::sort(s.begin(), s.end());
        for (std::size_t p : s)
            if (!seen.insert(p).second) throw std::invalid_argument("letter sets are not disjoint");
    }
}

TrivializerWord build_letter_sets(const std::vector<EntrySequence>& factors, const std::vector<Insertion>& insertions) {
    if (factors.empty()) throw std::invalid_argument("build_letter_sets needs at least one factor");
    const int weight = factors.front().weight();
    TaggedWord w;
    for (const auto& f : factors) {
        if (f.weight() != weight) throw std::invalid_argument("all factors must have the same weight");
        auto c = simple_commutator(f);
        w.insert(w.end(), c.begin(), c.end());
    }
    for (const auto& ins : insertions) w = insert_canceling_pair(w, ins.position, ins.letter);
    std::vector<std::vector<std::size_t>> sets(static_cast<std::size_t>(weight));
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i].origin != kInsertedOrigin) sets[static_cast<std::size_t>(w[i].origin - 1)].push_back(i);
    return {std::move(w), LetterSetFamily(std::move(sets))};
}

namespace {

// Deletes the letters whose set index is in `mask` and reports whether the
// remainder freely reduces to the empty word.
bool deletes_to_identity(const TaggedWord& w, const std::vector<int>& set_of, std::uint64_t mask,
                         std::vector<Letter>& stack) {
    stack.clear();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const int s = set_of[i];
        if (s >= 0 && (mask >> s) & 1U) continue;
        const Letter& l = w[i].letter;
        if (!stack.empty() && stack.back().cancels(l))
            stack.pop_back();
        else
            stack.push_back(l);
    }
    return stack.empty();
}

std::vector<int> set_index(const TaggedWord& w, const LetterSetFamily& family) {
    std::vector<int> set_of(w.size(), -1);
    for (std::size_t s = 0; s < family.size(); ++s)
        for (std::size_t p : family.sets()[s]) {
            if (p >= w.size()) throw std::out_of_range("letter-set position out of range");
            set_of[p] = static_cast<int>(s);
        }
    return set_of;
}

std::vector<std::size_t> mask_members(std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 64; ++i)
        if ((mask >> i) & 1U) out.push_back(i);
    return out;
}

}  // namespace

FamilyReport verify_family_serial(const TaggedWord& w, const LetterSetFamily& family) {
    const auto set_of = set_index(w, family);
    const std::uint64_t total = (std::uint64_t{1} << family.size()) - 1;
    FamilyReport report;
    std::vector<Letter> stack;
    for (std::uint64_t mask = 1; mask <= total; ++mask) {
        ++report.subfamilies_checked;
        if (!deletes_to_identity(w, set_of, mask, stack)) {
            report.ok = false;
            report.failing = mask_members(mask);
            return report;
        }
    }
    return report;
}

FamilyReport verify_family(const TaggedWord& w, const LetterSetFamily& family) {
    const auto set_of = set_index(w, family);
    const std::uint64_t total = (std::uint64_t{1} << family.size()) - 1;
    std::uint64_t first_failure = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel
    {
        std::vector<Letter> stack;
        std::uint64_t local = std::numeric_limits<std::uint64_t>::max();
#pragma omp for schedule(static)
        for (std::uint64_t mask = 1; mask <= total; ++mask)
            if (mask < local && !deletes_to_identity(w, set_of, mask, stack)) local = mask;
#pragma omp critical
        first_failure = std::min(first_failure, local);
    }
    FamilyReport report;
    report.subfamilies_checked = total;
    if (first_failure != std::numeric_limits<std::uint64_t>::max()) {
        report.ok = false;
        report.failing = mask_members(first_failure);
    }
    return report;
}

EntrySequence extremal_entry_word(int k, int m) {
    if (k < 1) throw std::invalid_argument("extremal_entry_word needs k >= 1");
    if (m + 1 < 3) throw std::invalid_argument("extremal_entry_word needs m+1 >= 3");
    const Letter x0{1, 1};
    auto y = [](int i) { return Letter{i + 1, 1}; };
    std::vector<Letter> seq{x0};
    for (int i = 1; i <= k; ++i) seq.insert(seq.end(), {y(i), y(i), x0, x0});
    for (int i = 1; i <= k; ++i) seq.insert(seq.end(), {y(i), y(i)});
    // past one full period keep appending x0,x0,y_i,y_i
    for (int i = 0; static_cast<int>(seq.size()) < m + 1; i = (i + 1) % k)
        seq.insert(seq.end(), {x0, x0, y(i + 1), y(i + 1)});
    seq.resize(static_cast<std::size_t>(m + 1));
    return EntrySequence(std::move(seq));
}

}  // namespace ntriv
