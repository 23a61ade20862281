#include "ntriv/magnus.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ntriv {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Magnus coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Magnus coefficient overflow");
    return r;
}

std::size_t position_in(const std::vector<int>& alphabet, int gen) {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), gen);
    if (it == alphabet.end() || *it != gen) throw std::invalid_argument("generator outside expansion alphabet");
    return static_cast<std::size_t>(it - alphabet.begin());
}

// Right multiplication by (1 + X_g)^{+-1}, in place.
void apply_letter(DenseSeries& s, std::size_t g, int sign) {
    const std::size_t r = s.rank();
    const int D = s.truncation;
    if (sign > 0) {
        for (int k = D; k >= 1; --k) {
            auto& hi = s.by_degree[static_cast<std::size_t>(k)];
            const auto& lo = s.by_degree[static_cast<std::size_t>(k - 1)];
            for (std::size_t idx = 0; idx < lo.size(); ++idx)
                if (lo[idx] != 0) hi[idx * r + g] = checked_add(hi[idx * r + g], lo[idx]);
        }
    } else {
        for (int k = 1; k <= D; ++k) {
            auto& hi = s.by_degree[static_cast<std::size_t>(k)];
            const auto& lo = s.by_degree[static_cast<std::size_t>(k - 1)];
            for (std::size_t idx = 0; idx < lo.size(); ++idx)
                if (lo[idx] != 0) hi[idx * r + g] = checked_add(hi[idx * r + g], -lo[idx]);
        }
    }
}

std::vector<int> alphabet_of(const Word& w) {
    auto gens = w.generators();
    return {gens.begin(), gens.end()};
}

}  // namespace

NCPolynomial::NCPolynomial(int truncation) : truncation_(truncation) {
    if (truncation < 0) throw std::invalid_argument("truncation degree must be >= 0");
}

NCPolynomial NCPolynomial::one(int truncation) {
    NCPolynomial p(truncation);
    p.set({}, 1);
    return p;
}

NCPolynomial NCPolynomial::generator(int gen, int truncation) {
    NCPolynomial p = one(truncation);
    p.set({gen}, 1);
    return p;
}

std::int64_t NCPolynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

void NCPolynomial::set(const Monomial& m, std::int64_t c) {
    if (static_cast<int>(m.size()) > truncation_) return;
    if (c == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

void NCPolynomial::add(const Monomial& m, std::int64_t c) {
    if (static_cast<int>(m.size()) > truncation_ || c == 0) return;
    set(m, checked_add(coefficient(m), c));
}

bool NCPolynomial::is_one() const { return terms_.size() == 1 && coefficient({}) == 1; }

NCPolynomial nc_add(const NCPolynomial& a, const NCPolynomial& b) {
    if (a.truncation() != b.truncation()) throw std::invalid_argument("mismatched truncation degrees");
    NCPolynomial r = a;
    for (const auto& [m, c] : b.terms()) r.add(m, c);
    return r;
}

NCPolynomial nc_sub(const NCPolynomial& a, const NCPolynomial& b) {
    if (a.truncation() != b.truncation()) throw std::invalid_argument("mismatched truncation degrees");
    NCPolynomial r = a;
    for (const auto& [m, c] : b.terms()) r.add(m, -c);
    return r;
}

NCPolynomial nc_mul(const NCPolynomial& a, const NCPolynomial& b) {
    if (a.truncation() != b.truncation()) throw std::invalid_argument("mismatched truncation degrees");
    const int D = a.truncation();
    NCPolynomial r(D);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (static_cast<int>(ma.size() + mb.size()) > D) break;  // b is degree-ordered
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            r.add(m, checked_mul(ca, cb));
        }
    }
    return r;
}

NCPolynomial nc_inverse(const NCPolynomial& a) {
    if (a.coefficient({}) != 1) throw std::invalid_argument("nc_inverse needs constant term 1");
    const int D = a.truncation();
    NCPolynomial nil = a;
    nil.set({}, 0);
    NCPolynomial minus_nil(D);
    for (const auto& [m, c] : nil.terms()) minus_nil.set(m, -c);
    // 1 - N + N^2 - ... ; N is nilpotent of order D+1 after truncation
    NCPolynomial result = NCPolynomial::one(D);
    NCPolynomial term = NCPolynomial::one(D);
    for (int k = 1; k <= D; ++k) {
        term = nc_mul(term, minus_nil);
        result = nc_add(result, term);
    }
    return result;
}

std::size_t dense_size(std::size_t rank, int truncation) {
    std::size_t total = 0;
    std::size_t level = 1;
    for (int k = 0; k <= truncation; ++k) {
        total += level;
        if (total > kDenseBudget) return total;
        if (rank > 1 && level > kDenseBudget / rank) return kDenseBudget + 1;
        level *= std::max<std::size_t>(rank, 1);
        if (rank == 0) level = 0;
    }
    return total;
}

DenseSeries DenseSeries::one(std::vector<int> alphabet, int truncation) {
    if (truncation < 0) throw std::invalid_argument("truncation degree must be >= 0");
    if (dense_size(alphabet.size(), truncation) > kDenseBudget)
        throw ExpansionBudgetExceeded("Magnus expansion over " + std::to_string(alphabet.size()) +
                                      " letters to degree " + std::to_string(truncation) + " exceeds the dense budget");
    DenseSeries s;
    s.alphabet = std::move(alphabet);
    s.truncation = truncation;
    s.by_degree.resize(static_cast<std::size_t>(truncation) + 1);
    std::size_t level = 1;
    for (int k = 0; k <= truncation; ++k) {
        s.by_degree[static_cast<std::size_t>(k)].assign(level, 0);
        level *= s.alphabet.size();
    }
    s.by_degree[0][0] = 1;
    return s;
}

int DenseSeries::lowest_nonzero_degree() const {
    for (int k = 1; k <= truncation; ++k) {
        const auto& v = by_degree[static_cast<std::size_t>(k)];
        if (std::any_of(v.begin(), v.end(), [](std::int64_t c) { return c != 0; })) return k;
    }
    return truncation + 1;
}

NCPolynomial DenseSeries::to_polynomial() const {
    NCPolynomial p(truncation);
    const std::size_t r = rank();
    for (int k = 0; k <= truncation; ++k) {
        const auto& v = by_degree[static_cast<std::size_t>(k)];
        for (std::size_t idx = 0; idx < v.size(); ++idx) {
            if (v[idx] == 0) continue;
            Monomial m(static_cast<std::size_t>(k));
            std::size_t rest = idx;
            for (int j = k - 1; j >= 0; --j) {
                m[static_cast<std::size_t>(j)] = alphabet[rest % r];
                rest /= r;
            }
            p.set(m, v[idx]);
        }
    }
    return p;
}

DenseSeries expand_dense_serial(const Word& w, const std::vector<int>& alphabet, int truncation) {
    DenseSeries s = DenseSeries::one(alphabet, truncation);
    for (const Letter& l : w) apply_letter(s, position_in(s.alphabet, l.gen), l.sign);
    return s;
}

DenseSeries dense_mul(const DenseSeries& a, const DenseSeries& b) {
    if (a.alphabet != b.alphabet || a.truncation != b.truncation)
        throw std::invalid_argument("dense_mul needs matching alphabets and truncation");
    DenseSeries c = DenseSeries::one(a.alphabet, a.truncation);
    c.by_degree[0][0] = 0;
    const int D = a.truncation;
    for (int i = 0; i <= D; ++i) {
        const auto& ai = a.by_degree[static_cast<std::size_t>(i)];
        for (int j = 0; i + j <= D; ++j) {
            const auto& bj = b.by_degree[static_cast<std::size_t>(j)];
            auto& ck = c.by_degree[static_cast<std::size_t>(i + j)];
            const std::size_t width = bj.size();
            for (std::size_t x = 0; x < ai.size(); ++x) {
                if (ai[x] == 0) continue;
                const std::size_t base = x * width;
                for (std::size_t y = 0; y < width; ++y)
                    if (bj[y] != 0) ck[base + y] = checked_add(ck[base + y], checked_mul(ai[x], bj[y]));
            }
        }
    }
    return c;
}

DenseSeries expand_dense_parallel(const Word& w, const std::vector<int>& alphabet, int truncation,
                                  std::size_t min_chunk) {
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    min_chunk = std::max<std::size_t>(min_chunk, 1);
    const std::size_t chunks = std::clamp<std::size_t>(w.size() / min_chunk, 1, static_cast<std::size_t>(4 * threads));
    if (chunks <= 1) return expand_dense_serial(w, alphabet, truncation);

    // validate before entering the parallel region so exceptions stay on this thread
    DenseSeries probe = DenseSeries::one(alphabet, truncation);
    for (const Letter& l : w) static_cast<void>(position_in(probe.alphabet, l.gen));

    std::vector<DenseSeries> parts(chunks);
    const std::size_t step = (w.size() + chunks - 1) / chunks;
    bool overflow = false;
#pragma omp parallel for schedule(dynamic) reduction(|| : overflow)
    for (std::size_t c = 0; c < chunks; ++c) {
        try {
            DenseSeries s = DenseSeries::one(alphabet, truncation);
            const std::size_t lo = c * step;
            const std::size_t hi = std::min(w.size(), lo + step);
            for (std::size_t i = lo; i < hi; ++i) apply_letter(s, position_in(s.alphabet, w[i].gen), w[i].sign);
            parts[c] = std::move(s);
        } catch (const std::overflow_error&) {
            overflow = true;
        }
    }
    if (overflow) throw std::overflow_error("Magnus coefficient overflow");
    // the chunk factors are independent; pairwise tree product keeps order
    while (parts.size() > 1) {
        std::vector<DenseSeries> next((parts.size() + 1) / 2);
#pragma omp parallel for schedule(dynamic) reduction(|| : overflow)
        for (std::size_t i = 0; i < next.size(); ++i) {
            try {
                if (2 * i + 1 < parts.size())
                    next[i] = dense_mul(parts[2 * i], parts[2 * i + 1]);
                else
                    next[i] = std::move(parts[2 * i]);
            } catch (const std::overflow_error&) {
                overflow = true;
            }
        }
        if (overflow) throw std::overflow_error("Magnus coefficient overflow");
        parts = std::move(next);
    }
    return std::move(parts.front());
}

NCPolynomial expand(const Word& w, int truncation) {
    if (truncation < 1) throw std::invalid_argument("truncation degree must be >= 1");
    return expand_dense_parallel(w, alphabet_of(w), truncation).to_polynomial();
}

int lcs_degree(const Word& w, int truncation) {
    if (truncation < 1) throw std::invalid_argument("truncation degree must be >= 1");
    if (w.empty()) return truncation + 1;
    const auto alphabet = alphabet_of(w);
    // deepen gradually: words of low degree are settled cheaply
    int current = std::min(truncation, 2);
    while (true) {
        const int low = expand_dense_parallel(w, alphabet, current).lowest_nonzero_degree();
        if (low <= current) return low;
        if (current == truncation) return truncation + 1;
        current = std::min(truncation, 2 * current);
    }
}

std::int64_t fox_coefficient(const Word& w, const Monomial& index) {
    const std::size_t k = index.size();
    // c[j] = coefficient of X_{I1}..X_{Ij} in the expansion of the prefix read so far
    std::vector<std::int64_t> c(k + 1, 0);
    c[0] = 1;
    for (const Letter& l : w) {
        if (l.sign > 0) {
            for (std::size_t j = k; j >= 1; --j)
                if (index[j - 1] == l.gen) c[j] = checked_add(c[j], c[j - 1]);
        } else {
            // (1 + X)^{-1} = sum_t (-X)^t: consume a run of t trailing X_g's
            for (std::size_t j = k; j >= 1; --j) {
                std::int64_t acc = c[j];
                std::int64_t sign = -1;
                for (std::size_t t = 1; t <= j && index[j - t] == l.gen; ++t, sign = -sign)
                    acc = checked_add(acc, sign * c[j - t]);
                c[j] = acc;
            }
        }
    }
    return c[k];
}

LongitudeSystem::LongitudeSystem(int components, std::vector<Word> longitudes)
    : components_(components), longitudes_(std::move(longitudes)) {
    if (components_ < 1) throw std::invalid_argument("a longitude system needs at least one component");
    if (static_cast<int>(longitudes_.size()) != components_)
        throw std::invalid_argument("longitude count must equal the component count");
    for (const Word& l : longitudes_)
        if (l.max_generator() > components_) throw std::invalid_argument("longitude uses a generator beyond the component count");
}

const Word& LongitudeSystem::longitude(int component) const {
    if (component < 1 || component > components_) throw std::out_of_range("component index out of range");
    return longitudes_[static_cast<std::size_t>(component - 1)];
}

namespace {

std::int64_t raw_mu(const LongitudeSystem& L, const std::vector<int>& index) {
    Monomial prefix(index.begin(), index.end() - 1);
    return fox_coefficient(L.longitude(index.back()), prefix);
}

}  // namespace

MilnorValue milnor_invariant(const LongitudeSystem& L, const std::vector<int>& index, MilnorMode mode) {
    if (index.size() < 2) throw std::invalid_argument("Milnor multi-index needs length >= 2");
    for (int i : index)
        if (i < 1 || i > L.components()) throw std::out_of_range("Milnor index out of range");
    MilnorValue v;
    v.raw = raw_mu(L, index);
    v.value = v.raw;
    if (mode == MilnorMode::gcd && index.size() > 2) {
        std::int64_t g = 0;
        for (std::size_t drop = 0; drop < index.size(); ++drop) {
            std::vector<int> sub;
            for (std::size_t j = 0; j < index.size(); ++j)
                if (j != drop) sub.push_back(index[j]);
            g = std::gcd(g, raw_mu(L, sub));
        }
        v.indeterminacy = g;
        if (g != 0) v.value = ((v.raw % g) + g) % g;
    }
    return v;
}

bool milnor_vanish_upto(const LongitudeSystem& L, int n) {
    if (n < 1) throw std::invalid_argument("milnor_vanish_upto needs n >= 1");
    const int r = L.components();
    // every multi-index of length 2..n+1
    for (int len = 2; len <= n + 1; ++len) {
        std::vector<int> idx(static_cast<std::size_t>(len), 1);
        while (true) {
            if (raw_mu(L, idx) != 0) return false;
            int pos = len - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == r) idx[static_cast<std::size_t>(pos--)] = 1;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
        }
    }
    return true;
}

bool longitudes_in_lcs_term(const LongitudeSystem& L, int n) {
    if (n < 1) throw std::invalid_argument("longitudes_in_lcs_term needs n >= 1");
    return std::all_of(L.longitudes().begin(), L.longitudes().end(),
                       [n](const Word& l) { return lcs_degree(l, n + 1) >= n + 1; });
}

}  // namespace ntriv
