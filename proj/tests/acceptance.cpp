// Acceptance run: one PASS/FAIL line per criterion, with elapsed time against its limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ntriv/bounds.hpp"
#include "ntriv/lie.hpp"
#include "ntriv/magnus.hpp"
#include "ntriv/schreier.hpp"
#include "ntriv/seifert.hpp"
#include "ntriv/trivializer.hpp"
#include "synthetic.hpp"

using namespace ntriv;
using namespace ntriv::synthetic;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

Word random_word(std::mt19937& rng, int alphabet, int max_len) {
    std::vector<Letter> ls;
    const int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    for (int i = 0; i < len; ++i)
        ls.push_back({std::uniform_int_distribution<int>(1, alphabet)(rng), std::bernoulli_distribution(0.5)(rng) ? 1 : -1});
    return Word(ls);
}

Letter random_letter(std::mt19937& rng, int alphabet) {
    return {std::uniform_int_distribution<int>(1, alphabet)(rng), std::bernoulli_distribution(0.5)(rng) ? 1 : -1};
}

// -- 1 ---------------------------------------------------------------------

Outcome magnus_homomorphism() {
    Outcome out;
    std::mt19937 rng(20240601);
    for (int trial = 0; trial < 500; ++trial) {
        const int a = 1 + trial % 4;
        const Word u = random_word(rng, a, 12), v = random_word(rng, a, 12);
        if (!(expand(concat(u, v), 6) == nc_mul(expand(u, 6), expand(v, 6))))
            out.fail("expand(uv) differs for u=" + format_word(u) + " v=" + format_word(v));
        if (!nc_mul(expand(u, 6), expand(invert(u), 6)).is_one()) out.fail("w w^-1 != 1 for " + format_word(u));
    }
    return out;
}

// -- 2 ---------------------------------------------------------------------

Outcome lcs_weights() {
    Outcome out;
    for (int weight = 2; weight <= 6; ++weight) {
        std::vector<int> perm(static_cast<std::size_t>(weight));
        std::iota(perm.begin(), perm.end(), 1);
        do {
            std::vector<Letter> es;
            for (int g : perm) es.push_back({g, 1});
            const Word c = commutator_word(EntrySequence(es));
            const int d = lcs_degree(c, weight);
            if (d != weight) out.fail("weight " + std::to_string(weight) + " commutator has degree " + std::to_string(d));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

// -- 3 ---------------------------------------------------------------------

std::vector<EntrySequence> all_sequences(int weight, bool signed_entries) {
    std::vector<EntrySequence> out;
    const int base = signed_entries ? 6 : 3;
    int total = 1;
    for (int i = 0; i < weight; ++i) total *= base;
    for (int code = 0; code < total; ++code) {
        std::vector<Letter> es;
        for (int i = 0, c = code; i < weight; ++i, c /= base) {
            const int digit = c % base;
            es.push_back({digit % 3 + 1, digit < 3 ? 1 : -1});
        }
        EntrySequence e(es);
        if (successive_entry_check(e)) out.push_back(std::move(e));
    }
    return out;
}

bool family_holds(const std::vector<EntrySequence>& factors, const std::vector<Insertion>& ins, Outcome& out) {
    const auto t = build_letter_sets(factors, ins);
    const auto r = verify_family(t.word, t.family);
    const std::uint64_t expected = (std::uint64_t{1} << factors.front().weight()) - 1;
    if (!r.ok || r.subfamilies_checked != expected) {
        out.fail("family fails on " + format_word(strip(t.word)));
        return false;
    }
    return true;
}

Outcome trivializer_exhaustive() {
    Outcome out;
    std::mt19937 rng(4242);
    std::size_t families = 0;
    for (int weight = 2; weight <= 4; ++weight) {
        for (const auto& e : all_sequences(weight, true)) {
            family_holds({e}, {}, out);
            ++families;
        }
        const auto seqs = all_sequences(weight, false);
        const std::size_t n = seqs.size();
        // ordered products of 1, 2 and 3 factors; each gets 0, 1 and 2 inserted pairs
        for (std::size_t count = 1; count <= 3; ++count) {
            std::size_t total = 1;
            for (std::size_t i = 0; i < count; ++i) total *= n;
            for (std::size_t code = 0; code < total; ++code) {
                std::vector<EntrySequence> factors;
                std::size_t length = 0;
                for (std::size_t i = 0, c = code; i < count; ++i, c /= n) {
                    factors.push_back(seqs[c % n]);
                    length += simple_commutator(factors.back()).size();
                }
                for (int pairs = 0; pairs <= 2; ++pairs) {
                    std::vector<Insertion> ins;
                    for (int p = 0; p < pairs; ++p)
                        ins.push_back({std::uniform_int_distribution<std::size_t>(0, length + 2 * static_cast<std::size_t>(p))(rng),
                                       random_letter(rng, 3)});
                    if (!family_holds(factors, ins, out)) return out;
                    ++families;
                }
            }
        }
    }
    out.detail = std::to_string(families) + " families";
    return out;
}

// -- 4 ---------------------------------------------------------------------

Outcome decomposition_soundness() {
    Outcome out;
    std::mt19937 rng(8675309);
    for (int trial = 0; trial < 200; ++trial) {
        const int factors = 1 + trial % 3;
        Word w;
        for (int f = 0; f < factors; ++f) {
            std::vector<Letter> es{random_letter(rng, 3), random_letter(rng, 3), random_letter(rng, 3)};
            while (es[1].gen == es[0].gen) es[1] = random_letter(rng, 3);
            const Word u = random_word(rng, 3, 4);
            w = concat(w, conjugate(commutator_word(EntrySequence(es)), u));
        }
        const auto d = decompose(w, 2, 5);
        if (concat(product_word(d.factors), d.residual) != w) out.fail("product mismatch for " + format_word(w));
        if (lcs_degree(d.residual, 5) <= 5) out.fail("residual degree <= 5 for " + format_word(w));
    }
    return out;
}

// -- 5 ---------------------------------------------------------------------

Outcome schreier_consistency() {
    Outcome out;
    std::mt19937 rng(1618);
    const std::vector<std::set<int>> subsets{{1, 2}, {1, 3}, {2, 3}};
    for (int trial = 0; trial < 200; ++trial) {
        const auto& S = subsets[static_cast<std::size_t>(trial) % subsets.size()];
        const std::vector<int> sv(S.begin(), S.end());
        Word w;
        for (int i = std::uniform_int_distribution<int>(1, 4)(rng); i > 0; --i) {
            const int s = sv[std::uniform_int_distribution<std::size_t>(0, 1)(rng)];
            w = concat(w, conjugate(Word::generator(s, std::bernoulli_distribution(0.5)(rng) ? 1 : -1), random_word(rng, 3, 3)));
        }
        if (schreier_rewrite(w, S).substitute() != w) out.fail("round trip fails for " + format_word(w));
        if (normal_closure_lcs_degree(w, {1, 2, 3}, 5) != lcs_degree(w, 5)) out.fail("S = all disagrees for " + format_word(w));
    }
    return out;
}

// -- 6 ---------------------------------------------------------------------

Outcome milnor_values() {
    Outcome out;
    const LongitudeSystem hopf(2, {parse_word("g2"), parse_word("g1")});
    if (milnor_invariant(hopf, {1, 2}).value != 1) out.fail("Hopf mu(12) != 1");
    const LongitudeSystem bor(3, {commutator(parse_word("g2"), parse_word("g3")), commutator(parse_word("g3"), parse_word("g1")),
                                  commutator(parse_word("g1"), parse_word("g2"))});
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (milnor_invariant(bor, {i, j}).value != 0) out.fail("Borromean length-2 invariant nonzero");
    const auto mu = milnor_invariant(bor, {1, 2, 3}).value;
    if (mu != 1 && mu != -1) out.fail("Borromean mu(123) = " + std::to_string(mu));
    return out;
}

// -- 7 ---------------------------------------------------------------------

IntMatrix read_matrix(const std::string& name) {
    std::ifstream in(data_path("matrices/" + name));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str());
}

Outcome alexander_values() {
    Outcome out;
    if (alexander(SeifertMatrix(read_matrix("trefoil.txt"))) != LaurentPolynomial(-1, {1, -1, 1})) out.fail("trefoil");
    if (alexander(SeifertMatrix(read_matrix("figure_eight.txt"))) != LaurentPolynomial(-1, {-1, 3, -1})) out.fail("figure-eight");
    for (int k = -5; k <= 5; ++k)
        if (alexander(SeifertMatrix(IntMatrix::from_rows({{0, 1}, {0, k}}))) != LaurentPolynomial::one())
            out.fail("Whitehead k=" + std::to_string(k));
    return out;
}

// -- 8 ---------------------------------------------------------------------

// Leibniz expansion over polynomials in t.
IntPoly leibniz_determinant(const std::vector<std::vector<IntPoly>>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    IntPoly det;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        IntPoly term{BigInt(inversions % 2 ? -1 : 1)};
        for (std::size_t i = 0; i < n; ++i) term = poly_mul(term, m[i][perm[i]]);
        det = poly_add(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return poly_trim(det);
}

Outcome anti_block_identity() {
    Outcome out;
    std::mt19937 rng(314159);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t g = 1 + static_cast<std::size_t>(trial % 3);
        IntMatrix a(g, g), b(g, g), z(g, g);
        for (auto* m : {&a, &b, &z})
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j) (*m)(i, j) = entry(rng);
        std::vector<std::vector<IntPoly>> pencil(2 * g, std::vector<IntPoly>(2 * g));
        auto v = [&](std::size_t i, std::size_t j) -> std::int64_t {
            if (i < g) return j < g ? 0 : a(i, j - g);
            return j < g ? b(i - g, j) : z(i - g, j - g);
        };
        for (std::size_t i = 0; i < 2 * g; ++i)
            for (std::size_t j = 0; j < 2 * g; ++j) pencil[i][j] = poly_trim({BigInt(v(i, j)), BigInt(-v(j, i))});
        const auto check = anti_block_determinant_check(a, b, z);
        if (!check.equal || check.product != check.full || check.full != leibniz_determinant(pencil))
            out.fail("identity fails at trial " + std::to_string(trial));
    }
    return out;
}

// -- 9 ---------------------------------------------------------------------

Rational factorial(int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// p(h) / Delta(e^h) by plain power-series division.
std::vector<Rational> series_oracle(const LaurentPolynomial& delta, int order) {
    std::vector<Rational> p(static_cast<std::size_t>(order) + 1), d(p.size()), q(p.size());
    for (int i = 0; i <= order; i += 2) p[static_cast<std::size_t>(i)] = Rational(1, 1 << i) / factorial(i + 1);
    for (int e = delta.min_exponent(); e <= delta.max_exponent(); ++e) {
        Rational pw = 1;
        for (int i = 0; i <= order; ++i, pw *= e) d[static_cast<std::size_t>(i)] += Rational(delta.coefficient(e)) * pw / factorial(i);
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        Rational r = p[i];
        for (std::size_t j = 1; j <= i; ++j) r -= d[j] * q[i - j];
        q[i] = r / d[0];
    }
    return q;
}

Outcome mmr_values() {
    Outcome out;
    const auto one = mmr_series(LaurentPolynomial::one(), 4);
    const std::vector<Rational> expected{1, 0, Rational(1, 24), 0, Rational(1, 1920)};
    if (one.size() < 5 || !std::equal(expected.begin(), expected.end(), one.begin())) out.fail("Delta = 1 series");
    if (one != series_oracle(LaurentPolynomial::one(), 4)) out.fail("Delta = 1 against oracle");

    std::mt19937 rng(2718);
    for (int trial = 0; trial < 50; ++trial) {
        const int deg = 1 + trial % 3;
        std::vector<BigInt> c(static_cast<std::size_t>(2 * deg + 1));
        BigInt off_center = 0;
        for (int i = 1; i <= deg; ++i) {
            const int x = std::uniform_int_distribution<int>(-4, 4)(rng);
            c[static_cast<std::size_t>(deg - i)] = c[static_cast<std::size_t>(deg + i)] = x;
            off_center += 2 * x;
        }
        c[static_cast<std::size_t>(deg)] = 1 - off_center;  // Delta(1) = 1
        const LaurentPolynomial delta(-deg, c);
        const auto s = mmr_series(delta, 4);
        if (s[1] != 0) out.fail("v1 != 0 for " + format_laurent(delta));
        if (s != series_oracle(delta, 4)) out.fail("oracle mismatch for " + format_laurent(delta));
    }
    const auto tre = mmr_series(LaurentPolynomial(-1, {1, -1, 1}), 2);
    if (tre[2] != Rational(-23, 24) || tre != series_oracle(LaurentPolynomial(-1, {1, -1, 1}), 2)) out.fail("trefoil v2");
    return out;
}

// -- 10 --------------------------------------------------------------------

long slow_div(long a, long b) {
    long r = 0;
    while (a >= b) a -= b, ++r;
    return r;
}

// floor(log2(num/den)) by doubling, num, den > 0.
long slow_floor_log2(long num, long den) {
    long e = 0;
    if (num >= den) {
        while (num >= 2 * den) den *= 2, ++e;
    } else {
        while (num < den) num *= 2, --e;
    }
    return e;
}

Outcome bounds_values() {
    Outcome out;
    for (long m = 0; m <= 400; ++m) {
        if (q(m) != slow_div(m, 6)) out.fail("q(" + std::to_string(m) + ")");
        if (t(m) != slow_div(m, 4)) out.fail("t(" + std::to_string(m) + ")");
    }
    for (long n = 0; n <= 200; ++n)
        for (long k = 1; k <= 40; ++k) {
            const long expect = n < 6 * k ? slow_div(n + 1, 6) : k + slow_floor_log2(n + 1 - 6 * k, 6);
            if (q_param(n, k) != expect) out.fail("q_param(" + std::to_string(n) + "," + std::to_string(k) + ")");
        }
    std::mt19937 rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long> qs(1 + trial % 5);
        for (auto& x : qs) x = std::uniform_int_distribution<long>(-3, 20)(rng);
        if (l_n_S(qs) != *std::min_element(qs.begin(), qs.end()) - 1) out.fail("l_n_S");
    }
    for (long n = 6; n <= 200; ++n) {
        if (!check_inequalities(n).all_hold()) out.fail("inequalities at n=" + std::to_string(n));
        if (!(6 * q(n + 1) > n - 5)) out.fail("q(n+1) > (n-5)/6 at n=" + std::to_string(n));
        for (long k = 1; k <= n / 6; ++k) {
            // an integer exceeds log2(x) iff it exceeds floor(log2(x))
            const long qp = q_param(n, k), fl = slow_floor_log2(n - 5, 72);
            if (!(qp > fl)) out.fail("q_param > log2((n-5)/72) at n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    if (conflict_max(1) != 0 || conflict_max(2) != 2 || conflict_max(3) != 6) out.fail("conflict_max");
    struct Row {
        long k, r;
        int s;
        long length, surviving;
    };
    for (const Row& row : {Row{1, 4, 2, 14, 3}, Row{1, 3, 3, 21, 3}, Row{2, 3, 2, 23, 3}}) {
        const auto rep = product_bound_check(row.k, row.r, row.s);
        if (rep.length != row.length || rep.trivializing != row.surviving || !rep.holds)
            out.fail("product bound row k=" + std::to_string(row.k) + " r=" + std::to_string(row.r));
    }
    return out;
}

// -- 11 --------------------------------------------------------------------

bool flipped(const Certificate& c) {
    try {
        return certify(c).verdict == Verdict::invalid;
    } catch (const MalformedCertificate&) {
        return true;
    }
}

Outcome certificates() {
    Outcome out;
    std::vector<Certificate> valid;
    for (const char* name : {"hyperbolic_g2_n5.json", "elliptic_g1_n2.json", "parabolic_g1_n2_s1.json", "parabolic_g1_n3_s1.json",
                             "unknotted_g1_n2.json", "unknotted_g1_n4_s1.json"}) {
        Certificate c = load_certificate(name);
        if (certify(c).verdict != Verdict::valid) out.fail(std::string(name) + " does not verify");
        if (c.kind != CertificateKind::unknotted) valid.push_back(std::move(c));
    }
    if (spine_link_pipeline(load_certificate("spine_g1_n2.json")).verdict != Verdict::valid) out.fail("spine_g1_n2.json");
    std::mt19937 rng(60606);
    for (int g = 1; g <= 3; ++g)
        for (int n = 1; n <= 5; ++n) {
            Certificate c = synthetic_hyperbolic(g, n, rng);
            if (certify(c).verdict != Verdict::valid) out.fail("synthetic g=" + std::to_string(g) + " n=" + std::to_string(n));
            valid.push_back(std::move(c));
        }

    // A mutant only counts when it can matter: the edited pushoff must be one the
    // original report relies on, and for hyperbolic curves the edit must survive
    // killing the earlier duals and their partners. Other edits are equivalent
    // mutants (the certified group element is unchanged) and are redrawn.
    int flips = 0, mutants = 0, undetermined = 0, equivalent = 0;
    while (mutants < 100) {
        Certificate c = valid[rng() % valid.size()];
        const auto original = certify(c);
        struct Slot {
            std::optional<WordExpr>* expr;
            std::set<int> killed;
        };
        std::vector<Slot> slots;
        std::set<int> killed;
        for (auto& cv : c.curves) {
            for (auto [p, sign] : {std::pair{&cv.pushoff_plus, "^+"}, std::pair{&cv.pushoff_minus, "^-"}}) {
                if (!*p) continue;
                bool relied_on = true;
                for (const auto& cond : original.conditions)
                    if (cond.id == "membership" && cond.subject == cv.name + sign && cond.status != Status::pass) relied_on = false;
                if (relied_on) slots.push_back({p, c.kind == CertificateKind::hyperbolic ? killed : std::set<int>{}});
            }
            if (c.kind == CertificateKind::hyperbolic && cv.role == 'A') {
                killed.insert(cv.dual);
                killed.insert(cv.dual % 2 ? cv.dual + 1 : cv.dual - 1);
            }
        }
        const auto& slot = slots[rng() % slots.size()];
        const Word before = evaluate(**slot.expr);
        const Word after = mutate(before, 2 * c.genus, rng);
        if (kill_generators(after, slot.killed) == kill_generators(before, slot.killed)) {
            ++equivalent;
            continue;
        }
        *slot.expr = WordExpr::leaf(after);
        ++mutants;
        if (flipped(c)) ++flips;
        else if (certify(c).verdict == Verdict::not_checkable) ++undetermined;
    }
    out.detail = std::to_string(flips) + "/100 mutants flipped, " + std::to_string(undetermined) + " not checkable, " +
                 std::to_string(equivalent) + " equivalent redrawn";
    if (flips < 95) out.ok = false;
    return out;
}

// -- 12 --------------------------------------------------------------------

Outcome translations() {
    Outcome out;
    const std::vector<std::pair<const char*, Translation>> sources{
        {"elliptic_g1_n2.json", Translation::elliptic_to_hyperbolic},
        {"parabolic_g1_n3_s1.json", Translation::parabolic_to_hyperbolic},
        {"unknotted_g1_n4_s1.json", Translation::unknotted_shift},
        {"hyperbolic_g2_n5.json", Translation::identity},
    };
    for (const auto& [name, t] : sources) {
        const auto r = lemma61_translate(load_certificate(name), t);
        if (r.source.verdict != Verdict::valid || r.target_report.verdict != Verdict::valid ||
            certify(r.target).verdict != Verdict::valid)
            out.fail(std::string(name) + " does not re-verify after " + to_string(t));
    }
    std::mt19937 rng(777);
    for (int g = 1; g <= 3; ++g)
        for (int n = 1; n <= 4; ++n) {
            const auto r = lemma61_translate(synthetic_hyperbolic(g, n, rng), Translation::identity);
            if (r.target_report.verdict != Verdict::valid) out.fail("synthetic identity translation");
        }

    auto rejected = [&](Certificate c, Translation t, const std::string& what) {
        try {
            lemma61_translate(c, t);
            out.fail("guard not enforced: " + what);
        } catch (const TranslationError&) {
        }
    };
    rejected(load_certificate("parabolic_g1_n2_s1.json"), Translation::parabolic_to_hyperbolic, "parabolic n < 3");
    rejected(load_certificate("unknotted_g1_n2.json"), Translation::unknotted_shift, "unknotted without simplicity");
    Certificate odd = load_certificate("elliptic_g1_n2.json");
    odd.n = 3;
    rejected(odd, Translation::elliptic_to_hyperbolic, "invalid elliptic source");
    rejected(load_certificate("elliptic_g1_n2.json"), Translation::parabolic_to_hyperbolic, "kind mismatch");
    return out;
}

// -- 13 --------------------------------------------------------------------

Outcome spine_pipeline() {
    Outcome out;
    std::mt19937 rng(13);
    for (int trial = 0; trial < 24; ++trial) {
        Certificate c;
        c.kind = CertificateKind::spine;
        c.genus = 1 + trial % 2;
        c.n = 1 + trial % 4;
        c.signs = std::string(static_cast<std::size_t>(2 * c.genus), '+');
        c.flags = {kFlagAdmissible};
        std::vector<int> gens;
        for (int j = 1; j <= 2 * c.genus; ++j) gens.push_back(j);
        for (int j = 1; j <= 2 * c.genus; ++j) {
            Curve cv;
            cv.name = std::string(j % 2 ? "A" : "B") + std::to_string((j + 1) / 2);
            cv.role = j % 2 ? 'A' : 'B';
            cv.dual = j;
            cv.pushoff_plus = random_commutator_product(gens, {}, static_cast<int>(c.n) + 1, 1 + trial % 2, rng);
            c.curves.push_back(cv);
        }
        auto r = spine_link_pipeline(c);
        if (!r.milnor_vanish || r.verdict != Verdict::valid) out.fail("weight n+1 pushoffs do not vanish");
        if (!r.l_n_S && !r.l_unbounded) out.fail("l(n,S) not reported");

        c.curves.back().pushoff_plus = w("g1");
        r = spine_link_pipeline(c);
        if (r.milnor_vanish || !r.first_nonvanishing || r.first_nonvanishing->size() != 2) out.fail("single generator not caught at length 2");
    }
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"magnus homomorphism on 500 random pairs", 10, magnus_homomorphism},
        {"lcs degree of simple commutators, weights 2..6", 5, lcs_weights},
        {"trivializer families, weight <= 4, up to 3 factors", 60, trivializer_exhaustive},
        {"decomposition residuals on 200 elements of F^(3)", 60, decomposition_soundness},
        {"schreier round trip and S = all on 200 elements", 30, schreier_consistency},
        {"milnor invariants of Hopf and Borromean systems", 1, milnor_values},
        {"alexander polynomials", 1, alexander_values},
        {"anti-block determinant identity on 100 matrices", 10, anti_block_identity},
        {"melvin-morton-rozansky series", 5, mmr_values},
        {"bound functions and inequalities", 1, bounds_values},
        {"certificates verify and mutants flip", 120, certificates},
        {"translations re-verify and guards reject", 30, translations},
        {"spine pipeline vanishing", 5, spine_pipeline},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = s <= c.limit_s;
        const bool pass = o.ok && in_time;
        if (!pass) ++failures;
        std::printf("%s %2zu %s (%.2fs / %.0fs)%s%s\n", pass ? "PASS" : "FAIL", i + 1, c.name, s, c.limit_s,
                    o.detail.empty() ? "" : ": ", o.detail.c_str());
        if (!in_time) std::printf("     over time limit\n");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
