#include "ntriv/bounds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ntriv {

long q(long m) {
    if (m < 0) throw std::invalid_argument("q needs m >= 0");
    return m / 6;
}

long t(long n) {
    if (n < 0) throw std::invalid_argument("t needs n >= 0");
    return n / 4;
}

long floor_log2(const Rational& x) {
    if (x <= 0) throw std::invalid_argument("floor_log2 needs a positive argument");
    const BigInt p = boost::multiprecision::numerator(x);
    const BigInt d = boost::multiprecision::denominator(x);
    long e = static_cast<long>(boost::multiprecision::msb(p)) - static_cast<long>(boost::multiprecision::msb(d));
    // 2^e <= p/d ?
    auto at_most = [&](long k) { return k >= 0 ? (d << k) <= p : d <= (p << -k); };
    if (!at_most(e)) --e;
    return e;
}

bool exceeds_log2(const Rational& a, const Rational& x) {
    if (x <= 0) return true;
    // a > log2 x  <=>  floor-free comparison: for integer a, 2^a > x; otherwise via floor bound
    const long fl = floor_log2(x);
    if (a > fl + 1) return true;
    if (a <= fl) return false;
    // fl < a <= fl + 1: only integer a is exact here
    if (boost::multiprecision::denominator(a) != 1)
        throw std::invalid_argument("exceeds_log2: non-integer comparison inside one binade is not supported");
    // a = fl + 1 > log2 x since log2 x < fl + 1
    return true;
}

long q_param(long n, long k) {
    if (n < 0 || k < 1) throw std::invalid_argument("q_param needs n >= 0 and k >= 1");
    if (n < 6 * k) return q(n + 1);
    return k + floor_log2(Rational(n + 1 - 6 * k, 6));
}

PartitionResult partition_k(const std::vector<std::set<int>>& factors) {
    PartitionResult res;
    res.partition.factors = factors;
    const std::size_t n = factors.size();
    if (n == 0) return res;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<int, std::size_t> owner;
    for (std::size_t i = 0; i < n; ++i)
        for (int g : factors[i]) {
            auto [it, fresh] = owner.emplace(g, i);
            if (!fresh) parent[find(i)] = find(it->second);
        }
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < n; ++i) by_root[find(i)].push_back(i);
    for (auto& [root, members] : by_root) res.partition.blocks.push_back(members);
    std::sort(res.partition.blocks.begin(), res.partition.blocks.end());
    long k = -1;
    for (const auto& block : res.partition.blocks) {
        std::set<int> gens;
        for (std::size_t i : block) gens.insert(factors[i].begin(), factors[i].end());
        const long size = static_cast<long>(gens.size());
        k = k < 0 ? size : std::min(k, size);
    }
    res.k = std::max(k, 0L);
    return res;
}

long l_n_S(const std::vector<long>& qs) {
    if (qs.empty()) throw std::invalid_argument("l_n_S needs at least one q-value");
    return *std::min_element(qs.begin(), qs.end()) - 1;
}

bool InequalityReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.holds; });
}

InequalityReport check_inequalities(long n) {
    if (n < 6) throw std::invalid_argument("check_inequalities needs n >= 6");
    InequalityReport rep;
    rep.n = n;
    const long qn = q(n + 1);
    rep.checks.push_back({"q(" + std::to_string(n + 1) + ") = " + std::to_string(qn) + " > (n-5)/6 = " +
                              format_rational(Rational(n - 5, 6)),
                          Rational(qn) > Rational(n - 5, 6)});
    const Rational arg72(n - 5, 72);
    long min_q = qn;
    for (long k = 1; k <= n / 6 + 1; ++k) {
        const long qk = q_param(n, k);
        min_q = std::min(min_q, qk);
        rep.checks.push_back({"q_param(" + std::to_string(n) + "," + std::to_string(k) + ") = " + std::to_string(qk) +
                                  " > log2(" + format_rational(arg72) + ")",
                              exceeds_log2(Rational(qk), arg72)});
    }
    rep.min_q = min_q;
    rep.log_argument = Rational(n - 5, 144);
    rep.log_bound_floor = floor_log2(rep.log_argument);
    rep.checks.push_back({"min_k q_param - 1 = " + std::to_string(min_q - 1) + " > log2(" +
                              format_rational(rep.log_argument) + ")",
                          exceeds_log2(Rational(min_q - 1), rep.log_argument)});
    return rep;
}

long good_arc_bound(long m, long k, long s, bool embedded) {
    if (m < 1 || k < 1 || s < 0) throw std::invalid_argument("good_arc_bound needs m >= 1, k >= 1, s >= 0");
    long refined;
    if (embedded)
        refined = t(m + 1);
    else if (m < 6 * k)
        refined = q(m + 1);
    else
        refined = k + (m - 6 * k) / 2;
    return std::max(m + 1 - s, refined);
}

bool ratio_check(long w_y, long s_y) {
    if (s_y < 0) throw std::invalid_argument("ratio_check needs s_y >= 0");
    return s_y == 0 || 3 * w_y >= 4 * s_y;
}

std::int64_t conflict_max(int s) {
    if (s < 1) throw std::invalid_argument("conflict_max needs s >= 1");
    if (s >= 62) throw std::overflow_error("conflict_max: 2^s - 2 overflows for s >= 62");
    return (std::int64_t{1} << s) - 2;
}

ProductBoundReport product_bound_check(long k, long r, int s) {
    if (k < 1 || r <= 2 || s < 2) throw std::invalid_argument("product_bound_check needs k >= 1, r > 2, s >= 2");
    ProductBoundReport rep;
    const BigInt conflicts = (BigInt(1) << s) - 2;
    rep.length = BigInt(6 * k) + r + 2 * BigInt(k) * conflicts;
    rep.trivializing = BigInt(k) + r / 2 + BigInt(k) * (s - 2);
    rep.log_argument = Rational(rep.length - 6 * k, 6);
    rep.holds = exceeds_log2(Rational(rep.trivializing), rep.log_argument);
    return rep;
}

}  // namespace ntriv
