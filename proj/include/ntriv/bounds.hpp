#pragma once

// Arithmetic bound functions for n-hyperbolic surfaces and good arcs.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ntriv/rational.hpp"

namespace ntriv {

/// floor(m / 6)
long q(long m);
/// floor(n / 4)
long t(long n);

/// Exact floor(log2(x)) for a positive rational x (negative for x < 1).
long floor_log2(const Rational& x);
/// a > log2(x); always true for x <= 0.
bool exceeds_log2(const Rational& a, const Rational& x);

/// q(n+1) if n < 6k, else k + floor(log2((n+1-6k)/6)).
long q_param(long n, long k);

struct FactorPartition {
    std::vector<std::set<int>> factors;
    std::vector<std::vector<std::size_t>> blocks;  // factor indices, each block sorted
};

struct PartitionResult {
    FactorPartition partition;
    long k = 0;  // min over blocks of the number of distinct generators; 0 for no factors
};

/// Blocks are the connected components of "shares a generator".
PartitionResult partition_k(const std::vector<std::set<int>>& factors);

/// min(q_i) - 1
long l_n_S(const std::vector<long>& qs);

struct InequalityCheck {
    std::string statement;
    bool holds = false;
};

struct InequalityReport {
    long n = 0;
    std::vector<InequalityCheck> checks;
    long min_q = 0;               // min over k of q_param(n, k)
    Rational log_argument;        // (n-5)/144
    long log_bound_floor = 0;     // floor(log2((n-5)/144)), grows without bound in n
    bool all_hold() const;
};

/// q(n+1) > (n-5)/6, q_param(n,k) > log2((n-5)/72) for 1 <= k <= floor(n/6)+1,
/// and min_k q_param(n,k) - 1 > log2((n-5)/144). Needs n >= 6.
InequalityReport check_inequalities(long n);

/// max(m+1-s, embedded ? t(m+1) : (m < 6k ? q(m+1) : k + floor((m-6k)/2)))
long good_arc_bound(long m, long k, long s, bool embedded);

/// s_y == 0 or w_y / s_y >= 4/3
bool ratio_check(long w_y, long s_y);

/// 2^s - 2
std::int64_t conflict_max(int s);

struct ProductBoundReport {
    BigInt length;           // m+1 = 6k + r + 2k(2^s - 2)
    BigInt trivializing;     // k + floor(r/2) + k(s-2)
    Rational log_argument;   // (m+1-6k)/6
    bool holds = false;      // trivializing > log2(log_argument)
};

ProductBoundReport product_bound_check(long k, long r, int s);

}  // namespace ntriv
