#pragma once

// Truncated Magnus expansion x_i -> 1 + X_i into non-commutative integer
// power series, lower-central-series degree and Milnor invariants.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "ntriv/word.hpp"

namespace ntriv {

using Monomial = std::vector<int>;

/// Orders monomials by degree, then lexicographically.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using Coefficients = std::map<Monomial, std::int64_t, MonomialOrder>;

/// Raised when a dense expansion would exceed kDenseBudget coefficients.
struct ExpansionBudgetExceeded : std::length_error {
    using std::length_error::length_error;
};

inline constexpr std::size_t kDenseBudget = std::size_t{1} << 24;

class NCPolynomial {
public:
    explicit NCPolynomial(int truncation);
    static NCPolynomial one(int truncation);
    /// 1 + X_gen
    static NCPolynomial generator(int gen, int truncation);

    int truncation() const { return truncation_; }
    const Coefficients& terms() const { return terms_; }
    std::int64_t coefficient(const Monomial& m) const;
    /// Sets a coefficient; monomials longer than the truncation are dropped.
    void set(const Monomial& m, std::int64_t c);
    void add(const Monomial& m, std::int64_t c);
    bool is_one() const;

    friend bool operator==(const NCPolynomial&, const NCPolynomial&) = default;

private:
    int truncation_;
    Coefficients terms_;
};

NCPolynomial nc_add(const NCPolynomial& a, const NCPolynomial& b);
NCPolynomial nc_sub(const NCPolynomial& a, const NCPolynomial& b);
NCPolynomial nc_mul(const NCPolynomial& a, const NCPolynomial& b);
/// Truncated geometric series; requires constant term 1.
NCPolynomial nc_inverse(const NCPolynomial& a);

/// Dense truncated series over a fixed alphabet; the working representation
/// behind expand(). Coefficient of X_{a1}..X_{ak} sits in by_degree[k] at the
/// base-r index a1 a2 .. ak (alphabet positions, a1 most significant).
struct DenseSeries {
    std::vector<int> alphabet;  // sorted generator indices
    int truncation = 0;
    std::vector<std::vector<std::int64_t>> by_degree;

    static DenseSeries one(std::vector<int> alphabet, int truncation);
    std::size_t rank() const { return alphabet.size(); }
    /// Lowest degree >= 1 holding a nonzero coefficient, or truncation + 1.
    int lowest_nonzero_degree() const;
    NCPolynomial to_polynomial() const;
};

/// Number of coefficients a dense expansion over `rank` letters up to `truncation` needs.
std::size_t dense_size(std::size_t rank, int truncation);

/// Letter-by-letter reference expansion.
DenseSeries expand_dense_serial(const Word& w, const std::vector<int>& alphabet, int truncation);
/// Chunked expansion: chunks are expanded independently (OpenMP) and multiplied.
DenseSeries expand_dense_parallel(const Word& w, const std::vector<int>& alphabet, int truncation,
                                  std::size_t min_chunk = 2048);
DenseSeries dense_mul(const DenseSeries& a, const DenseSeries& b);

NCPolynomial expand(const Word& w, int truncation);

/// Smallest degree with a nonzero non-constant Magnus coefficient, computed up
/// to `truncation`; returns truncation + 1 when every degree 1..truncation vanishes
/// (this includes the empty word). w lies in F^(k) iff the result is >= k.
int lcs_degree(const Word& w, int truncation);

/// Coefficient of X_{I1}..X_{Ik} in the Magnus expansion of w, via the
/// augmented iterated Fox derivative (a single pass over w).
std::int64_t fox_coefficient(const Word& w, const Monomial& index);

class LongitudeSystem {
public:
    LongitudeSystem(int components, std::vector<Word> longitudes);
    int components() const { return components_; }
    const Word& longitude(int component) const;  // 1-based
    const std::vector<Word>& longitudes() const { return longitudes_; }

private:
    int components_;
    std::vector<Word> longitudes_;
};

enum class MilnorMode { raw, gcd };

struct MilnorValue {
    std::int64_t value = 0;          // raw coefficient, or residue mod indeterminacy
    std::int64_t raw = 0;
    std::int64_t indeterminacy = 0;  // 0 = no reduction
};

/// mu(i1..ik) = coefficient of X_{i1}..X_{i(k-1)} in the longitude of component ik.
MilnorValue milnor_invariant(const LongitudeSystem& L, const std::vector<int>& index,
                             MilnorMode mode = MilnorMode::raw);

/// True iff every raw mu(I) with |I| <= n+1 vanishes (enumerates the coefficients).
bool milnor_vanish_upto(const LongitudeSystem& L, int n);
/// The same test through lcs_degree(longitude, n+1) >= n+1 for every longitude.
bool longitudes_in_lcs_term(const LongitudeSystem& L, int n);

}  // namespace ntriv
