#pragma once

// Seifert matrices, Alexander polynomials, quadratic-form shapes and the
// canonical Vassiliev series p(h) / Delta(e^h).

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ntriv/rational.hpp"

namespace ntriv {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    bool square() const { return rows_ == cols_; }
    bool symmetric() const;

    IntMatrix transpose() const;
    bool operator==(const IntMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> data_;
};

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Exact integer determinant (fraction-free elimination over big integers).
BigInt determinant(const IntMatrix& m);

/// Matrix file: "g <genus>" then 2g rows of 2g integers; '#' starts a comment.
/// Throws ParseError with line and column.
IntMatrix parse_matrix(std::string_view text);

/// Dense polynomial in t, coefficient i at t^i, trailing zeros trimmed.
using IntPoly = std::vector<BigInt>;

IntPoly poly_trim(IntPoly p);
IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
/// Exact division; throws std::logic_error if b does not divide a.
IntPoly poly_div_exact(const IntPoly& a, const IntPoly& b);

/// det of a square matrix of polynomials by fraction-free (Bareiss) elimination.
IntPoly poly_determinant(std::vector<std::vector<IntPoly>> m);
/// det(A - t B) for square integer matrices of equal size.
IntPoly pencil_determinant(const IntMatrix& a, const IntMatrix& b);

class LaurentPolynomial {
public:
    LaurentPolynomial() = default;  // zero
    LaurentPolynomial(int min_exponent, std::vector<BigInt> coefficients);
    static LaurentPolynomial one() { return LaurentPolynomial(0, {BigInt(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    int min_exponent() const { return min_exp_; }
    int max_exponent() const { return min_exp_ + static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    BigInt coefficient(int exponent) const;
    BigInt at_one() const;
    bool is_symmetric() const;

    bool operator==(const LaurentPolynomial&) const = default;

private:
    int min_exp_ = 0;
    std::vector<BigInt> coeffs_;
};

/// "t - 1 + t^-1" style.
std::string format_laurent(const LaurentPolynomial& p);

class SeifertMatrix {
public:
    /// Requires a 2g x 2g matrix with det(V - V^T) = 1.
    explicit SeifertMatrix(IntMatrix v);
    int genus() const { return static_cast<int>(v_.rows() / 2); }
    const IntMatrix& matrix() const { return v_; }

private:
    IntMatrix v_;
};

LaurentPolynomial alexander(const SeifertMatrix& v);
IntMatrix symmetrize(const IntMatrix& v);

enum class FormClass { elliptic, hyperbolic, parabolic, none };
std::string to_string(FormClass c);

/// Literal shape test in the given basis; strongest class first.
FormClass classify_form(const IntMatrix& m, int g);
/// U M U^T for unimodular U.
IntMatrix apply_basis_change(const IntMatrix& m, const IntMatrix& u);

struct AntiBlockCheck {
    IntPoly full;      // det(V - t V^T)
    IntPoly product;   // (-1)^g det(A - t B^T) det(B - t A^T)
    bool equal = false;
};

/// V = [[0, A], [B, Z]].
AntiBlockCheck anti_block_determinant_check(const IntMatrix& a, const IntMatrix& b, const IntMatrix& z);

/// Coefficients c_0..c_N of p(h) / Delta(e^h), p(h) = (e^{h/2} - e^{-h/2}) / h.
std::vector<Rational> mmr_series(const LaurentPolynomial& delta, int order);

/// Subsets of {1..n+1} keyed by bitmask (bit i-1 for element i).
Rational alternating_sum(int n, const std::map<std::uint64_t, Rational>& values);

}  // namespace ntriv
