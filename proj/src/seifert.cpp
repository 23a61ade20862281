#include "ntriv/seifert.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "ntriv/word.hpp"

namespace ntriv {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

bool IntMatrix::symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

namespace {

std::int64_t checked(BigInt v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("matrix entry overflows 64 bits");
    return static_cast<std::int64_t>(v);
}

void require_same_shape(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shapes differ");
}

}  // namespace

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b);
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = checked(BigInt(a(i, j)) + b(i, j));
    return r;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b);
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = checked(BigInt(a(i, j)) - b(i, j));
    return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shapes do not compose");
    IntMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            BigInt s = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += BigInt(a(i, k)) * b(k, j);
            r(i, j) = checked(s);
        }
    return r;
}

IntMatrix parse_matrix(std::string_view text) {
    long genus = -1;
    std::vector<std::vector<std::int64_t>> rows;
    int line_no = 0;
    int last_line = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, nl - start);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<std::pair<std::string_view, int>> tokens;  // token, column
        for (std::size_t i = 0; i < line.size();) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            tokens.emplace_back(line.substr(i, j - i), static_cast<int>(i) + 1);
            i = j;
        }
        start = nl + 1;
        if (tokens.empty()) continue;
        last_line = line_no;
        auto number = [&](std::pair<std::string_view, int> tok) {
            std::int64_t v = 0;
            const auto [ptr, ec] = std::from_chars(tok.first.data(), tok.first.data() + tok.first.size(), v);
            if (ec != std::errc{} || ptr != tok.first.data() + tok.first.size())
                throw ParseError("expected an integer, found '" + std::string(tok.first) + "'", line_no, tok.second);
            return v;
        };
        if (genus < 0) {
            if (tokens.size() != 2 || tokens[0].first != "g")
                throw ParseError("expected header 'g <genus>'", line_no, tokens[0].second);
            genus = number(tokens[1]);
            if (genus < 0) throw ParseError("genus must be >= 0", line_no, tokens[1].second);
            continue;
        }
        if (static_cast<long>(rows.size()) == 2 * genus)
            throw ParseError("more than 2g rows", line_no, tokens[0].second);
        if (static_cast<long>(tokens.size()) != 2 * genus)
            throw ParseError("row needs " + std::to_string(2 * genus) + " entries, found " + std::to_string(tokens.size()),
                             line_no, tokens.back().second);
        std::vector<std::int64_t> row;
        for (const auto& tok : tokens) row.push_back(number(tok));
        rows.push_back(std::move(row));
    }
    if (genus < 0) throw ParseError("missing header 'g <genus>'", last_line, 1);
    if (static_cast<long>(rows.size()) != 2 * genus)
        throw ParseError("expected " + std::to_string(2 * genus) + " rows, found " + std::to_string(rows.size()), last_line, 1);
    if (genus == 0) return IntMatrix(0, 0);
    return IntMatrix::from_rows(rows);
}

BigInt determinant(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return n == 0 ? BigInt(1) : BigInt(sign * a[n - 1][n - 1]);
}

IntPoly poly_trim(IntPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return poly_trim(std::move(r));
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return poly_trim(std::move(r));
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return poly_trim(std::move(r));
}

IntPoly poly_div_exact(const IntPoly& a, const IntPoly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    IntPoly rem = poly_trim(a);
    if (rem.empty()) return {};
    if (rem.size() < b.size()) throw std::logic_error("inexact polynomial division");
    IntPoly quo(rem.size() - b.size() + 1);
    for (std::size_t d = quo.size(); d-- > 0;) {
        const BigInt& top = rem[d + b.size() - 1];
        if (top % b.back() != 0) throw std::logic_error("inexact polynomial division");
        quo[d] = top / b.back();
        for (std::size_t j = 0; j < b.size(); ++j) rem[d + j] -= quo[d] * b[j];
    }
    if (!poly_trim(rem).empty()) throw std::logic_error("inexact polynomial division");
    return poly_trim(std::move(quo));
}

IntPoly poly_determinant(std::vector<std::vector<IntPoly>> a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0) return {BigInt(1)};
    IntPoly prev{BigInt(1)};
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k].empty()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].empty()) ++p;
            if (p == n) return {};
            std::swap(a[k], a[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = poly_div_exact(poly_sub(poly_mul(a[k][k], a[i][j]), poly_mul(a[i][k], a[k][j])), prev);
            a[i][k].clear();
        }
        prev = a[k][k];
    }
    IntPoly det = a[n - 1][n - 1];
    if (negate)
        for (auto& c : det) c = -c;
    return det;
}

IntPoly pencil_determinant(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b);
    if (!a.square()) throw std::invalid_argument("pencil of non-square matrices");
    std::vector<std::vector<IntPoly>> m(a.rows(), std::vector<IntPoly>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = poly_trim({BigInt(a(i, j)), BigInt(-b(i, j))});
    return poly_determinant(std::move(m));
}

LaurentPolynomial::LaurentPolynomial(int min_exponent, std::vector<BigInt> coefficients)
    : min_exp_(min_exponent), coeffs_(std::move(coefficients)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    min_exp_ = coeffs_.empty() ? 0 : min_exp_ + static_cast<int>(lead);
}

BigInt LaurentPolynomial::coefficient(int exponent) const {
    const long i = static_cast<long>(exponent) - min_exp_;
    if (i < 0 || i >= static_cast<long>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

BigInt LaurentPolynomial::at_one() const {
    BigInt s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
}

bool LaurentPolynomial::is_symmetric() const {
    if (is_zero()) return true;
    if (min_exp_ != -max_exponent()) return false;
    return std::equal(coeffs_.begin(), coeffs_.end(), coeffs_.rbegin());
}

std::string format_laurent(const LaurentPolynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int e = p.max_exponent(); e >= p.min_exponent(); --e) {
        BigInt c = p.coefficient(e);
        if (c == 0) continue;
        const bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;
        if (c != 1 || e == 0) out << c;
        if (e != 0) out << "t" << (e != 1 ? "^" + std::to_string(e) : "");
    }
    return out.str();
}

SeifertMatrix::SeifertMatrix(IntMatrix v) : v_(std::move(v)) {
    if (!v_.square() || v_.rows() % 2 != 0) throw std::invalid_argument("a Seifert matrix must be 2g x 2g");
    const BigInt d = determinant(v_ - v_.transpose());
    if (d != 1) throw std::invalid_argument("Seifert matrix violates det(V - V^T) = 1 (got " + d.str() + ")");
}

LaurentPolynomial alexander(const SeifertMatrix& v) {
    const IntPoly p = pencil_determinant(v.matrix(), v.matrix().transpose());
    BigInt at1 = 0;
    for (const auto& c : p) at1 += c;
    if (at1 != 1 && at1 != -1) throw std::logic_error("det(V - V^T) != +-1 after validation");
    std::vector<BigInt> coeffs(p.begin(), p.end());
    if (at1 == -1)
        for (auto& c : coeffs) c = -c;
    return LaurentPolynomial(-v.genus(), std::move(coeffs));
}

IntMatrix symmetrize(const IntMatrix& v) {
    if (!v.square()) throw std::invalid_argument("symmetrize needs a square matrix");
    return v + v.transpose();
}

std::string to_string(FormClass c) {
    switch (c) {
        case FormClass::elliptic: return "elliptic";
        case FormClass::hyperbolic: return "hyperbolic";
        case FormClass::parabolic: return "parabolic";
        case FormClass::none: return "none";
    }
    return "none";
}

FormClass classify_form(const IntMatrix& m, int g) {
    if (g < 0 || m.rows() != static_cast<std::size_t>(2 * g) || !m.square())
        throw std::invalid_argument("classify_form needs a 2g x 2g matrix");
    if (!m.symmetric()) throw std::invalid_argument("classify_form needs a symmetric matrix");
    const std::size_t n = m.rows(), h = static_cast<std::size_t>(g);

    bool elliptic = true;
    for (std::size_t i = 0; i < n && elliptic; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const bool pair = i / 2 == j / 2 && i != j;
            if (m(i, j) != (pair ? 1 : 0)) {
                elliptic = false;
                break;
            }
        }
    if (elliptic) return FormClass::elliptic;

    bool hyperbolic = true;
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
            if (m(i, j) != 0) hyperbolic = false;
    if (hyperbolic) return FormClass::hyperbolic;

    bool parabolic = true;
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
            if (i != j && (m(i, j) != 0 || m(i, h + j) != 0)) parabolic = false;
    return parabolic ? FormClass::parabolic : FormClass::none;
}

IntMatrix apply_basis_change(const IntMatrix& m, const IntMatrix& u) {
    if (!u.square() || u.rows() != m.rows() || !m.square()) throw std::invalid_argument("basis change shape mismatch");
    const BigInt d = determinant(u);
    if (d != 1 && d != -1) throw std::invalid_argument("basis change matrix is not unimodular (det " + d.str() + ")");
    return u * m * u.transpose();
}

AntiBlockCheck anti_block_determinant_check(const IntMatrix& a, const IntMatrix& b, const IntMatrix& z) {
    const std::size_t g = a.rows();
    if (!a.square() || !b.square() || !z.square() || b.rows() != g || z.rows() != g)
        throw std::invalid_argument("anti-block check needs square blocks of one size");
    IntMatrix v(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            v(i, g + j) = a(i, j);
            v(g + i, j) = b(i, j);
            v(g + i, g + j) = z(i, j);
        }
    AntiBlockCheck res;
    res.full = pencil_determinant(v, v.transpose());
    res.product = poly_mul(pencil_determinant(a, b.transpose()), pencil_determinant(b, a.transpose()));
    if (g % 2 == 1)
        for (auto& c : res.product) c = -c;
    res.equal = res.full == res.product;
    return res;
}

std::vector<Rational> mmr_series(const LaurentPolynomial& delta, int order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    if (delta.at_one() != 1) throw std::invalid_argument("mmr_series needs Delta(1) = 1");
    const std::size_t n = static_cast<std::size_t>(order) + 1;
    std::vector<Rational> fact(n + 2, Rational(1));
    for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<long>(i);

    // Delta(e^h) = sum_k (sum_j c_j j^k) h^k / k!
    std::vector<Rational> d(n, Rational(0));
    for (int e = delta.min_exponent(); e <= delta.max_exponent(); ++e) {
        const BigInt c = delta.coefficient(e);
        if (c == 0) continue;
        BigInt power = 1;
        for (std::size_t k = 0; k < n; ++k) {
            d[k] += Rational(c * power) / fact[k];
            power *= e;
        }
    }
    // p(h) = sum_k ((1/2)^{k+1} - (-1/2)^{k+1}) h^k / (k+1)!
    std::vector<Rational> p(n, Rational(0));
    for (std::size_t k = 0; k < n; k += 2) {
        Rational half_pow(1);
        for (std::size_t i = 0; i <= k; ++i) half_pow /= 2;
        p[k] = 2 * half_pow / fact[k + 1];
    }
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        Rational s = p[k];
        for (std::size_t i = 1; i <= k; ++i) s -= d[i] * out[k - i];
        out[k] = s / d[0];
    }
    return out;
}

Rational alternating_sum(int n, const std::map<std::uint64_t, Rational>& values) {
    if (n < 0 || n + 1 > 62) throw std::invalid_argument("alternating_sum needs 0 <= n <= 61");
    const std::uint64_t total = std::uint64_t{1} << (n + 1);
    Rational sum(0);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        auto it = values.find(mask);
        if (it == values.end()) {
            std::string subset;
            for (int i = 0; i <= n; ++i)
                if ((mask >> i) & 1U) subset += (subset.empty() ? "" : ",") + std::to_string(i + 1);
            throw std::invalid_argument("missing value for subset {" + subset + "}");
        }
        if (std::popcount(mask) % 2 == 0)
            sum += it->second;
        else
            sum -= it->second;
    }
    for (const auto& [mask, v] : values)
        if (mask >= total) throw std::invalid_argument("subset mentions an element outside {1..n+1}");
    return sum;
}

}  // namespace ntriv
