#include "ntriv/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntriv {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }), s.end());
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto valid_int = [](const std::string& x) {
        std::size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
        return i < x.size() && std::all_of(x.begin() + static_cast<std::ptrdiff_t>(i), x.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto strip_plus = [](std::string x) { return (!x.empty() && x[0] == '+') ? x.substr(1) : x; };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    BigInt p(strip_plus(num));
    BigInt q(strip_plus(den));
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return Rational(p, q);
}

std::string format_rational(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace ntriv
