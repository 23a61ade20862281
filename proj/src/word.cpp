#include "ntriv/word.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ntriv {

Letter make_letter(int gen, int sign) {
    if (gen < 1) throw std::invalid_argument("generator index must be >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
    return {gen, sign};
}

Word reduce(std::span<const Letter> letters) { return Word(letters); }

Word::Word(std::span<const Letter> letters) {
    letters_.reserve(letters.size());
    for (const Letter& l : letters) {
        if (l.gen < 1 || (l.sign != 1 && l.sign != -1)) throw std::invalid_argument("malformed letter");
        if (!letters_.empty() && letters_.back().cancels(l))
            letters_.pop_back();
        else
            letters_.push_back(l);
    }
}

Word::Word(std::initializer_list<Letter> letters) : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

int Word::max_generator() const {
    int m = 0;
    for (const Letter& l : letters_) m = std::max(m, l.gen);
    return m;
}

std::set<int> Word::generators() const {
    std::set<int> s;
    for (const Letter& l : letters_) s.insert(l.gen);
    return s;
}

Word concat(const Word& u, const Word& v) {
    // only the seam can cancel
    std::size_t i = 0;
    const auto& a = u.letters();
    const auto& b = v.letters();
    while (i < a.size() && i < b.size() && a[a.size() - 1 - i].cancels(b[i])) ++i;
    std::vector<Letter> out;
    out.reserve(a.size() + b.size() - 2 * i);
    out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(i));
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(i), b.end());
    return Word(out);
}

Word operator*(const Word& u, const Word& v) { return concat(u, v); }

Word invert(const Word& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
    return Word(out);
}

Word conjugate(const Word& w, const Word& u) { return u * w * invert(u); }

Word commutator(const Word& u, const Word& v) { return u * v * invert(u) * invert(v); }

Word power(const Word& w, long exponent) {
    Word base = exponent < 0 ? invert(w) : w;
    Word out;
    for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) out = out * base;
    return out;
}

Word kill_generators(const Word& w, const std::set<int>& killed) {
    if (killed.empty()) return w;
    std::vector<Letter> kept;
    kept.reserve(w.size());
    for (const Letter& l : w)
        if (!killed.contains(l.gen)) kept.push_back(l);
    return Word(kept);
}

EntrySequence::EntrySequence(std::vector<Letter> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) throw std::invalid_argument("entry sequence needs at least two entries");
    for (const Letter& l : entries_) static_cast<void>(make_letter(l.gen, l.sign));
}

std::set<int> EntrySequence::generators() const {
    std::set<int> s;
    for (const Letter& l : entries_) s.insert(l.gen);
    return s;
}

bool successive_entry_check(const EntrySequence& entries) {
    const auto& e = entries.entries();
    int run = 1;
    for (std::size_t i = 1; i < e.size(); ++i) {
        run = (e[i].gen == e[i - 1].gen) ? run + 1 : 1;
        if (run >= 3) return false;
    }
    return true;
}

namespace {

TaggedWord inverse_tagged(const TaggedWord& w) {
    TaggedWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->letter.inverse(), it->origin});
    return out;
}

}  // namespace

TaggedWord simple_commutator(const EntrySequence& entries) {
    const auto& e = entries.entries();
    TaggedWord c{{e[0], 1}};
    for (std::size_t i = 1; i < e.size(); ++i) {
        const int tag = static_cast<int>(i) + 1;
        TaggedWord inv = inverse_tagged(c);
        TaggedWord next;
        next.reserve(2 * c.size() + 2);
        next.insert(next.end(), c.begin(), c.end());
        next.push_back({e[i], tag});
        next.insert(next.end(), inv.begin(), inv.end());
        next.push_back({e[i].inverse(), tag});
        c = std::move(next);
    }
    return c;
}

TaggedWord insert_canceling_pair(const TaggedWord& w, std::size_t position, Letter g) {
    if (position > w.size()) throw std::out_of_range("insertion position out of range");
    static_cast<void>(make_letter(g.gen, g.sign));
    TaggedWord out;
    out.reserve(w.size() + 2);
    out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(position));
    out.push_back({g, kInsertedOrigin});
    out.push_back({g.inverse(), kInsertedOrigin});
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(position), w.end());
    return out;
}

Word strip(const TaggedWord& w) {
    std::vector<Letter> letters;
    letters.reserve(w.size());
    for (const auto& t : w) letters.push_back(t.letter);
    return Word(letters);
}

Word delete_letters(const TaggedWord& w, const std::set<std::size_t>& positions) {
    if (!positions.empty() && *positions.rbegin() >= w.size())
        throw std::out_of_range("deletion position out of range");
    std::vector<Letter> letters;
    letters.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!positions.contains(i)) letters.push_back(w[i].letter);
    return Word(letters);
}

ParseError::ParseError(const std::string& what, int line_, int column_)
    : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
      line(line_),
      column(column_) {}

std::vector<Letter> parse_letters(std::string_view text, int line) {
    std::vector<Letter> out;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg, std::size_t at) { throw ParseError(msg, line, static_cast<int>(at) + 1); };
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n'; };
    while (i < text.size()) {
        if (is_space(text[i])) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        std::string_view tok = text.substr(start, i - start);
        int gen = 0;
        int sign = 1;
        if (tok[0] == 'g' || tok[0] == 'G') {
            std::string_view body = tok.substr(1);
            std::size_t caret = body.find('^');
            std::string_view num = body.substr(0, caret);
            auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), gen);
            if (ec != std::errc{} || p != num.data() + num.size() || num.empty()) fail("bad generator token '" + std::string(tok) + "'", start);
            if (caret != std::string_view::npos) {
                std::string_view ex = body.substr(caret + 1);
                if (ex == "-1")
                    sign = -1;
                else if (ex == "1" || ex == "+1")
                    sign = 1;
                else
                    fail("exponent must be 1 or -1 in '" + std::string(tok) + "'", start);
            }
        } else {
            int v = 0;
            std::string_view num = tok;
            if (!num.empty() && num[0] == '+') num.remove_prefix(1);
            auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
            if (ec != std::errc{} || p != num.data() + num.size() || num.empty()) fail("unrecognized token '" + std::string(tok) + "'", start);
            if (v == 0) fail("letter 0 is not a generator", start);
            gen = v < 0 ? -v : v;
            sign = v < 0 ? -1 : 1;
        }
        if (gen < 1) fail("generator index must be >= 1", start);
        out.push_back({gen, sign});
    }
    return out;
}

Word parse_word(std::string_view text, int line) {
    auto letters = parse_letters(text, line);
    return Word(letters);
}

std::string format_letter(Letter l) {
    std::string s = "g" + std::to_string(l.gen);
    if (l.sign < 0) s += "^-1";
    return s;
}

std::string format_letters(std::span<const Letter> letters) {
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) s += ' ';
        s += format_letter(letters[i]);
    }
    return s;
}

std::string format_word(const Word& w) { return format_letters(w.letters()); }

}  // namespace ntriv
