#include "ntriv/certify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <variant>

#include "ntriv/bounds.hpp"
#include "ntriv/lie.hpp"
#include "ntriv/magnus.hpp"
#include "ntriv/schreier.hpp"

namespace ntriv {

using nlohmann::json;

// ---------------------------------------------------------------- expressions

WordExpr WordExpr::leaf(Word w) {
    WordExpr e;
    e.word = std::move(w);
    return e;
}

WordExpr WordExpr::commutator(std::vector<WordExpr> entries) {
    if (entries.size() < 2) throw std::invalid_argument("a commutator needs at least two entries");
    WordExpr e;
    e.kind = Kind::commutator;
    e.children = std::move(entries);
    return e;
}

WordExpr WordExpr::product(std::vector<WordExpr> factors) {
    WordExpr e;
    e.kind = Kind::product;
    e.children = std::move(factors);
    return e;
}

WordExpr WordExpr::inverse(WordExpr inner) {
    WordExpr e;
    e.kind = Kind::inverse;
    e.children.push_back(std::move(inner));
    return e;
}

Word evaluate(const WordExpr& e) {
    switch (e.kind) {
        case WordExpr::Kind::word: return e.word;
        case WordExpr::Kind::inverse: return invert(evaluate(e.children.front()));
        case WordExpr::Kind::product: {
            std::vector<Letter> acc;
            for (const auto& c : e.children) {
                const Word w = evaluate(c);
                acc.insert(acc.end(), w.begin(), w.end());
            }
            return Word(acc);
        }
        case WordExpr::Kind::commutator: {
            Word acc = evaluate(e.children.front());
            for (std::size_t i = 1; i < e.children.size(); ++i) acc = ntriv::commutator(acc, evaluate(e.children[i]));
            return acc;
        }
    }
    return {};
}

int max_generator(const WordExpr& e) {
    int m = e.kind == WordExpr::Kind::word ? e.word.max_generator() : 0;
    for (const auto& c : e.children) m = std::max(m, max_generator(c));
    return m;
}

WordExpr parse_expr(const json& j) {
    if (j.is_string()) return WordExpr::leaf(parse_word(j.get<std::string>()));
    if (!j.is_object() || j.size() != 1)
        throw std::invalid_argument("expected a word string or an object with one of commutator/product/inverse");
    const auto& [key, val] = *j.items().begin();
    if (key == "inverse") return WordExpr::inverse(parse_expr(val));
    if (key != "commutator" && key != "product") throw std::invalid_argument("unknown expression key '" + key + "'");
    if (!val.is_array()) throw std::invalid_argument("'" + key + "' needs an array");
    std::vector<WordExpr> parts;
    for (const auto& item : val) parts.push_back(parse_expr(item));
    return key == "commutator" ? WordExpr::commutator(std::move(parts)) : WordExpr::product(std::move(parts));
}

json expr_to_json(const WordExpr& e) {
    switch (e.kind) {
        case WordExpr::Kind::word: return format_word(e.word);
        case WordExpr::Kind::inverse: return json{{"inverse", expr_to_json(e.children.front())}};
        case WordExpr::Kind::product:
        case WordExpr::Kind::commutator: {
            json arr = json::array();
            for (const auto& c : e.children) arr.push_back(expr_to_json(c));
            return json{{e.kind == WordExpr::Kind::product ? "product" : "commutator", arr}};
        }
    }
    return nullptr;
}

// ----------------------------------------------------------------- membership

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::undetermined: return "undetermined";
    }
    return "undetermined";
}

namespace {

std::string format_set(const std::set<int>& s) {
    std::string out = "{";
    for (int g : s) out += (out.size() > 1 ? "," : "") + std::string("g") + std::to_string(g);
    return out + "}";
}

bool in_group(const Word& w, const Context& ctx) {
    return ctx.kind == Context::Kind::quotient || kill_generators(w, ctx.generators).empty();
}

// Degree of w in the context group up to D; nullopt when w lies outside it.
std::optional<int> context_degree(const Word& w, const Context& ctx, int D) {
    if (ctx.kind == Context::Kind::quotient) return lcs_degree(kill_generators(w, ctx.generators), D);
    if (!in_group(w, ctx)) return std::nullopt;
    return normal_closure_lcs_degree(w, ctx.generators, D);
}

bool is_conjugate(const WordExpr& e) {
    return e.kind == WordExpr::Kind::product && e.children.size() == 3 &&
           evaluate(e.children[2]) == invert(evaluate(e.children[0]));
}

// Sound lower bound on the context degree, capped at cap + 1; 0 = not known
// to lie in the context group.
int witness_bound(const WordExpr& e, const Context& ctx, int cap) {
    switch (e.kind) {
        case WordExpr::Kind::word:
            try {
                return context_degree(e.word, ctx, cap).value_or(0);
            } catch (const ExpansionBudgetExceeded&) {
                return in_group(e.word, ctx) ? 1 : 0;
            }
        case WordExpr::Kind::inverse: return witness_bound(e.children.front(), ctx, cap);
        case WordExpr::Kind::product: {
            // u X u^-1: the lower central terms of a normal subgroup are normal in F
            if (is_conjugate(e)) return witness_bound(e.children[1], ctx, cap);
            int b = cap + 1;
            for (const auto& c : e.children) b = std::min(b, witness_bound(c, ctx, cap));
            return b;
        }
        case WordExpr::Kind::commutator: {
            int b = witness_bound(e.children.front(), ctx, cap);
            for (std::size_t i = 1; i < e.children.size(); ++i) {
                const int c = witness_bound(e.children[i], ctx, cap);
                if (b >= 1 && c >= 1)
                    b = std::min(cap + 1, b + c);
                else
                    b = (b >= 1 || c >= 1) ? 1 : 0;  // [u,v] lies in a normal subgroup holding u or v
            }
            return b;
        }
    }
    return 0;
}

// The image of w as a word in a free group: the quotient image, or the
// Schreier rewrite (letters relabelled through `ids`).
Word free_image(const Word& w, const Context& ctx, std::map<SchreierLetter, int>& ids) {
    if (ctx.kind == Context::Kind::quotient) return kill_generators(w, ctx.generators);
    const SchreierRewrite r = schreier_rewrite(w, ctx.generators);
    std::vector<Letter> ls;
    for (const Letter& l : r.word) {
        const SchreierLetter& s = r.alphabet[static_cast<std::size_t>(l.gen - 1)];
        auto [it, fresh] = ids.emplace(s, static_cast<int>(ids.size()) + 1);
        ls.push_back({it->second, l.sign});
    }
    return Word(ls);
}

std::optional<std::vector<std::set<int>>> witness_letter_sets(const WordExpr& e, const Context& ctx, int R) {
    std::vector<const WordExpr*> factors;
    if (e.kind == WordExpr::Kind::product && !is_conjugate(e))
        for (const auto& c : e.children) factors.push_back(&c);
    else
        factors.push_back(&e);
    std::map<SchreierLetter, int> ids;
    std::vector<std::set<int>> sets;
    for (const WordExpr* f : factors) {
        const Word w = evaluate(*f);
        if (!in_group(w, ctx)) return std::nullopt;
        const Word img = free_image(w, ctx, ids);
        if (img.empty()) continue;
        if (witness_bound(*f, ctx, R) < R) {
            try {
                if (context_degree(w, ctx, R).value_or(0) < R) return std::nullopt;
            } catch (const ExpansionBudgetExceeded&) {
                return std::nullopt;
            }
        }
        sets.push_back(img.generators());
    }
    return sets;
}

}  // namespace

Membership assess_membership(const WordExpr& e, const Context& ctx, int required, bool want_k) {
    if (required < 1) throw std::invalid_argument("membership needs a required degree >= 1");
    Membership m;
    m.required = required;
    const Word w = evaluate(e);
    if (!in_group(w, ctx)) {
        m.status = Status::fail;
        m.detail = "not in the normal closure of " + format_set(ctx.generators);
        return m;
    }
    std::map<SchreierLetter, int> ids;
    const Word img = free_image(w, ctx, ids);
    m.trivial = img.empty();
    m.witness_bound = witness_bound(e, ctx, required);
    if (m.witness_bound >= required) {
        m.status = Status::pass;
        m.method = "witness";
    } else {
        m.method = "magnus";
        try {
            m.degree = lcs_degree(img, required);
            m.status = *m.degree >= required ? Status::pass : Status::fail;
        } catch (const ExpansionBudgetExceeded&) {
            m.status = Status::undetermined;
            m.detail = "Magnus expansion exceeds the coefficient budget";
            return m;
        }
    }
    if (m.status != Status::pass || !want_k || m.trivial) return m;

    std::vector<std::set<int>> sets;
    std::optional<std::vector<std::set<int>>> ws;
    if (e.kind != WordExpr::Kind::word) ws = witness_letter_sets(e, ctx, required);
    if (ws && !ws->empty()) {
        sets = std::move(*ws);
        m.k_source = "witness";
    } else if (required >= 2) {
        try {
            const auto comb = decompose(img, required - 1, required);
            for (const auto& f : comb.factors) sets.push_back(f.entries.generators());
            if (!comb.residual.empty()) sets.push_back(comb.residual.generators());
            m.k_source = "decomposition";
        } catch (const ExpansionBudgetExceeded&) {
            m.detail = "k undetermined: decomposition exceeds the coefficient budget";
            return m;
        }
    } else {
        sets.push_back(img.generators());
        m.k_source = "decomposition";
    }
    m.k = partition_k(sets).k;
    return m;
}

// --------------------------------------------------------------- certificates

std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::hyperbolic: return "hyperbolic";
        case CertificateKind::elliptic: return "elliptic";
        case CertificateKind::parabolic: return "parabolic";
        case CertificateKind::unknotted: return "unknotted";
        case CertificateKind::spine: return "spine";
    }
    return "hyperbolic";
}

CertificateKind parse_kind(const std::string& s) {
    for (auto k : {CertificateKind::hyperbolic, CertificateKind::elliptic, CertificateKind::parabolic,
                   CertificateKind::unknotted, CertificateKind::spine})
        if (to_string(k) == s) return k;
    throw MalformedCertificate("unknown certificate kind '" + s + "'");
}

std::vector<const Curve*> Certificate::curves_with_role(char role) const {
    std::vector<const Curve*> out;
    for (const auto& c : curves)
        if (c.role == role) out.push_back(&c);
    return out;
}

const Curve* Certificate::find(const std::string& name) const {
    for (const auto& c : curves)
        if (c.name == name) return &c;
    return nullptr;
}

std::optional<long> Certificate::simplicity() const {
    for (const auto& f : flags)
        if (f.starts_with("simplicity=")) return std::stol(f.substr(11));
    return std::nullopt;
}

std::vector<std::pair<const Curve*, const Curve*>> Certificate::resolved_pairs() const {
    std::vector<std::pair<const Curve*, const Curve*>> out;
    if (!pairs.empty()) {
        for (const auto& [a, b] : pairs) out.emplace_back(find(a), find(b));
        return out;
    }
    const auto as = curves_with_role('A'), bs = curves_with_role('B');
    for (std::size_t i = 0; i < std::min(as.size(), bs.size()); ++i) out.emplace_back(as[i], bs[i]);
    return out;
}

namespace {

const std::set<std::string> kFactorKeys{"x_power", "chi", "mu", "zeta"};

bool valid_flag(const std::string& f) {
    if (f == kFlagRegularSpine || f == kFlagUnrelated || f == kFlagAdmissible) return true;
    if (!f.starts_with("simplicity=")) return false;
    const std::string v = f.substr(11);
    return !v.empty() && v.size() < 10 && std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int get_nonneg(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long>() < 0) throw MalformedCertificate(path + ": expected a non-negative integer");
    return j.get<int>();
}

WordExpr get_expr(const json& j, const std::string& path, int genus) {
    WordExpr e;
    try {
        e = parse_expr(j);
    } catch (const ParseError& err) {
        throw MalformedCertificate(path + ": " + err.what());
    } catch (const std::invalid_argument& err) {
        throw MalformedCertificate(path + ": " + err.what());
    }
    if (max_generator(e) > 2 * genus)
        throw MalformedCertificate(path + ": uses a generator beyond g" + std::to_string(2 * genus));
    return e;
}

}  // namespace

Certificate parse_certificate(const json& j) {
    if (!j.is_object()) throw MalformedCertificate("certificate must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!std::set<std::string>{"schema", "kind", "genus", "n", "curves", "pairs", "asserted_flags", "signs",
                                   "slice_depth", "comment"}
                 .contains(key))
            throw MalformedCertificate("unknown field '" + key + "'");
    if (j.contains("schema") && j["schema"] != 1) throw MalformedCertificate("schema: only version 1 is understood");
    Certificate c;
    if (!j.contains("kind") || !j["kind"].is_string()) throw MalformedCertificate("kind: missing");
    c.kind = parse_kind(j["kind"].get<std::string>());
    if (!j.contains("genus")) throw MalformedCertificate("genus: missing");
    c.genus = get_nonneg(j["genus"], "genus");
    if (!j.contains("n")) throw MalformedCertificate("n: missing");
    c.n = get_nonneg(j["n"], "n");

    const json curves = j.value("curves", json::array());
    if (!curves.is_array()) throw MalformedCertificate("curves: expected an array");
    int a_count = 0, b_count = 0;
    std::set<int> duals;
    std::set<std::string> names;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const json& cj = curves[i];
        const std::string path = "curves[" + std::to_string(i) + "]";
        if (!cj.is_object()) throw MalformedCertificate(path + ": expected an object");
        for (const auto& [key, _] : cj.items())
            if (!std::set<std::string>{"name", "role", "dual", "pushoff_plus", "pushoff_minus", "m", "m_chi", "m_zeta",
                                       "epsilon", "factors"}
                     .contains(key))
                throw MalformedCertificate(path + ": unknown field '" + key + "'");
        Curve cv;
        std::string role = cj.value("role", std::string{});
        if (role == "\U0001D49C") role = "A";  // script A / script B spellings
        if (role == "\u212C") role = "B";
        if (role != "A" && role != "B") throw MalformedCertificate(path + ".role: expected \"A\" or \"B\"");
        cv.role = role[0];
        const int index = cv.role == 'A' ? ++a_count : ++b_count;
        cv.name = cj.value("name", std::string(1, cv.role) + std::to_string(index));
        if (!names.insert(cv.name).second) throw MalformedCertificate(path + ".name: duplicate curve name '" + cv.name + "'");
        cv.dual = cj.contains("dual") ? get_nonneg(cj["dual"], path + ".dual") : (cv.role == 'A' ? 2 * index - 1 : 2 * index);
        if (cv.dual < 1 || cv.dual > 2 * c.genus) throw MalformedCertificate(path + ".dual: outside g1..g" + std::to_string(2 * c.genus));
        if (!duals.insert(cv.dual).second) throw MalformedCertificate(path + ".dual: generator already used by another curve");
        if (cj.contains("pushoff_plus")) cv.pushoff_plus = get_expr(cj["pushoff_plus"], path + ".pushoff_plus", c.genus);
        if (cj.contains("pushoff_minus")) cv.pushoff_minus = get_expr(cj["pushoff_minus"], path + ".pushoff_minus", c.genus);
        if (cj.contains("m")) cv.m = get_nonneg(cj["m"], path + ".m");
        if (cj.contains("m_chi")) cv.m_chi = get_nonneg(cj["m_chi"], path + ".m_chi");
        if (cj.contains("m_zeta")) cv.m_zeta = get_nonneg(cj["m_zeta"], path + ".m_zeta");
        if (cj.contains("epsilon")) {
            const std::string eps = cj["epsilon"].is_string() ? cj["epsilon"].get<std::string>() : "";
            if (eps != "+" && eps != "-") throw MalformedCertificate(path + ".epsilon: expected \"+\" or \"-\"");
            cv.epsilon = eps[0];
        }
        if (cj.contains("factors")) {
            if (!cj["factors"].is_object()) throw MalformedCertificate(path + ".factors: expected an object");
            for (const auto& [key, val] : cj["factors"].items()) {
                if (!kFactorKeys.contains(key)) throw MalformedCertificate(path + ".factors: unknown factor '" + key + "'");
                cv.factors.emplace(key, get_expr(val, path + ".factors." + key, c.genus));
            }
        }
        c.curves.push_back(std::move(cv));
    }
    if (a_count > c.genus || b_count > c.genus) throw MalformedCertificate("curves: more than g curves in one half basis");

    if (j.contains("pairs")) {
        if (!j["pairs"].is_array()) throw MalformedCertificate("pairs: expected an array");
        for (std::size_t i = 0; i < j["pairs"].size(); ++i) {
            const json& p = j["pairs"][i];
            const std::string path = "pairs[" + std::to_string(i) + "]";
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                throw MalformedCertificate(path + ": expected [A name, B name]");
            const Curve* a = c.find(p[0]);
            const Curve* b = c.find(p[1]);
            if (!a || !b || a->role != 'A' || b->role != 'B')
                throw MalformedCertificate(path + ": names must refer to an A curve and a B curve");
            c.pairs.emplace_back(p[0], p[1]);
        }
    }
    if (j.contains("asserted_flags")) {
        if (!j["asserted_flags"].is_array()) throw MalformedCertificate("asserted_flags: expected an array");
        for (const auto& f : j["asserted_flags"]) {
            if (!f.is_string() || !valid_flag(f.get<std::string>()))
                throw MalformedCertificate("asserted_flags: unknown flag " + f.dump());
            c.flags.insert(f.get<std::string>());
        }
    }
    if (j.contains("signs")) {
        if (!j["signs"].is_string()) throw MalformedCertificate("signs: expected a string of + and -");
        const std::string s = j["signs"];
        if (s.size() != static_cast<std::size_t>(2 * c.genus) ||
            !std::all_of(s.begin(), s.end(), [](char ch) { return ch == '+' || ch == '-'; }))
            throw MalformedCertificate("signs: expected " + std::to_string(2 * c.genus) + " characters from {+,-}");
        c.signs = s;
    }
    if (j.contains("slice_depth")) c.slice_depth = get_nonneg(j["slice_depth"], "slice_depth");
    return c;
}

json certificate_to_json(const Certificate& c) {
    json j{{"schema", 1}, {"kind", to_string(c.kind)}, {"genus", c.genus}, {"n", c.n}};
    json curves = json::array();
    for (const auto& cv : c.curves) {
        json cj{{"name", cv.name}, {"role", std::string(1, cv.role)}, {"dual", cv.dual}};
        if (cv.pushoff_plus) cj["pushoff_plus"] = expr_to_json(*cv.pushoff_plus);
        if (cv.pushoff_minus) cj["pushoff_minus"] = expr_to_json(*cv.pushoff_minus);
        if (cv.m) cj["m"] = *cv.m;
        if (cv.m_chi) cj["m_chi"] = *cv.m_chi;
        if (cv.m_zeta) cj["m_zeta"] = *cv.m_zeta;
        if (c.kind == CertificateKind::unknotted && cv.role == 'A') cj["epsilon"] = std::string(1, cv.epsilon);
        if (!cv.factors.empty()) {
            json fj = json::object();
            for (const auto& [k, e] : cv.factors) fj[k] = expr_to_json(e);
            cj["factors"] = fj;
        }
        curves.push_back(cj);
    }
    j["curves"] = curves;
    if (!c.pairs.empty()) {
        json pj = json::array();
        for (const auto& [a, b] : c.pairs) pj.push_back({a, b});
        j["pairs"] = pj;
    }
    j["asserted_flags"] = json(std::vector<std::string>(c.flags.begin(), c.flags.end()));
    if (c.signs) j["signs"] = *c.signs;
    if (c.slice_depth) j["slice_depth"] = *c.slice_depth;
    return j;
}

// ------------------------------------------------------------------- verdicts

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::valid: return "valid";
        case Verdict::invalid: return "invalid";
        case Verdict::not_checkable: return "not-checkable";
    }
    return "invalid";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::valid: return 0;
        case Verdict::invalid: return 1;
        case Verdict::not_checkable: return 3;
    }
    return 1;
}

void CertificateReport::finalize() {
    const auto any = [&](Status s) {
        return std::any_of(conditions.begin(), conditions.end(), [s](const ConditionResult& c) { return c.status == s; });
    };
    if (any(Status::fail))
        verdict = Verdict::invalid;
    else if (any(Status::undetermined) || !missing_flags.empty())
        verdict = Verdict::not_checkable;
    else
        verdict = Verdict::valid;
}

namespace {

void require_flag(const Certificate& c, const std::string& flag, CertificateReport& r) {
    if (c.has_flag(flag))
        r.asserted.push_back(flag);
    else
        r.missing_flags.push_back(flag);
}

char opposite(char s) { return s == '+' ? '-' : '+'; }

std::string sign_name(const Curve& cv, char s) { return cv.name + "^" + std::string(1, s); }

Status worst(Status a, Status b) {
    if (a == Status::fail || b == Status::fail) return Status::fail;
    if (a == Status::undetermined || b == Status::undetermined) return Status::undetermined;
    return Status::pass;
}

Status aggregate(const std::vector<ConditionResult>& cs) {
    Status s = Status::pass;
    for (const auto& c : cs) s = worst(s, c.status);
    return s;
}

int rank(Status s) { return s == Status::pass ? 0 : s == Status::undetermined ? 1 : 2; }

std::string describe(const Membership& m, const std::string& where) {
    if (!m.detail.empty() && m.status != Status::pass) return m.detail;
    std::ostringstream out;
    if (m.trivial) {
        out << "trivial in " << where;
    } else if (m.method == "witness") {
        out << "degree >= " << m.witness_bound << " in " << where << " (commutator witness)";
    } else if (m.degree) {
        if (*m.degree > m.required)
            out << "degree > " << m.required;
        else
            out << "degree " << *m.degree;
        out << " in " << where << ", needs >= " << m.required;
    }
    if (m.k) out << "; k = " << *m.k << " from " << m.k_source;
    return out.str();
}

std::string context_name(const Context& ctx) {
    if (ctx.kind == Context::Kind::quotient)
        return ctx.generators.empty() ? "F" : "F/<<" + format_set(ctx.generators) + ">>";
    return "<<" + format_set(ctx.generators) + ">>";
}

ConditionResult membership_condition(const std::string& subject, const WordExpr& e, const Context& ctx, int required) {
    ConditionResult r;
    r.id = "membership";
    r.subject = subject;
    r.membership = assess_membership(e, ctx, required, true);
    r.status = r.membership->status;
    r.detail = describe(*r.membership, context_name(ctx));
    return r;
}

// The generator partner of a curve's dual: the paired curve's dual, else x_i <-> y_i.
int partner_dual(const Certificate& c, const Curve& cv) {
    for (const auto& [a, b] : c.resolved_pairs()) {
        if (a == &cv && b) return b->dual;
        if (b == &cv && a) return a->dual;
    }
    return cv.dual % 2 == 1 ? cv.dual + 1 : cv.dual - 1;
}

std::set<int> duals_of(const std::vector<const Curve*>& cs) {
    std::set<int> s;
    for (const Curve* c : cs) s.insert(c->dual);
    return s;
}

void require_n_above_one(const Certificate& c) {
    if (c.n <= 1) throw MalformedCertificate("n: this certificate kind needs n > 1");
}

int depth_of(const std::optional<int>& m, const std::string& what) {
    if (!m) throw MalformedCertificate(what + ": missing claimed depth");
    return *m;
}

std::optional<long> q_of(const Membership& m, long depth) {
    if (m.status != Status::pass || m.trivial || !m.k || *m.k < 1) return std::nullopt;
    return q_param(depth, *m.k);
}

// Runs per-sign alternatives and keeps the first that passes, else the best.
std::vector<ConditionResult> best_of(const std::vector<std::vector<ConditionResult>>& options) {
    if (options.empty()) return {};
    std::size_t best = 0;
    for (std::size_t i = 0; i < options.size(); ++i) {
        if (rank(aggregate(options[i])) < rank(aggregate(options[best]))) best = i;
        if (aggregate(options[best]) == Status::pass) break;
    }
    return options[best];
}

void record_q(CertificateReport& r, const ConditionResult& cond, long depth, const std::string& key,
              std::vector<long>* qs = nullptr) {
    if (!cond.membership) return;
    if (auto q = q_of(*cond.membership, depth)) {
        r.q_values[key] = *q;
        if (qs) qs->push_back(*q);
    }
}

std::string conclusion_for(long l) {
    if (l < 0) return "K is at least " + std::to_string(l) + "-trivial (vacuous: the bound is negative)";
    return "K is at least " + std::to_string(l) + "-trivial: Vassiliev invariants of order <= " + std::to_string(l) +
           " vanish";
}

// Pushoff conditions of the n-hyperbolic definition for an ordered half basis.
std::vector<long> hyperbolic_conditions(const Certificate& c, const std::vector<const Curve*>& half, long n,
                                        CertificateReport& r) {
    std::vector<long> qs;
    std::set<int> killed;
    for (const Curve* cv : half) {
        const Context ctx = Context::quotient(killed);
        std::vector<std::vector<ConditionResult>> options;
        for (char s : {'+', '-'})
            if (cv->pushoff(s)) options.push_back({membership_condition(sign_name(*cv, s), *cv->pushoff(s), ctx, static_cast<int>(n + 1))});
        if (options.empty()) throw MalformedCertificate("curve " + cv->name + ": no pushoff supplied");
        auto chosen = best_of(options);
        ConditionResult& cond = chosen.front();
        if (cond.status == Status::pass) {
            record_q(r, cond, n, cv->name, &qs);
            if (cond.membership->trivial) r.notes.push_back(cv->name + ": trivial image carries no q-value");
            else if (!cond.membership->k) cond.status = Status::undetermined;
        }
        r.conditions.push_back(cond);
        killed.insert(cv->dual);
        killed.insert(partner_dual(c, *cv));
    }
    return qs;
}

void set_l(CertificateReport& r, const std::vector<long>& qs) {
    if (qs.empty()) {
        r.l_unbounded = true;
        r.conclusion = "every pushoff image is trivial; no finite l(n,S) bound arises";
        return;
    }
    r.l_n_S = l_n_S(qs);
    r.conclusion = conclusion_for(*r.l_n_S);
}

ConditionResult arithmetic_condition(const std::string& id, const std::string& subject, bool holds, std::string detail) {
    ConditionResult r;
    r.id = id;
    r.subject = subject;
    r.status = holds ? Status::pass : Status::fail;
    r.detail = std::move(detail);
    return r;
}

ConditionResult undetermined_condition(const std::string& id, const std::string& subject, std::string detail) {
    ConditionResult r;
    r.id = id;
    r.subject = subject;
    r.status = Status::undetermined;
    r.detail = std::move(detail);
    return r;
}

// q-value of a passed membership, or a reason why there is none.
std::variant<long, std::string> q_or_reason(const ConditionResult& cond, long depth) {
    if (cond.status != Status::pass) return std::string("membership did not pass");
    if (cond.membership->trivial) return std::string("trivial word has no q-value");
    if (!cond.membership->k) return std::string("k undetermined");
    return q_param(depth, *cond.membership->k);
}

}  // namespace

CertificateReport certify_hyperbolic(const Certificate& c) {
    if (c.n < 1) throw MalformedCertificate("n: hyperbolic certificates need n >= 1");
    const auto half = c.curves_with_role('A');
    if (static_cast<int>(half.size()) != c.genus) throw MalformedCertificate("curves: need exactly g A curves");
    CertificateReport r;
    r.kind = CertificateKind::hyperbolic;
    r.n = c.n;
    require_flag(c, kFlagRegularSpine, r);
    const auto qs = hyperbolic_conditions(c, half, c.n, r);
    set_l(r, qs);
    r.finalize();
    if (r.verdict != Verdict::valid) r.conclusion.clear();
    return r;
}

CertificateReport certify_elliptic(const Certificate& c) {
    require_n_above_one(c);
    const auto as = c.curves_with_role('A'), bs = c.curves_with_role('B');
    if (static_cast<int>(as.size()) != c.genus || static_cast<int>(bs.size()) != c.genus)
        throw MalformedCertificate("curves: need g A curves and g B curves");
    const auto pairs = c.resolved_pairs();
    if (pairs.size() != as.size()) throw MalformedCertificate("pairs: every A curve needs a B partner");
    CertificateReport r;
    r.kind = CertificateKind::elliptic;
    r.n = c.n;
    require_flag(c, kFlagRegularSpine, r);
    require_flag(c, kFlagUnrelated, r);
    const Context ca = Context::closure(duals_of(as)), cb = Context::closure(duals_of(bs));
    for (const auto& [a, b] : pairs) {
        const int ma = depth_of(a->m, a->name), mb = depth_of(b->m, b->name);
        std::vector<std::vector<ConditionResult>> options;
        for (char eps : {'+', '-'}) {
            if (!a->pushoff(eps) || !b->pushoff(opposite(eps))) continue;
            std::vector<ConditionResult> opt{membership_condition(sign_name(*a, eps), *a->pushoff(eps), ca, ma + 1),
                                             membership_condition(sign_name(*b, opposite(eps)), *b->pushoff(opposite(eps)), cb, mb + 1)};
            const auto qa = q_or_reason(opt[0], ma), qb = q_or_reason(opt[1], mb);
            const std::string subject = a->name + "," + b->name;
            if (std::holds_alternative<long>(qa) && std::holds_alternative<long>(qb)) {
                const long sum = std::get<long>(qa) + std::get<long>(qb);
                opt.push_back(arithmetic_condition("q-sum", subject, sum == c.n + 1,
                                                   "q = " + std::to_string(std::get<long>(qa)) + " + " +
                                                       std::to_string(std::get<long>(qb)) + " = " + std::to_string(sum) +
                                                       ", needs n+1 = " + std::to_string(c.n + 1)));
            } else {
                const std::string why = std::holds_alternative<std::string>(qa) ? std::get<std::string>(qa) : std::get<std::string>(qb);
                if (why == "k undetermined")
                    opt.push_back(undetermined_condition("q-sum", subject, why));
                else if (aggregate(opt) == Status::pass)
                    opt.push_back(arithmetic_condition("q-sum", subject, false, why));
            }
            options.push_back(std::move(opt));
        }
        if (options.empty()) throw MalformedCertificate("pair " + a->name + "," + b->name + ": pushoffs of opposite signs missing");
        const auto chosen = best_of(options);
        for (const auto& cond : chosen) {
            if (cond.id == "membership") record_q(r, cond, cond.subject.starts_with(a->name + "^") ? ma : mb, cond.subject.substr(0, cond.subject.find('^')));
            r.conditions.push_back(cond);
        }
    }
    r.finalize();
    if (r.verdict == Verdict::valid) r.conclusion = "K is " + std::to_string(c.n) + "-elliptic, hence " + std::to_string(c.n) + "-trivial";
    return r;
}

CertificateReport certify_parabolic(const Certificate& c) {
    require_n_above_one(c);
    const auto bs = c.curves_with_role('B');
    if (static_cast<int>(bs.size()) != c.genus) throw MalformedCertificate("curves: need g B curves");
    CertificateReport r;
    r.kind = CertificateKind::parabolic;
    r.n = c.n;
    require_flag(c, kFlagRegularSpine, r);
    require_flag(c, kFlagUnrelated, r);
    const auto s = c.simplicity();
    if (!s) {
        r.missing_flags.push_back("simplicity=s");
    } else {
        r.asserted.push_back("simplicity=" + std::to_string(*s));
        if (*s < 1) r.conditions.push_back(arithmetic_condition("simplicity", "s", false, "simplicity must be >= 1"));
    }
    if (s && c.n <= *s) {
        r.notes.push_back("n <= s: no condition on B curves applies");
    } else {
        const Context cb = Context::closure(duals_of(bs));
        for (const Curve* b : bs) {
            const int mb = depth_of(b->m, b->name);
            std::vector<std::vector<ConditionResult>> options;
            for (char eps : {'+', '-'}) {
                if (!b->pushoff(eps)) continue;
                std::vector<ConditionResult> opt{membership_condition(sign_name(*b, eps), *b->pushoff(eps), cb, mb + 1)};
                const auto qb = q_or_reason(opt[0], mb);
                if (!s) {
                    opt.push_back(undetermined_condition("q-relation", b->name, "simplicity not asserted"));
                } else if (std::holds_alternative<long>(qb)) {
                    const long q = std::get<long>(qb);
                    opt.push_back(arithmetic_condition("q-relation", b->name, q + *s == c.n + 1,
                                                       "q + s = " + std::to_string(q) + " + " + std::to_string(*s) +
                                                           ", needs n+1 = " + std::to_string(c.n + 1)));
                } else if (std::get<std::string>(qb) == "k undetermined") {
                    opt.push_back(undetermined_condition("q-relation", b->name, std::get<std::string>(qb)));
                } else if (opt[0].status == Status::pass) {
                    opt.push_back(arithmetic_condition("q-relation", b->name, false, std::get<std::string>(qb)));
                }
                options.push_back(std::move(opt));
            }
            if (options.empty()) throw MalformedCertificate("curve " + b->name + ": no pushoff supplied");
            for (const auto& cond : best_of(options)) {
                if (cond.id == "membership") record_q(r, cond, mb, b->name);
                r.conditions.push_back(cond);
            }
        }
    }
    r.finalize();
    if (r.verdict == Verdict::valid) r.conclusion = "K is " + std::to_string(c.n) + "-parabolic, hence " + std::to_string(c.n) + "-trivial";
    return r;
}

namespace {

// x^l with x the given generator (l may be 0).
bool is_power_of(const Word& w, int gen) {
    return std::all_of(w.begin(), w.end(), [&](const Letter& l) { return l.gen == gen && l.sign == w[0].sign; });
}

}  // namespace

CertificateReport certify_unknotted(const Certificate& c) {
    require_n_above_one(c);
    const auto as = c.curves_with_role('A'), bs = c.curves_with_role('B');
    if (static_cast<int>(as.size()) != c.genus || static_cast<int>(bs.size()) != c.genus)
        throw MalformedCertificate("curves: need g A curves and g B curves");
    const auto pairs = c.resolved_pairs();
    if (pairs.size() != as.size()) throw MalformedCertificate("pairs: every A curve needs a B partner");
    CertificateReport r;
    r.kind = CertificateKind::unknotted;
    r.n = c.n;
    require_flag(c, kFlagRegularSpine, r);
    r.notes.push_back("condition (a) is checked as q_mu = n+1, literally");
    const Context ca = Context::closure(duals_of(as)), cb = Context::closure(duals_of(bs));
    const auto s = c.simplicity();
    bool needs_s = false;
    std::set<int> killed;

    for (const auto& [a, b] : pairs) {
        const WordExpr one = WordExpr::leaf(Word{});
        auto factor = [&](const Curve* cv, const std::string& key) {
            auto it = cv->factors.find(key);
            return it == cv->factors.end() ? one : it->second;
        };
        const WordExpr xl = factor(a, "x_power"), chi_a = factor(a, "chi"), mu = factor(a, "mu");
        const WordExpr zeta = factor(b, "zeta"), chi_b = factor(b, "chi");
        const Word wx = evaluate(xl), wca = evaluate(chi_a), wmu = evaluate(mu), wz = evaluate(zeta), wcb = evaluate(chi_b);
        const char eps = a->epsilon;
        const std::string pair = a->name + "," + b->name;

        // (0) the factorizations
        const auto& pa = a->pushoff(eps);
        const auto& pb = b->pushoff(opposite(eps));
        if (!pa || !pb) throw MalformedCertificate("pair " + pair + ": pushoffs for the chosen epsilon missing");
        r.conditions.push_back(arithmetic_condition("factorization", sign_name(*a, eps), wx * wca * wmu == evaluate(*pa),
                                                    "x^l chi mu against the pushoff"));
        r.conditions.push_back(arithmetic_condition("factorization", sign_name(*b, opposite(eps)), wz * wcb == evaluate(*pb),
                                                    "zeta chi against the pushoff"));
        r.conditions.push_back(arithmetic_condition("x-power", a->name, is_power_of(wx, a->dual),
                                                    "x^l must be a power of g" + std::to_string(a->dual)));
        r.conditions.push_back(arithmetic_condition("zeta-closure", b->name, kill_generators(wz, cb.generators).empty(),
                                                    "zeta must lie in " + context_name(cb)));

        // (a)
        if (!wmu.empty()) {
            const int mi = depth_of(a->m, a->name + ".m");
            auto cond = membership_condition(a->name + ".mu", mu, Context::quotient(killed), mi + 1);
            const auto q = q_or_reason(cond, mi);
            r.conditions.push_back(cond);
            record_q(r, cond, mi, a->name + ".mu");
            if (std::holds_alternative<long>(q))
                r.conditions.push_back(arithmetic_condition("q-mu", a->name, std::get<long>(q) == c.n + 1,
                                                            "q_mu = " + std::to_string(std::get<long>(q)) + ", needs n+1 = " +
                                                                std::to_string(c.n + 1)));
            else if (std::get<std::string>(q) == "k undetermined")
                r.conditions.push_back(undetermined_condition("q-mu", a->name, "k undetermined"));
        }

        // (b)
        if (!wca.empty() && !wcb.empty()) {
            const int mA = depth_of(a->m_chi, a->name + ".m_chi"), mB = depth_of(b->m_chi, b->name + ".m_chi");
            auto ca_cond = membership_condition(a->name + ".chi", chi_a, ca, mA + 1);
            auto cb_cond = membership_condition(b->name + ".chi", chi_b, cb, mB + 1);
            const auto qa = q_or_reason(ca_cond, mA), qb = q_or_reason(cb_cond, mB);
            r.conditions.push_back(ca_cond);
            r.conditions.push_back(cb_cond);
            record_q(r, ca_cond, mA, a->name + ".chi");
            record_q(r, cb_cond, mB, b->name + ".chi");
            if (std::holds_alternative<long>(qa) && std::holds_alternative<long>(qb)) {
                const long sum = std::get<long>(qa) + std::get<long>(qb);
                r.conditions.push_back(arithmetic_condition("q-chi", pair, sum == c.n + 1,
                                                            "q_chi sum " + std::to_string(sum) + ", needs n+1 = " +
                                                                std::to_string(c.n + 1)));
            } else if (aggregate({ca_cond, cb_cond}) == Status::pass) {
                r.conditions.push_back(undetermined_condition("q-chi", pair, "k undetermined"));
            }
        }

        // (c) exactly as written
        const bool chi_both = !wca.empty() && !wcb.empty();
        const bool chi_none = wca.empty() && wcb.empty();
        const bool zx_none = wz.empty() && wx.empty();
        const bool zx_both = !wx.empty() && !wz.empty();
        const bool all_three_trivial = wz.empty() && wmu.empty() && wx.empty();
        r.conditions.push_back(arithmetic_condition("exclusion", pair, (chi_none || chi_both) && (zx_none || zx_both) && (chi_both == all_three_trivial),
                                                    "chi both trivial or both not; zeta and x^l likewise; "
                                                    "essential pair iff zeta = mu = x^l = 1"));

        // (d)
        if (!wz.empty()) {
            needs_s = true;
            const int mz = depth_of(b->m_zeta, b->name + ".m_zeta");
            auto cond = membership_condition(b->name + ".zeta", zeta, cb, mz + 1);
            const auto q = q_or_reason(cond, mz);
            r.conditions.push_back(cond);
            record_q(r, cond, mz, b->name + ".zeta");
            if (!s)
                r.conditions.push_back(undetermined_condition("q-zeta", b->name, "simplicity not asserted"));
            else if (std::holds_alternative<long>(q))
                r.conditions.push_back(arithmetic_condition("q-zeta", b->name, std::get<long>(q) + *s == c.n + 1,
                                                            "q_zeta + s = " + std::to_string(std::get<long>(q) + *s) +
                                                                ", needs n+1 = " + std::to_string(c.n + 1)));
            else if (std::get<std::string>(q) == "k undetermined")
                r.conditions.push_back(undetermined_condition("q-zeta", b->name, "k undetermined"));
        }
        killed.insert(a->dual);
        killed.insert(b->dual);
    }
    if (needs_s) {
        if (s)
            r.asserted.push_back("simplicity=" + std::to_string(*s));
        else
            r.missing_flags.push_back("simplicity=s");
    }
    r.finalize();
    if (r.verdict == Verdict::valid) r.conclusion = "K is " + std::to_string(c.n) + "-unknotted, hence " + std::to_string(c.n) + "-trivial";
    return r;
}

CertificateReport certify(const Certificate& c) {
    switch (c.kind) {
        case CertificateKind::hyperbolic: return certify_hyperbolic(c);
        case CertificateKind::elliptic: return certify_elliptic(c);
        case CertificateKind::parabolic: return certify_parabolic(c);
        case CertificateKind::unknotted: return certify_unknotted(c);
        case CertificateKind::spine: break;
    }
    throw MalformedCertificate("spine certificates are checked by the spine-link pipeline");
}

// --------------------------------------------------------------- translations

std::string to_string(Translation t) {
    switch (t) {
        case Translation::elliptic_to_hyperbolic: return "elliptic-to-hyperbolic";
        case Translation::parabolic_to_hyperbolic: return "parabolic-to-hyperbolic";
        case Translation::unknotted_shift: return "unknotted-shift";
        case Translation::identity: return "identity";
    }
    return "identity";
}

namespace {

// k recorded for a factor while verifying the source.
std::optional<long> source_k(const CertificateReport& r, const std::string& subject) {
    for (const auto& cond : r.conditions)
        if (cond.id == "membership" && cond.subject == subject && cond.membership && cond.membership->k)
            return cond.membership->k;
    return std::nullopt;
}

// Largest m' <= m with q_param(m', k) == target.
std::optional<int> lower_depth(int m, long k, long target) {
    for (int mm = m; mm >= 0; --mm)
        if (q_param(mm, k) == target) return mm;
    return std::nullopt;
}

}  // namespace

TranslationResult lemma61_translate(const Certificate& c, Translation t) {
    TranslationResult out;
    out.source = certify(c);
    if (out.source.verdict != Verdict::valid)
        throw TranslationError("source certificate is " + to_string(out.source.verdict) + ", not valid");
    Certificate target = c;
    switch (t) {
        case Translation::identity: break;
        case Translation::elliptic_to_hyperbolic: {
            if (c.kind != CertificateKind::elliptic) throw TranslationError("source must be an elliptic certificate");
            if (c.n % 2 != 0) throw TranslationError("source index must be even (2n-elliptic)");
            const long n = c.n / 2;
            target.kind = CertificateKind::hyperbolic;
            target.n = n;
            target.curves.clear();
            target.pairs.clear();
            std::vector<Curve> chosen, others;
            for (const auto& [a, b] : c.resolved_pairs()) {
                // q_A + q_B = 2n+1 puts one side at q >= n+1, which forces degree >= n+1
                const long qa = out.source.q_values.contains(a->name) ? out.source.q_values.at(a->name) : -1;
                const long qb = out.source.q_values.contains(b->name) ? out.source.q_values.at(b->name) : -1;
                Curve first = qa >= qb ? *a : *b, second = qa >= qb ? *b : *a;
                first.role = 'A';
                second.role = 'B';
                target.pairs.emplace_back(first.name, second.name);
                chosen.push_back(std::move(first));
                others.push_back(std::move(second));
            }
            target.curves = chosen;
            target.curves.insert(target.curves.end(), others.begin(), others.end());
            target.flags.erase(kFlagUnrelated);
            break;
        }
        case Translation::parabolic_to_hyperbolic: {
            if (c.kind != CertificateKind::parabolic) throw TranslationError("source must be a parabolic certificate");
            const auto s = c.simplicity();
            if (!s) throw TranslationError("source has no simplicity");
            if (!(c.n > *s + 1)) throw TranslationError("guard n > s+1 fails (n = " + std::to_string(c.n) + ", s = " + std::to_string(*s) + ")");
            target.kind = CertificateKind::hyperbolic;
            target.n = c.n - *s - 1;
            target.pairs.clear();
            for (auto& cv : target.curves) cv.role = cv.role == 'A' ? 'B' : 'A';
            std::stable_partition(target.curves.begin(), target.curves.end(), [](const Curve& cv) { return cv.role == 'A'; });
            for (const auto& [a, b] : c.resolved_pairs()) target.pairs.emplace_back(b->name, a->name);
            target.flags.erase(kFlagUnrelated);
            for (auto it = target.flags.begin(); it != target.flags.end();)
                it = it->starts_with("simplicity=") ? target.flags.erase(it) : std::next(it);
            break;
        }
        case Translation::unknotted_shift: {
            if (c.kind != CertificateKind::unknotted) throw TranslationError("source must be an unknotted certificate");
            const auto s = c.simplicity();
            if (!s) throw TranslationError("source has no simplicity");
            if (!(c.n > *s + 1)) throw TranslationError("guard 2n > s+1 fails (2n = " + std::to_string(c.n) + ", s = " + std::to_string(*s) + ")");
            const long n = c.n - *s - 1;
            if (n <= 1) throw TranslationError("shifted index " + std::to_string(n) + " is not > 1");
            target.n = n;
            for (const auto& [a0, b0] : c.resolved_pairs()) {
                Curve* a = nullptr;
                Curve* b = nullptr;
                for (auto& cv : target.curves) {
                    if (cv.name == a0->name) a = &cv;
                    if (cv.name == b0->name) b = &cv;
                }
                auto nontrivial = [](const Curve* cv, const std::string& key) {
                    auto it = cv->factors.find(key);
                    return it != cv->factors.end() && !evaluate(it->second).empty();
                };
                if (nontrivial(a, "mu")) {
                    const auto k = source_k(out.source, a->name + ".mu");
                    const auto mm = k ? lower_depth(*a->m, *k, n + 1) : std::nullopt;
                    if (!mm) throw TranslationError(a->name + ": no depth realizes q_mu = " + std::to_string(n + 1));
                    a->m = *mm;
                }
                if (nontrivial(a, "chi") && nontrivial(b, "chi")) {
                    const auto ka = source_k(out.source, a->name + ".chi"), kb = source_k(out.source, b->name + ".chi");
                    bool found = false;
                    for (int ma = *a->m_chi; ma >= 0 && !found && ka && kb; --ma)
                        for (int mb = *b->m_chi; mb >= 0 && !found; --mb)
                            if (q_param(ma, *ka) + q_param(mb, *kb) == n + 1) {
                                a->m_chi = ma;
                                b->m_chi = mb;
                                found = true;
                            }
                    if (!found) throw TranslationError(a->name + "," + b->name + ": no depths realize q_chi sum " + std::to_string(n + 1));
                }
                if (nontrivial(b, "zeta")) {
                    const auto k = source_k(out.source, b->name + ".zeta");
                    const auto mm = k ? lower_depth(*b->m_zeta, *k, n + 1 - *s) : std::nullopt;
                    if (!mm) throw TranslationError(b->name + ": no depth realizes q_zeta = " + std::to_string(n + 1 - *s));
                    b->m_zeta = *mm;
                }
            }
            break;
        }
    }
    out.target = target;
    out.target_report = certify(target);
    return out;
}

// ------------------------------------------------------------------ spine link

SpineReport spine_link_pipeline(const Certificate& c) {
    if (c.genus < 1) throw MalformedCertificate("genus: the spine link needs g >= 1");
    if (c.n < 1) throw MalformedCertificate("n: needs n >= 1");
    if (!c.signs) throw MalformedCertificate("signs: missing");
    SpineReport r;
    r.n = c.n;
    r.signs = *c.signs;
    r.slice_depth = c.slice_depth;
    if (!c.has_flag(kFlagAdmissible)) r.missing_flags.push_back(kFlagAdmissible);

    const int comps = 2 * c.genus;
    std::vector<Word> longitudes(static_cast<std::size_t>(comps));
    for (int j = 1; j <= comps; ++j) {
        const Curve* cv = nullptr;
        for (const auto& x : c.curves)
            if (x.dual == j) cv = &x;
        if (!cv) throw MalformedCertificate("curves: no curve is dual to g" + std::to_string(j));
        const char sign = (*c.signs)[static_cast<std::size_t>(j - 1)];
        if (!cv->pushoff(sign)) throw MalformedCertificate("curve " + cv->name + ": pushoff " + std::string(1, sign) + " missing");
        longitudes[static_cast<std::size_t>(j - 1)] = evaluate(*cv->pushoff(sign));
        r.longitudes.push_back(format_word(longitudes[static_cast<std::size_t>(j - 1)]));
    }
    const LongitudeSystem L(comps, longitudes);
    try {
        r.milnor_vanish = milnor_vanish_upto(L, static_cast<int>(c.n));
        r.lcs_vanish = longitudes_in_lcs_term(L, static_cast<int>(c.n));
    } catch (const ExpansionBudgetExceeded&) {
        r.verdict = Verdict::not_checkable;
        r.notes.push_back("Magnus expansion exceeds the coefficient budget");
        return r;
    }
    if (r.milnor_vanish != r.lcs_vanish) throw std::logic_error("Milnor vanishing routes disagree");
    if (!r.milnor_vanish) {
        // lowest-length nonvanishing invariant, lexicographically first
        for (int len = 2; len <= c.n + 1 && !r.first_nonvanishing; ++len)
            for (int comp = 1; comp <= comps && !r.first_nonvanishing; ++comp) {
                const auto p = expand(L.longitude(comp), len - 1);
                for (const auto& [mono, coeff] : p.terms())
                    if (static_cast<int>(mono.size()) == len - 1 && coeff != 0) {
                        std::vector<int> idx(mono.begin(), mono.end());
                        idx.push_back(comp);
                        r.first_nonvanishing = idx;
                        break;
                    }
            }
        r.verdict = Verdict::invalid;
        r.conclusion = "Milnor invariants of length <= n+1 do not all vanish";
        return r;
    }

    // k_i from the A-curve pushoffs at the chosen signs
    CertificateReport scratch;
    std::vector<long> qs, slice_qs;
    std::set<int> killed;
    bool k_missing = false;
    for (const Curve* a : c.curves_with_role('A')) {
        const char sign = (*c.signs)[static_cast<std::size_t>(a->dual - 1)];
        const auto cond = membership_condition(sign_name(*a, sign), *a->pushoff(sign), Context::quotient(killed), static_cast<int>(c.n + 1));
        if (cond.status == Status::pass && !cond.membership->trivial) {
            if (cond.membership->k) {
                const long q = q_param(c.n, *cond.membership->k);
                r.q_values[a->name] = q;
                qs.push_back(q);
                if (c.slice_depth && *c.slice_depth >= 1) slice_qs.push_back(q_param(2 * *c.slice_depth - 1, *cond.membership->k));
            } else {
                k_missing = true;
            }
        } else if (cond.status != Status::pass) {
            k_missing = true;
        }
        killed.insert(a->dual);
        killed.insert(partner_dual(c, *a));
    }
    if (k_missing) {
        r.verdict = Verdict::not_checkable;
        r.notes.push_back("k undetermined for some A curve");
        return r;
    }
    if (qs.empty()) {
        r.l_unbounded = true;
    } else {
        r.l_n_S = l_n_S(qs);
    }
    if (!slice_qs.empty()) r.l_slice = l_n_S(slice_qs);
    if (c.slice_depth && *c.slice_depth < 1) r.notes.push_back("slice depth must be >= 1 for the l(2d-1) bound");
    r.verdict = r.missing_flags.empty() ? Verdict::valid : Verdict::not_checkable;
    if (r.l_unbounded)
        r.conclusion = "Milnor invariants of length <= n+1 vanish; every A pushoff is trivial";
    else
        r.conclusion = "Milnor invariants of length <= n+1 vanish; " + conclusion_for(*r.l_n_S);
    if (r.l_slice) r.notes.push_back("n-slice depth " + std::to_string(*c.slice_depth) + ": invariants of order <= " + std::to_string(*r.l_slice) + " vanish");
    return r;
}

// ---------------------------------------------------------------- JSON output

json membership_to_json(const Membership& m) {
    json j{{"status", to_string(m.status)}, {"required", m.required}, {"witness_bound", m.witness_bound},
           {"method", m.method}, {"trivial", m.trivial}};
    j["degree"] = m.degree ? json(*m.degree) : json(nullptr);
    j["k"] = m.k ? json(*m.k) : json(nullptr);
    if (!m.k_source.empty()) j["k_source"] = m.k_source;
    if (!m.detail.empty()) j["detail"] = m.detail;
    return j;
}

json report_to_json(const CertificateReport& r) {
    json j{{"schema", 1}, {"kind", to_string(r.kind)}, {"n", r.n}, {"verdict", to_string(r.verdict)}};
    json conds = json::array();
    for (const auto& c : r.conditions) {
        json cj{{"id", c.id}, {"subject", c.subject}, {"status", to_string(c.status)}, {"detail", c.detail}};
        if (c.membership) cj["membership"] = membership_to_json(*c.membership);
        conds.push_back(cj);
    }
    j["conditions"] = conds;
    j["asserted"] = r.asserted;
    j["missing_flags"] = r.missing_flags;
    j["q_values"] = r.q_values;
    j["l_n_S"] = r.l_n_S ? json(*r.l_n_S) : json(nullptr);
    j["l_unbounded"] = r.l_unbounded;
    j["notes"] = r.notes;
    j["conclusion"] = r.conclusion;
    return j;
}

json spine_report_to_json(const SpineReport& r) {
    json j{{"schema", 1}, {"kind", "spine-link"}, {"n", r.n}, {"verdict", to_string(r.verdict)}, {"signs", r.signs}};
    j["longitudes"] = r.longitudes;
    j["milnor_vanish"] = r.milnor_vanish;
    j["lcs_vanish"] = r.lcs_vanish;
    j["first_nonvanishing"] = r.first_nonvanishing ? json(*r.first_nonvanishing) : json(nullptr);
    j["q_values"] = r.q_values;
    j["l_n_S"] = r.l_n_S ? json(*r.l_n_S) : json(nullptr);
    j["l_unbounded"] = r.l_unbounded;
    j["slice_depth"] = r.slice_depth ? json(*r.slice_depth) : json(nullptr);
    j["l_slice"] = r.l_slice ? json(*r.l_slice) : json(nullptr);
    j["missing_flags"] = r.missing_flags;
    j["notes"] = r.notes;
    j["conclusion"] = r.conclusion;
    return j;
}

}  // namespace ntriv
