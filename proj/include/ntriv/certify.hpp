#pragma once

// Checkers for surface certificates: n-hyperbolic, n-elliptic, n-parabolic and
// n-unknotted pushoff data, the index-shifting translations between them, and
// the spine-link Milnor pipeline.
//
// Generator convention for genus g: x_i = g(2i-1), y_i = g(2i). By default the
// i-th A curve is dual to x_i and the i-th B curve to y_i; 𝒜_k = {x_1..y_k}.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ntriv/word.hpp"

namespace ntriv {

/// A word, or a left-normed commutator / product / inverse of sub-expressions.
/// Nested expressions let a certificate carry its own factorization.
struct WordExpr {
    enum class Kind { word, commutator, product, inverse };
    Kind kind = Kind::word;
    Word word;
    std::vector<WordExpr> children;

    static WordExpr leaf(Word w);
    static WordExpr commutator(std::vector<WordExpr> entries);
    static WordExpr product(std::vector<WordExpr> factors);
    static WordExpr inverse(WordExpr e);
};

Word evaluate(const WordExpr& e);
int max_generator(const WordExpr& e);
/// Text word, or {"commutator": [...]}, {"product": [...]}, {"inverse": e}.
WordExpr parse_expr(const nlohmann::json& j);
nlohmann::json expr_to_json(const WordExpr& e);

/// The free group a membership is measured in: a quotient F / <<K>> or a
/// normal closure <<S>> (free on its Schreier letters).
struct Context {
    enum class Kind { quotient, normal_closure };
    Kind kind = Kind::quotient;
    std::set<int> generators;  // killed set K, or closure set S

    static Context quotient(std::set<int> killed) { return {Kind::quotient, std::move(killed)}; }
    static Context closure(std::set<int> s) { return {Kind::normal_closure, std::move(s)}; }
};

enum class Status { pass, fail, undetermined };
std::string to_string(Status s);

struct Membership {
    Status status = Status::undetermined;
    int required = 0;
    /// Degree of the image, computed up to `required` (required + 1 = "deeper").
    std::optional<int> degree;
    int witness_bound = 0;      // lower bound from the expression structure
    std::string method;         // "witness" or "magnus"
    bool trivial = false;       // image is the identity
    std::optional<long> k;      // min distinct letters over factor blocks
    std::string k_source;       // "witness" or "decomposition"
    std::string detail;
};

/// Membership of e in the `required`-th lower-central term of the context group.
/// Tries the witness bound first, then exact Magnus expansion; an expansion
/// over budget yields Status::undetermined. With want_k, also derives k.
Membership assess_membership(const WordExpr& e, const Context& ctx, int required, bool want_k);

enum class CertificateKind { hyperbolic, elliptic, parabolic, unknotted, spine };
std::string to_string(CertificateKind k);
CertificateKind parse_kind(const std::string& s);

struct Curve {
    std::string name;
    char role = 'A';  // 'A' or 'B'
    int dual = 0;     // dual generator
    std::optional<WordExpr> pushoff_plus, pushoff_minus;
    std::optional<int> m;       // claimed depth: m_A / m_B / m (parabolic) / m_i (unknotted mu)
    std::optional<int> m_chi;   // unknotted chi depth
    std::optional<int> m_zeta;  // unknotted zeta depth
    char epsilon = '+';         // unknotted: sign of the A pushoff
    std::map<std::string, WordExpr> factors;  // x_power, chi, mu (A); zeta, chi (B)

    const std::optional<WordExpr>& pushoff(char sign) const { return sign == '+' ? pushoff_plus : pushoff_minus; }
};

struct Certificate {
    CertificateKind kind = CertificateKind::hyperbolic;
    int genus = 0;
    long n = 0;
    std::vector<Curve> curves;
    std::vector<std::pair<std::string, std::string>> pairs;  // (A name, B name)
    std::set<std::string> flags;
    std::optional<std::string> signs;  // spine: one sign per dual generator
    std::optional<long> slice_depth;

    std::vector<const Curve*> curves_with_role(char role) const;
    const Curve* find(const std::string& name) const;
    bool has_flag(const std::string& f) const { return flags.contains(f); }
    std::optional<long> simplicity() const;
    /// Explicit pairs, else the i-th A curve with the i-th B curve.
    std::vector<std::pair<const Curve*, const Curve*>> resolved_pairs() const;
};

struct MalformedCertificate : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Certificate parse_certificate(const nlohmann::json& j);
nlohmann::json certificate_to_json(const Certificate& c);

inline const std::string kFlagRegularSpine = "regular-spine";
inline const std::string kFlagUnrelated = "geometrically-unrelated";
inline const std::string kFlagAdmissible = "admissible-spine";

enum class Verdict { valid, invalid, not_checkable };
std::string to_string(Verdict v);
int exit_code(Verdict v);

struct ConditionResult {
    std::string id;
    std::string subject;
    Status status = Status::pass;
    std::string detail;
    std::optional<Membership> membership;
    std::optional<long> q;
};

struct CertificateReport {
    CertificateKind kind = CertificateKind::hyperbolic;
    long n = 0;
    Verdict verdict = Verdict::valid;
    std::vector<ConditionResult> conditions;
    std::vector<std::string> asserted;       // geometric flags relied on
    std::vector<std::string> missing_flags;
    std::map<std::string, long> q_values;    // curve/factor name -> q
    std::optional<long> l_n_S;
    bool l_unbounded = false;                // every q-value absent (trivial images)
    std::vector<std::string> notes;
    std::string conclusion;

    void finalize();
};

CertificateReport certify_hyperbolic(const Certificate& c);
CertificateReport certify_elliptic(const Certificate& c);
CertificateReport certify_parabolic(const Certificate& c);
CertificateReport certify_unknotted(const Certificate& c);
/// Dispatches on c.kind (spine certificates go through spine_link_pipeline).
CertificateReport certify(const Certificate& c);

struct TranslationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Translation { elliptic_to_hyperbolic, parabolic_to_hyperbolic, unknotted_shift, identity };
std::string to_string(Translation t);

struct TranslationResult {
    CertificateReport source;
    Certificate target;
    CertificateReport target_report;
};

/// Verifies the source, emits the shifted certificate and re-verifies it.
/// Throws TranslationError when the source is not valid or a guard fails.
TranslationResult lemma61_translate(const Certificate& c, Translation t);

struct SpineReport {
    Verdict verdict = Verdict::valid;
    long n = 0;
    std::string signs;
    std::vector<std::string> longitudes;       // formatted, by component
    bool milnor_vanish = false;                // all mu of length <= n+1 vanish
    bool lcs_vanish = false;                   // every longitude in F^(n+1)
    std::optional<std::vector<int>> first_nonvanishing;  // multi-index
    std::map<std::string, long> q_values;
    std::optional<long> l_n_S;
    bool l_unbounded = false;
    std::optional<long> slice_depth;
    std::optional<long> l_slice;               // l(2d-1, S)
    std::vector<std::string> missing_flags;
    std::vector<std::string> notes;
    std::string conclusion;
};

SpineReport spine_link_pipeline(const Certificate& c);

nlohmann::json report_to_json(const CertificateReport& r);
nlohmann::json membership_to_json(const Membership& m);
nlohmann::json spine_report_to_json(const SpineReport& r);

}  // namespace ntriv
