// ntriv: command-line front end for the free-group, Magnus, Seifert and
// certificate machinery. Every subcommand builds one JSON report (schema 1);
// the human format is printed from the same report.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ntriv/bounds.hpp"
#include "ntriv/certify.hpp"
#include "ntriv/lie.hpp"
#include "ntriv/magnus.hpp"
#include "ntriv/schreier.hpp"
#include "ntriv/seifert.hpp"
#include "ntriv/trivializer.hpp"

using namespace ntriv;
using nlohmann::json;

namespace {

constexpr int kExitValid = 0, kExitInvalid = 1, kExitMalformed = 2, kExitUndetermined = 3;

// Input error already carrying its own location text.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string name;
    std::string text;
};

Source read_source(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return {"<stdin>", ss.str()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open");
    return {path, std::string(std::istreambuf_iterator<char>(in), {})};
}

// One item per non-empty line; '#' starts a comment. Keeps line numbers.
std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    std::string line;
    for (int no = 1; std::getline(in, line); ++no) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.emplace_back(no, line);
    }
    return out;
}

std::string located(const std::string& source, const ParseError& e) {
    return source + ": " + e.what();  // what() carries line and column
}

// Inline --word texts, else one word per line of the input.
std::vector<std::vector<Letter>> read_letter_lines(const std::vector<std::string>& inline_words, const std::string& path) {
    std::vector<std::vector<Letter>> out;
    if (!inline_words.empty()) {
        for (const auto& w : inline_words) {
            try {
                out.push_back(parse_letters(w));
            } catch (const ParseError& e) {
                throw InputError(located("--word", e));
            }
        }
        return out;
    }
    const Source src = read_source(path);
    for (const auto& [no, line] : content_lines(src.text)) {
        try {
            out.push_back(parse_letters(line, no));
        } catch (const ParseError& e) {
            throw InputError(located(src.name, e));
        }
    }
    return out;
}

std::vector<Word> read_words(const std::vector<std::string>& inline_words, const std::string& path) {
    std::vector<Word> out;
    for (auto& ls : read_letter_lines(inline_words, path)) out.emplace_back(ls);
    return out;
}

json read_json(const std::string& path) {
    const Source src = read_source(path);
    try {
        return json::parse(src.text);
    } catch (const json::parse_error& e) {
        // byte offset -> line/column
        int line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < src.text.size(); ++i) {
            if (src.text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(src.name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
}

IntMatrix read_matrix(const std::string& path) {
    const Source src = read_source(path);
    try {
        return parse_matrix(src.text);
    } catch (const ParseError& e) {
        throw InputError(located(src.name, e));
    }
}

json poly_to_json(const NCPolynomial& p) {
    json terms = json::array();
    for (const auto& [mono, c] : p.terms()) terms.push_back({{"monomial", mono}, {"coefficient", c}});
    return terms;
}

json bigint_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

json laurent_to_json(const LaurentPolynomial& p) {
    json coeffs = json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(bigint_json(c));
    return {{"min_exponent", p.min_exponent()}, {"coefficients", coeffs}, {"text", format_laurent(p)}};
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json entries_to_json(const EntrySequence& e) { return format_letters(e.entries()); }

json combination_to_json(const CommutatorCombination& c) {
    json factors = json::array();
    for (const auto& f : c.factors) factors.push_back({{"entries", entries_to_json(f.entries)}, {"exponent", f.exponent}});
    return {{"factors", factors}, {"residual", format_word(c.residual)}, {"valid_mod_degree", c.valid_mod_degree}};
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw InputError(what + ": expected comma-separated integers, found '" + item + "'");
        }
    }
    return out;
}

std::set<int> parse_gen_set(const std::string& text, const std::string& what) {
    std::set<int> s;
    for (int g : parse_int_list(text, what)) {
        if (g < 1) throw InputError(what + ": generator indices start at 1");
        s.insert(g);
    }
    return s;
}

// ------------------------------------------------------------------ printing

void print_human(const json& j, std::ostream& out, const std::string& indent = "") {
    for (const auto& [key, val] : j.items()) {
        if (key == "schema") continue;
        if (val.is_object()) {
            out << indent << key << ":\n";
            print_human(val, out, indent + "  ");
        } else if (val.is_array() && !val.empty() && val.front().is_object()) {
            out << indent << key << ":\n";
            for (const auto& item : val) {
                std::string line;
                for (const auto& [k, v] : item.items()) {
                    if (v.is_object()) continue;
                    line += (line.empty() ? "" : "  ") + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
                }
                out << indent << "  - " << line << "\n";
            }
        } else {
            out << indent << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
        }
    }
}

struct Run {
    std::string format = "json";
    json report;
    int exit_code = kExitValid;
};

void emit(const Run& r) {
    json j = r.report;
    j["schema"] = 1;
    if (r.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        print_human(j, std::cout);
}

json certificate_report_json(const CertificateReport& r) {
    json j = report_to_json(r);
    j["verified"] = json::array();
    for (const auto& c : r.conditions)
        if (c.status == Status::pass) j["verified"].push_back(c.id + ":" + c.subject);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ntriv: free-group commutator calculus, Magnus expansion, Seifert invariants and n-triviality certificates"};
    app.require_subcommand(1);
    Run run;
    app.add_option("--format", run.format, "Output format")->check(CLI::IsMember({"human", "json"}))->capture_default_str();

    std::vector<std::string> words;
    std::string input;
    int D = 4;
    auto add_word_input = [&](CLI::App* c) {
        c->add_option("--word,-w", words, "Inline word (repeatable); default reads one word per line");
        c->add_option("input", input, "Input file, '-' for standard input")->default_str("-");
    };
    auto add_degree = [&](CLI::App* c) { c->add_option("-D,--degree", D, "Truncation degree")->check(CLI::PositiveNumber)->capture_default_str(); };

    std::function<void()> action;

    // word
    auto* word_cmd = app.add_subcommand("word", "Free-group word operations")->require_subcommand(1);
    auto* w_reduce = word_cmd->add_subcommand("reduce", "Freely reduce words");
    add_word_input(w_reduce);
    w_reduce->callback([&] {
        action = [&] {
            json out = json::array();
            for (const auto& w : read_words(words, input)) out.push_back(format_word(w));
            run.report = {{"command", "word reduce"}, {"words", out}};
        };
    });
    auto* w_comm = word_cmd->add_subcommand("commutator", "Left-normed commutator of the given entries");
    add_word_input(w_comm);
    w_comm->callback([&] {
        action = [&] {
            const auto ws = read_words(words, input);
            if (ws.size() < 2) throw InputError("commutator needs at least two entries");
            Word acc = ws.front();
            for (std::size_t i = 1; i < ws.size(); ++i) acc = commutator(acc, ws[i]);
            run.report = {{"command", "word commutator"}, {"word", format_word(acc)}, {"length", acc.size()}};
        };
    });
    std::string kill_gens;
    auto* w_kill = word_cmd->add_subcommand("kill", "Delete the given generators and reduce");
    add_word_input(w_kill);
    w_kill->add_option("--gens,-g", kill_gens, "Comma-separated generator indices")->required();
    w_kill->callback([&] {
        action = [&] {
            const auto killed = parse_gen_set(kill_gens, "--gens");
            json out = json::array();
            for (const auto& w : read_words(words, input)) out.push_back(format_word(kill_generators(w, killed)));
            run.report = {{"command", "word kill"}, {"killed", killed}, {"words", out}};
        };
    });

    // magnus
    auto* magnus_cmd = app.add_subcommand("magnus", "Magnus expansion")->require_subcommand(1);
    auto* m_expand = magnus_cmd->add_subcommand("expand", "Truncated Magnus expansion");
    add_word_input(m_expand);
    add_degree(m_expand);
    m_expand->callback([&] {
        action = [&] {
            json out = json::array();
            for (const auto& w : read_words(words, input))
                out.push_back({{"word", format_word(w)}, {"terms", poly_to_json(expand(w, D))}});
            run.report = {{"command", "magnus expand"}, {"degree", D}, {"expansions", out}};
        };
    });
    auto* m_degree = magnus_cmd->add_subcommand("degree", "Lower central series degree (D+1 means deeper than D)");
    add_word_input(m_degree);
    add_degree(m_degree);
    m_degree->callback([&] {
        action = [&] {
            json out = json::array();
            for (const auto& w : read_words(words, input)) {
                const int d = lcs_degree(w, D);
                out.push_back({{"word", format_word(w)}, {"degree", d}, {"exceeds", d > D}});
            }
            run.report = {{"command", "magnus degree"}, {"truncation", D}, {"results", out}};
        };
    });
    std::string fox_index;
    auto* m_fox = magnus_cmd->add_subcommand("fox", "Magnus coefficient by iterated Fox derivative");
    add_word_input(m_fox);
    m_fox->add_option("--index,-i", fox_index, "Comma-separated multi-index")->required();
    m_fox->callback([&] {
        action = [&] {
            const auto idx = parse_int_list(fox_index, "--index");
            json out = json::array();
            for (const auto& w : read_words(words, input))
                out.push_back({{"word", format_word(w)}, {"coefficient", fox_coefficient(w, Monomial(idx.begin(), idx.end()))}});
            run.report = {{"command", "magnus fox"}, {"index", idx}, {"results", out}};
        };
    });

    // decompose
    int dec_m = 1;
    auto* dec_cmd = app.add_subcommand("decompose", "Write w in F^(m+1) as simple commutators modulo F^(D+1)");
    add_word_input(dec_cmd);
    add_degree(dec_cmd);
    dec_cmd->add_option("-m", dec_m, "w lies in F^(m+1)")->check(CLI::NonNegativeNumber)->capture_default_str();
    dec_cmd->callback([&] {
        action = [&] {
            json out = json::array();
            for (const auto& w : read_words(words, input)) out.push_back(combination_to_json(decompose(w, dec_m, D)));
            run.report = {{"command", "decompose"}, {"m", dec_m}, {"degree", D}, {"combinations", out}};
        };
    });

    // schreier
    std::string subset;
    auto* schreier_cmd = app.add_subcommand("schreier", "Normal-closure rewriting")->require_subcommand(1);
    auto* s_degree = schreier_cmd->add_subcommand("degree", "Lower central degree inside <<S>>");
    add_word_input(s_degree);
    add_degree(s_degree);
    s_degree->add_option("--subset,-S", subset, "Comma-separated generator subset")->required();
    s_degree->callback([&] {
        action = [&] {
            const auto S = parse_gen_set(subset, "--subset");
            json out = json::array();
            for (const auto& w : read_words(words, input)) {
                const auto rw = schreier_rewrite(w, S);
                json letters = json::array();
                for (const auto& l : rw.alphabet) letters.push_back({{"conjugator", format_word(l.conjugator)}, {"base", l.base}});
                const int d = lcs_degree(rw.word, D);
                out.push_back({{"word", format_word(w)}, {"letters", letters}, {"rewrite", format_word(rw.word)}, {"degree", d}, {"exceeds", d > D}});
            }
            run.report = {{"command", "schreier degree"}, {"subset", S}, {"truncation", D}, {"results", out}};
        };
    });

    // trivialize
    auto* triv_cmd = app.add_subcommand("trivialize", "Letter-set trivializers")->require_subcommand(1);
    std::vector<std::string> insertions;
    std::vector<int> extremal;
    auto* t_build = triv_cmd->add_subcommand("build", "Build and verify letter sets for a product of simple commutators");
    add_word_input(t_build);
    t_build->add_option("--insert", insertions, "Canceling pair POS:LETTER (repeatable), e.g. 3:g2");
    t_build->add_option("--extremal", extremal, "Use the extremal entry word for K M instead of input")->expected(2);
    t_build->callback([&] {
        action = [&] {
            std::vector<EntrySequence> factors;
            if (!extremal.empty())
                factors.push_back(extremal_entry_word(extremal[0], extremal[1]));
            else
                for (auto& ls : read_letter_lines(words, input)) factors.emplace_back(std::move(ls));
            std::vector<Insertion> ins;
            for (const auto& spec : insertions) {
                const auto colon = spec.find(':');
                if (colon == std::string::npos) throw InputError("--insert: expected POS:LETTER, found '" + spec + "'");
                const auto letters = parse_letters(spec.substr(colon + 1));
                if (letters.size() != 1) throw InputError("--insert: expected a single letter in '" + spec + "'");
                ins.push_back({static_cast<std::size_t>(parse_int_list(spec.substr(0, colon), "--insert").at(0)), letters[0]});
            }
            const auto built = build_letter_sets(factors, ins);
            const auto rep = verify_family(built.word, built.family);
            std::vector<Letter> ls;
            std::vector<int> origins;
            for (const auto& t : built.word) {
                ls.push_back(t.letter);
                origins.push_back(t.origin);
            }
            run.report = {{"command", "trivialize build"}, {"word", format_letters(ls)}, {"origins", origins},
                          {"sets", built.family.sets()}, {"ok", rep.ok}, {"subfamilies_checked", rep.subfamilies_checked},
                          {"failing", rep.failing ? json(*rep.failing) : json(nullptr)}};
            run.exit_code = rep.ok ? kExitValid : kExitInvalid;
        };
    });
    auto* t_verify = triv_cmd->add_subcommand("verify", "Verify a family given as {\"word\": ..., \"sets\": [[positions]]}");
    t_verify->add_option("input", input, "JSON file, '-' for standard input")->default_str("-");
    t_verify->callback([&] {
        action = [&] {
            const json j = read_json(input);
            if (!j.contains("word") || !j.contains("sets")) throw InputError("trivialize verify: need fields word and sets");
            TaggedWord tw;
            for (const Letter& l : parse_letters(j["word"].get<std::string>())) tw.push_back({l});
            const LetterSetFamily fam(j["sets"].get<std::vector<std::vector<std::size_t>>>());
            for (const auto& s : fam.sets())
                for (std::size_t p : s)
                    if (p >= tw.size()) throw InputError("trivialize verify: position " + std::to_string(p) + " beyond the word");
            const auto rep = verify_family(tw, fam);
            run.report = {{"command", "trivialize verify"}, {"ok", rep.ok}, {"subfamilies_checked", rep.subfamilies_checked},
                          {"failing", rep.failing ? json(*rep.failing) : json(nullptr)}};
            run.exit_code = rep.ok ? kExitValid : kExitInvalid;
        };
    });

    // milnor
    auto* milnor_cmd = app.add_subcommand("milnor", "Milnor invariants from longitude words (one per component)")->require_subcommand(1);
    std::string milnor_index, milnor_mode = "raw";
    int milnor_n = 1;
    auto* mi_inv = milnor_cmd->add_subcommand("invariant", "mu(i1..ik)");
    add_word_input(mi_inv);
    mi_inv->add_option("--index,-i", milnor_index, "Comma-separated multi-index")->required();
    mi_inv->add_option("--mode", milnor_mode, "Reduction")->check(CLI::IsMember({"raw", "gcd"}))->capture_default_str();
    mi_inv->callback([&] {
        action = [&] {
            const auto ls = read_words(words, input);
            const LongitudeSystem L(static_cast<int>(ls.size()), ls);
            const auto idx = parse_int_list(milnor_index, "--index");
            const auto v = milnor_invariant(L, idx, milnor_mode == "gcd" ? MilnorMode::gcd : MilnorMode::raw);
            run.report = {{"command", "milnor invariant"}, {"index", idx}, {"mode", milnor_mode},
                          {"value", v.value}, {"raw", v.raw}, {"indeterminacy", v.indeterminacy}};
        };
    });
    auto* mi_van = milnor_cmd->add_subcommand("vanish", "Do all mu of length <= n+1 vanish?");
    add_word_input(mi_van);
    mi_van->add_option("-n", milnor_n, "n")->check(CLI::PositiveNumber)->capture_default_str();
    mi_van->callback([&] {
        action = [&] {
            const auto ls = read_words(words, input);
            const LongitudeSystem L(static_cast<int>(ls.size()), ls);
            const bool a = milnor_vanish_upto(L, milnor_n), b = longitudes_in_lcs_term(L, milnor_n);
            run.report = {{"command", "milnor vanish"}, {"n", milnor_n}, {"vanish", a}, {"lcs_vanish", b}};
            run.exit_code = a ? kExitValid : kExitInvalid;
        };
    });

    // seifert
    auto* alex_cmd = app.add_subcommand("alexander", "Alexander polynomial of a Seifert matrix file");
    alex_cmd->add_option("input", input, "Matrix file, '-' for standard input")->default_str("-");
    alex_cmd->callback([&] {
        action = [&] {
            const SeifertMatrix V(read_matrix(input));
            run.report = {{"command", "alexander"}, {"genus", V.genus()}, {"alexander", laurent_to_json(alexander(V))}};
        };
    });
    bool symmetrize_first = false;
    auto* class_cmd = app.add_subcommand("classify", "Literal shape of a symmetric form (elliptic / hyperbolic / parabolic)");
    class_cmd->add_option("input", input, "Matrix file, '-' for standard input")->default_str("-");
    class_cmd->add_flag("--seifert", symmetrize_first, "Input is a Seifert matrix V; classify V + V^T");
    class_cmd->callback([&] {
        action = [&] {
            IntMatrix m = read_matrix(input);
            if (symmetrize_first) m = symmetrize(m);
            if (!m.symmetric()) throw InputError("classify: matrix is not symmetric (use --seifert for V)");
            const int g = static_cast<int>(m.rows() / 2);
            run.report = {{"command", "classify"}, {"genus", g}, {"matrix", matrix_to_json(m)}, {"class", to_string(classify_form(m, g))}};
        };
    });
    int mmr_order = 6;
    std::string laurent_text;
    auto* mmr_cmd = app.add_subcommand("mmr", "Coefficients of p(h)/Delta(e^h) from a Seifert matrix or --laurent");
    mmr_cmd->add_option("input", input, "Matrix file, '-' for standard input")->default_str("-");
    mmr_cmd->add_option("--order,-N", mmr_order, "Highest power of h")->check(CLI::NonNegativeNumber)->capture_default_str();
    mmr_cmd->add_option("--laurent", laurent_text, "Delta as MIN:c0,c1,... (coefficient of t^MIN first)");
    mmr_cmd->callback([&] {
        action = [&] {
            LaurentPolynomial delta;
            if (!laurent_text.empty()) {
                const auto colon = laurent_text.find(':');
                if (colon == std::string::npos) throw InputError("--laurent: expected MIN:c0,c1,...");
                const int lo = parse_int_list(laurent_text.substr(0, colon), "--laurent").at(0);
                std::vector<BigInt> cs;
                for (int c : parse_int_list(laurent_text.substr(colon + 1), "--laurent")) cs.emplace_back(c);
                delta = LaurentPolynomial(lo, cs);
            } else {
                delta = alexander(SeifertMatrix(read_matrix(input)));
            }
            json coeffs = json::array();
            for (const auto& c : mmr_series(delta, mmr_order)) coeffs.push_back(format_rational(c));
            run.report = {{"command", "mmr"}, {"delta", laurent_to_json(delta)}, {"order", mmr_order}, {"coefficients", coeffs}};
        };
    });

    auto* alt_cmd = app.add_subcommand("altsum", "Alternating subset sum; JSON {\"n\": n, \"values\": [{\"subset\": [..], \"value\": \"p/q\"}]}");
    alt_cmd->add_option("input", input, "JSON file, '-' for standard input")->default_str("-");
    alt_cmd->callback([&] {
        action = [&] {
            const json j = read_json(input);
            if (!j.contains("n") || !j.contains("values")) throw InputError("altsum: need fields n and values");
            const int n = j["n"].get<int>();
            if (n < 0 || n > 62) throw InputError("altsum: n must lie in 0..62");
            std::map<std::uint64_t, Rational> values;
            for (const auto& item : j["values"]) {
                std::uint64_t mask = 0;
                for (int e : item.at("subset").get<std::vector<int>>()) {
                    if (e < 1 || e > n + 1) throw InputError("altsum: subset element " + std::to_string(e) + " outside 1..n+1");
                    mask |= std::uint64_t{1} << (e - 1);
                }
                const json& v = item.at("value");
                values[mask] = parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
            }
            run.report = {{"command", "altsum"}, {"n", n}, {"sum", format_rational(alternating_sum(n, values))}};
        };
    });

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "Bound functions")->require_subcommand(1);
    std::vector<long> bargs;
    auto add_bound = [&](const std::string& name, const std::string& desc, int nargs, std::function<json()> body) {
        auto* c = bounds_cmd->add_subcommand(name, desc);
        c->add_option("args", bargs, "Integer arguments")->expected(nargs)->required();
        c->callback([&, body, name] {
            action = [&, body, name] {
                run.report = body();
                run.report["command"] = "bounds " + name;
            };
        });
        return c;
    };
    add_bound("q", "floor(m/6)", 1, [&] { return json{{"m", bargs[0]}, {"value", q(bargs[0])}}; });
    add_bound("t", "floor(n/4)", 1, [&] { return json{{"n", bargs[0]}, {"value", t(bargs[0])}}; });
    add_bound("q-param", "q-value for N K", 2, [&] { return json{{"n", bargs[0]}, {"k", bargs[1]}, {"value", q_param(bargs[0], bargs[1])}}; });
    add_bound("l-n-s", "min q - 1 over the given q-values", -1, [&] { return json{{"qs", bargs}, {"value", l_n_S(bargs)}}; });
    add_bound("conflict-max", "2^s - 2", 1, [&] { return json{{"s", bargs[0]}, {"value", conflict_max(static_cast<int>(bargs[0]))}}; });
    add_bound("ratio", "W S: s = 0 or w/s >= 4/3", 2, [&] { return json{{"w", bargs[0]}, {"s", bargs[1]}, {"holds", ratio_check(bargs[0], bargs[1])}}; });
    add_bound("inequalities", "chained log inequalities for N >= 6", 1, [&] {
        const auto r = check_inequalities(bargs[0]);
        json checks = json::array();
        for (const auto& c : r.checks) checks.push_back({{"statement", c.statement}, {"holds", c.holds}});
        return json{{"n", r.n}, {"checks", checks}, {"min_q", r.min_q}, {"log_argument", format_rational(r.log_argument)},
                    {"log_bound_floor", r.log_bound_floor}, {"all_hold", r.all_hold()}};
    });
    add_bound("product-bound", "K R S: length, trivializing count and log comparison", 3, [&] {
        const auto r = product_bound_check(bargs[0], bargs[1], static_cast<int>(bargs[2]));
        return json{{"k", bargs[0]}, {"r", bargs[1]}, {"s", bargs[2]}, {"length", bigint_json(r.length)},
                    {"trivializing", bigint_json(r.trivializing)}, {"log_argument", format_rational(r.log_argument)}, {"holds", r.holds}};
    });
    bool embedded = false;
    add_bound("good-arc", "M K S: good-arc lower bound", 3, [&] {
        return json{{"m", bargs[0]}, {"k", bargs[1]}, {"s", bargs[2]}, {"embedded", embedded},
                    {"value", good_arc_bound(bargs[0], bargs[1], bargs[2], embedded)}};
    })->add_flag("--embedded", embedded, "Use the embedded-arc refinement t(m+1)");
    std::vector<std::string> factor_sets;
    auto* pk = bounds_cmd->add_subcommand("partition-k", "k from factor generator sets, e.g. 1,2 2,3 5,6");
    pk->add_option("sets", factor_sets, "Comma-separated generator sets")->required();
    pk->callback([&] {
        action = [&] {
            std::vector<std::set<int>> sets;
            for (const auto& s : factor_sets) sets.push_back(parse_gen_set(s, "partition-k"));
            const auto r = partition_k(sets);
            run.report = {{"command", "bounds partition-k"}, {"factors", sets}, {"blocks", r.partition.blocks}, {"k", r.k}};
        };
    });

    // certify
    auto* cert_cmd = app.add_subcommand("certify", "Check a surface certificate")->require_subcommand(1);
    std::string translate;
    for (const std::string kind : {"hyperbolic", "elliptic", "parabolic", "unknotted"}) {
        auto* c = cert_cmd->add_subcommand(kind, "Check an n-" + kind + " certificate");
        c->add_option("input", input, "Certificate JSON, '-' for standard input")->default_str("-");
        c->add_option("--translate", translate, "Also emit the shifted certificate")
            ->check(CLI::IsMember({"elliptic-to-hyperbolic", "parabolic-to-hyperbolic", "unknotted-shift", "identity"}));
        c->callback([&, kind] {
            action = [&, kind] {
                const Certificate cert = parse_certificate(read_json(input));
                if (to_string(cert.kind) != kind)
                    throw MalformedCertificate("kind: certificate is " + to_string(cert.kind) + ", not " + kind);
                if (translate.empty()) {
                    const auto r = certify(cert);
                    run.report = certificate_report_json(r);
                    run.exit_code = exit_code(r.verdict);
                    return;
                }
                const std::map<std::string, Translation> kinds{{"elliptic-to-hyperbolic", Translation::elliptic_to_hyperbolic},
                                                               {"parabolic-to-hyperbolic", Translation::parabolic_to_hyperbolic},
                                                               {"unknotted-shift", Translation::unknotted_shift},
                                                               {"identity", Translation::identity}};
                try {
                    const auto t = lemma61_translate(cert, kinds.at(translate));
                    run.report = {{"source", certificate_report_json(t.source)},
                                  {"translation", translate},
                                  {"target", certificate_to_json(t.target)},
                                  {"target_report", certificate_report_json(t.target_report)}};
                    run.exit_code = exit_code(t.target_report.verdict);
                } catch (const TranslationError& e) {
                    run.report = {{"translation", translate}, {"error", e.what()}};
                    run.exit_code = kExitInvalid;
                }
            };
        });
    }

    auto* pipe_cmd = app.add_subcommand("pipeline", "Multi-step pipelines")->require_subcommand(1);
    auto* spine = pipe_cmd->add_subcommand("spine-link", "Milnor vanishing for the spine link and the l(n,S) conclusion");
    spine->add_option("input", input, "Certificate JSON with signs, '-' for standard input")->default_str("-");
    spine->callback([&] {
        action = [&] {
            const auto r = spine_link_pipeline(parse_certificate(read_json(input)));
            run.report = spine_report_to_json(r);
            run.exit_code = exit_code(r.verdict);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitMalformed;
    }
    try {
        action();
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.line << ":" << e.column << ": " << e.what() << "\n";
        return kExitMalformed;
    } catch (const MalformedCertificate& e) {
        std::cerr << "error: malformed certificate: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const ExpansionBudgetExceeded& e) {
        std::cerr << "undetermined: " << e.what() << "\n";
        return kExitUndetermined;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    emit(run);
    return run.exit_code;
}
