// Command-line harness: relation verification suites, tau/orbit computation,
// q-Painleve stepping, degree-growth tables, and character-polynomial
// certification, with JSON-lines reports and CSV tables.
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 configuration error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "weyltrop/characters.hpp"
#include "weyltrop/tau.hpp"

using namespace weyltrop;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Report plumbing.

struct Record {
    std::string check;
    std::string instance;
    std::string status;  // pass | fail | skip
    std::string witness;
    double elapsed = 0.0;
};

class Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  public:
    double seconds() const {
        auto d = std::chrono::steady_clock::now() - t0;
        double s = std::chrono::duration<double>(d).count();
        return std::round(s * 1e6) / 1e6;
    }
};

// Order-stable report: sorted by check id, then instance.
int emit_report(std::vector<Record> records, const std::string& out_path) {
    std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
        return std::tie(a.check, a.instance) < std::tie(b.check, b.instance);
    });
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ConfigError("cannot open output file: " + out_path);
        os = &file;
    }
    bool any_fail = false;
    for (const Record& r : records) {
        json j;
        j["check"] = r.check;
        j["instance"] = r.instance;
        j["status"] = r.status;
        j["witness"] = r.witness;
        j["elapsed"] = r.elapsed;
        *os << j.dump() << "\n";
        if (r.status == "fail") any_fail = true;
    }
    return any_fail ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Concurrency: a simple pool capped by WEYLTROP_THREADS.

unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("WEYLTROP_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || v < 1) throw ConfigError("WEYLTROP_THREADS must be a positive integer");
        hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

std::vector<Record> run_tasks(const std::vector<std::function<Record()>>& tasks,
                              unsigned precision_bits = 200) {
    std::vector<Record> out(tasks.size());
    unsigned nt = std::min<size_t>(thread_budget(), tasks.size());
    if (nt <= 1) {
        for (size_t t = 0; t < tasks.size(); ++t) out[t] = tasks[t]();
        return out;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        set_real_precision_bits(precision_bits);
        for (;;) {
            size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            out[t] = tasks[t]();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

// ---------------------------------------------------------------------------
// Parsing helpers.

Rat parse_rat(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos)
            return Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1)));
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            Int den = 1;
            for (size_t t = dot + 1; t < s.size(); ++t) den *= 10;
            return Rat(Int(digits)) / Rat(den);
        }
        return Rat(Int(s));
    } catch (const std::exception&) {
        throw ConfigError("cannot parse rational number: " + s);
    }
}

// Generator tokens: "s<n>.<i>" names the node-n layer-i reflection; "s<i>"
// alone names a D-diagram generator (d3 preset); "pi", "iota", "r0", "r1"
// name the extended cyclic-family generators.
struct Token {
    enum Kind { S, DNODE, PI, IOTA, R0, R1 } kind = S;
    int n = 0, i = 0;
};

std::vector<Token> tokenize(const std::string& word) {
    std::vector<Token> out;
    std::string tok;
    std::istringstream is(word);
    std::string normalized = word;
    for (char& ch : normalized)
        if (ch == ',') ch = ' ';
    std::istringstream is2(normalized);
    while (is2 >> tok) {
        if (tok == "pi") {
            out.push_back({Token::PI});
        } else if (tok == "iota") {
            out.push_back({Token::IOTA});
        } else if (tok == "r0") {
            out.push_back({Token::R0});
        } else if (tok == "r1") {
            out.push_back({Token::R1});
        } else if (tok.size() >= 2 && tok[0] == 's') {
            std::string body = tok.substr(1);
            auto dot = body.find('.');
            try {
                if (dot == std::string::npos) {
                    out.push_back({Token::DNODE, std::stoi(body), 0});
                } else {
                    out.push_back(
                        {Token::S, std::stoi(body.substr(0, dot)), std::stoi(body.substr(dot + 1))});
                }
            } catch (const std::exception&) {
                throw ConfigError("unknown generator token: " + tok);
            }
        } else {
            throw ConfigError("unknown generator token: " + tok);
        }
    }
    return out;
}

bool has_extended(const std::vector<Token>& toks) {
    for (const Token& t : toks)
        if (t.kind == Token::PI || t.kind == Token::IOTA || t.kind == Token::R0 ||
            t.kind == Token::R1)
            return true;
    return false;
}

WeylWord to_weyl_word(const std::vector<Token>& toks) {
    WeylWord w;
    for (const Token& t : toks) {
        if (t.kind != Token::S)
            throw ConfigError("this word accepts only s<n>.<i> reflection tokens");
        w.push_back({t.n, t.i});
    }
    return w;
}

AWord to_a_word(const std::vector<Token>& toks) {
    AWord w;
    for (const Token& t : toks) {
        switch (t.kind) {
            case Token::S:
                if (t.i != 0) throw ConfigError("the cyclic family has layer-0 reflections only");
                w.push_back({AGen::S, t.n});
                break;
            case Token::PI: w.push_back({AGen::PI, 0}); break;
            case Token::IOTA: w.push_back({AGen::IOTA, 0}); break;
            case Token::R0: w.push_back({AGen::R0, 0}); break;
            case Token::R1: w.push_back({AGen::R1, 0}); break;
            default: throw ConfigError("plain s<i> tokens name D-diagram generators only");
        }
    }
    return w;
}

DWord to_d_word(const std::vector<Token>& toks) {
    DWord w;
    for (const Token& t : toks) {
        if (t.kind != Token::DNODE)
            throw ConfigError("D-diagram words accept only s<i> tokens, i = 0..N+2");
        w.push_back(t.n);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Shape resolution.

struct Setup {
    ShapeConfig cfg{{1, 1, 1}, {1, 1, 1}};
    std::optional<AffineConfigA> A;
    std::optional<AffineConfigD> Dc;
};

Setup resolve_setup(const std::string& preset, int N, std::vector<int> kvec,
                    std::vector<int> lvec) {
    Setup s;
    try {
        if (preset == "a2") {
            s.A.emplace(3);
            s.cfg = s.A->cfg;
        } else if (preset == "a3") {
            s.A.emplace(4);
            s.cfg = s.A->cfg;
        } else if (preset == "d3") {
            s.Dc.emplace(3);
            s.cfg = s.Dc->cfg;
        } else if (preset.empty()) {
            if (N < 3) throw ConfigError("need --preset or --N >= 3");
            if (kvec.empty()) kvec.assign(static_cast<size_t>(N), 1);
            if (lvec.empty()) lvec.assign(static_cast<size_t>(N), 1);
            if (kvec.size() != static_cast<size_t>(N) || lvec.size() != static_cast<size_t>(N))
                throw ConfigError("--k and --l must list exactly N entries");
            s.cfg = ShapeConfig(kvec, lvec);
            bool all_ones = true;
            for (int n = 1; n <= N; ++n)
                if (s.cfg.k_at(n) != 1 || s.cfg.l_at(n) != 1) all_ones = false;
            if (all_ones) s.A.emplace(N);
        } else {
            throw ConfigError("unknown preset: " + preset + " (expected a2, a3, or d3)");
        }
    } catch (const BadShape& e) {
        throw ConfigError(std::string("invalid shape: ") + e.what());
    }
    return s;
}

// ---------------------------------------------------------------------------
// Pretty-printing.

std::string root_str(const RootIndex& g) {
    return "s" + std::to_string(g.n) + "." + std::to_string(g.i);
}

std::string word_str(const WeylWord& w) {
    std::string s;
    for (const RootIndex& g : w) {
        if (!s.empty()) s += " ";
        s += root_str(g);
    }
    return s.empty() ? "(empty)" : s;
}

std::string divisor_str(const DivisorClass& L) {
    std::ostringstream os;
    os << "h=[";
    for (size_t n = 0; n < L.h.size(); ++n) os << (n ? "," : "") << L.h[n];
    os << "] e={";
    bool first = true;
    for (const auto& [key, c] : L.e) {
        if (c == 0) continue;
        if (!first) os << ",";
        first = false;
        os << "E" << key.first << "^" << key.second << ":" << c;
    }
    os << "}";
    return os.str();
}

std::string expr_str(const RationalExpression& e) {
    return "(" + e.num.str() + ") / (" + e.den.str() + ")";
}

std::string real_str(const Real& x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(6) << x;
    return os.str();
}

bool maps_equal(const ExprMap& a, const ExprMap& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [v, e] : a)
        if (!expr_equals(e, b.at(v))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// verify-relations: the lattice suite plus the same relations in every frame.

int cmd_verify_relations(const Setup& s, int max_word_len, std::uint64_t seed,
                         const std::string& out) {
    const ShapeConfig& cfg = s.cfg;
    auto gens = all_root_indices(cfg);
    auto dbasis = divisor_basis(cfg);
    auto cbasis = curve_basis(cfg);
    std::vector<std::function<Record()>> tasks;

    for (const RootIndex& g : gens)
        tasks.push_back([=, &cfg] {
            Timer tm;
            bool ok = true;
            for (const DivisorClass& L : dbasis)
                ok = ok && reflect(cfg, g, reflect(cfg, g, L)) == L;
            for (const CurveClass& l : cbasis)
                ok = ok && reflect(cfg, g, reflect(cfg, g, l)) == l;
            return Record{"lattice/involution", root_str(g), ok ? "pass" : "fail",
                          ok ? "" : "s^2 moved a basis class", tm.seconds()};
        });

    for (const RootIndex& a : gens)
        for (const RootIndex& b : gens) {
            if (!(a < b)) continue;
            tasks.push_back([=, &cfg] {
                Timer tm;
                Int entry = cartan_entry(cfg, a, b);
                WeylWord lhs = entry == -1 ? WeylWord{a, b, a} : WeylWord{a, b};
                WeylWord rhs = entry == -1 ? WeylWord{b, a, b} : WeylWord{b, a};
                bool ok = true;
                for (const DivisorClass& L : dbasis)
                    ok = ok && apply_word_lattice(cfg, lhs, L) == apply_word_lattice(cfg, rhs, L);
                return Record{"lattice/braid", root_str(a) + " " + root_str(b),
                              ok ? "pass" : "fail", ok ? "" : "word images differ", tm.seconds()};
            });
        }

    // Random words: invariance of the null pair and of the full pairing.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> len(1, std::max(1, max_word_len));
    InvariantClasses inv = invariant_classes(cfg);
    for (int t = 0; t < 50; ++t) {
        WeylWord w;
        int L = len(rng);
        for (int x = 0; x < L; ++x) w.push_back(gens[pick(rng)]);
        std::ostringstream id;
        id << "word-" << std::setw(3) << std::setfill('0') << t;
        std::string instance = id.str() + " [" + word_str(w) + "]";
        tasks.push_back([=, &cfg] {
            Timer tm;
            bool ok = apply_word_lattice(cfg, w, inv.delta) == inv.delta &&
                      apply_word_lattice(cfg, w, inv.delta_check) == inv.delta_check;
            std::vector<DivisorClass> dimg;
            std::vector<CurveClass> cimg;
            for (const DivisorClass& L2 : dbasis) dimg.push_back(apply_word_lattice(cfg, w, L2));
            for (const CurveClass& l : cbasis) cimg.push_back(apply_word_lattice(cfg, w, l));
            for (size_t a = 0; a < dbasis.size(); ++a)
                for (size_t b = 0; b < cbasis.size(); ++b)
                    ok = ok && pairing(dimg[a], cimg[b]) == pairing(dbasis[a], cbasis[b]);
            return Record{"lattice/invariance", instance, ok ? "pass" : "fail",
                          ok ? "" : "null pair or pairing not preserved", tm.seconds()};
        });
    }

    // Frame suites. The weight form of the node reflections in the x- and
    // tau-frames needs every node balanced; the f-frame always works.
    ParamState st(cfg);
    bool balanced = true;
    for (int n = 1; n <= cfg.N; ++n) balanced = balanced && cfg.balanced_at(n);
    std::vector<std::pair<FrameKind, std::string>> frames = {{FrameKind::F, "frame-f"}};
    std::vector<Record> fixed;
    if (balanced) {
        frames.push_back({FrameKind::TAU, "frame-tau"});
        frames.push_back({FrameKind::X, "frame-x"});
    } else {
        fixed.push_back({"frame-tau/suite", "all", "skip",
                         "weight form undefined: some node is unbalanced", 0.0});
        fixed.push_back({"frame-x/suite", "all", "skip",
                         "weight form undefined: some node is unbalanced", 0.0});
    }

    for (const auto& [frame, name] : frames) {
        for (const RootIndex& g : gens)
            tasks.push_back([=, &st, &cfg] {
                Timer tm;
                ExprMap id = identity_exprs(make_frame(cfg, frame));
                WordResult r = apply_word(st, frame, {g, g});
                bool ok = maps_equal(r.exprs, id) && r.params.images == st.images;
                return Record{name + "/involution", root_str(g), ok ? "pass" : "fail",
                              ok ? "" : "s^2 is not the identity", tm.seconds()};
            });
        for (const RootIndex& a : gens)
            for (const RootIndex& b : gens) {
                if (!(a < b)) continue;
                tasks.push_back([=, &st, &cfg] {
                    Timer tm;
                    Int entry = cartan_entry(cfg, a, b);
                    WeylWord lhs = entry == -1 ? WeylWord{a, b, a} : WeylWord{a, b};
                    WeylWord rhs = entry == -1 ? WeylWord{b, a, b} : WeylWord{b, a};
                    WordResult rl = apply_word(st, frame, lhs);
                    WordResult rr = apply_word(st, frame, rhs);
                    bool ok =
                        rl.params.images == rr.params.images && maps_equal(rl.exprs, rr.exprs);
                    return Record{name + "/braid", root_str(a) + " " + root_str(b),
                                  ok ? "pass" : "fail", ok ? "" : "word images differ",
                                  tm.seconds()};
                });
            }
    }

    std::vector<Record> records = run_tasks(tasks);
    records.insert(records.end(), fixed.begin(), fixed.end());
    return emit_report(std::move(records), out);
}

// ---------------------------------------------------------------------------
// tau: tau-function of a word applied to a seed exceptional class, with the
// Laurent certificate, the defining polynomial, and its normalization.

int cmd_tau(const Setup& s, const std::string& word, int base_n, int base_i,
            const std::string& out) {
    const ShapeConfig& cfg = s.cfg;
    std::vector<Token> toks = tokenize(word);
    std::vector<Record> records;

    if (has_extended(toks)) {
        if (!s.A) throw ConfigError("extended generators need an all-ones (cyclic) shape");
        AWord aw = to_a_word(toks);
        Timer tm;
        AWordResult r = apply_word_A(*s.A, FrameKind::TAU, aw);
        RationalExpression e = r.exprs.at(tau_var_id(cfg, base_n, base_i));
        std::cout << "tau(w . E_" << base_n << "^" << base_i << ") = " << expr_str(e) << "\n";
        auto laurent = exact_divide(e.num, e.den);
        if (laurent)
            std::cout << "laurent form: " << laurent->str() << "\n";
        else
            std::cout << "laurent form: (denominator does not divide)\n";
        records.push_back({"tau/laurent", word.empty() ? "(empty)" : word,
                           laurent ? "pass" : "fail", laurent ? "" : "tau is not Laurent",
                           tm.seconds()});
        records.push_back({"tau/normalization", word.empty() ? "(empty)" : word, "skip",
                           "defining polynomial not derived for extended words", 0.0});
        return emit_report(std::move(records), out);
    }

    WeylWord w = to_weyl_word(toks);
    ParamState st(cfg);
    OrbitElement el = orbit_seed(cfg, base_n, base_i);
    el.witness = w;
    el.divisor = apply_word_lattice(cfg, w, el.divisor);

    Timer tm;
    TauValue tv = tau_of(st, el);
    std::cout << "word: " << word_str(w) << "\n";
    std::cout << "divisor class: " << divisor_str(el.divisor) << "\n";
    std::cout << "tau(w . E_" << el.base_n << "^" << el.base_i << ") = " << expr_str(tv.expr)
              << "\n";
    auto laurent = laurent_certificate(tv);
    records.push_back({"tau/laurent", word.empty() ? "(empty)" : word, laurent ? "pass" : "fail",
                       laurent ? "" : "tau is not Laurent", tm.seconds()});
    if (laurent) {
        std::cout << "laurent form: " << laurent->str() << "\n";
        Timer tm2;
        NormalizedPolynomial np = phi_from_tau(st, el);
        std::cout << "defining polynomial Phi = " << np.zeta_poly.str() << "\n";
        std::cout << "multidegree:";
        for (const Int& d : np.degree) std::cout << " " << d;
        std::cout << "\nmultiplicities mu:";
        for (const auto& [key, m] : np.mult)
            if (m != 0)
                std::cout << " mu(" << key.first << "," << key.second << ")=" << m;
        std::cout << "\n";
        bool normalized = check_normalization(np, cfg);
        std::cout << "normalization: " << (normalized ? "exact" : "VIOLATED") << "\n";
        records.push_back({"tau/normalization", word.empty() ? "(empty)" : word,
                           normalized ? "pass" : "fail",
                           normalized ? "" : "leading normalization violated", tm2.seconds()});
    } else {
        std::cout << "laurent form: (denominator does not divide)\n";
    }
    return emit_report(std::move(records), out);
}

// ---------------------------------------------------------------------------
// orbit: sweep the orbit of the exceptional classes and certify each element.

int cmd_orbit(const Setup& s, int max_word_len, const std::string& out) {
    const ShapeConfig& cfg = s.cfg;
    ParamState st(cfg);
    std::vector<OrbitElement> orbit = enumerate_orbit(cfg, max_word_len);
    std::vector<std::function<Record()>> tasks;
    for (size_t t = 0; t < orbit.size(); ++t) {
        const OrbitElement& el = orbit[t];
        std::ostringstream id;
        id << "element-" << std::setw(4) << std::setfill('0') << t;
        std::string instance = id.str() + " " + divisor_str(el.divisor) + " witness=[" +
                               word_str(el.witness) + "]";
        tasks.push_back([=, &st, &cfg] {
            Timer tm;
            try {
                TauValue tv = tau_of(st, el);
                auto laurent = laurent_certificate(tv);
                if (!laurent)
                    return Record{"orbit/certificate", instance, "fail", "tau is not Laurent",
                                  tm.seconds()};
                NormalizedPolynomial np = phi_from_tau(st, el);
                bool ok = check_normalization(np, cfg);
                for (int n = 0; n < cfg.N; ++n) ok = ok && np.degree[n] == el.divisor.h[n];
                return Record{"orbit/certificate", instance, ok ? "pass" : "fail",
                              ok ? "" : "normalization or multidegree violated", tm.seconds()};
            } catch (const std::exception& e) {
                return Record{"orbit/certificate", instance, "fail", e.what(), tm.seconds()};
            }
        });
    }
    return emit_report(run_tasks(tasks), out);
}

// ---------------------------------------------------------------------------
// degree-growth: CSV table of iterate degrees against the lattice bound.

int cmd_degree_growth(const Setup& s, const std::string& word, int iters, std::uint64_t seed,
                      const std::string& out) {
    if (!s.A && !s.Dc)
        throw ConfigError("degree-growth needs an affine preset (a2, a3, or d3)");
    int N = s.A ? s.A->N : s.Dc->N;
    std::vector<Token> toks = tokenize(word);

    std::vector<DegreeGrowthTable> tables;
    for (int j = 1; j <= N; ++j) {
        if (s.A) {
            AWord aw = toks.empty() ? qp_word_A() : to_a_word(toks);
            tables.push_back(degree_growth_table(*s.A, aw, iters, j, j, seed));
        } else {
            DWord dw = toks.empty() ? translation_word_D(*s.Dc) : to_d_word(toks);
            tables.push_back(degree_growth_table_D(*s.Dc, dw, iters, j, j, seed));
        }
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw ConfigError("cannot open output file: " + out);
        os = &file;
    }
    *os << "n";
    for (int j = 1; j <= N; ++j) *os << ",deg_f" << j;
    for (int j = 1; j <= N; ++j) *os << ",secdiff_f" << j;
    for (int j = 1; j <= N; ++j) *os << ",bound_f" << j;
    *os << "\n";
    bool within = true;
    for (int n = 0; n <= iters; ++n) {
        *os << n;
        for (int j = 1; j <= N; ++j) {
            *os << "," << tables[j - 1].degrees[n];
            if (Int(tables[j - 1].degrees[n]) > tables[j - 1].bounds[n]) within = false;
        }
        for (int j = 1; j <= N; ++j) {
            *os << ",";
            if (n < static_cast<int>(tables[j - 1].second_differences.size()))
                *os << tables[j - 1].second_differences[n];
        }
        for (int j = 1; j <= N; ++j) *os << "," << tables[j - 1].bounds[n];
        *os << "\n";
    }
    if (!within) {
        std::cerr << "degree-growth: some degree exceeds its lattice bound\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// qp-step: the one-step evolution map in the f-frame.

int cmd_qp_step(const Setup& s, const std::string& out) {
    std::vector<Record> records;
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw ConfigError("cannot open output file: " + out);
        os = &file;
    }
    if (s.A) {
        Timer tm;
        AWordResult step = qpA_step(*s.A);
        *os << "one-step evolution (cyclic family, N=" << s.A->N << "):\n";
        for (const auto& [v, e] : step.exprs)
            *os << "  " << var_name(v) << " -> " << expr_str(e) << "\n";
        *os << "parameter images:\n";
        for (const auto& [p, m] : step.params) {
            *os << "  " << param_name(p) << " ->";
            for (const auto& [pp, x] : m.exps) *os << " " << param_name(pp) << "^" << x;
            *os << "\n";
        }
        records.push_back({"qp-step/map", "cyclic N=" + std::to_string(s.A->N), "pass", "",
                           tm.seconds()});
    } else if (s.Dc) {
        Timer tm;
        DWord w = translation_word_D(*s.Dc);
        *os << "translation word (D-diagram labels, applied rightmost first):";
        for (int g : w) *os << " s" << g;
        *os << "\nper-generator f-frame actions (boundary swaps act trivially on f):\n";
        for (int i = 0; i <= s.Dc->N + 2; ++i) {
            VarBindings fb = d_f_bindings(*s.Dc, i);
            *os << "  s" << i << ":";
            if (fb.empty()) *os << " (identity on f)";
            for (const auto& [v, e] : fb) *os << " " << var_name(v) << " -> " << expr_str(e) << ";";
            *os << "\n";
        }
        *os << "parameter image of the full word:\n";
        auto params = apply_word_params_D(*s.Dc, w);
        for (const auto& [p, m] : params) {
            *os << "  " << param_name(p) << " ->";
            for (const auto& [pp, x] : m.exps) *os << " " << param_name(pp) << "^" << x;
            *os << "\n";
        }
        records.push_back({"qp-step/map", "D-diagram N=" + std::to_string(s.Dc->N), "pass", "",
                           tm.seconds()});
    } else {
        throw ConfigError("qp-step needs an affine preset (a2, a3, or d3)");
    }
    return emit_report(std::move(records), "");
}

// ---------------------------------------------------------------------------
// char-check: bilinear residual grid for the closed-form tau functions.

int cmd_char_check(const Setup& s, const std::string& q_str, const std::string& b0_str,
                   const std::string& b1_str, const std::string& c_str, unsigned precision,
                   double tolerance, const std::string& out) {
    if (!s.A) throw ConfigError("char-check needs a cyclic preset (a2, a3) or an all-ones shape");
    int N = s.A->N;
    bool uc = !c_str.empty();
    if (uc && N % 2 != 0)
        throw ConfigError("universal-character mode needs an even-size cyclic family");
    Rat q = parse_rat(q_str), b0 = parse_rat(b0_str), b1 = parse_rat(b1_str);
    Rat c = uc ? parse_rat(c_str) : Rat(1);
    long T = uc ? 96 : 64;

    // Enumerate the grid |nu_i| <= 2, |kappa| <= 2, all directions.
    struct Cell {
        std::vector<long> nu;
        long kappa;
        int i;
        std::string instance;
    };
    std::vector<Cell> cells;
    std::vector<long> nu(static_cast<size_t>(N), -2);
    for (;;) {
        for (long kappa = -2; kappa <= 2; ++kappa)
            for (int i = 1; i <= N; ++i) {
                std::ostringstream id;
                id << "nu=(";
                for (size_t t = 0; t < nu.size(); ++t) id << (t ? "," : "") << nu[t];
                id << ") kappa=" << kappa << " i=" << i;
                cells.push_back({nu, kappa, i, id.str()});
            }
        int pos = 0;
        while (pos < N && nu[static_cast<size_t>(pos)] == 2) nu[static_cast<size_t>(pos++)] = -2;
        if (pos == N) break;
        ++nu[static_cast<size_t>(pos)];
    }

    std::string mode_name = uc ? "uc" : "schur";
    CharMode mode = uc ? CharMode::UC : CharMode::Schur;

    // |q| >= 1 makes every infinite product diverge: report it per cell.
    bool divergent = false;
    try {
        QContext probe(q, b0, b1, c, T, precision);
        (void)probe;
    } catch (const NonConvergent&) {
        divergent = true;
    }
    if (divergent) {
        std::vector<Record> records;
        for (const Cell& cell : cells)
            records.push_back(
                {"char/bilinear-" + mode_name, cell.instance, "fail", "NonConvergent", 0.0});
        return emit_report(std::move(records), out);
    }

    // One context and cache per worker thread.
    std::vector<Record> records(cells.size());
    unsigned nt = std::min<size_t>(thread_budget(), cells.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        QContext ctx(q, b0, b1, c, T, precision);
        SigmaCache cache;
        Real tol = Real(tolerance);
        for (;;) {
            size_t t = next.fetch_add(1);
            if (t >= cells.size()) return;
            const Cell& cell = cells[t];
            Timer tm;
            Record r{"char/bilinear-" + mode_name, cell.instance, "pass", "", 0.0};
            try {
                Real residual = verify_bilinear(ctx, N, cell.nu, cell.i, cell.kappa, mode, &cache);
                r.witness = real_str(residual);
                if (!(residual < tol)) r.status = "fail";
            } catch (const NonConvergent&) {
                r.status = "fail";
                r.witness = "NonConvergent";
            } catch (const DegenerateScale&) {
                r.status = "skip";
                r.witness = "degenerate scale";
            }
            r.elapsed = tm.seconds();
            records[t] = r;
        }
    };
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return emit_report(std::move(records), out);
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{
        "weyltrop: birational Weyl group representations, tau functions, and q-Painleve "
        "dynamics.\n"
        "Generator tokens: \"s<n>.<i>\" is the layer-i reflection at node n; \"pi\", \"iota\", "
        "\"r0\", \"r1\" extend the cyclic (all-ones) family; plain \"s<i>\" names a D-diagram "
        "generator for the d3 preset. Words act rightmost-generator-first.\n"
        "Env: WEYLTROP_THREADS caps worker threads. Exit codes: 0 all pass, 1 any fail, 2 "
        "config error."};
    app.require_subcommand(1);

    std::string preset, word, out;
    int N = 0, max_word_len = 8, iters = 8, base_n = 1, base_i = 1;
    std::vector<int> kvec, lvec;
    std::string q_str = "1/2", b0_str = "3/4", b1_str = "2/3", c_str;
    unsigned precision = 200;
    double tolerance = 1e-12;
    std::uint64_t seed = 0;

    auto add_shape = [&](CLI::App* cmd) {
        cmd->add_option("--preset", preset, "named shape: a2, a3, or d3");
        cmd->add_option("--N", N, "number of nodes (with --k/--l)");
        cmd->add_option("--k", kvec, "upper layer counts, one per node")->delimiter(',');
        cmd->add_option("--l", lvec, "lower layer counts, one per node")->delimiter(',');
        cmd->add_option("--out", out, "write the report/table to this file");
    };

    CLI::App* vr = app.add_subcommand("verify-relations",
                                      "check the defining relations on the lattice and in "
                                      "every coordinate frame");
    add_shape(vr);
    vr->add_option("--max-word-len", max_word_len, "max random word length");
    vr->add_option("--seed", seed, "random seed");

    CLI::App* tau = app.add_subcommand("tau", "tau-function of a word applied to a seed class");
    add_shape(tau);
    tau->add_option("--word", word, "generator word, e.g. \"s1.0 s2.0\"");
    tau->add_option("--base-n", base_n, "seed node");
    tau->add_option("--base-i", base_i, "seed layer (nonzero)");

    int orbit_len = 4;
    CLI::App* orb = app.add_subcommand("orbit", "certify every orbit element up to a witness "
                                                "length");
    add_shape(orb);
    orb->add_option("--max-word-len", orbit_len, "max witness length");

    CLI::App* dg = app.add_subcommand("degree-growth",
                                      "CSV of iterate degrees, second differences, and the "
                                      "lattice bound");
    add_shape(dg);
    dg->add_option("--word", word, "evolution word (default: the standard translation)");
    dg->add_option("--iters", iters, "number of iterates");
    dg->add_option("--seed", seed, "random seed for the specialization");

    CLI::App* qp = app.add_subcommand("qp-step", "print the one-step evolution map");
    add_shape(qp);

    CLI::App* cc = app.add_subcommand("char-check",
                                      "bilinear residual grid for the closed-form tau "
                                      "functions (|nu_i| <= 2, |kappa| <= 2)");
    add_shape(cc);
    cc->add_option("--q", q_str, "base q (rational, |q| < 1 to converge)");
    cc->add_option("--b0", b0_str, "parameter b0");
    cc->add_option("--b1", b1_str, "parameter b1");
    cc->add_option("--c", c_str, "universal-character parameter; enables uc mode");
    cc->add_option("--precision", precision, "working precision in bits");
    cc->add_option("--tolerance", tolerance, "relative residual tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Setup s = resolve_setup(preset, N, kvec, lvec);
        if (vr->parsed()) return cmd_verify_relations(s, max_word_len, seed, out);
        if (tau->parsed()) return cmd_tau(s, word, base_n, base_i, out);
        if (orb->parsed()) return cmd_orbit(s, orbit_len, out);
        if (dg->parsed()) return cmd_degree_growth(s, word, iters, seed, out);
        if (qp->parsed()) return cmd_qp_step(s, out);
        if (cc->parsed())
            return cmd_char_check(s, q_str, b0_str, b1_str, c_str, precision, tolerance, out);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
