#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "decalage.hpp"
#include "diagonal.hpp"
#include "fvproc.hpp"
#include "io.hpp"
#include "qtorus.hpp"
#include "report.hpp"
#include "suites.hpp"
#include "witt.hpp"

namespace etakit::cli {

using io::Json;

struct Options {
    std::string out;
    bool timing = false;
    // complex verbs
    std::string input;
    std::string f, g;
    // witt
    std::string op, x, y, a, ring;
    std::int64_t r_len = 0;
    // torus and families
    int d = 1, k = 1, i = 1, r = 0, m = -1;
    std::int64_t p = 2, B = 3;
    std::string trunc = "1,1";
    bool exact = false;
    std::string process = "improved";
    std::vector<std::string> weights;
    bool full = false;
    // suites and corpora
    std::string suite;
    std::uint64_t seed = 7;
    std::size_t cases = 100;
    std::size_t samples = 20;
    std::string kind = "random-free-z";
    int max_power = 6;
};

struct Outcome {
    Json config;
    Json results;
    bool pass = true;
};

/// Reads JSON from a file path, "-" for stdin.
inline Json read_json_file(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw InputError("cannot read " + path);
        ss << f.rdbuf();
    }
    return io::parse(ss.str());
}

/// Inline JSON, or "@path" to read it from a file.
inline Json json_arg(const std::string& s) {
    if (!s.empty() && s[0] == '@') return read_json_file(s.substr(1));
    return io::parse(s);
}

inline std::pair<int, int> parse_trunc(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw InputError("--trunc expects n,M");
    const auto n = io::small_integer(Json(s.substr(0, comma)), "n");
    const auto M = io::small_integer(Json(s.substr(comma + 1)), "M");
    if (n < 1 || M < 1 || n > 64 || M > 4096) throw InputError("--trunc needs 1 <= n <= 64 and 1 <= M <= 4096");
    return {static_cast<int>(n), static_cast<int>(M)};
}

inline WeightVec parse_weight(const std::string& s, int d) {
    WeightVec J;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');) J.push_back(io::small_integer(Json(part), "weight"));
    if (static_cast<int>(J.size()) != d) throw InputError("weight \"" + s + "\" needs " + std::to_string(d) + " entries");
    return J;
}

inline Json weight_json(const WeightVec& J) {
    Json w = Json::array();
    for (auto x : J) w.push_back(std::to_string(x));
    return w;
}

template <EuclideanRing R>
Json cohomology_json(const R& ring, const CohomologyReport<R>& H) {
    Json out = Json::array();
    for (int n = H.lo; n <= H.hi(); ++n) {
        Json div = Json::array();
        for (const auto& e : H.at(n).divisors()) div.push_back(ring.to_string(e));
        out.push_back({{"degree", n}, {"free_rank", H.at(n).free_rank()}, {"divisors", std::move(div)}});
    }
    return out;
}

inline Json cohomology_json(const ZTower& ring, int lo, const std::vector<DiagonalGroup>& H) {
    Json out = Json::array();
    for (std::size_t i = 0; i < H.size(); ++i) {
        Json div = Json::array();
        for (const auto& e : H[i].divisors) div.push_back(ring.to_string(e));
        out.push_back({{"degree", lo + static_cast<int>(i)}, {"free_rank", H[i].free_rank}, {"divisors", std::move(div)}});
    }
    return out;
}

inline Json summary_json(const std::vector<GroupSummary>& H) {
    Json out = Json::array();
    for (std::size_t n = 0; n < H.size(); ++n)
        out.push_back({{"degree", n}, {"free_rank", H[n].free_rank}, {"divisors", H[n].divisors}});
    return out;
}

template <class R>
Json map_json(const R& ring, const ChainMap<R>& f) {
    Json comps = Json::array();
    for (const auto& m : f.comps) comps.push_back(io::matrix_to_json(ring, m));
    return {{"lo", f.lo}, {"components", std::move(comps)}};
}

template <class R>
constexpr bool kDiagonalOnly = std::is_same_v<R, ZTower>;

template <class F>
auto with_complex_ring(const Json& cj, F&& f) {
    const io::AnyRing ring = io::ring_from_descriptor(io::field(cj, "ring"));
    return std::visit([&](const auto& R) { return f(R); }, ring);
}

// Complex verbs.

inline Outcome cmd_eta(const Options& o) {
    const Json cj = read_json_file(o.input);
    return with_complex_ring(cj, [&](const auto& ring) -> Outcome {
        using R = std::decay_t<decltype(ring)>;
        const auto N = io::complex_from_json(ring, cj);
        const auto f = io::element_from_json(ring, json_arg(o.f));
        Outcome out{{{"input", o.input}, {"f", io::element_to_json(ring, f)}}, {}, true};
        if constexpr (EuclideanRing<R>) {
            const auto E = eta(ring, N, f);
            const auto v = eta_nat_check(ring, N, E, f);
            out.results = {{"eta", io::complex_to_json(ring, E.complex)},
                           {"inclusion", map_json(ring, E.inclusion)},
                           {"f_powers", E.f_powers},
                           {"localization",
                            {{"pass", v.ok}, {"exponent", v.T}, {"cone_divisors", v.divisors}, {"failure", v.failure}}}};
            out.pass = v.ok;
        } else if constexpr (kDiagonalOnly<R>) {
            const auto E = eta_diagonal(ring, N, f);
            out.results = {{"eta", io::complex_to_json(ring, E.complex)},
                           {"inclusion", map_json(ring, E.inclusion)},
                           {"f_powers", E.f_powers}};
        } else {
            throw Unsupported("L eta over " + ring.name());
        }
        return out;
    });
}

inline Outcome cmd_bockstein(const Options& o) {
    const Json cj = read_json_file(o.input);
    return with_complex_ring(cj, [&](const auto& ring) -> Outcome {
        using R = std::decay_t<decltype(ring)>;
        if constexpr (EuclideanRing<R>) {
            const auto N = io::complex_from_json(ring, cj);
            const auto f = io::element_from_json(ring, json_arg(o.f));
            const auto B = bockstein(ring, N, f);
            Json H = Json::array(), maps = Json::array();
            for (std::size_t n = 0; n < B.cohomology.size(); ++n) {
                Json div = Json::array();
                for (const auto& e : B.cohomology[n].divisors()) div.push_back(ring.to_string(e));
                H.push_back({{"degree", N.lo + static_cast<int>(n)},
                             {"free_rank", B.cohomology[n].free_rank()},
                             {"divisors", std::move(div)}});
            }
            for (const auto& m : B.matrices) maps.push_back(io::matrix_to_json(ring, m));
            const auto v = eta_bockstein_compare(ring, N, f);
            return {{{"input", o.input}, {"f", io::element_to_json(ring, f)}},
                    {{"cohomology_mod_f", std::move(H)}, {"bockstein", std::move(maps)}, {"comparison", verdict_to_json(v)}},
                    v.quasi_iso};
        } else {
            throw Unsupported("Bockstein complexes over " + ring.name());
        }
    });
}

inline Outcome cmd_eta_check(const Options& o) {
    const Json cj = read_json_file(o.input);
    return with_complex_ring(cj, [&](const auto& ring) -> Outcome {
        using R = std::decay_t<decltype(ring)>;
        if constexpr (EuclideanRing<R>) {
            const auto N = io::complex_from_json(ring, cj);
            const auto f = io::element_from_json(ring, json_arg(o.f));
            Outcome out{{{"input", o.input}, {"f", io::element_to_json(ring, f)}}, {}, true};
            const auto E = eta(ring, N, f);
            const auto loc = eta_nat_check(ring, N, E, f);
            const auto bock = eta_bockstein_compare(ring, N, f);
            out.results = {{"localization", {{"pass", loc.ok}, {"exponent", loc.T}, {"cone_divisors", loc.divisors}}},
                           {"bockstein", verdict_to_json(bock)}};
            out.pass = loc.ok && bock.quasi_iso;
            if (!o.g.empty()) {
                const auto g = io::element_from_json(ring, json_arg(o.g));
                out.config["g"] = io::element_to_json(ring, g);
                const auto id = eta_identities(ring, N, f, g);
                Json bc = id.base_change_skip ? Json{{"verdict", "skip"}, {"reason", *id.base_change_skip}}
                                              : Json{{"verdict", id.base_change ? "pass" : "fail"},
                                                     {"witness", verdict_to_json(id.base_change_verdict)}};
                out.results["composition"] = id.composition;
                out.results["base_change"] = std::move(bc);
                out.pass = out.pass && id.composition && (id.base_change_skip || id.base_change);
            }
            if (!out.pass) out.results["counterexample"] = cj;
            return out;
        } else {
            throw Unsupported("L eta checks over " + ring.name());
        }
    });
}

inline Outcome cmd_cohomology(const Options& o) {
    const Json cj = read_json_file(o.input);
    return with_complex_ring(cj, [&](const auto& ring) -> Outcome {
        using R = std::decay_t<decltype(ring)>;
        const auto N = io::complex_from_json(ring, cj);
        if constexpr (EuclideanRing<R>) {
            return {{{"input", o.input}}, {{"cohomology", cohomology_json(ring, cohomology(ring, N))}}, true};
        } else if constexpr (kDiagonalOnly<R>) {
            return {{{"input", o.input}}, {{"cohomology", cohomology_json(ring, N.lo, cohomology_diagonal(ring, N))}}, true};
        } else {
            throw Unsupported("cohomology over " + ring.name());
        }
    });
}

// Witt vectors.

template <class R>
Outcome witt_over(const R& base, const Options& o, Json config) {
    const auto p = o.p;
    if (!is_prime(p)) throw InputError("p must be prime");
    const WittRing<R> W(base, p);
    auto vec = [&](const std::string& s) {
        Json j = json_arg(s);
        if (j.is_array()) j = Json{{"p", std::to_string(p)}, {"ring", io::descriptor(base)}, {"components", j}};
        auto w = io::witt_from_json(base, j);
        if (w.p != p) throw InputError("Witt vector prime does not match --p");
        return w;
    };
    auto length = [&](const WittVector<R>& a, const WittVector<R>& b) {
        if (a.length() != b.length()) throw InputError("Witt vectors of different lengths");
    };
    Json result;
    if (o.op == "add" || o.op == "mul") {
        const auto a = vec(o.x), b = vec(o.y);
        length(a, b);
        result = io::witt_to_json(base, o.op == "add" ? W.add(a, b) : W.mul(a, b));
    } else if (o.op == "F" || o.op == "R") {
        const auto a = vec(o.x);
        if (a.length() < 2) throw InputError(o.op + " needs length at least 2");
        result = io::witt_to_json(base, o.op == "F" ? W.frobenius(a) : W.restriction(a));
    } else if (o.op == "V") {
        result = io::witt_to_json(base, W.verschiebung(vec(o.x)));
    } else if (o.op == "teich") {
        if (o.r_len < 1 || o.r_len > 8) throw InputError("teich needs 1 <= --r <= 8");
        result = io::witt_to_json(base, W.teichmuller(io::element_from_json(base, json_arg(o.a)), static_cast<int>(o.r_len)));
    } else if (o.op == "ghost") {
        Json g = Json::array();
        for (const auto& c : W.ghost(vec(o.x))) g.push_back(io::encode(base, c));
        result = {{"p", std::to_string(p)}, {"ring", io::descriptor(base)}, {"ghost", std::move(g)}};
    } else {
        throw InputError("unknown Witt operation \"" + o.op + "\"");
    }
    return {std::move(config), {{"value", std::move(result)}}, true};
}

inline Outcome cmd_witt(const Options& o) {
    Json desc = Json{{"kind", "Integers"}};
    if (!o.ring.empty()) {
        desc = json_arg(o.ring);
    } else if (!o.x.empty()) {
        const Json x = json_arg(o.x);
        if (x.is_object() && x.contains("ring")) desc = x.at("ring");
    }
    Json config{{"op", o.op}, {"p", std::to_string(o.p)}, {"ring", desc}};
    const io::AnyRing ring = io::ring_from_descriptor(desc);
    return std::visit(
        [&](const auto& R) -> Outcome {
            using T = std::decay_t<decltype(R)>;
            if constexpr (std::is_same_v<T, Integers> || std::is_same_v<T, IntegersMod> ||
                          std::is_same_v<T, PrimeField> || std::is_same_v<T, Rationals> ||
                          std::is_same_v<T, Poly<PrimeField>> || std::is_same_v<T, Poly<Integers>>) {
                return witt_over(R, o, config);
            } else {
                throw Unsupported("Witt vectors over " + R.name());
            }
        },
        ring);
}

// Torus models.

inline Json torus_config(const Options& o) {
    return {{"d", o.d}, {"k", o.k}, {"p", std::to_string(o.p)}, {"B", std::to_string(o.B)}, {"exact", o.exact}};
}

template <class F>
Outcome with_tower(const Options& o, F&& f) {
    if (!is_prime(o.p)) throw InputError("p must be prime");
    if (o.k < 0 || o.k > 6) throw InputError("level k must be in [0, 6]");
    if (o.exact) return f(ZTower(Integers{}, o.p, o.k));
    return f(FpTower(PrimeField(o.p), o.p, o.k));
}

template <class Model>
Json model_blocks(const Model& C) {
    using K = typename Model::Ring::base_ring;
    Json blocks = Json::array();
    const auto H = graded_cohomology<K>(C);
    for (const auto& [w, groups] : H)
        blocks.push_back({{"weight", weight_json(w)}, {"complex", io::complex_to_json(C.ring(), C.block(w))},
                          {"cohomology", summary_json(groups)}});
    return blocks;
}

inline Outcome cmd_build_qdr(const Options& o) {
    return with_tower(o, [&](const auto& A) -> Outcome {
        using K = typename std::decay_t<decltype(A)>::base_ring;
        const QdR<K> Q(A, o.d, o.B);
        return {torus_config(o), {{"ring", io::descriptor(A)}, {"blocks", model_blocks(Q)}}, true};
    });
}

inline Outcome cmd_build_koszul(const Options& o) {
    return with_tower(o, [&](const auto& A) -> Outcome {
        using K = typename std::decay_t<decltype(A)>::base_ring;
        const TorusKoszul<K> T(A, o.d, o.B);
        Json blocks = model_blocks(T);
        for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i]["label"] = T.weight_string(T.weights()[i]);
        return {torus_config(o), {{"ring", io::descriptor(A)}, {"denominator", std::to_string(T.denominator())},
                                  {"blocks", std::move(blocks)}},
                true};
    });
}

inline Outcome cmd_compare(const Options& o) {
    const auto [n, M] = parse_trunc(o.trunc);
    return with_tower(o, [&](const auto& A) -> Outcome {
        using K = typename std::decay_t<decltype(A)>::base_ring;
        const TorusKoszul<K> T(A, o.d, o.B);
        const auto v = compare_eta_qdr(T, n, M);
        auto cfg = torus_config(o);
        cfg["trunc"] = {n, M};
        return {std::move(cfg), graded_to_json(v, false), v.pass};
    });
}

inline Outcome cmd_bk_check(const Options& o) {
    const auto [n, M] = parse_trunc(o.trunc);
    if (o.exact) throw Unsupported("the Breuil-Kisin check runs over F_p[q_k]");
    return with_tower(o, [&](const auto& A) -> Outcome {
        using K = typename std::decay_t<decltype(A)>::base_ring;
        if constexpr (K::is_field) {
            const QdR<K> Q(A, o.d, o.B);
            const auto chain = frobenius_check<K>(Q);
            const auto v = breuil_kisin_check(Q, o.i, n, M);
            auto cfg = torus_config(o);
            cfg["i"] = o.i;
            cfg["trunc"] = {n, M};
            return {std::move(cfg), {{"chain_map", graded_to_json(chain, true)}, {"cokernel", graded_to_json(v, false)}},
                    chain.pass && v.pass};
        } else {
            throw Unsupported("the Breuil-Kisin check runs over F_p[q_k]");
        }
    });
}

inline Outcome cmd_specialize(const Options& o) {
    if (!is_prime(o.p)) throw InputError("p must be prime");
    const QdR<Integers> Q(ZTower(Integers{}, o.p, o.k), o.d, o.B);
    Json blocks = Json::array();
    for (const auto& [w, C] : specialize_q_to_one(Q))
        blocks.push_back({{"weight", weight_json(w)}, {"complex", io::complex_to_json(Integers{}, C)}});
    const auto v = q_to_one_check(Q);
    auto cfg = torus_config(o);
    cfg["exact"] = true;
    return {std::move(cfg), {{"blocks", std::move(blocks)}, {"check", graded_to_json(v, true)}}, v.pass};
}

// F-V-procomplex families.

inline Process parse_process(const std::string& s) {
    if (s == "pre") return Process::pre;
    if (s == "improved") return Process::improved;
    throw InputError("--process must be pre or improved");
}

inline Json fv_config(const Options& o) {
    return {{"process", o.process}, {"p", std::to_string(o.p)}, {"d", o.d}, {"k", o.k}, {"B", std::to_string(o.B)}};
}

inline void check_family_args(const Options& o) {
    if (!is_prime(o.p)) throw InputError("p must be prime");
    if (o.k > 4) throw InputError("r_max above 4 is out of desk scale");
}

inline Outcome cmd_fv_build(const Options& o) {
    check_family_args(o);
    const FVFamily fam(o.p, o.d, o.k, o.B, parse_process(o.process));
    Json cells = Json::array();
    const int r_lo = o.r > 0 ? o.r : 1, r_hi = o.r > 0 ? o.r : o.k;
    for (int r = r_lo; r <= r_hi; ++r) {
        const int m = o.m >= 0 ? o.m : r;
        std::vector<WeightVec> Js;
        if (o.weights.empty()) {
            Js = weight_box(o.d, o.B * ipow(o.p, static_cast<unsigned>(m)));
        } else {
            for (const auto& w : o.weights) Js.push_back(parse_weight(w, o.d));
        }
        for (const auto& J : Js) {
            const auto& c = fam.cell({r, J, m});
            Json H = Json::array(), X = Json::array();
            for (std::size_t n = 0; n < c.H.size(); ++n) {
                Json div = Json::array();
                for (const auto& e : c.H[n].divisors()) div.push_back(c.ring.to_string(e));
                H.push_back({{"degree", n}, {"free_rank", c.H[n].free_rank()}, {"divisors", std::move(div)}});
            }
            for (const auto& dm : c.X.d) X.push_back(io::matrix_to_json(c.ring, dm));
            cells.push_back({{"r", r}, {"weight", weight_json(J)}, {"level", m}, {"ring", io::descriptor(c.ring)},
                             {"xi_r", io::encode(c.ring, c.xi)}, {"ranks", c.X.ranks}, {"differentials", std::move(X)},
                             {"cohomology", std::move(H)}});
        }
    }
    return {fv_config(o), {{"cells", std::move(cells)}}, true};
}

inline Outcome cmd_fv_axioms(const Options& o) {
    check_family_args(o);
    const FVFamily fam(o.p, o.d, o.k, o.B, parse_process(o.process));
    const auto rep = axioms_check(fam, o.samples, o.seed);
    Json ax = Json::array();
    for (const auto& a : rep.axioms) {
        Json j{{"name", a.name}, {"verdict", a.skipped ? "skip" : a.pass ? "pass" : "fail"}, {"samples", a.cases}};
        if (a.skipped) j["reason"] = "needs r_max >= 3";
        if (!a.counterexample.empty()) j["counterexample"] = a.counterexample;
        ax.push_back(std::move(j));
    }
    auto cfg = fv_config(o);
    cfg["samples"] = o.samples;
    cfg["seed"] = std::to_string(o.seed);
    return {std::move(cfg), {{"axioms", std::move(ax)}}, rep.pass()};
}

inline Outcome rewrite_outcome(const Options& o, bool compare) {
    check_family_args(o);
    const auto [n, M] = parse_trunc(o.trunc);
    Json per_r = Json::array();
    bool pass = true;
    const int r_lo = o.r > 0 ? o.r : 1, r_hi = o.r > 0 ? o.r : o.k;
    for (int r = r_lo; r <= r_hi; ++r) {
        const auto rep = rewrite_as_eta(o.p, o.d, o.k, o.B, r, n, M);
        const bool ok = compare ? rep.compare_pass() : rep.rewrite_pass();
        pass = pass && ok;
        Json blocks = Json::array();
        for (const auto& b : rep.blocks) {
            const bool rw = b.mu_factor && b.eta_bockstein && b.composition && b.cohomology_agrees;
            if (compare) {
                if (!o.full && b.annihilated && b.kernel_divisors.empty() && b.cokernel_divisors.empty()) continue;
                blocks.push_back({{"weight", b.label}, {"kernel", b.kernel_divisors}, {"cokernel", b.cokernel_divisors},
                                  {"annihilated", b.annihilated}});
            } else {
                if (!o.full && rw) continue;
                blocks.push_back({{"weight", b.label}, {"mu_factor", b.mu_factor}, {"eta_bockstein", b.eta_bockstein},
                                  {"composition", b.composition}, {"cohomology_agrees", b.cohomology_agrees},
                                  {"transported", b.transported}, {"note", b.note}});
            }
        }
        per_r.push_back({{"r", r}, {"pass", ok}, {"blocks", rep.blocks.size()}, {"certificates", rep.certificates},
                         {"listed", std::move(blocks)}});
    }
    Json cfg{{"p", std::to_string(o.p)}, {"d", o.d}, {"k", o.k}, {"B", std::to_string(o.B)}, {"trunc", {n, M}}};
    return {std::move(cfg), {{"levels", std::move(per_r)}}, pass};
}

inline Outcome cmd_verify_suite(const Options& o) {
    SuiteOptions so{o.seed, o.cases, o.samples};
    Json results = Json::array();
    bool pass = true;
    for (const auto& e : suites()) {
        if (o.suite != "all" && o.suite != e.name) continue;
        const auto s = e.run(so);
        pass = pass && s.pass();
        auto j = suite_to_json(s);
        j["criterion"] = e.criterion;
        results.push_back(std::move(j));
    }
    if (results.empty()) find_suite(o.suite);
    return {{{"suite", o.suite}, {"seed", std::to_string(o.seed)}, {"cases", o.cases}, {"samples", o.samples}},
            std::move(results), pass};
}

inline Outcome cmd_corpus(const Options& o) {
    CorpusParams P;
    P.cases = o.cases;
    P.p = o.p;
    P.max_power = o.max_power;
    P.d = o.d;
    P.B = o.B;
    const auto kind = corpus_kind(o.kind);
    Json list = Json::array();
    for (const auto& C : corpus_generate(kind, P, o.seed)) list.push_back(io::complex_to_json(Integers{}, C));
    return {{{"kind", corpus_name(kind)}, {"seed", std::to_string(o.seed)}, {"cases", o.cases}},
            {{"complexes", std::move(list)}}, true};
}

/// Runs one command line. Exit codes: 0 every verdict passes, 1 some
/// verification fails, 2 malformed or unsupported input.
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    Options o;
    CLI::App app{"Exact decalage, Witt vector and q-de Rham toolkit", "etakit"};
    app.require_subcommand(1);
    app.add_option("--out", o.out, "write the JSON report here instead of stdout");
    app.add_flag("--timing", o.timing, "print elapsed time to stderr");

    auto complex_cmd = [&](const std::string& name, const std::string& help, bool needs_f) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("--input", o.input, "complex JSON file, - for stdin")->required();
        auto* f = c->add_option("--f", o.f, "element as JSON or decimal integer, @file to read it");
        if (needs_f) f->required();
        return c;
    };
    complex_cmd("eta", "L eta_f of a complex", true);
    complex_cmd("bockstein", "Bockstein complex of N / f and its comparison with L eta_f N / f", true);
    complex_cmd("eta-check", "localization, Bockstein and multiplicativity checks", true)
        ->add_option("--g", o.g, "second element for L eta_{fg} = L eta_f L eta_g");
    complex_cmd("cohomology", "cohomology of a complex", false);

    auto* witt = app.add_subcommand("witt", "truncated p-typical Witt vector arithmetic");
    witt->add_option("op", o.op, "add, mul, F, V, R, teich or ghost")->required();
    witt->add_option("--p", o.p, "prime")->required();
    witt->add_option("--x", o.x, "Witt vector JSON");
    witt->add_option("--y", o.y, "second Witt vector JSON");
    witt->add_option("--a", o.a, "ring element for teich");
    witt->add_option("--r", o.r_len, "length for teich");
    witt->add_option("--ring", o.ring, "ring descriptor JSON (default: from --x, else Integers)");

    auto torus_cmd = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("--d", o.d, "torus dimension")->required();
        c->add_option("--k", o.k, "tower level")->required();
        c->add_option("--p", o.p, "prime")->required();
        c->add_option("--B", o.B, "weight bound")->required();
        c->add_flag("--exact", o.exact, "coefficients Z[q_k] instead of F_p[q_k]");
        return c;
    };
    torus_cmd("build-qdr", "q-de Rham complex of the torus, block by block");
    torus_cmd("build-koszul", "finite-level Koszul model of the torus");
    torus_cmd("compare", "L eta_mu Koszul against q-de Rham")->add_option("--trunc", o.trunc, "junk truncation n,M");
    auto* bk = torus_cmd("bk-check", "Breuil-Kisin cokernel check on H^i");
    bk->add_option("--i", o.i, "cohomological degree")->required();
    bk->add_option("--trunc", o.trunc, "junk truncation n,M");
    torus_cmd("specialize", "q -> 1 specialization against classical de Rham");

    auto family_cmd = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("--p", o.p, "prime")->required();
        c->add_option("--d", o.d, "torus dimension")->required();
        c->add_option("--k", o.k, "r_max")->required();
        c->add_option("--B", o.B, "weight bound");
        return c;
    };
    auto* fvb = family_cmd("fv-build", "dump cells of an F-V-procomplex family");
    fvb->add_option("--process", o.process, "pre or improved");
    fvb->add_option("--r", o.r, "only this truncation level");
    fvb->add_option("--m", o.m, "tower level of the cells (default r)");
    fvb->add_option("--weight", o.weights, "weights j1,j2,... (default: the whole band)");
    auto* fva = family_cmd("fv-axioms", "F-V-procomplex axioms on sampled classes");
    fva->add_option("--process", o.process, "pre or improved");
    fva->add_option("--samples", o.samples, "draws per axiom");
    fva->add_option("--seed", o.seed, "seed");
    for (const char* name : {"fv-rewrite", "fv-compare"}) {
        auto* c = family_cmd(name, std::string(name) == "fv-rewrite" ? "W_r(D) against L eta_mu D / xi_r"
                                                                      : "improved against pre families");
        c->add_option("--r", o.r, "only this truncation level");
        c->add_option("--trunc", o.trunc, "junk truncation n,M");
        c->add_flag("--full", o.full, "list every block");
    }

    auto* vs = app.add_subcommand("verify-suite", "run a bundled verification suite");
    vs->add_option("suite", o.suite, "suite name or all")->required();
    vs->add_option("--seed", o.seed, "seed");
    vs->add_option("--cases", o.cases, "corpus size and Witt draws");
    vs->add_option("--samples", o.samples, "F-V axiom draws");

    auto* cg = app.add_subcommand("corpus", "generate a seeded corpus of complexes");
    cg->add_option("--kind", o.kind, "random-free-z, two-term-p-power or koszul-grid");
    cg->add_option("--seed", o.seed, "seed");
    cg->add_option("--cases", o.cases, "number of random complexes");
    cg->add_option("--p", o.p, "prime for two-term-p-power");
    cg->add_option("--max-power", o.max_power, "largest exponent for two-term-p-power");
    cg->add_option("--d", o.d, "dimension for koszul-grid");
    cg->add_option("--B", o.B, "weight bound for koszul-grid");

    std::vector<std::string> argv_s{"etakit"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "etakit: " << e.what() << "\n";
        return 2;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Outcome res;
        if (verb == "eta") res = cmd_eta(o);
        else if (verb == "bockstein") res = cmd_bockstein(o);
        else if (verb == "eta-check") res = cmd_eta_check(o);
        else if (verb == "cohomology") res = cmd_cohomology(o);
        else if (verb == "witt") res = cmd_witt(o);
        else if (verb == "build-qdr") res = cmd_build_qdr(o);
        else if (verb == "build-koszul") res = cmd_build_koszul(o);
        else if (verb == "compare") res = cmd_compare(o);
        else if (verb == "bk-check") res = cmd_bk_check(o);
        else if (verb == "specialize") res = cmd_specialize(o);
        else if (verb == "fv-build") res = cmd_fv_build(o);
        else if (verb == "fv-axioms") res = cmd_fv_axioms(o);
        else if (verb == "fv-rewrite") res = rewrite_outcome(o, false);
        else if (verb == "fv-compare") res = rewrite_outcome(o, true);
        else if (verb == "verify-suite") res = cmd_verify_suite(o);
        else res = cmd_corpus(o);
        emit_report(make_report(verb, std::move(res.config), std::move(res.results), res.pass), o.out, out);
        if (o.timing)
            err << "etakit: " << verb << " took "
                << std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count()
                << " ms\n";
        if (!res.pass) err << "etakit: " << verb << ": verification failed\n";
        return res.pass ? 0 : 1;
    } catch (const VerificationFailure& e) {
        err << "etakit: verification failure: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "etakit: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "etakit: malformed input: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace etakit::cli
