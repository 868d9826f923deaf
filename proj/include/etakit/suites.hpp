#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "decalage.hpp"
#include "fvproc.hpp"
#include "parallel.hpp"
#include "qtorus.hpp"
#include "report.hpp"
#include "witt.hpp"

namespace etakit {

struct SuiteOptions {
    std::uint64_t seed = 7;
    std::size_t cases = 100;    // corpus size and Witt draws per identity
    std::size_t samples = 20;   // F-V axiom draws per axiom
};

namespace suite_detail {

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = seed * 0x9E3779B97F4A7C15ull;
    for (auto x : {a, b, c}) h = (h ^ (x + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2))) * 0xBF58476D1CE4E5B9ull;
    return h;
}

inline std::vector<CochainComplex<Integers>> corpus(const SuiteOptions& o) {
    CorpusParams P;
    P.cases = o.cases;
    return corpus_generate(CorpusKind::random_free_z, P, o.seed);
}

template <class K>
std::string grid_label(const TorusKoszul<K>& T) {
    return std::string(K::is_field ? "GF" : "ZZ") + " d=" + std::to_string(T.d()) + " p=" + std::to_string(T.p()) +
           " k=" + std::to_string(T.level()) + " B=" + std::to_string(T.B());
}

/// Monic coefficient vector of a nonzero Laurent element over F_p, dropping
/// the monomial unit.
inline std::vector<std::int64_t> monic_part(const FpTower& A, const FpValue& a) {
    const auto& k = A.base();
    return poly::scale(k, a.coeffs, k.inv(a.coeffs.back()));
}

}  // namespace suite_detail

/// Bockstein comparison on the random free Z corpus for f = 2, 3.
inline SuiteResult suite_eta_bockstein(const SuiteOptions& o) {
    SuiteResult s{"eta-bockstein", "L eta_p N / p -> (H(N/p), Bockstein) is a quasi-isomorphism", {}};
    const Integers Z;
    const auto C = suite_detail::corpus(o);
    const std::vector<std::int64_t> primes{2, 3};
    auto out = parallel_map(C.size() * primes.size(), [&](std::size_t t) {
        const auto& N = C[t / primes.size()];
        const auto p = primes[t % primes.size()];
        const auto v = eta_bockstein_compare(Z, N, BigInt(p));
        CaseResult c{"complex " + std::to_string(t / primes.size()) + " f=" + std::to_string(p),
                     v.quasi_iso ? Verdict::pass : Verdict::fail, {}, {}};
        if (!v.quasi_iso) c.witness = {{"complex", io::complex_to_json(Z, N)}, {"verdict", verdict_to_json(v)}};
        return c;
    });
    for (auto& c : out) s.add(std::move(c));
    return s;
}

/// L eta_{fg} = L eta_f L eta_g and base change on the same corpus.
inline SuiteResult suite_eta_identities(const SuiteOptions& o) {
    SuiteResult s{"eta-identities", "L eta_{fg} N = L eta_f L eta_g N; base change verified or skipped", {}};
    const Integers Z;
    const auto C = suite_detail::corpus(o);
    const std::vector<std::pair<std::int64_t, std::int64_t>> fg{{2, 3}, {2, 2}, {3, 5}};
    auto out = parallel_map(C.size() * fg.size(), [&](std::size_t t) {
        const auto& N = C[t / fg.size()];
        const auto [f, g] = fg[t % fg.size()];
        const auto rep = eta_identities(Z, N, BigInt(f), BigInt(g));
        const std::string tag =
            "complex " + std::to_string(t / fg.size()) + " (f,g)=(" + std::to_string(f) + "," + std::to_string(g) + ")";
        std::vector<CaseResult> r;
        r.push_back({tag + " composition", rep.composition ? Verdict::pass : Verdict::fail, {}, {}});
        if (!rep.composition) r.back().witness = io::complex_to_json(Z, N);
        if (rep.base_change_skip) {
            r.push_back({tag + " base change", Verdict::skip, "hypothesis fails: " + *rep.base_change_skip, {}});
        } else {
            r.push_back({tag + " base change", rep.base_change ? Verdict::pass : Verdict::fail, {}, {}});
            if (!rep.base_change)
                r.back().witness = {{"complex", io::complex_to_json(Z, N)},
                                    {"verdict", verdict_to_json(rep.base_change_verdict)}};
        }
        return r;
    });
    for (auto& v : out)
        for (auto& c : v) s.add(std::move(c));
    return s;
}

/// Witt identities over Z, Z/p^3 and F_p[t], plus the tower model of W_r.
inline SuiteResult suite_witt(const SuiteOptions& o) {
    SuiteResult s{"witt", "ghost map, FV = p, projection formula, F[x] = [x^p], RF = FR, RV = VR", {}};
    struct Job {
        int ring;
        std::int64_t p;
        int r;
    };
    std::vector<Job> jobs;
    for (std::int64_t p : {2, 3, 5})
        for (int r = 1; r <= 4; ++r)
            for (int ring = 0; ring < 4; ++ring) jobs.push_back({ring, p, r});
    auto out = parallel_map(jobs.size(), [&](std::size_t t) {
        const auto [ring, p, r] = jobs[t];
        Rng rng(suite_detail::mix(o.seed, static_cast<std::uint64_t>(ring), static_cast<std::uint64_t>(p),
                                  static_cast<std::uint64_t>(r)));
        switch (ring) {
            case 0: return witt_identities(Integers{}, p, r, o.cases, rng);
            case 1: return witt_identities(IntegersMod(BigInt(ipow(p, 3))), p, r, o.cases, rng);
            case 2: return witt_identities(Poly<PrimeField>(PrimeField(p), "t"), p, r, o.cases, rng);
            default: return ThetaModel<PrimeField>(PrimeField(p), p, r, r).verify(std::min<std::size_t>(o.cases, 20), rng);
        }
    });
    for (const auto& rep : out)
        for (const auto& i : rep.identities) {
            const std::string name = rep.ring + " p=" + std::to_string(rep.p) + " r=" + std::to_string(rep.r) + ": " + i.name;
            if (i.skipped) {
                s.add({name, Verdict::skip, "needs a longer vector", {}});
            } else {
                s.add(name, i.pass, i.pass ? std::to_string(i.cases) + " cases" : i.counterexample);
            }
        }
    return s;
}

/// mu = xi_r phi^{-r}(mu), xi_r = prod phi^{-i}(xi), xi_r(1) = p^r,
/// phi(xi) = [p]_q and [p]_q = (q - 1)^{p - 1} mod p, against values built by
/// exact division.
inline SuiteResult suite_distinguished(const SuiteOptions&) {
    SuiteResult s{"distinguished", "identities among mu, xi, xi_r and [p]_q for r <= k <= 4", {}};
    for (std::int64_t p : {2, 3, 5})
        for (int k = 0; k <= 4; ++k) {
            const ZTower A(Integers{}, p, k);
            const FpTower F(PrimeField(p), p, k);
            const std::string at = "p=" + std::to_string(p) + " k=" + std::to_string(k);
            const auto q = A.q_exponent();
            const auto mu = A.sub(A.monomial(q, 1), A.one());
            s.add(at + " mu = q - 1", A.mu() == mu);
            // [p]_q = (q^p - 1) / (q - 1), by division
            const auto pq = A.divide_exact(A.sub(A.monomial(p * q, 1), A.one()), mu);
            s.add(at + " [p]_q by division", A.q_int(p) == pq);
            const auto Fmu = F.sub(F.monomial(q, 1), F.one());
            s.add(at + " [p]_q = (q - 1)^(p - 1) mod p", F.q_int(p) == F.pow(Fmu, static_cast<unsigned>(p - 1)));
            for (int r = 1; r <= k; ++r) {
                const std::string tag = at + " r=" + std::to_string(r);
                const auto qr = ipow(p, static_cast<unsigned>(k - r));
                const auto phi_r_mu = A.sub(A.monomial(qr, 1), A.one());
                const auto xi_r = A.divide_exact(mu, phi_r_mu);
                s.add(tag + " xi_r = mu / phi^-r(mu)", A.xi_r(r) == xi_r && A.phi_inv_mu(r) == phi_r_mu);
                s.add(tag + " mu = xi_r phi^-r(mu)", A.mul(A.xi_r(r), A.phi_inv_mu(r)) == A.mu());
                auto prod = A.one();
                for (int i = 0; i < r; ++i) prod = A.mul(prod, A.phi_inv_xi(i));
                s.add(tag + " xi_r = prod phi^-i(xi)", prod == A.xi_r(r));
                s.add(tag + " xi_r(1) = p^r", A.evaluate_at_one(A.xi_r(r)) == BigInt(ipow(p, static_cast<unsigned>(r))));
            }
            if (k >= 1) s.add(at + " phi(xi) = [p]_q", A.frobenius(A.xi()) == A.q_int(p) && A.phi_xi() == A.q_int(p));
        }
    return s;
}

namespace suite_detail {

struct TorusPoint {
    bool exact;
    int d, k;
    std::int64_t p;
};

/// d in {1, 2}, p in {2, 3}, k <= 2 over F_p[q_k], plus d = 1 over Z[q_k].
inline std::vector<TorusPoint> torus_grid() {
    std::vector<TorusPoint> g;
    for (bool exact : {false, true})
        for (int d = 1; d <= 2; ++d)
            for (std::int64_t p : {2, 3})
                for (int k = 0; k <= 2; ++k)
                    if (!exact || d == 1) g.push_back({exact, d, k, p});
    return g;
}

template <class F>
SuiteResult torus_suite(std::string name, std::string claim, std::int64_t B, F&& check) {
    SuiteResult s{std::move(name), std::move(claim), {}};
    const auto grid = torus_grid();
    auto out = parallel_map(grid.size(), [&](std::size_t t) {
        const auto g = grid[t];
        if (g.exact) {
            const TorusKoszul<Integers> T(ZTower(Integers{}, g.p, g.k), g.d, B);
            return std::pair{grid_label(T), check(T)};
        }
        const TorusKoszul<PrimeField> T(FpTower(PrimeField(g.p), g.p, g.k), g.d, B);
        return std::pair{grid_label(T), check(T)};
    });
    for (auto& [label, v] : out) s.add(label, v.pass, std::to_string(v.blocks.size()) + " blocks", graded_to_json(v, true));
    return s;
}

}  // namespace suite_detail

/// L eta_mu of the Koszul model against the q-de Rham complex, junk-units
/// read at q_k = 1 modulo p.
inline SuiteResult suite_torus_compare(const SuiteOptions&) {
    return suite_detail::torus_suite("torus-compare",
                                     "integral blocks: exact quasi-isomorphism; fractional blocks: junk-unit annihilators",
                                     3, [](const auto& T) { return compare_eta_qdr(T, 1, 1); });
}

inline SuiteResult suite_invert_mu(const SuiteOptions&) {
    return suite_detail::torus_suite("invert-mu", "cone divisors of L eta_mu K -> K divide mu^(2d)", 3,
                                     [](const auto& T) { return invert_mu_check(T); });
}

/// q = 1 specialization of the q-de Rham complex against classical de Rham.
inline SuiteResult suite_q_to_one(const SuiteOptions&) {
    SuiteResult s{"q-to-one", "q-de Rham at q = 1 equals the classical de Rham complex", {}};
    for (int d = 1; d <= 2; ++d)
        for (std::int64_t B = 1; B <= 3; ++B)
            for (std::int64_t p : {2, 3})
                for (int k = 0; k <= 1; ++k) {
                    const QdR<Integers> Q(ZTower(Integers{}, p, k), d, B);
                    const auto v = q_to_one_check(Q);
                    s.add("d=" + std::to_string(d) + " B=" + std::to_string(B) + " p=" + std::to_string(p) +
                              " k=" + std::to_string(k),
                          v.pass, std::to_string(v.blocks.size()) + " blocks", graded_to_json(v, true));
                }
    return s;
}

/// Cokernel of the linearized Frobenius on H^i of the d = 1 q-de Rham
/// complex over F_p[q], killed by [p]_q^i up to junk-units.
inline SuiteResult suite_breuil_kisin(const SuiteOptions&) {
    SuiteResult s{"breuil-kisin", "coker of linearized phi on H^i is killed by [p]_q^i up to junk-units", {}};
    const std::int64_t B = 6;
    for (std::int64_t p : {2, 3}) {
        const QdR<PrimeField> Q(FpTower(PrimeField(p), p, 0), 1, B);
        const std::string at = "p=" + std::to_string(p) + " B=" + std::to_string(B);
        const auto chain = frobenius_check<PrimeField>(Q);
        s.add(at + " phi is a chain map", chain.pass, {}, graded_to_json(chain, true));
        for (int i = 0; i <= 1; ++i) {
            const auto v = breuil_kisin_check(Q, i, 1, 1);
            s.add(at + " i=" + std::to_string(i), v.pass, std::to_string(v.blocks.size()) + " blocks",
                  graded_to_json(v, true));
        }
    }
    return s;
}

/// F-V-procomplex axioms on the torus families, r <= 3.
inline SuiteResult suite_fv_axioms(const SuiteOptions& o) {
    SuiteResult s{"fv-axioms", "F-V-procomplex axioms including F d lambda_r([U]) = lambda([U^(p-1)]) d lambda([U])", {}};
    struct Job {
        Process proc;
        int d;
        std::int64_t p;
    };
    std::vector<Job> jobs;
    for (auto proc : {Process::improved, Process::pre})
        for (int d = 1; d <= 2; ++d)
            for (std::int64_t p : {2, 3}) jobs.push_back({proc, d, p});
    auto out = parallel_map(jobs.size(), [&](std::size_t t) {
        const auto [proc, d, p] = jobs[t];
        const FVFamily fam(p, d, 3, 3, proc);
        return axioms_check(fam, o.samples, suite_detail::mix(o.seed, static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(p)));
    });
    for (const auto& rep : out)
        for (const auto& a : rep.axioms) {
            const std::string name = rep.process + " d=" + std::to_string(rep.d) + " p=" + std::to_string(rep.p) +
                                     " r<=" + std::to_string(rep.k) + ": " + a.name;
            if (a.skipped) {
                s.add({name, Verdict::skip, "needs r_max >= 3", {}});
            } else {
                s.add(name, a.pass, a.pass ? std::to_string(a.cases) + " samples" : a.counterexample);
            }
        }
    return s;
}

/// W_r(D) ~ L eta_mu D / xi_r blockwise, and improved against pre.
inline SuiteResult suite_fv_rewrite(const SuiteOptions&) {
    SuiteResult s{"fv-rewrite", "W_r(D) ~ L eta_mu D / xi_r; improved vs pre killed by phi^-r(mu)^(2d)", {}};
    struct Job {
        int d;
        std::int64_t p;
        int r;
    };
    std::vector<Job> jobs;
    for (int d = 1; d <= 2; ++d)
        for (std::int64_t p : {2, 3})
            for (int r = 1; r <= 3; ++r) jobs.push_back({d, p, r});
    auto out = parallel_map(jobs.size(), [&](std::size_t t) { return rewrite_as_eta(jobs[t].p, jobs[t].d, 3, 3, jobs[t].r); });
    for (const auto& rep : out) {
        const std::string at = "d=" + std::to_string(rep.d) + " p=" + std::to_string(rep.p) + " k=" + std::to_string(rep.k) +
                               " B=" + std::to_string(rep.B) + " r=" + std::to_string(rep.r);
        io::Json bad_rw = io::Json::array(), bad_cmp = io::Json::array();
        for (const auto& b : rep.blocks) {
            if (!(b.mu_factor && b.eta_bockstein && b.composition && b.cohomology_agrees))
                bad_rw.push_back({{"weight", b.label}, {"note", b.note}});
            if (!b.annihilated)
                bad_cmp.push_back({{"weight", b.label}, {"kernel", b.kernel_divisors}, {"cokernel", b.cokernel_divisors}});
        }
        const std::string detail =
            std::to_string(rep.blocks.size()) + " blocks, " + std::to_string(rep.certificates) + " certificates";
        s.add(at + " rewrite", rep.rewrite_pass(), detail, bad_rw.empty() ? io::Json() : bad_rw);
        s.add(at + " improved vs pre", rep.compare_pass(), detail, bad_cmp.empty() ? io::Json() : bad_cmp);
    }
    return s;
}

/// Elementary divisors of H^1 of the d = 1 q-de Rham complex over F_p[q],
/// B = 4, against (q - 1)^(p^a - 1) [m]_q^(p^a) for |j| = p^a m, computed in
/// F_p[q] directly.
inline SuiteResult suite_elementary_divisors(const SuiteOptions&) {
    SuiteResult s{"elementary-divisors", "H^1 of the d = 1 q-de Rham complex has divisors [j]_q, B = 4", {}};
    const std::int64_t B = 4;
    for (std::int64_t p : {2, 3, 5}) {
        const PrimeField k(p);
        const FpTower A(k, p, 0);
        const QdR<PrimeField> Q(A, 1, B);
        const poly::Coeffs<PrimeField> q_minus_1{k.from_int(-1), 1};
        for (std::int64_t j = -B; j <= B; ++j) {
            const auto H = cohomology_at(A, as_module_complex(A, Q.block({j})), 1);
            std::vector<std::vector<std::int64_t>> got;
            for (const auto& e : H.divisors())
                if (!A.is_unit(e)) got.push_back(suite_detail::monic_part(A, e));
            std::vector<std::vector<std::int64_t>> want;
            std::size_t free_rank = 0;
            if (j == 0) {
                free_rank = 1;
            } else {
                std::int64_t m = j < 0 ? -j : j, pa = 1;
                while (m % p == 0) {
                    m /= p;
                    pa *= p;
                }
                auto qm = poly::Coeffs<PrimeField>(static_cast<std::size_t>(m), 1);  // [m]_q
                auto h = poly::mul(k, poly::pow(k, q_minus_1, static_cast<unsigned>(pa - 1)),
                                   poly::pow(k, qm, static_cast<unsigned>(pa)));
                if (h.size() > 1) want.push_back(h);
            }
            bool ok = got == want && H.free_rank() == free_rank;
            // p | j: the divisor carries the factor (q - 1)^(p - 1)
            if (j != 0 && j % p == 0)
                ok = ok && got.size() == 1 &&
                     poly::try_divide(k, got[0], poly::pow(k, q_minus_1, static_cast<unsigned>(p - 1))).has_value();
            std::string shown;
            for (const auto& g : got) shown += (shown.empty() ? "" : ", ") + poly::to_string(k, g, "q");
            s.add("p=" + std::to_string(p) + " j=" + std::to_string(j), ok,
                  (free_rank ? "free rank 1" : "divisors: " + (shown.empty() ? std::string("none") : shown)));
        }
    }
    return s;
}

struct SuiteEntry {
    std::string name;
    int criterion;
    std::function<SuiteResult(const SuiteOptions&)> run;
};

inline const std::vector<SuiteEntry>& suites() {
    static const std::vector<SuiteEntry> all{
        {"eta-bockstein", 1, suite_eta_bockstein},     {"eta-identities", 2, suite_eta_identities},
        {"witt", 3, suite_witt},                       {"distinguished", 4, suite_distinguished},
        {"torus-compare", 5, suite_torus_compare},     {"q-to-one", 6, suite_q_to_one},
        {"invert-mu", 7, suite_invert_mu},             {"breuil-kisin", 8, suite_breuil_kisin},
        {"fv-axioms", 9, suite_fv_axioms},             {"fv-rewrite", 10, suite_fv_rewrite},
        {"elementary-divisors", 11, suite_elementary_divisors},
    };
    return all;
}

inline const SuiteEntry& find_suite(const std::string& name) {
    for (const auto& s : suites())
        if (s.name == name) return s;
    throw InputError("unknown suite \"" + name + "\"");
}

}  // namespace etakit
