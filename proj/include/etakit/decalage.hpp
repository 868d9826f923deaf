#pragma once

#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"

namespace etakit {

/// L eta_f N as a complex in adapted bases. In degree n the basis is
/// f^{n - lo} * adapted[n - lo], and inclusion.comps holds those products.
template <class R>
struct EtaResult {
    CochainComplex<R> complex;
    ChainMap<R> inclusion;
    std::vector<Mat<R>> adapted;
    std::vector<int> f_powers;
};

template <EuclideanRing R>
Mat<R> divide_entries(const R& ring, Mat<R> A, const typename R::value_type& f) {
    for (auto& x : A.a)
        if (!ring.is_zero(x)) x = divide_exact(ring, x, f);
    return A;
}

template <EuclideanRing R>
EtaResult<R> eta(const R& ring, const CochainComplex<R>& N, const typename R::value_type& f) {
    if (ring.is_zero(f)) throw DomainError("eta needs a regular element, got zero");
    EtaResult<R> out;
    out.complex.lo = N.lo;
    out.complex.ranks = N.ranks;
    out.inclusion.lo = N.lo;
    const std::size_t len = N.ranks.size();
    for (std::size_t i = 0; i < len; ++i) {
        const int n = N.lo + static_cast<int>(i);
        const auto dn = differential(ring, N, n);
        Mat<R> Y = (dn.rows == 0 || mat::is_zero(ring, dn)) ? mat::identity(ring, N.ranks[i])
                                                             : solve_in_submodule(ring, dn, f);
        if (Y.cols != N.ranks[i]) throw VerificationFailure("eta basis is not of full rank");
        out.adapted.push_back(std::move(Y));
        out.f_powers.push_back(static_cast<int>(i));
    }
    auto fp = ring.one();
    for (std::size_t i = 0; i < len; ++i) {
        out.inclusion.comps.push_back(mat::scale(ring, out.adapted[i], fp));
        fp = ring.mul(fp, f);
    }
    for (std::size_t i = 0; i + 1 < len; ++i) {
        // d (f^i Y_i) = f^{i+1} Y_{i+1} M_i
        auto dY = divide_entries(ring, mat::mul(ring, N.d[i], out.adapted[i]), f);
        auto M = LatticeSolver<R>(ring, out.adapted[i + 1]).coordinates(dY);
        if (!M) throw VerificationFailure("eta differential does not land in the next eta term");
        out.complex.d.push_back(std::move(*M));
    }
    auto v = validate(ring, out.complex);
    if (!v.ok) throw VerificationFailure("eta output fails d^2 = 0: " + v.message);
    return out;
}

/// The map L eta_f N -> L eta_f N' induced by a chain map phi: N -> N'.
template <EuclideanRing R>
ChainMap<R> eta_map(const R& ring, const EtaResult<R>& src, const EtaResult<R>& dst, const ChainMap<R>& phi,
                    const CochainComplex<R>& N, const CochainComplex<R>& N2) {
    if (src.complex.lo != dst.complex.lo) throw DomainError("eta_map needs complexes starting in the same degree");
    ChainMap<R> out{src.complex.lo, {}};
    for (int n = src.complex.lo; n <= src.complex.hi(); ++n) {
        auto img = mat::mul(ring, component(ring, phi, N, N2, n), src.adapted[static_cast<std::size_t>(n - src.complex.lo)]);
        if (n > dst.complex.hi()) {
            if (!mat::is_zero(ring, img)) throw VerificationFailure("map leaves the target range");
            out.comps.push_back(mat::zero(ring, 0, img.cols));
            continue;
        }
        auto c = LatticeSolver<R>(ring, dst.adapted[static_cast<std::size_t>(n - dst.complex.lo)]).coordinates(img);
        if (!c) throw VerificationFailure("induced map does not preserve the eta condition");
        out.comps.push_back(std::move(*c));
    }
    return out;
}

/// Certificate that L eta_f N -> N becomes a quasi-isomorphism after
/// inverting f: every cone divisor divides f^T.
struct LocalizationVerdict {
    bool ok = true;
    int T = 0;
    std::vector<std::string> divisors;
    std::string failure;
};

template <EuclideanRing R>
LocalizationVerdict eta_nat_check(const R& ring, const CochainComplex<R>& N, const EtaResult<R>& E,
                                  const typename R::value_type& f) {
    LocalizationVerdict v;
    v.T = 2 * (N.hi() - N.lo);
    const auto fT = [&] {
        auto r = ring.one();
        for (int i = 0; i < v.T; ++i) r = ring.mul(r, f);
        return r;
    }();
    auto H = cohomology(ring, cone(ring, E.complex, N, E.inclusion));
    for (int n = H.lo; n <= H.hi(); ++n) {
        const auto& g = H.at(n);
        if (g.free_rank()) {
            v.ok = false;
            v.failure = "cone has free cohomology in degree " + std::to_string(n);
        }
        for (const auto& d : g.divisors()) {
            v.divisors.push_back(ring.to_string(d));
            if (!divides(ring, d, fT)) {
                v.ok = false;
                v.failure = "divisor " + ring.to_string(d) + " does not divide f^" + std::to_string(v.T);
            }
        }
    }
    return v;
}

/// The complex (H^*(N/f), Bockstein), kept as the subquotient Z^n / B^n in
/// coordinates of the cocycle lattice Z^n of N tensor A/f.
template <class R>
struct BocksteinComplex {
    ModuleComplex<R> complex;
    std::vector<Mat<R>> cocycles;                 // Z^n as ambient columns
    std::vector<CohomologyGroup<R>> cohomology;   // H^n(N/f)
    std::vector<Mat<R>> matrices;                 // Bockstein on generators, degree n -> n+1
};

template <EuclideanRing R>
BocksteinComplex<R> bockstein(const R& ring, const CochainComplex<R>& N, const typename R::value_type& f) {
    if (ring.is_zero(f)) throw DomainError("bockstein needs a regular element, got zero");
    const auto Nf = reduce_mod(ring, N, f);
    BocksteinComplex<R> out;
    out.complex.lo = N.lo;
    for (int n = N.lo; n <= N.hi(); ++n) {
        auto Z = cocycle_lattice(ring, Nf, n);
        const auto B = mat::hcat(ring, relations(ring, Nf, n), differential(ring, N, n - 1));
        out.cohomology.emplace_back(ring, Z, B);
        auto Bz = LatticeSolver<R>(ring, Z).coordinates(B);
        if (!Bz) throw VerificationFailure("boundaries are not cocycles");
        out.complex.ranks.push_back(Z.cols);
        out.complex.rel.push_back(std::move(*Bz));
        out.cocycles.push_back(std::move(Z));
    }
    for (int n = N.lo; n < N.hi(); ++n) {
        const std::size_t i = static_cast<std::size_t>(n - N.lo);
        auto y = divide_entries(ring, mat::mul(ring, N.d[i], out.cocycles[i]), f);
        auto M = LatticeSolver<R>(ring, out.cocycles[i + 1]).coordinates(y);
        if (!M) throw VerificationFailure("Bockstein lift failed");
        out.complex.d.push_back(std::move(*M));
    }
    // Bockstein on the chosen generators of H^n(N/f)
    auto beta = [&](int n, const Vec<R>& x) {
        const auto& H1 = out.cohomology[static_cast<std::size_t>(n + 1 - N.lo)];
        Vec<R> y = mat::apply(ring, differential(ring, N, n), x);
        for (auto& e : y)
            if (!ring.is_zero(e)) e = divide_exact(ring, e, f);
        return H1.class_of(y);
    };
    for (int n = N.lo; n < N.hi(); ++n) {
        const auto& H0 = out.cohomology[static_cast<std::size_t>(n - N.lo)];
        const auto& H1 = out.cohomology[static_cast<std::size_t>(n + 1 - N.lo)];
        Mat<R> m(H1.generator_count(), H0.generator_count(), ring.zero());
        for (std::size_t j = 0; j < H0.generator_count(); ++j) {
            const auto g = H0.generator(j);
            const auto c = beta(n, g);
            for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
            // another lift: add f times a vector and a boundary
            Vec<R> g2 = g;
            for (auto& e : g2) e = ring.add(e, f);
            if (n > N.lo) {
                Vec<R> w(N.rank(n - 1), ring.one());
                auto dw = mat::apply(ring, differential(ring, N, n - 1), w);
                for (std::size_t k = 0; k < g2.size(); ++k) g2[k] = ring.add(g2[k], dw[k]);
            }
            if (beta(n, g2) != c) throw VerificationFailure("Bockstein depends on the lift");
            if (n + 1 < N.hi() && !H1.is_zero()) {
                const auto rep = H1.representative(c);
                for (const auto& e : beta(n + 1, rep))
                    if (!ring.is_zero(e)) throw VerificationFailure("Bockstein squared is not zero");
            }
        }
        out.matrices.push_back(std::move(m));
    }
    return out;
}

/// The canonical map L eta_f N / f -> (H^*(N/f), Bock), f^n v |-> [v], and
/// the exact verdict on its cone.
template <EuclideanRing R>
QuasiIsoVerdict eta_bockstein_compare(const R& ring, const CochainComplex<R>& N, const typename R::value_type& f) {
    const auto E = eta(ring, N, f);
    const auto X = reduce_mod(ring, E.complex, f);
    const auto B = bockstein(ring, N, f);
    ModuleMap<R> phi{N.lo, {}};
    for (std::size_t i = 0; i < N.ranks.size(); ++i) {
        auto c = LatticeSolver<R>(ring, B.cocycles[i]).coordinates(E.adapted[i]);
        if (!c) throw VerificationFailure("eta basis vector is not a cocycle mod f");
        phi.comps.push_back(std::move(*c));
    }
    return quasi_iso_exact(ring, X, B.complex, phi);
}

struct EtaIdentityReport {
    bool composition = false;
    bool base_change = false;
    std::optional<std::string> base_change_skip;
    QuasiIsoVerdict base_change_verdict;
};

/// L eta_{fg} N = L eta_f L eta_g N as subcomplexes, and
/// (L eta_f N) / g ~ L eta_{f mod g}(N / g).
template <EuclideanRing R>
EtaIdentityReport eta_identities(const R& ring, const CochainComplex<R>& N, const typename R::value_type& f,
                                 const typename R::value_type& g) {
    EtaIdentityReport rep;
    const auto Efg = eta(ring, N, ring.mul(f, g));
    const auto Eg = eta(ring, N, g);
    const auto Ef_g = eta(ring, Eg.complex, f);
    rep.composition = true;
    for (std::size_t i = 0; i < N.ranks.size(); ++i) {
        auto composite = mat::mul(ring, Eg.inclusion.comps[i], Ef_g.inclusion.comps[i]);
        if (!same_span(ring, composite, Efg.inclusion.comps[i])) rep.composition = false;
    }

    if (!ring.is_unit(ring_gcd(ring, f, g))) {
        rep.base_change_skip = "f is a zero divisor modulo g";
        return rep;
    }
    if (!N.ranks.empty()) {
        const auto H0 = cohomology_at(ring, reduce_mod(ring, N, g), N.lo);
        for (const auto& e : H0.divisors())
            if (!ring.is_unit(ring_gcd(ring, f, e))) {
                rep.base_change_skip = "H^0(N/gN) has f-torsion";
                return rep;
            }
    }
    const auto Ef = eta(ring, N, f);
    // lifts of L eta_{f mod g}(N/g): h_n * {y : dy in (h_{n+1}/h_n) N}, h_n = gcd(f^n, g)
    ModuleComplex<R> X{N.lo, N.ranks, {}, {}};
    std::vector<Mat<R>> basis;
    auto fp = ring.one();
    std::vector<typename R::value_type> h;
    for (std::size_t i = 0; i <= N.ranks.size(); ++i) {
        h.push_back(ring_gcd(ring, fp, g));
        fp = ring.mul(fp, f);
    }
    for (std::size_t i = 0; i < N.ranks.size(); ++i) {
        const int n = N.lo + static_cast<int>(i);
        const auto dn = differential(ring, N, n);
        const auto step = divide_exact(ring, h[i + 1], h[i]);
        Mat<R> Y = (dn.rows == 0 || mat::is_zero(ring, dn)) ? mat::identity(ring, N.ranks[i])
                                                             : solve_in_submodule(ring, dn, step);
        basis.push_back(mat::scale(ring, Y, h[i]));
    }
    for (std::size_t i = 0; i < N.ranks.size(); ++i) {
        LatticeSolver<R> S(ring, basis[i]);
        auto rel = S.coordinates(mat::scalar(ring, N.ranks[i], g));
        if (!rel) throw VerificationFailure("g N is not inside the base-change lattice");
        X.rel.push_back(std::move(*rel));
        if (i + 1 < N.ranks.size()) {
            auto dx = LatticeSolver<R>(ring, basis[i + 1]).coordinates(mat::mul(ring, N.d[i], basis[i]));
            if (!dx) throw VerificationFailure("base-change lattice is not a subcomplex");
            X.d.push_back(std::move(*dx));
        }
    }
    ModuleMap<R> phi{N.lo, {}};
    for (std::size_t i = 0; i < N.ranks.size(); ++i) {
        auto c = LatticeSolver<R>(ring, basis[i]).coordinates(Ef.inclusion.comps[i]);
        if (!c) throw VerificationFailure("L eta_f N does not map into the base-change lattice");
        phi.comps.push_back(std::move(*c));
    }
    rep.base_change_verdict = quasi_iso_exact(ring, reduce_mod(ring, Ef.complex, g), X, phi);
    rep.base_change = rep.base_change_verdict.quasi_iso;
    return rep;
}

}  // namespace etakit
