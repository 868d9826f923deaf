#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "decalage.hpp"
#include "diagonal.hpp"

namespace etakit {

/// Numerators of a weight tuple; the denominator p^k is carried by the owner.
using WeightVec = std::vector<std::int64_t>;

/// All tuples in [-bound, bound]^d in lexicographic order.
inline std::vector<WeightVec> weight_box(int d, std::int64_t bound) {
    std::vector<WeightVec> out;
    WeightVec w(static_cast<std::size_t>(d), -bound);
    if (d == 0) return {WeightVec{}};
    for (;;) {
        out.push_back(w);
        int i = d - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == bound) w[static_cast<std::size_t>(i--)] = -bound;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

inline std::string format_fraction(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

inline std::string format_weight(const WeightVec& J, std::int64_t den) {
    if (J.size() == 1) return format_fraction(J[0], den);
    std::string s = "(";
    for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + format_fraction(J[i], den);
    return s + ")";
}

/// Subsets of {0..d-1} as bitmasks, grouped by size, each group in
/// lexicographic order of the sorted element lists.
inline std::vector<std::vector<unsigned>> koszul_subsets(int d) {
    std::vector<std::vector<unsigned>> by(static_cast<std::size_t>(d) + 1);
    std::vector<std::pair<std::vector<int>, unsigned>> all;
    for (unsigned m = 0; m < (1u << d); ++m) {
        std::vector<int> el;
        for (int i = 0; i < d; ++i)
            if (m & (1u << i)) el.push_back(i);
        all.emplace_back(el, m);
    }
    std::sort(all.begin(), all.end());
    for (const auto& [el, m] : all) by[el.size()].push_back(m);
    return by;
}

inline std::size_t subset_index(const std::vector<unsigned>& group, unsigned mask) {
    return static_cast<std::size_t>(std::find(group.begin(), group.end(), mask) - group.begin());
}

/// Koszul complex on scalars c_0..c_{d-1}: basis e_S, and
/// d(e_S) = sum_{i not in S} (-1)^{#{s in S : s < i}} c_i e_{S + i}.
template <class R>
CochainComplex<R> koszul(const R& ring, const std::vector<typename R::value_type>& c) {
    const int d = static_cast<int>(c.size());
    const auto subsets = koszul_subsets(d);
    CochainComplex<R> K;
    K.lo = 0;
    for (const auto& g : subsets) K.ranks.push_back(g.size());
    for (int n = 0; n < d; ++n) {
        const auto& src = subsets[static_cast<std::size_t>(n)];
        const auto& dst = subsets[static_cast<std::size_t>(n + 1)];
        Mat<R> m(dst.size(), src.size(), ring.zero());
        for (std::size_t j = 0; j < src.size(); ++j)
            for (int i = 0; i < d; ++i) {
                if (src[j] & (1u << i)) continue;
                const int below = __builtin_popcount(src[j] & ((1u << i) - 1u));
                const auto& ci = c[static_cast<std::size_t>(i)];
                m(subset_index(dst, src[j] | (1u << i)), j) = below % 2 ? ring.neg(ci) : ci;
            }
        K.d.push_back(std::move(m));
    }
    return K;
}

/// Finite-level Koszul model of continuous Z_p^d-cohomology: weights
/// J / p^k with |J_i| <= B p^k, block = Koszul(q_k^{J_i} - 1).
template <class K>
class TorusKoszul {
   public:
    using Ring = TowerRing<K>;

    TorusKoszul(Ring ring, int d, std::int64_t B) : ring_(std::move(ring)), d_(d), B_(B) {
        if (d < 1 || d > 8) throw DomainError("torus dimension must be between 1 and 8");
        if (B < 1) throw DomainError("weight bound must be positive");
        if constexpr (!K::is_field) {
            if (d != 1) throw Unsupported("exact ZZ[q_k] mode supports d = 1 only");
        }
    }

    const Ring& ring() const { return ring_; }
    int d() const { return d_; }
    int level() const { return ring_.level(); }
    std::int64_t p() const { return ring_.p(); }
    std::int64_t B() const { return B_; }
    std::int64_t denominator() const { return ring_.q_exponent(); }
    std::int64_t bound() const { return B_ * denominator(); }

    std::vector<WeightVec> weights() const { return weight_box(d_, bound()); }
    bool in_band(const WeightVec& J) const {
        for (auto j : J)
            if (j > bound() || j < -bound()) return false;
        return true;
    }
    bool integral(const WeightVec& J) const {
        for (auto j : J)
            if (j % denominator() != 0) return false;
        return true;
    }
    std::string weight_string(const WeightVec& J) const { return format_weight(J, denominator()); }

    std::vector<typename Ring::value_type> scalars(const WeightVec& J) const {
        std::vector<typename Ring::value_type> c;
        for (auto j : J) c.push_back(ring_.binomial(j));
        return c;
    }
    CochainComplex<Ring> block(const WeightVec& J) const {
        if (static_cast<int>(J.size()) != d_) throw DomainError("weight has the wrong dimension");
        if (!in_band(J)) throw BandOverflow("weight " + weight_string(J) + " outside the band |w| <= " + std::to_string(B_));
        return koszul(ring_, scalars(J));
    }

   private:
    Ring ring_;
    int d_;
    std::int64_t B_;
};

/// q-de Rham complex of the d-dimensional torus over a tower ring (q =
/// q_k^{p^k}): integral weights j with |j_i| <= B, block = Koszul([j_i]_q).
template <class K>
class QdR {
   public:
    using Ring = TowerRing<K>;

    QdR(Ring ring, int d, std::int64_t B) : ring_(std::move(ring)), d_(d), B_(B) {
        if (d < 1 || d > 8) throw DomainError("torus dimension must be between 1 and 8");
        if (B < 1) throw DomainError("weight bound must be positive");
    }

    const Ring& ring() const { return ring_; }
    int d() const { return d_; }
    std::int64_t B() const { return B_; }
    std::vector<WeightVec> weights() const { return weight_box(d_, B_); }
    bool in_band(const WeightVec& j) const {
        for (auto x : j)
            if (x > B_ || x < -B_) return false;
        return true;
    }
    std::vector<typename Ring::value_type> scalars(const WeightVec& j) const {
        std::vector<typename Ring::value_type> c;
        for (auto x : j) c.push_back(ring_.q_int(x));
        return c;
    }
    CochainComplex<Ring> block(const WeightVec& j) const {
        if (static_cast<int>(j.size()) != d_) throw DomainError("weight has the wrong dimension");
        if (!in_band(j)) throw BandOverflow("weight " + format_weight(j, 1) + " outside the band |w| <= " + std::to_string(B_));
        return koszul(ring_, scalars(j));
    }

   private:
    Ring ring_;
    int d_;
    std::int64_t B_;
};

/// Group summary with printable divisors, shared by both coefficient modes.
struct GroupSummary {
    std::size_t free_rank = 0;
    std::vector<std::string> divisors;
    bool is_zero() const { return free_rank == 0 && divisors.empty(); }
};

template <class R>
std::vector<GroupSummary> summarize(const R& ring, const CohomologyReport<R>& H) {
    std::vector<GroupSummary> out;
    for (const auto& g : H.groups) {
        GroupSummary s{g.free_rank(), {}};
        for (const auto& d : g.divisors()) s.divisors.push_back(ring.to_string(d));
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<GroupSummary> summarize(const ZTower& ring, const std::vector<DiagonalGroup>& H) {
    std::vector<GroupSummary> out;
    for (const auto& g : H) {
        GroupSummary s{g.free_rank, {}};
        for (const auto& d : g.divisors) s.divisors.push_back(ring.to_string(d));
        out.push_back(std::move(s));
    }
    return out;
}

/// Cohomology of every block of a weight-graded family.
template <class K, class Model>
std::vector<std::pair<WeightVec, std::vector<GroupSummary>>> graded_cohomology(const Model& C) {
    std::vector<std::pair<WeightVec, std::vector<GroupSummary>>> out;
    const auto& ring = C.ring();
    for (const auto& w : C.weights()) {
        auto block = C.block(w);
        if constexpr (K::is_field) out.emplace_back(w, summarize(ring, cohomology(ring, block)));
        else out.emplace_back(w, summarize(ring, cohomology_diagonal(ring, block)));
    }
    return out;
}

struct BlockVerdict {
    WeightVec weight;
    std::string label;
    bool integral = false;
    bool pass = false;
    std::vector<std::string> annihilators;
    std::string note;
};

struct GradedVerdict {
    bool pass = true;
    std::vector<BlockVerdict> blocks;
    void add(BlockVerdict b) {
        if (!b.pass) pass = false;
        blocks.push_back(std::move(b));
    }
};

/// L eta_mu of each Koszul block against the q-de Rham complex: integral
/// weights by an exact quasi-isomorphism mu^n e_S |-> e_S, fractional
/// weights by junk-unit annihilators in the truncation (n, M).
template <class K>
GradedVerdict compare_eta_qdr(const TorusKoszul<K>& T, int n, int M) {
    const auto& ring = T.ring();
    const QdR<K> Q(ring, T.d(), T.B());
    const auto mu = ring.mu();
    GradedVerdict out;
    for (const auto& J : T.weights()) {
        BlockVerdict b{J, T.weight_string(J), T.integral(J), false, {}, {}};
        const auto block = T.block(J);
        if constexpr (K::is_field) {
            const auto E = eta(ring, block, mu);
            if (b.integral) {
                WeightVec j;
                for (auto x : J) j.push_back(x / T.denominator());
                const auto target = Q.block(j);
                ChainMap<TowerRing<K>> phi{0, E.adapted};
                auto v = quasi_iso_exact(ring, E.complex, target, phi);
                b.pass = v.quasi_iso;
                for (const auto& e : v.witness)
                    for (const auto& s : e.divisors) b.annihilators.push_back(s);
                if (!b.pass) b.note = "cone of the comparison map is not acyclic";
            } else {
                const auto H = cohomology(ring, E.complex);
                b.pass = true;
                for (const auto& g : H.groups) {
                    if (g.free_rank()) {
                        b.pass = false;
                        b.note = "free cohomology in a fractional block";
                    }
                    for (const auto& h : g.divisors()) {
                        b.annihilators.push_back(ring.to_string(h));
                        if (!unit_in_truncation(ring, h, n, M)) {
                            b.pass = false;
                            b.note = "annihilator " + ring.to_string(h) + " is not a junk unit";
                        }
                    }
                }
            }
        } else {
            const auto E = eta_diagonal(ring, block, mu);
            if (b.integral) {
                const auto target = Q.block({J[0] / T.denominator()});
                const auto a = E.complex.d[0](0, 0), c = target.d[0](0, 0);
                const auto H = strand_cone_cohomology(ring, a, c, E.adapted[0](0, 0), E.adapted[1](0, 0));
                b.pass = true;
                for (const auto& g : H) {
                    if (!g.is_zero()) b.pass = false;
                    for (const auto& h : g.divisors) b.annihilators.push_back(ring.to_string(h));
                }
                if (!b.pass) b.note = "cone of the comparison map is not acyclic";
            } else {
                const auto H = cohomology_diagonal(ring, E.complex);
                b.pass = true;
                for (const auto& g : H) {
                    if (g.free_rank) {
                        b.pass = false;
                        b.note = "free cohomology in a fractional block";
                    }
                    for (const auto& h : g.divisors) {
                        b.annihilators.push_back(ring.to_string(h));
                        if (!unit_in_truncation(ring, h, n, M)) {
                            b.pass = false;
                            b.note = "annihilator " + ring.to_string(h) + " is not a junk unit";
                        }
                    }
                }
            }
        }
        out.add(std::move(b));
    }
    return out;
}

/// The invert-mu comparison: every cone divisor of L eta_mu K -> K divides
/// mu^{2d}.
template <class K>
GradedVerdict invert_mu_check(const TorusKoszul<K>& T) {
    const auto& ring = T.ring();
    const auto mu = ring.mu();
    const auto bound = ring.pow(mu, static_cast<unsigned>(2 * T.d()));
    GradedVerdict out;
    for (const auto& J : T.weights()) {
        BlockVerdict b{J, T.weight_string(J), T.integral(J), true, {}, {}};
        const auto block = T.block(J);
        if constexpr (K::is_field) {
            const auto E = eta(ring, block, mu);
            auto v = eta_nat_check(ring, block, E, mu);
            b.annihilators = v.divisors;
            b.pass = v.ok && v.T == 2 * T.d();
            b.note = v.failure;
        } else {
            const auto E = eta_diagonal(ring, block, mu);
            const auto H = strand_cone_cohomology(ring, E.complex.d[0](0, 0), block.d[0](0, 0),
                                                  E.inclusion.comps[0](0, 0), E.inclusion.comps[1](0, 0));
            for (const auto& g : H) {
                if (g.free_rank) {
                    b.pass = false;
                    b.note = "cone has free cohomology";
                }
                for (const auto& h : g.divisors) {
                    b.annihilators.push_back(ring.to_string(h));
                    if (!cyclotomic_divides(h, bound)) {
                        b.pass = false;
                        b.note = "divisor " + ring.to_string(h) + " does not divide mu^" + std::to_string(2 * T.d());
                    }
                }
            }
        }
        out.add(std::move(b));
    }
    return out;
}

/// Frobenius on one block: source weight w maps to p w; degree-n matrices
/// act after applying phi to coefficients.
template <class R>
struct FrobeniusBlock {
    WeightVec source, target;
    bool overflow = false;
    std::vector<Mat<R>> multipliers;
};

template <class K>
Mat<TowerRing<K>> frobenius_entries(const TowerRing<K>& ring, Mat<TowerRing<K>> A) {
    for (auto& x : A.a) x = ring.frobenius(x);
    return A;
}

/// Exact check of d_{pw} M_n = M_{n+1} phi(d_w) in every degree.
template <class K>
bool frobenius_commutes(const TowerRing<K>& ring, const CochainComplex<TowerRing<K>>& src,
                        const CochainComplex<TowerRing<K>>& dst, const FrobeniusBlock<TowerRing<K>>& F) {
    for (int n = 0; n < src.hi(); ++n) {
        auto lhs = mat::mul(ring, differential(ring, dst, n), F.multipliers[static_cast<std::size_t>(n)]);
        auto rhs = mat::mul(ring, F.multipliers[static_cast<std::size_t>(n + 1)],
                            frobenius_entries(ring, differential(ring, src, n)));
        if (!(mat::sub(ring, lhs, rhs) == mat::zero(ring, lhs.rows, lhs.cols))) return false;
    }
    return true;
}

/// Degree-one multiplier of phi on the q-de Rham complex, solved from the
/// chain condition on the weight-one line: [p]_q = m * phi([1]_q).
template <class K>
typename TowerRing<K>::value_type qdr_frobenius_multiplier(const TowerRing<K>& ring) {
    return ring.divide_exact(ring.q_int(ring.p()), ring.frobenius(ring.q_int(1)));
}

template <class K>
FrobeniusBlock<TowerRing<K>> frobenius_block(const QdR<K>& Q, const WeightVec& j) {
    const auto& ring = Q.ring();
    FrobeniusBlock<TowerRing<K>> F{j, {}, false, {}};
    for (auto x : j) F.target.push_back(x * ring.p());
    F.overflow = !Q.in_band(F.target);
    const auto m = qdr_frobenius_multiplier(ring);
    const auto subsets = koszul_subsets(Q.d());
    auto mn = ring.one();
    for (const auto& g : subsets) {
        F.multipliers.push_back(mat::scalar(ring, g.size(), mn));
        mn = ring.mul(mn, m);
    }
    return F;
}

template <class K>
FrobeniusBlock<TowerRing<K>> frobenius_block(const TorusKoszul<K>& T, const WeightVec& J) {
    const auto& ring = T.ring();
    FrobeniusBlock<TowerRing<K>> F{J, {}, false, {}};
    for (auto x : J) F.target.push_back(x * ring.p());
    F.overflow = !T.in_band(F.target);
    for (const auto& g : koszul_subsets(T.d())) F.multipliers.push_back(mat::identity(ring, g.size()));
    return F;
}

/// Chain-map property of phi on every in-band block.
template <class K, class Model>
GradedVerdict frobenius_check(const Model& C) {
    GradedVerdict out;
    for (const auto& w : C.weights()) {
        auto F = frobenius_block(C, w);
        BlockVerdict b{w, format_weight(w, 1), true, true, {}, {}};
        if (F.overflow) {
            b.note = "overflow: target weight outside the band";
            out.blocks.push_back(std::move(b));
            continue;
        }
        b.pass = frobenius_commutes(C.ring(), C.block(w), C.block(F.target), F);
        if (!b.pass) b.note = "Frobenius square does not commute";
        out.add(std::move(b));
    }
    return out;
}

/// Breuil-Kisin check on H^i of the q-de Rham complex over F_p[q]: the
/// cokernel of the linearized Frobenius, block by block, must be killed by
/// [p]_q^i times a junk unit.
template <class K>
GradedVerdict breuil_kisin_check(const QdR<K>& Q, int i, int n, int M) {
    static_assert(K::is_field, "Breuil-Kisin check runs over F_p[q_k]");
    const auto& ring = Q.ring();
    const std::int64_t p = ring.p();
    if (Q.B() / p < 1) throw BandOverflow("band too small: no weight |w| <= B/p other than 0 maps into the band");
    if (i < 0 || i > Q.d()) throw DomainError("cohomological degree out of range");
    const auto pi = ring.pow(ring.q_int(p), static_cast<unsigned>(i));
    GradedVerdict out;
    for (const auto& t : Q.weights()) {
        BlockVerdict b{t, format_weight(t, 1), true, true, {}, {}};
        const auto Ct = Q.block(t);
        const auto Mt = as_module_complex(ring, Ct);
        auto Z = cocycle_lattice(ring, Mt, i);
        auto gens = differential(ring, Ct, i - 1);
        bool has_source = true;
        WeightVec s;
        for (auto x : t) {
            if (x % p) has_source = false;
            s.push_back(x / p);
        }
        if (has_source) {
            const auto F = frobenius_block(Q, s);
            const auto Zs = cocycle_lattice(ring, as_module_complex(ring, Q.block(s)), i);
            auto img = mat::mul(ring, F.multipliers[static_cast<std::size_t>(i)], frobenius_entries(ring, Zs));
            gens = mat::hcat(ring, gens, img);
        }
        CohomologyGroup<TowerRing<K>> coker(ring, Z, gens);
        if (coker.free_rank()) {
            b.pass = false;
            b.note = "cokernel has a free part";
        }
        for (const auto& h : coker.divisors()) {
            b.annihilators.push_back(ring.to_string(h));
            const auto rest = divide_exact(ring, h, ring_gcd(ring, h, pi));
            if (!unit_in_truncation(ring, rest, n, M)) {
                b.pass = false;
                b.note = "cokernel divisor " + ring.to_string(h) + " is not [p]_q^" + std::to_string(i) + " times a junk unit";
            }
        }
        out.add(std::move(b));
    }
    return out;
}

/// q -> 1: each q-de Rham block specialized at q_k = 1 must equal the
/// classical de Rham block Koszul(j_1, ..., j_d) over the base.
template <class K>
GradedVerdict q_to_one_check(const QdR<K>& Q) {
    const auto& ring = Q.ring();
    const auto& base = ring.base();
    GradedVerdict out;
    for (const auto& j : Q.weights()) {
        BlockVerdict b{j, format_weight(j, 1), true, true, {}, {}};
        const auto block = Q.block(j);
        CochainComplex<K> at_one{block.lo, block.ranks, {}};
        for (const auto& m : block.d) {
            Matrix<typename K::value_type> s(m.rows, m.cols, base.zero());
            for (std::size_t e = 0; e < m.a.size(); ++e) s.a[e] = ring.specialize(m.a[e], base.one());
            at_one.d.push_back(std::move(s));
        }
        std::vector<typename K::value_type> c;
        for (auto x : j) c.push_back(base.from_int(x));
        const auto classical = koszul(base, c);
        b.pass = at_one == classical;
        if (!b.pass) b.note = "specialized block differs from the classical de Rham block";
        out.add(std::move(b));
    }
    return out;
}

/// The q -> 1 specialization of a whole q-de Rham complex, block by block.
template <class K>
std::vector<std::pair<WeightVec, CochainComplex<K>>> specialize_q_to_one(const QdR<K>& Q) {
    const auto& ring = Q.ring();
    std::vector<std::pair<WeightVec, CochainComplex<K>>> out;
    for (const auto& j : Q.weights()) {
        const auto block = Q.block(j);
        CochainComplex<K> at_one{block.lo, block.ranks, {}};
        for (const auto& m : block.d) {
            Matrix<typename K::value_type> s(m.rows, m.cols, ring.base().zero());
            for (std::size_t e = 0; e < m.a.size(); ++e) s.a[e] = ring.specialize(m.a[e], ring.base().one());
            at_one.d.push_back(std::move(s));
        }
        out.emplace_back(j, std::move(at_one));
    }
    return out;
}

}  // namespace etakit
