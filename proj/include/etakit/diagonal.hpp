#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"
#include "decalage.hpp"

namespace etakit {

// Exact arithmetic over ZZ[q_k^{±1}] for weight-diagonal complexes: every
// differential has at most one nonzero entry per row and column, each of
// cyclotomic-monomial shape. Such a complex splits into strands
// [A --c--> A] and isolated lines.

using ZTower = TowerRing<Integers>;
using ZLaurent = ZTower::value_type;

/// Cyclotomic part of h: the unit factor sign * q_k^e removed.
inline ZLaurent cyclotomic_normalize(const ZLaurent& h) {
    if (h.coeffs.empty()) return h;
    auto s = cyclotomic_factor(h);
    if (!s) throw Unsupported("element " + ZTower(Integers{}, 2, 0).to_string(h) + " is not cyclotomic-monomial");
    return cyclotomic_expand(s->mult);
}

inline bool cyclotomic_divides(const ZLaurent& a, const ZLaurent& b) {
    if (b.coeffs.empty()) return true;
    if (a.coeffs.empty()) return false;
    auto fa = cyclotomic_factor(a), fb = cyclotomic_factor(b);
    if (!fa || !fb) throw Unsupported("divisibility needs cyclotomic-monomial arguments");
    for (const auto& [n, m] : fa->mult) {
        auto it = fb->mult.find(n);
        if (it == fb->mult.end() || it->second < m) return false;
    }
    return true;
}

/// If h = q_k^a - 1 up to a unit, returns |a|.
inline std::optional<std::int64_t> binomial_exponent(const ZLaurent& h) {
    auto s = cyclotomic_factor(h);
    if (!s) return std::nullopt;
    std::int64_t a = 0;
    for (const auto& [n, m] : s->mult) {
        if (m != 1) return std::nullopt;
        a = std::max(a, n);
    }
    if (a == 0) return std::nullopt;
    for (std::int64_t n = 1; n <= a; ++n) {
        const bool want = a % n == 0;
        const bool have = s->mult.count(n) > 0;
        if (want != have) return std::nullopt;
    }
    return a;
}

/// Generator of the ideal (a, b), when it is principal for a reason we can
/// certify: one element divides the other, or both are binomials q^a - 1,
/// q^b - 1 (then the ideal is (q^{gcd(a,b)} - 1)).
inline ZLaurent principal_ideal_generator(const ZTower& ring, const ZLaurent& a, const ZLaurent& b) {
    if (a.coeffs.empty()) return cyclotomic_normalize(b);
    if (b.coeffs.empty()) return cyclotomic_normalize(a);
    if (ring.is_unit(a) || ring.is_unit(b)) return ring.one();
    if (cyclotomic_divides(a, b)) return cyclotomic_normalize(a);
    if (cyclotomic_divides(b, a)) return cyclotomic_normalize(b);
    auto ea = binomial_exponent(a), eb = binomial_exponent(b);
    if (ea && eb) return ring.binomial(std::gcd(*ea, *eb));
    throw Unsupported("ideal (" + ring.to_string(a) + ", " + ring.to_string(b) + ") is not certifiably principal");
}

/// Cohomology group summary in exact mode.
struct DiagonalGroup {
    std::size_t free_rank = 0;
    std::vector<ZLaurent> divisors;  // cyclotomic-normalized, nonunit
    bool is_zero() const { return free_rank == 0 && divisors.empty(); }
};

struct Strand {
    int degree;         // source degree
    std::size_t from;   // basis index in degree
    std::size_t to;     // basis index in degree + 1
    ZLaurent c;
};

struct StrandDecomposition {
    std::vector<Strand> strands;
    std::vector<std::pair<int, std::size_t>> isolated;
};

inline StrandDecomposition decompose_diagonal(const ZTower& ring, const CochainComplex<ZTower>& C) {
    StrandDecomposition s;
    std::vector<std::vector<char>> used;
    for (auto r : C.ranks) used.emplace_back(r, 0);
    for (int n = C.lo; n < C.hi(); ++n) {
        const auto& m = C.d[static_cast<std::size_t>(n - C.lo)];
        std::vector<int> row_hits(m.rows, 0), col_hits(m.cols, 0);
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j) {
                if (ring.is_zero(m(i, j))) continue;
                if (++row_hits[i] > 1 || ++col_hits[j] > 1)
                    throw Unsupported("complex over " + ring.name() + " is not weight-diagonal");
                if (!cyclotomic_factor(m(i, j)))
                    throw Unsupported("differential entry " + ring.to_string(m(i, j)) + " is not cyclotomic-monomial");
                auto& u0 = used[static_cast<std::size_t>(n - C.lo)][j];
                auto& u1 = used[static_cast<std::size_t>(n + 1 - C.lo)][i];
                if (u0 || u1) throw VerificationFailure("strand of length > 2 violates d^2 = 0");
                u0 = u1 = true;
                s.strands.push_back({n, j, i, m(i, j)});
            }
    }
    for (int n = C.lo; n <= C.hi(); ++n)
        for (std::size_t j = 0; j < C.rank(n); ++j)
            if (!used[static_cast<std::size_t>(n - C.lo)][j]) s.isolated.emplace_back(n, j);
    return s;
}

inline std::vector<DiagonalGroup> cohomology_diagonal(const ZTower& ring, const CochainComplex<ZTower>& C) {
    std::vector<DiagonalGroup> H(C.ranks.size());
    auto s = decompose_diagonal(ring, C);
    for (const auto& [n, j] : s.isolated) ++H[static_cast<std::size_t>(n - C.lo)].free_rank;
    for (const auto& st : s.strands) {
        if (ring.is_unit(st.c)) continue;
        H[static_cast<std::size_t>(st.degree + 1 - C.lo)].divisors.push_back(cyclotomic_normalize(st.c));
    }
    return H;
}

/// L eta_f on a weight-diagonal complex over ZZ[q_k]: strand e -> e' with
/// entry c in relative degree i gets basis f^i (f/g) e, f^{i+1} e' and new
/// entry c/g, g = gcd(f, c).
inline EtaResult<ZTower> eta_diagonal(const ZTower& ring, const CochainComplex<ZTower>& N, const ZLaurent& f) {
    if (ring.is_zero(f)) throw DomainError("eta needs a regular element, got zero");
    auto s = decompose_diagonal(ring, N);
    EtaResult<ZTower> out;
    out.complex.lo = N.lo;
    out.complex.ranks = N.ranks;
    out.inclusion.lo = N.lo;
    for (auto r : N.ranks) out.adapted.push_back(mat::identity(ring, r));
    for (std::size_t i = 0; i + 1 < N.ranks.size(); ++i)
        out.complex.d.push_back(mat::zero(ring, N.ranks[i + 1], N.ranks[i]));
    for (const auto& st : s.strands) {
        const std::size_t i = static_cast<std::size_t>(st.degree - N.lo);
        const auto g = cyclotomic_gcd(f, st.c);
        out.adapted[i](st.from, st.from) = ring.divide_exact(f, g);
        out.complex.d[i](st.to, st.from) = ring.divide_exact(st.c, g);
    }
    auto fp = ring.one();
    for (std::size_t i = 0; i < N.ranks.size(); ++i) {
        out.inclusion.comps.push_back(mat::scale(ring, out.adapted[i], fp));
        out.f_powers.push_back(static_cast<int>(i));
        fp = ring.mul(fp, f);
    }
    auto v = validate(ring, out.complex);
    if (!v.ok) throw VerificationFailure("eta output fails d^2 = 0: " + v.message);
    if (!(validate_map(ring, out.complex, N, out.inclusion).ok)) throw VerificationFailure("eta inclusion is not a chain map");
    return out;
}

/// Cohomology of the cone of a map of strands
///   [A --a--> A]  --(s0, s1)-->  [A --c--> A]
/// in cone degrees -1, 0, 1 (relative to the strand start).
inline std::vector<DiagonalGroup> strand_cone_cohomology(const ZTower& ring, const ZLaurent& a, const ZLaurent& c,
                                                         const ZLaurent& s0, const ZLaurent& s1) {
    if (!ring.is_zero(ring.sub(ring.mul(s1, a), ring.mul(c, s0)))) throw DomainError("strand map does not commute");
    std::vector<DiagonalGroup> H(3);
    // degree -1: kernel of x |-> (-a x, s0 x)
    if (ring.is_zero(a) && ring.is_zero(s0)) H[0].free_rank = 1;
    // degree 1: A / (s1, c)
    if (ring.is_zero(s1) && ring.is_zero(c)) {
        H[2].free_rank = 1;
    } else {
        auto g = principal_ideal_generator(ring, s1, c);
        if (!ring.is_unit(g)) H[2].divisors.push_back(g);
    }
    // degree 0: ker (s1, c) = A (c/g, -s1/g) modulo A (-a, s0)
    if (ring.is_zero(s1) && ring.is_zero(c)) {
        throw Unsupported("strand cone with zero target data");
    }
    const auto g = cyclotomic_gcd(s1, c);
    const auto k0 = ring.divide_exact(c, g), k1 = ring.neg(ring.divide_exact(s1, g));
    ZLaurent lambda;
    if (!ring.is_zero(k0)) lambda = ring.divide_exact(ring.neg(a), k0);
    else lambda = ring.divide_exact(s0, k1);
    if (!(ring.mul(lambda, k0) == ring.neg(a) && ring.mul(lambda, k1) == s0))
        throw VerificationFailure("cone image is not on the kernel line");
    if (ring.is_zero(lambda)) H[1].free_rank = 1;
    else if (!ring.is_unit(lambda)) H[1].divisors.push_back(cyclotomic_normalize(lambda));
    return H;
}

}  // namespace etakit
