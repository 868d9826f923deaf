#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quotient.hpp"
#include "smith.hpp"

namespace etakit {

/// Bounded cochain complex of finite free modules. Degree lo + i has rank
/// ranks[i]; d[i] maps degree lo + i to lo + i + 1.
template <class R>
struct CochainComplex {
    int lo = 0;
    std::vector<std::size_t> ranks;
    std::vector<Mat<R>> d;

    int hi() const { return lo + static_cast<int>(ranks.size()) - 1; }
    bool empty() const { return ranks.empty(); }
    std::size_t rank(int n) const {
        if (n < lo || n > hi()) return 0;
        return ranks[static_cast<std::size_t>(n - lo)];
    }
    bool operator==(const CochainComplex&) const = default;
};

struct Validation {
    bool ok = true;
    int degree = 0;
    std::string message;
};

template <class R>
Mat<R> differential(const R& ring, const CochainComplex<R>& C, int n) {
    if (n >= C.lo && n < C.hi()) return C.d[static_cast<std::size_t>(n - C.lo)];
    return mat::zero(ring, C.rank(n + 1), C.rank(n));
}

/// Shape checks and d^{n+1} d^n = 0; reports the first failing degree.
template <class R>
Validation validate(const R& ring, const CochainComplex<R>& C) {
    if (C.ranks.empty()) {
        if (!C.d.empty()) return {false, C.lo, "differentials given for an empty complex"};
        return {};
    }
    if (C.d.size() + 1 != C.ranks.size()) return {false, C.lo, "expected one differential per adjacent degree pair"};
    for (std::size_t i = 0; i < C.d.size(); ++i) {
        const auto& m = C.d[i];
        if (m.rows != C.ranks[i + 1] || m.cols != C.ranks[i] || m.a.size() != m.rows * m.cols)
            return {false, C.lo + static_cast<int>(i), "differential shape does not match ranks"};
    }
    for (std::size_t i = 0; i + 1 < C.d.size(); ++i)
        if (!mat::is_zero(ring, mat::mul(ring, C.d[i + 1], C.d[i])))
            return {false, C.lo + static_cast<int>(i), "d^{n+1} d^n is not zero"};
    return {};
}

template <class R>
CochainComplex<R> make_complex(const R& ring, int lo, std::vector<std::size_t> ranks, std::vector<Mat<R>> d) {
    CochainComplex<R> C{lo, std::move(ranks), std::move(d)};
    auto v = validate(ring, C);
    if (!v.ok) throw DomainError("invalid complex at degree " + std::to_string(v.degree) + ": " + v.message);
    return C;
}

/// [A --c--> A] in degrees lo, lo + 1.
template <class R>
CochainComplex<R> two_term(const R& ring, const typename R::value_type& c, int lo = 0) {
    Mat<R> m(1, 1, c);
    return make_complex(ring, lo, {1, 1}, {m});
}

/// Chain map given by one matrix per degree of the source range.
template <class R>
struct ChainMap {
    int lo = 0;
    std::vector<Mat<R>> comps;
};

template <class R>
Mat<R> component(const R& ring, const ChainMap<R>& f, const CochainComplex<R>& src, const CochainComplex<R>& dst,
                 int n) {
    const int i = n - f.lo;
    if (i >= 0 && i < static_cast<int>(f.comps.size())) return f.comps[static_cast<std::size_t>(i)];
    return mat::zero(ring, dst.rank(n), src.rank(n));
}

template <class R>
Validation validate_map(const R& ring, const CochainComplex<R>& src, const CochainComplex<R>& dst,
                        const ChainMap<R>& f) {
    const int lo = std::min(src.lo, dst.lo) - 1, hi = std::max(src.hi(), dst.hi());
    for (int n = lo; n <= hi; ++n) {
        auto fn = component(ring, f, src, dst, n);
        if (fn.rows != dst.rank(n) || fn.cols != src.rank(n)) return {false, n, "component shape mismatch"};
        auto lhs = mat::mul(ring, component(ring, f, src, dst, n + 1), differential(ring, src, n));
        auto rhs = mat::mul(ring, differential(ring, dst, n), fn);
        if (!(mat::sub(ring, lhs, rhs) == mat::zero(ring, lhs.rows, lhs.cols)))
            return {false, n, "map does not commute with differentials"};
    }
    return {};
}

/// Degreewise quotient of free modules: degree lo + i is A^{ranks[i]} modulo
/// the column span of rel[i], with a differential that preserves relations.
template <class R>
struct ModuleComplex {
    int lo = 0;
    std::vector<std::size_t> ranks;
    std::vector<Mat<R>> d;
    std::vector<Mat<R>> rel;

    int hi() const { return lo + static_cast<int>(ranks.size()) - 1; }
    std::size_t rank(int n) const {
        if (n < lo || n > hi()) return 0;
        return ranks[static_cast<std::size_t>(n - lo)];
    }
};

template <class R>
Mat<R> differential(const R& ring, const ModuleComplex<R>& C, int n) {
    if (n >= C.lo && n < C.hi()) return C.d[static_cast<std::size_t>(n - C.lo)];
    return mat::zero(ring, C.rank(n + 1), C.rank(n));
}

template <class R>
Mat<R> relations(const R& ring, const ModuleComplex<R>& C, int n) {
    if (n >= C.lo && n <= C.hi()) return C.rel[static_cast<std::size_t>(n - C.lo)];
    return mat::zero(ring, 0, 0);
}

template <class R>
ModuleComplex<R> as_module_complex(const R& ring, const CochainComplex<R>& C) {
    ModuleComplex<R> M{C.lo, C.ranks, C.d, {}};
    for (auto r : C.ranks) M.rel.push_back(mat::zero(ring, r, 0));
    return M;
}

/// C tensor A/(f), kept as a complex over A with relations f.
template <class R>
ModuleComplex<R> reduce_mod(const R& ring, const CochainComplex<R>& C, const typename R::value_type& f) {
    ModuleComplex<R> M{C.lo, C.ranks, C.d, {}};
    for (auto r : C.ranks) M.rel.push_back(mat::scalar(ring, r, f));
    return M;
}

/// Naive base change to A/(f) with canonical representatives.
template <class R>
CochainComplex<Quotient<R>> tensor_reduce(const R& ring, const CochainComplex<R>& C,
                                          const typename R::value_type& f) {
    if (ring.is_zero(f)) throw DomainError("tensor_reduce needs a regular element");
    Quotient<R> Q(ring, f);
    CochainComplex<Quotient<R>> out{C.lo, C.ranks, {}};
    for (const auto& m : C.d) out.d.push_back(mat::map(Q, m, [&](const auto& x) { return Q.reduce(x); }));
    return out;
}

/// One cohomology group H^n = Z / B of a module complex. The cocycle lattice Z
/// is kept as a basis of the ambient module; classes are read off in the
/// Smith basis of B inside Z.
template <EuclideanRing R>
class CohomologyGroup {
   public:
    using value_type = typename R::value_type;

    CohomologyGroup(const R& ring, Mat<R> Z, const Mat<R>& boundaries) : ring_(ring), Z_(std::move(Z)), solver_(ring, Z_) {
        auto Bz = solver_.coordinates(boundaries);
        if (!Bz) throw VerificationFailure("boundaries are not cocycles");
        snf_ = smith_form(ring, *Bz, kTrackU | kTrackUinv);
        if (snf_.Uinv.rows == 0) snf_.Uinv = mat::identity(ring, Z_.cols);
        if (snf_.U.rows == 0) snf_.U = mat::identity(ring, Z_.cols);
        for (std::size_t i = 0; i < Z_.cols; ++i) {
            if (i < snf_.rank && ring.is_unit(snf_.diag[i])) continue;
            index_.push_back(i);
        }
    }

    std::size_t ambient_rank() const { return Z_.rows; }
    const Mat<R>& cocycles() const { return Z_; }
    std::size_t free_rank() const { return Z_.cols - snf_.rank; }
    /// Nonunit elementary divisors in chain order.
    std::vector<value_type> divisors() const {
        std::vector<value_type> out;
        for (auto i : index_)
            if (i < snf_.rank) out.push_back(snf_.diag[i]);
        return out;
    }
    bool is_zero() const { return index_.empty(); }
    /// Number of generators of the reduced presentation.
    std::size_t generator_count() const { return index_.size(); }
    /// Order of generator j: its divisor, or zero for a free generator.
    value_type generator_order(std::size_t j) const {
        const auto i = index_.at(j);
        return i < snf_.rank ? snf_.diag[i] : ring_.zero();
    }
    /// Ambient representative of generator j.
    Vec<R> generator(std::size_t j) const {
        return mat::apply(ring_, Z_, mat::column(snf_.Uinv, index_.at(j)));
    }
    bool is_cocycle(const Vec<R>& x) const { return solver_.contains(x); }
    /// Coordinates of the class of the cocycle x on the generators, reduced
    /// modulo each generator's order.
    Vec<R> class_of(const Vec<R>& x) const {
        auto c = solver_.coordinates(x);
        if (!c) throw VerificationFailure("class requested for a non-cocycle");
        auto y = mat::apply(ring_, snf_.U, *c);
        Vec<R> out;
        out.reserve(index_.size());
        for (auto i : index_) {
            if (i < snf_.rank) out.push_back(ring_.canonical_divmod(y[i], snf_.diag[i]).second);
            else out.push_back(y[i]);
        }
        return out;
    }
    bool is_zero_class(const Vec<R>& x) const {
        for (const auto& c : class_of(x))
            if (!ring_.is_zero(c)) return false;
        return true;
    }
    /// Ambient representative of the class with the given coordinates.
    Vec<R> representative(const Vec<R>& coords) const {
        Vec<R> x(Z_.rows, ring_.zero());
        for (std::size_t j = 0; j < coords.size(); ++j) {
            if (ring_.is_zero(coords[j])) continue;
            auto g = generator(j);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = ring_.add(x[i], ring_.mul(coords[j], g[i]));
        }
        return x;
    }

   private:
    R ring_;
    Mat<R> Z_;
    LatticeSolver<R> solver_;
    SmithForm<R> snf_;
    std::vector<std::size_t> index_;
};

template <EuclideanRing R>
struct CohomologyReport {
    int lo = 0;
    std::vector<CohomologyGroup<R>> groups;

    int hi() const { return lo + static_cast<int>(groups.size()) - 1; }
    const CohomologyGroup<R>& at(int n) const { return groups.at(static_cast<std::size_t>(n - lo)); }
    bool acyclic() const {
        for (const auto& g : groups)
            if (!g.is_zero()) return false;
        return true;
    }
};

template <EuclideanRing R>
Mat<R> cocycle_lattice(const R& ring, const ModuleComplex<R>& C, int n) {
    const auto dn = differential(ring, C, n);
    if (dn.rows == 0 || mat::is_zero(ring, dn)) return mat::identity(ring, C.rank(n));
    return preimage(ring, dn, relations(ring, C, n + 1));
}

template <EuclideanRing R>
CohomologyGroup<R> cohomology_at(const R& ring, const ModuleComplex<R>& C, int n) {
    auto Z = cocycle_lattice(ring, C, n);
    auto B = mat::hcat(ring, relations(ring, C, n), differential(ring, C, n - 1));
    return CohomologyGroup<R>(ring, std::move(Z), B);
}

template <EuclideanRing R>
CohomologyReport<R> cohomology(const R& ring, const ModuleComplex<R>& C) {
    CohomologyReport<R> rep{C.lo, {}};
    for (int n = C.lo; n <= C.hi(); ++n) rep.groups.push_back(cohomology_at(ring, C, n));
    return rep;
}

template <EuclideanRing R>
CohomologyReport<R> cohomology(const R& ring, const CochainComplex<R>& C) {
    return cohomology(ring, as_module_complex(ring, C));
}

/// Dimension over the prime field of a torsion module over F_p[x] given by
/// its divisors.
template <class R>
std::size_t field_dimension(const R& ring, const std::vector<typename R::value_type>& divisors) {
    std::size_t s = 0;
    for (const auto& d : divisors) s += ring.norm(d) - 1;
    return s;
}

/// Whether the columns of X are congruent to zero modulo the span of S.
template <EuclideanRing R>
bool in_span(const R& ring, const Mat<R>& X, const Mat<R>& S) {
    if (mat::is_zero(ring, X)) return true;
    if (S.cols == 0) return false;
    return LatticeSolver<R>(ring, S).coordinates(X).has_value();
}

/// Componentwise map between module complexes.
template <class R>
struct ModuleMap {
    int lo = 0;
    std::vector<Mat<R>> comps;
};

template <class R>
Mat<R> component(const R& ring, const ModuleMap<R>& f, const ModuleComplex<R>& src, const ModuleComplex<R>& dst,
                 int n) {
    const int i = n - f.lo;
    if (i >= 0 && i < static_cast<int>(f.comps.size())) return f.comps[static_cast<std::size_t>(i)];
    return mat::zero(ring, dst.rank(n), src.rank(n));
}

/// Checks that f respects relations and commutes with differentials modulo
/// the target relations.
template <EuclideanRing R>
Validation validate_map(const R& ring, const ModuleComplex<R>& src, const ModuleComplex<R>& dst,
                        const ModuleMap<R>& f) {
    const int lo = std::min(src.lo, dst.lo) - 1, hi = std::max(src.hi(), dst.hi());
    for (int n = lo; n <= hi; ++n) {
        auto fn = component(ring, f, src, dst, n);
        if (fn.rows != dst.rank(n) || fn.cols != src.rank(n)) return {false, n, "component shape mismatch"};
        if (src.rank(n) && dst.rank(n) && !in_span(ring, mat::mul(ring, fn, relations(ring, src, n)), relations(ring, dst, n)))
            return {false, n, "map does not preserve relations"};
        if (src.rank(n) == 0 || dst.rank(n + 1) == 0) continue;
        auto lhs = mat::mul(ring, component(ring, f, src, dst, n + 1), differential(ring, src, n));
        auto rhs = mat::mul(ring, differential(ring, dst, n), fn);
        if (!in_span(ring, mat::sub(ring, lhs, rhs), relations(ring, dst, n + 1)))
            return {false, n, "map does not commute with differentials"};
    }
    return {};
}

/// Mapping cone: degree n is X^{n+1} (+) Y^n with d = [[-dX, 0], [f, dY]].
template <class R>
ModuleComplex<R> cone(const R& ring, const ModuleComplex<R>& X, const ModuleComplex<R>& Y, const ModuleMap<R>& f) {
    ModuleComplex<R> C;
    const bool x_empty = X.ranks.empty(), y_empty = Y.ranks.empty();
    if (x_empty && y_empty) return C;
    const int lo = x_empty ? Y.lo : (y_empty ? X.lo - 1 : std::min(X.lo - 1, Y.lo));
    const int hi = x_empty ? Y.hi() : (y_empty ? X.hi() - 1 : std::max(X.hi() - 1, Y.hi()));
    C.lo = lo;
    for (int n = lo; n <= hi; ++n) {
        C.ranks.push_back(X.rank(n + 1) + Y.rank(n));
        C.rel.push_back(mat::block_diag(ring, relations(ring, X, n + 1).rows ? relations(ring, X, n + 1)
                                                                             : mat::zero(ring, X.rank(n + 1), 0),
                                        relations(ring, Y, n).rows ? relations(ring, Y, n) : mat::zero(ring, Y.rank(n), 0)));
    }
    for (int n = lo; n < hi; ++n) {
        const auto dx = mat::neg(ring, differential(ring, X, n + 1));
        const auto fx = component(ring, f, X, Y, n + 1);
        const auto dy = differential(ring, Y, n);
        Mat<R> m(C.ranks[static_cast<std::size_t>(n + 1 - lo)], C.ranks[static_cast<std::size_t>(n - lo)], ring.zero());
        const std::size_t xs = X.rank(n + 1), xt = X.rank(n + 2);
        for (std::size_t i = 0; i < dx.rows; ++i)
            for (std::size_t j = 0; j < dx.cols; ++j) m(i, j) = dx(i, j);
        for (std::size_t i = 0; i < fx.rows; ++i)
            for (std::size_t j = 0; j < fx.cols; ++j) m(xt + i, j) = fx(i, j);
        for (std::size_t i = 0; i < dy.rows; ++i)
            for (std::size_t j = 0; j < dy.cols; ++j) m(xt + i, xs + j) = dy(i, j);
        C.d.push_back(std::move(m));
    }
    return C;
}

template <class R>
CochainComplex<R> cone(const R& ring, const CochainComplex<R>& X, const CochainComplex<R>& Y, const ChainMap<R>& f) {
    auto M = cone(ring, as_module_complex(ring, X), as_module_complex(ring, Y), ModuleMap<R>{f.lo, f.comps});
    return CochainComplex<R>{M.lo, M.ranks, M.d};
}

/// Verdict of a quasi-isomorphism test: the cone's cohomology, degree by
/// degree, as the witness.
struct QuasiIsoVerdict {
    bool quasi_iso = true;
    struct Entry {
        int degree;
        std::size_t free_rank;
        std::vector<std::string> divisors;
        bool junk_only;
    };
    std::vector<Entry> witness;
};

template <EuclideanRing R>
QuasiIsoVerdict verdict_from(const R& ring, const CohomologyReport<R>& H, auto&& junk_unit) {
    QuasiIsoVerdict v;
    for (int n = H.lo; n <= H.hi(); ++n) {
        const auto& g = H.at(n);
        if (g.is_zero()) continue;
        QuasiIsoVerdict::Entry e{n, g.free_rank(), {}, g.free_rank() == 0};
        for (const auto& d : g.divisors()) {
            e.divisors.push_back(ring.to_string(d));
            if (!junk_unit(d)) e.junk_only = false;
        }
        if (!e.junk_only) v.quasi_iso = false;
        v.witness.push_back(std::move(e));
    }
    return v;
}

/// Exact mode: the cone is acyclic.
template <EuclideanRing R>
QuasiIsoVerdict quasi_iso_exact(const R& ring, const ModuleComplex<R>& X, const ModuleComplex<R>& Y,
                                const ModuleMap<R>& f) {
    auto v = validate_map(ring, X, Y, f);
    if (!v.ok) throw DomainError("not a chain map at degree " + std::to_string(v.degree) + ": " + v.message);
    return verdict_from(ring, cohomology(ring, cone(ring, X, Y, f)), [](const auto&) { return false; });
}

template <EuclideanRing R>
QuasiIsoVerdict quasi_iso_exact(const R& ring, const CochainComplex<R>& X, const CochainComplex<R>& Y,
                                const ChainMap<R>& f) {
    return quasi_iso_exact(ring, as_module_complex(ring, X), as_module_complex(ring, Y), ModuleMap<R>{f.lo, f.comps});
}

/// Junk mode over a tower over a field: every cone divisor must be a unit in
/// the (p, q_k - 1)-adic truncation (n, M).
template <class K>
QuasiIsoVerdict quasi_iso_junk(const TowerRing<K>& ring, const ModuleComplex<TowerRing<K>>& X,
                               const ModuleComplex<TowerRing<K>>& Y, const ModuleMap<TowerRing<K>>& f, int n, int M) {
    auto v = validate_map(ring, X, Y, f);
    if (!v.ok) throw DomainError("not a chain map at degree " + std::to_string(v.degree) + ": " + v.message);
    return verdict_from(ring, cohomology(ring, cone(ring, X, Y, f)),
                        [&](const auto& h) { return unit_in_truncation(ring, h, n, M); });
}

/// Signed tensor product. Degree n is the sum over i + j = n of C^i (x) D^j,
/// ordered by descending C-degree, bases a-major; d(x (x) y) = dx (x) y +
/// (-1)^i x (x) dy.
template <class R>
CochainComplex<R> tensor_product(const R& ring, const CochainComplex<R>& C, const CochainComplex<R>& D) {
    CochainComplex<R> T;
    if (C.empty() || D.empty()) return T;
    T.lo = C.lo + D.lo;
    const int hi = C.hi() + D.hi();
    // offset of summand (i, n - i) inside degree n
    auto offset = [&](int n, int i) {
        std::size_t off = 0;
        for (int a = std::min(C.hi(), n - D.lo); a > i; --a) off += C.rank(a) * D.rank(n - a);
        return off;
    };
    for (int n = T.lo; n <= hi; ++n) {
        std::size_t r = 0;
        for (int i = C.lo; i <= C.hi(); ++i) r += C.rank(i) * D.rank(n - i);
        T.ranks.push_back(r);
    }
    for (int n = T.lo; n < hi; ++n) {
        Mat<R> m(T.ranks[static_cast<std::size_t>(n + 1 - T.lo)], T.ranks[static_cast<std::size_t>(n - T.lo)], ring.zero());
        for (int i = C.lo; i <= C.hi(); ++i) {
            const int j = n - i;
            if (j < D.lo || j > D.hi()) continue;
            const std::size_t src = offset(n, i), rc = C.rank(i), rd = D.rank(j);
            if (rc * rd == 0) continue;
            if (i < C.hi()) {
                const auto dc = differential(ring, C, i);
                const std::size_t dst = offset(n + 1, i + 1), rd2 = rd;
                for (std::size_t a2 = 0; a2 < dc.rows; ++a2)
                    for (std::size_t a = 0; a < rc; ++a) {
                        if (ring.is_zero(dc(a2, a))) continue;
                        for (std::size_t b = 0; b < rd; ++b) m(dst + a2 * rd2 + b, src + a * rd + b) = dc(a2, a);
                    }
            }
            if (j < D.hi()) {
                const auto dd = differential(ring, D, j);
                const bool odd = ((i % 2) + 2) % 2 == 1;
                const std::size_t dst = offset(n + 1, i), rd2 = D.rank(j + 1);
                for (std::size_t a = 0; a < rc; ++a)
                    for (std::size_t b2 = 0; b2 < dd.rows; ++b2)
                        for (std::size_t b = 0; b < rd; ++b) {
                            if (ring.is_zero(dd(b2, b))) continue;
                            auto& e = m(dst + a * rd2 + b2, src + a * rd + b);
                            e = ring.add(e, odd ? ring.neg(dd(b2, b)) : dd(b2, b));
                        }
            }
        }
        T.d.push_back(std::move(m));
    }
    return T;
}

/// The same complex padded with zero modules to the degree range [lo, hi].
template <class R>
CochainComplex<R> pad(const R& ring, const CochainComplex<R>& C, int lo, int hi) {
    if (!C.empty() && (C.lo < lo || C.hi() > hi)) throw DomainError("padding range does not contain the complex");
    CochainComplex<R> P;
    P.lo = lo;
    for (int n = lo; n <= hi; ++n) P.ranks.push_back(C.rank(n));
    for (int n = lo; n < hi; ++n) P.d.push_back(differential(ring, C, n));
    return P;
}

/// C + D over the union of their degree ranges.
template <class R>
CochainComplex<R> direct_sum(const R& ring, const CochainComplex<R>& C, const CochainComplex<R>& D) {
    if (C.empty()) return D;
    if (D.empty()) return C;
    const int lo = std::min(C.lo, D.lo), hi = std::max(C.hi(), D.hi());
    const auto a = pad(ring, C, lo, hi), b = pad(ring, D, lo, hi);
    CochainComplex<R> S;
    S.lo = lo;
    for (std::size_t i = 0; i < a.ranks.size(); ++i) S.ranks.push_back(a.ranks[i] + b.ranks[i]);
    for (std::size_t i = 0; i < a.d.size(); ++i) S.d.push_back(mat::block_diag(ring, a.d[i], b.d[i]));
    return S;
}

/// Alternating sum of ranks.
template <class R>
long euler_characteristic(const CochainComplex<R>& C) {
    long chi = 0;
    for (int n = C.lo; n <= C.hi(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(C.rank(n));
    return chi;
}

/// The same complex with degrees moved by s.
template <class R>
CochainComplex<R> shift(CochainComplex<R> C, int s) {
    C.lo += s;
    return C;
}

}  // namespace etakit
