#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smith.hpp"

namespace etakit {

/// Cokernel of `relations` (a gens x m matrix).
template <class R>
struct ModulePresentation {
    std::size_t gens = 0;
    Mat<R> relations;
};

template <class R>
struct ElementaryDivisors {
    std::vector<typename R::value_type> divisors;  // nonunit, nonzero, in chain order
    std::size_t free_rank = 0;
    std::vector<typename R::value_type> full;  // d_1..d_gens with units, padded by zeros
};

/// Smith form over Z/p^n: pivots of least p-adic valuation, ties broken by
/// row-major position; nonzero diagonal entries normalized to p^v.
inline SmithForm<IntegersMod> smith_form_prime_power(const IntegersMod& ring, std::int64_t p, const Mat<IntegersMod>& A) {
    const BigInt& m = ring.modulus();
    {
        BigInt t = m;
        while (t % p == 0) t /= p;
        if (t != 1 || m == 1) throw Unsupported("Smith form over " + ring.name() + " needs a prime power modulus");
    }
    auto val = [&](const BigInt& a) {
        int v = 0;
        BigInt t = a;
        while (t % p == 0) {
            t /= p;
            ++v;
        }
        return v;
    };
    SmithForm<IntegersMod> out;
    const std::size_t rows = A.rows, cols = A.cols;
    out.D = mat::map(ring, A, [&](const BigInt& x) { return ring.reduce(x); });
    out.U = mat::identity(ring, rows);
    out.Uinv = mat::identity(ring, rows);
    out.V = mat::identity(ring, cols);
    out.Vinv = mat::identity(ring, cols);
    detail::Transforms<IntegersMod> T{ring, out.D, &out.U, &out.Uinv, &out.V, &out.Vinv};
    auto& D = out.D;
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        std::size_t pi = rows, pj = cols;
        int best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (D(i, j) == 0) continue;
                const int v = val(D(i, j));
                if (pi == rows || v < best) {
                    pi = i;
                    pj = j;
                    best = v;
                }
            }
        if (pi == rows) break;
        T.swap_rows(t, pi);
        T.swap_cols(t, pj);
        const BigInt pv = bigpow(BigInt(p), static_cast<unsigned>(best));
        const BigInt u = D(t, t) / pv;  // a unit mod p^n
        const BigInt uinv = ring.inv(ring.reduce(u));
        T.scale_row(t, uinv, ring.reduce(u));
        for (std::size_t i = t + 1; i < rows; ++i)
            if (D(i, t) != 0) T.row_axpy(i, t, ring.reduce(D(i, t) / pv));
        for (std::size_t j = t + 1; j < cols; ++j)
            if (D(t, j) != 0) T.col_axpy(j, t, ring.reduce(D(t, j) / pv));
    }
    out.rank = t;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) out.diag.push_back(D(i, i));
    auto P = mat::mul(ring, mat::mul(ring, out.U, A), out.V);
    P = mat::map(ring, P, [&](const BigInt& x) { return ring.reduce(x); });
    if (!(P == D)) throw VerificationFailure("Smith certificate U*A*V = D failed over " + ring.name());
    for (std::size_t i = 0; i + 1 < out.rank; ++i)
        if (out.diag[i + 1] % out.diag[i] != 0) throw VerificationFailure("Smith divisor chain broken");
    out.certified = true;
    return out;
}

namespace detail {

template <class R>
ElementaryDivisors<R> divisors_from(const R& ring, std::size_t gens, const std::vector<typename R::value_type>& diag) {
    ElementaryDivisors<R> e;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < gens; ++i) {
        auto d = i < diag.size() ? diag[i] : ring.zero();
        if (!ring.is_zero(d)) {
            ++nonzero;
            if (!ring.is_unit(d)) e.divisors.push_back(d);
        }
        e.full.push_back(d);
    }
    e.free_rank = gens - nonzero;
    return e;
}

}  // namespace detail

template <EuclideanRing R>
ElementaryDivisors<R> elementary_divisors(const R& ring, const ModulePresentation<R>& M) {
    if (M.relations.rows != M.gens) throw DomainError("relation matrix rows must equal the generator count");
    auto S = smith_form(ring, M.relations, kTrackAll);
    return detail::divisors_from(ring, M.gens, S.diag);
}

inline ElementaryDivisors<IntegersMod> elementary_divisors(const IntegersMod& ring, std::int64_t p,
                                                           const ModulePresentation<IntegersMod>& M) {
    if (M.relations.rows != M.gens) throw DomainError("relation matrix rows must equal the generator count");
    auto S = smith_form_prime_power(ring, p, M.relations);
    return detail::divisors_from(ring, M.gens, S.diag);
}

/// Generator of Fitt_i: the product d_1 ... d_{gens - i}, and (1) once
/// i >= gens.
template <class R>
typename R::value_type fitting_ideal(const R& ring, const ElementaryDivisors<R>& e, std::size_t i) {
    auto g = ring.one();
    const std::size_t n = e.full.size();
    if (i >= n) return g;
    for (std::size_t j = 0; j < n - i; ++j) g = ring.mul(g, e.full[j]);
    if constexpr (EuclideanRing<R>) g = normalize(ring, g);
    return g;
}

}  // namespace etakit
