#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "scalar_rings.hpp"

namespace etakit {

template <class R>
concept EuclideanRing = R::is_euclidean;

/// Normalized gcd in a Euclidean ring.
template <EuclideanRing R>
typename R::value_type ring_gcd(const R& ring, typename R::value_type a, typename R::value_type b) {
    while (!ring.is_zero(b)) {
        auto r = ring.divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (ring.is_zero(a)) return a;
    return ring.mul(a, ring.unit_inverse(ring.unit_part(a)));
}

template <EuclideanRing R>
typename R::value_type normalize(const R& ring, const typename R::value_type& a) {
    if (ring.is_zero(a)) return a;
    return ring.mul(a, ring.unit_inverse(ring.unit_part(a)));
}

template <EuclideanRing R>
bool divides(const R& ring, const typename R::value_type& a, const typename R::value_type& b) {
    if (ring.is_zero(a)) return ring.is_zero(b);
    return ring.is_zero(ring.divmod(b, a).second);
}

template <EuclideanRing R>
typename R::value_type divide_exact(const R& ring, const typename R::value_type& a, const typename R::value_type& b) {
    auto [q, r] = ring.divmod(a, b);
    if (!ring.is_zero(r)) throw NotDivisible(ring.to_string(b) + " does not divide " + ring.to_string(a));
    return q;
}

/// U * A * V = D with D diagonal, d_1 | d_2 | ..., nonzero d_i normalized.
template <class R>
struct SmithForm {
    Mat<R> U, Uinv, V, Vinv, D;
    std::vector<typename R::value_type> diag;  // first `rank` entries nonzero
    std::size_t rank = 0;
    bool certified = false;
};

enum SmithTrack : unsigned {
    kTrackNone = 0,
    kTrackU = 1,
    kTrackUinv = 2,
    kTrackV = 4,
    kTrackVinv = 8,
    kTrackAll = 15,
};

namespace detail {

template <class R>
struct Transforms {
    const R& ring;
    Mat<R>& D;
    Mat<R>* U;
    Mat<R>* Uinv;
    Mat<R>* V;
    Mat<R>* Vinv;

    // row i -= c * row t
    void row_axpy(std::size_t i, std::size_t t, const typename R::value_type& c) {
        if (ring.is_zero(c)) return;
        for (std::size_t j = 0; j < D.cols; ++j)
            if (!ring.is_zero(D(t, j))) D(i, j) = ring.sub(D(i, j), ring.mul(c, D(t, j)));
        if (U)
            for (std::size_t j = 0; j < U->cols; ++j)
                if (!ring.is_zero((*U)(t, j))) (*U)(i, j) = ring.sub((*U)(i, j), ring.mul(c, (*U)(t, j)));
        if (Uinv)
            for (std::size_t r = 0; r < Uinv->rows; ++r)
                if (!ring.is_zero((*Uinv)(r, i)))
                    (*Uinv)(r, t) = ring.add((*Uinv)(r, t), ring.mul(c, (*Uinv)(r, i)));
    }
    // col j -= c * col t
    void col_axpy(std::size_t j, std::size_t t, const typename R::value_type& c) {
        if (ring.is_zero(c)) return;
        for (std::size_t i = 0; i < D.rows; ++i)
            if (!ring.is_zero(D(i, t))) D(i, j) = ring.sub(D(i, j), ring.mul(c, D(i, t)));
        if (V)
            for (std::size_t i = 0; i < V->rows; ++i)
                if (!ring.is_zero((*V)(i, t))) (*V)(i, j) = ring.sub((*V)(i, j), ring.mul(c, (*V)(i, t)));
        if (Vinv)
            for (std::size_t c2 = 0; c2 < Vinv->cols; ++c2)
                if (!ring.is_zero((*Vinv)(j, c2)))
                    (*Vinv)(t, c2) = ring.add((*Vinv)(t, c2), ring.mul(c, (*Vinv)(j, c2)));
    }
    void swap_rows(std::size_t i, std::size_t t) {
        if (i == t) return;
        for (std::size_t j = 0; j < D.cols; ++j) std::swap(D(i, j), D(t, j));
        if (U)
            for (std::size_t j = 0; j < U->cols; ++j) std::swap((*U)(i, j), (*U)(t, j));
        if (Uinv)
            for (std::size_t r = 0; r < Uinv->rows; ++r) std::swap((*Uinv)(r, i), (*Uinv)(r, t));
    }
    void swap_cols(std::size_t j, std::size_t t) {
        if (j == t) return;
        for (std::size_t i = 0; i < D.rows; ++i) std::swap(D(i, j), D(i, t));
        if (V)
            for (std::size_t i = 0; i < V->rows; ++i) std::swap((*V)(i, j), (*V)(i, t));
        if (Vinv)
            for (std::size_t c = 0; c < Vinv->cols; ++c) std::swap((*Vinv)(j, c), (*Vinv)(t, c));
    }
    // row t *= u for a unit u
    void scale_row(std::size_t t, const typename R::value_type& u, const typename R::value_type& uinv) {
        for (std::size_t j = 0; j < D.cols; ++j) D(t, j) = ring.mul(D(t, j), u);
        if (U)
            for (std::size_t j = 0; j < U->cols; ++j) (*U)(t, j) = ring.mul((*U)(t, j), u);
        if (Uinv)
            for (std::size_t r = 0; r < Uinv->rows; ++r) (*Uinv)(r, t) = ring.mul((*Uinv)(r, t), uinv);
    }
};

}  // namespace detail

/// Smith normal form over a Euclidean ring. Pivots are chosen by least norm,
/// ties broken by row-major position, so the output is deterministic. The
/// certificate U*A*V = D is checked whenever U and V are tracked.
template <EuclideanRing R>
SmithForm<R> smith_form(const R& ring, const Mat<R>& A, unsigned track = kTrackAll) {
    SmithForm<R> out;
    const std::size_t m = A.rows, n = A.cols;
    out.D = A;
    if (track & kTrackU) out.U = mat::identity(ring, m);
    if (track & kTrackUinv) out.Uinv = mat::identity(ring, m);
    if (track & kTrackV) out.V = mat::identity(ring, n);
    if (track & kTrackVinv) out.Vinv = mat::identity(ring, n);
    detail::Transforms<R> T{ring,
                            out.D,
                            (track & kTrackU) ? &out.U : nullptr,
                            (track & kTrackUinv) ? &out.Uinv : nullptr,
                            (track & kTrackV) ? &out.V : nullptr,
                            (track & kTrackVinv) ? &out.Vinv : nullptr};
    Mat<R>& D = out.D;
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // least-norm pivot in the trailing block
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (ring.is_zero(D(i, j))) continue;
                if (pi == m || ring.norm(D(i, j)) < ring.norm(D(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;
        T.swap_rows(t, pi);
        T.swap_cols(t, pj);
        for (;;) {
            bool changed = false;
            for (std::size_t i = t + 1; i < m && !changed; ++i) {
                if (ring.is_zero(D(i, t))) continue;
                auto [q, r] = ring.divmod(D(i, t), D(t, t));
                T.row_axpy(i, t, q);
                if (!ring.is_zero(r)) {
                    T.swap_rows(i, t);
                    changed = true;
                }
            }
            for (std::size_t j = t + 1; j < n && !changed; ++j) {
                if (ring.is_zero(D(t, j))) continue;
                auto [q, r] = ring.divmod(D(t, j), D(t, t));
                T.col_axpy(j, t, q);
                if (!ring.is_zero(r)) {
                    T.swap_cols(j, t);
                    changed = true;
                }
            }
            if (changed) continue;
            // row and column are clear; enforce divisibility of the rest
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!ring.is_zero(D(i, j)) && !divides(ring, D(t, t), D(i, j))) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            T.row_axpy(t, bad, ring.neg(ring.one()));
        }
        const auto u = ring.unit_part(D(t, t));
        const auto uinv = ring.unit_inverse(u);
        if (!(ring.is_unit(u) && ring.is_zero(ring.sub(ring.mul(u, uinv), ring.one()))))
            throw VerificationFailure("unit normalization failed");
        T.scale_row(t, uinv, u);
    }
    out.rank = t;
    for (std::size_t i = 0; i < std::min(m, n); ++i) out.diag.push_back(D(i, i));
    if ((track & kTrackU) && (track & kTrackV)) {
        auto P = mat::mul(ring, mat::mul(ring, out.U, A), out.V);
        if (!(P == D)) {
            // Compare semantically, values may differ in representation only
            // for rings without canonical forms (none of ours).
            throw VerificationFailure("Smith certificate U*A*V = D failed");
        }
        out.certified = true;
    }
    for (std::size_t i = 0; i + 1 < out.rank; ++i)
        if (!divides(ring, out.diag[i], out.diag[i + 1])) throw VerificationFailure("Smith divisor chain broken");
    return out;
}

/// Row-style Hermite normal form of the row span of M (rows are generators).
/// Returns the nonzero rows: echelon, pivots normalized, entries above each
/// pivot reduced canonically. Equal row spans give equal outputs.
template <EuclideanRing R>
Mat<R> row_hnf(const R& ring, Mat<R> M) {
    const std::size_t k = M.rows, m = M.cols;
    auto axpy = [&](std::size_t i, std::size_t t, const typename R::value_type& c) {
        if (ring.is_zero(c)) return;
        for (std::size_t j = 0; j < m; ++j)
            if (!ring.is_zero(M(t, j))) M(i, j) = ring.sub(M(i, j), ring.mul(c, M(t, j)));
    };
    auto swap_rows = [&](std::size_t i, std::size_t t) {
        if (i == t) return;
        for (std::size_t j = 0; j < m; ++j) std::swap(M(i, j), M(t, j));
    };
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < k; ++col) {
        for (;;) {
            std::size_t best = k;
            for (std::size_t i = row; i < k; ++i)
                if (!ring.is_zero(M(i, col)) && (best == k || ring.norm(M(i, col)) < ring.norm(M(best, col)))) best = i;
            if (best == k) break;
            swap_rows(row, best);
            bool others = false;
            for (std::size_t i = row + 1; i < k; ++i) {
                if (ring.is_zero(M(i, col))) continue;
                axpy(i, row, ring.divmod(M(i, col), M(row, col)).first);
                if (!ring.is_zero(M(i, col))) others = true;
            }
            if (!others) break;
        }
        if (row >= k || ring.is_zero(M(row, col))) continue;
        const auto u = ring.unit_part(M(row, col));
        const auto uinv = ring.unit_inverse(u);
        for (std::size_t j = 0; j < m; ++j) M(row, j) = ring.mul(M(row, j), uinv);
        for (std::size_t i = 0; i < row; ++i)
            if (!ring.is_zero(M(i, col))) axpy(i, row, ring.canonical_divmod(M(i, col), M(row, col)).first);
        ++row;
    }
    return mat::select_rows(M, 0, row);
}

/// Canonical basis (as columns) of the submodule spanned by the columns of G.
template <EuclideanRing R>
Mat<R> column_hnf(const R& ring, const Mat<R>& G) {
    auto H = mat::transpose(row_hnf(ring, mat::transpose(G)));
    if (H.rows == 0) H.rows = G.rows;  // keep the ambient dimension for empty bases
    return H;
}

/// Basis of ker(A) as columns.
template <EuclideanRing R>
Mat<R> kernel_basis(const R& ring, const Mat<R>& A) {
    auto S = smith_form(ring, A, kTrackV);
    auto K = mat::select_columns(S.V, S.rank, A.cols);
    K.rows = A.cols;
    return K;
}

/// Solve A X = B exactly. Returns nullopt if some column has no solution.
template <EuclideanRing R>
std::optional<Mat<R>> solve(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    if (A.rows != B.rows) throw DomainError("row mismatch in solve");
    auto S = smith_form(ring, A, kTrackU | kTrackV);
    auto UB = mat::mul(ring, S.U, B);
    Mat<R> Y(A.cols, B.cols, ring.zero());
    for (std::size_t c = 0; c < B.cols; ++c) {
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i < S.rank) {
                auto [q, r] = ring.divmod(UB(i, c), S.diag[i]);
                if (!ring.is_zero(r)) return std::nullopt;
                Y(i, c) = q;
            } else if (!ring.is_zero(UB(i, c))) {
                return std::nullopt;
            }
        }
    }
    return mat::mul(ring, S.V, Y);
}

/// Prepared solver for repeated membership and coordinate queries against a
/// fixed generator matrix L.
template <EuclideanRing R>
class LatticeSolver {
   public:
    LatticeSolver(const R& ring, const Mat<R>& L) : ring_(ring), L_(L), identity_(L == mat::identity(ring, L.rows)) {
        if (!identity_) S_ = smith_form(ring, L, kTrackU | kTrackV);
    }

    /// Some x with L x = v, or nullopt.
    std::optional<Vec<R>> coordinates(const Vec<R>& v) const {
        if (v.size() != L_.rows) throw DomainError("vector length mismatch in lattice query");
        if (identity_) return v;
        auto uv = mat::apply(ring_, S_.U, v);
        Vec<R> y(L_.cols, ring_.zero());
        for (std::size_t i = 0; i < uv.size(); ++i) {
            if (i < S_.rank) {
                auto [q, r] = ring_.divmod(uv[i], S_.diag[i]);
                if (!ring_.is_zero(r)) return std::nullopt;
                y[i] = q;
            } else if (!ring_.is_zero(uv[i])) {
                return std::nullopt;
            }
        }
        return mat::apply(ring_, S_.V, y);
    }
    bool contains(const Vec<R>& v) const { return coordinates(v).has_value(); }
    std::optional<Mat<R>> coordinates(const Mat<R>& B) const {
        std::vector<Vec<R>> cols;
        for (std::size_t j = 0; j < B.cols; ++j) {
            auto c = coordinates(mat::column(B, j));
            if (!c) return std::nullopt;
            cols.push_back(std::move(*c));
        }
        return mat::from_columns(L_.cols, cols, ring_.zero());
    }
    const Mat<R>& generators() const { return L_; }

   private:
    R ring_;
    Mat<R> L_;
    bool identity_;
    SmithForm<R> S_;
};

/// Basis of {x : A x in f * ambient}: through the Smith form A = U^-1 D V^-1,
/// the columns V_i * f / gcd(f, d_i) for i < rank and V_i beyond, put in
/// Hermite form.
template <EuclideanRing R>
Mat<R> solve_in_submodule(const R& ring, const Mat<R>& A, const typename R::value_type& f) {
    if (ring.is_zero(f)) throw DomainError("solve_in_submodule needs a nonzero element");
    auto S = smith_form(ring, A, kTrackV);
    Mat<R> B = S.V;
    for (std::size_t i = 0; i < S.rank; ++i) {
        auto c = divide_exact(ring, f, ring_gcd(ring, f, S.diag[i]));
        for (std::size_t r = 0; r < B.rows; ++r) B(r, i) = ring.mul(B(r, i), c);
    }
    return column_hnf(ring, B);
}

/// Basis of {x : A x in span(S)}.
template <EuclideanRing R>
Mat<R> preimage(const R& ring, const Mat<R>& A, const Mat<R>& S) {
    if (A.rows != S.rows) throw DomainError("row mismatch in preimage");
    if (S.cols == 0) return column_hnf(ring, kernel_basis(ring, A));
    auto K = kernel_basis(ring, mat::hcat(ring, A, mat::neg(ring, S)));
    auto top = mat::select_rows(K, 0, A.cols);
    return column_hnf(ring, top);
}

/// Whether the column spans of A and B coincide.
template <EuclideanRing R>
bool same_span(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    return column_hnf(ring, A) == column_hnf(ring, B);
}

}  // namespace etakit
