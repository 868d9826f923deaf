#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace etakit {

/// Dense row-major matrix of ring values. The ring itself is passed to every
/// operation, so the matrix is plain data.
template <class V>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<V> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const V& fill) : rows(r), cols(c), a(r * c, fill) {}

    V& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const V& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const Matrix&) const = default;
};

template <class R>
using Mat = Matrix<typename R::value_type>;

template <class R>
using Vec = std::vector<typename R::value_type>;

namespace mat {

template <class R>
Mat<R> zero(const R& ring, std::size_t r, std::size_t c) {
    return Mat<R>(r, c, ring.zero());
}

template <class R>
Mat<R> identity(const R& ring, std::size_t n) {
    Mat<R> m(n, n, ring.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
}

template <class R>
Mat<R> scalar(const R& ring, std::size_t n, const typename R::value_type& c) {
    Mat<R> m(n, n, ring.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

template <class R>
Mat<R> mul(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    if (A.cols != B.rows) throw DomainError("matrix shape mismatch in product");
    Mat<R> C(A.rows, B.cols, ring.zero());
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const auto& aik = A(i, k);
            if (ring.is_zero(aik)) continue;
            for (std::size_t j = 0; j < B.cols; ++j) {
                const auto& bkj = B(k, j);
                if (ring.is_zero(bkj)) continue;
                C(i, j) = ring.add(C(i, j), ring.mul(aik, bkj));
            }
        }
    return C;
}

template <class R>
Vec<R> apply(const R& ring, const Mat<R>& A, const Vec<R>& x) {
    if (A.cols != x.size()) throw DomainError("matrix shape mismatch in apply");
    Vec<R> y(A.rows, ring.zero());
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            if (ring.is_zero(A(i, k)) || ring.is_zero(x[k])) continue;
            y[i] = ring.add(y[i], ring.mul(A(i, k), x[k]));
        }
    return y;
}

template <class R>
Mat<R> add(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw DomainError("matrix shape mismatch in sum");
    Mat<R> C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = ring.add(A.a[i], B.a[i]);
    return C;
}

template <class R>
Mat<R> sub(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw DomainError("matrix shape mismatch in difference");
    Mat<R> C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = ring.sub(A.a[i], B.a[i]);
    return C;
}

template <class R>
Mat<R> neg(const R& ring, Mat<R> A) {
    for (auto& x : A.a) x = ring.neg(x);
    return A;
}

template <class R>
Mat<R> scale(const R& ring, Mat<R> A, const typename R::value_type& c) {
    for (auto& x : A.a) x = ring.mul(x, c);
    return A;
}

template <class R>
Mat<R> map(const R& ring, Mat<R> A, auto&& f) {
    (void)ring;
    for (auto& x : A.a) x = f(x);
    return A;
}

template <class V>
Matrix<V> transpose(const Matrix<V>& A) {
    Matrix<V> T;
    T.rows = A.cols;
    T.cols = A.rows;
    T.a.reserve(A.a.size());
    for (std::size_t j = 0; j < A.cols; ++j)
        for (std::size_t i = 0; i < A.rows; ++i) T.a.push_back(A(i, j));
    return T;
}

template <class R>
bool is_zero(const R& ring, const Mat<R>& A) {
    for (const auto& x : A.a)
        if (!ring.is_zero(x)) return false;
    return true;
}

/// [A | B]
template <class R>
Mat<R> hcat(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    if (A.rows != B.rows) throw DomainError("row count mismatch in hcat");
    Mat<R> C(A.rows, A.cols + B.cols, ring.zero());
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
        for (std::size_t j = 0; j < B.cols; ++j) C(i, A.cols + j) = B(i, j);
    }
    return C;
}

/// [A ; B]
template <class R>
Mat<R> vcat(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    if (A.cols != B.cols) throw DomainError("column count mismatch in vcat");
    (void)ring;
    Mat<R> C = A;
    C.rows += B.rows;
    C.a.insert(C.a.end(), B.a.begin(), B.a.end());
    return C;
}

/// Block diagonal [[A, 0], [0, B]].
template <class R>
Mat<R> block_diag(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    Mat<R> C(A.rows + B.rows, A.cols + B.cols, ring.zero());
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
    for (std::size_t i = 0; i < B.rows; ++i)
        for (std::size_t j = 0; j < B.cols; ++j) C(A.rows + i, A.cols + j) = B(i, j);
    return C;
}

template <class V>
std::vector<V> column(const Matrix<V>& A, std::size_t j) {
    std::vector<V> c;
    c.reserve(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) c.push_back(A(i, j));
    return c;
}

template <class V>
Matrix<V> from_columns(std::size_t rows, const std::vector<std::vector<V>>& cols, const V& fill) {
    Matrix<V> m(rows, cols.size(), fill);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DomainError("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

template <class V>
Matrix<V> select_columns(const Matrix<V>& A, std::size_t from, std::size_t to) {
    Matrix<V> m;
    m.rows = A.rows;
    m.cols = to - from;
    m.a.reserve(m.rows * m.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = from; j < to; ++j) m.a.push_back(A(i, j));
    return m;
}

template <class V>
Matrix<V> select_rows(const Matrix<V>& A, std::size_t from, std::size_t to) {
    Matrix<V> m;
    m.rows = to - from;
    m.cols = A.cols;
    m.a.assign(A.a.begin() + static_cast<std::ptrdiff_t>(from * A.cols),
               A.a.begin() + static_cast<std::ptrdiff_t>(to * A.cols));
    return m;
}

template <class R>
std::string to_string(const R& ring, const Mat<R>& A) {
    std::string s = "[";
    for (std::size_t i = 0; i < A.rows; ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < A.cols; ++j) s += (j ? ", " : "") + ring.to_string(A(i, j));
        s += "]";
    }
    return s + "]";
}

}  // namespace mat

}  // namespace etakit
