#pragma once

#include <string>
#include <vector>

#include "complex.hpp"
#include "qtorus.hpp"

namespace etakit {

enum class CorpusKind { random_free_z, two_term_p_power, koszul_grid };

inline std::string corpus_name(CorpusKind k) {
    switch (k) {
        case CorpusKind::random_free_z: return "random-free-z";
        case CorpusKind::two_term_p_power: return "two-term-p-power";
        case CorpusKind::koszul_grid: return "koszul-grid";
    }
    return "";
}

inline CorpusKind corpus_kind(const std::string& s) {
    if (s == "random-free-z" || s == "random-free-ℤ") return CorpusKind::random_free_z;
    if (s == "two-term-p-power") return CorpusKind::two_term_p_power;
    if (s == "koszul-grid") return CorpusKind::koszul_grid;
    throw InputError("unknown corpus kind \"" + s + "\"");
}

struct CorpusParams {
    std::size_t cases = 100;
    int max_degrees = 4;
    std::size_t max_rank = 5;
    std::int64_t p = 2;
    int max_power = 6;
    int d = 2;
    std::int64_t B = 2;
};

namespace corpus_detail {

using Z = Integers;
using ZC = CochainComplex<Z>;

inline BigInt scalar(Rng& rng) {
    static const std::int64_t pool[] = {0, 1, -1, 2, -2, 3, -3, 4, 5, 6, -6, 8, 9, 12, 18, 27, 36};
    return pool[rng.uniform(0, static_cast<std::int64_t>(std::size(pool)) - 1)];
}

/// A random unimodular matrix with its inverse, as a product of elementary
/// operations and sign changes.
inline std::pair<Mat<Z>, Mat<Z>> unimodular(Rng& rng, std::size_t n) {
    const Z ring;
    Mat<Z> g = mat::identity(ring, n), gi = mat::identity(ring, n);
    if (n == 0) return {g, gi};
    const int ops = static_cast<int>(rng.uniform(0, 3 * static_cast<std::int64_t>(n)));
    for (int t = 0; t < ops; ++t) {
        const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
        const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
        if (i == j) {
            // negate row i of g, column i of g^{-1}
            for (std::size_t c = 0; c < n; ++c) g(i, c) = -g(i, c);
            for (std::size_t r = 0; r < n; ++r) gi(r, i) = -gi(r, i);
            continue;
        }
        const BigInt c = rng.uniform(-2, 2);
        // row_i += c row_j on g; col_j -= c col_i on g^{-1}
        for (std::size_t k = 0; k < n; ++k) g(i, k) += c * g(j, k);
        for (std::size_t r = 0; r < n; ++r) gi(r, j) -= c * gi(r, i);
    }
    return {g, gi};
}

/// d'_n = g_{n+1} d_n g_n^{-1}, an isomorphic complex.
inline ZC conjugate(Rng& rng, const ZC& C) {
    const Z ring;
    std::vector<std::pair<Mat<Z>, Mat<Z>>> g;
    for (auto r : C.ranks) g.push_back(unimodular(rng, r));
    ZC D = C;
    for (std::size_t i = 0; i < C.d.size(); ++i) D.d[i] = mat::mul(ring, mat::mul(ring, g[i + 1].first, C.d[i]), g[i].second);
    return D;
}

inline ZC elementary(Rng& rng, int max_degrees) {
    const Z ring;
    const int top = max_degrees - 1;
    switch (rng.uniform(0, 3)) {
        case 0: return two_term(ring, scalar(rng), static_cast<int>(rng.uniform(0, top - 1)));
        case 1: {
            ZC C;
            C.lo = static_cast<int>(rng.uniform(0, top));
            C.ranks = {1};
            return C;
        }
        case 2: {
            auto T = tensor_product(ring, two_term(ring, scalar(rng)), two_term(ring, scalar(rng)));
            return shift(T, static_cast<int>(rng.uniform(0, top - 2)));
        }
        default: {
            // cone of multiplication by c on [Z --a--> Z]
            const auto X = two_term(ring, scalar(rng));
            const BigInt c = scalar(rng);
            ChainMap<Z> f{0, {mat::scalar(ring, 1, c), mat::scalar(ring, 1, c)}};
            return shift(cone(ring, X, X, f), static_cast<int>(rng.uniform(1, top - 1)));
        }
    }
}

inline ZC random_free_z(Rng& rng, const CorpusParams& P) {
    const Z ring;
    const int pieces = static_cast<int>(rng.uniform(1, 4));
    ZC S;
    for (int t = 0; t < pieces; ++t) {
        auto E = elementary(rng, P.max_degrees);
        auto T = direct_sum(ring, S, E);
        bool ok = T.lo >= 0 && T.hi() < P.max_degrees;
        for (auto r : T.ranks) ok = ok && r <= P.max_rank;
        if (ok) S = std::move(T);
    }
    if (S.empty()) S = two_term(ring, scalar(rng));
    return conjugate(rng, S);
}

}  // namespace corpus_detail

/// Seeded corpus of free Z-complexes. Random complexes are direct sums of
/// two-term complexes, tensor products and cones of scalar maps, moved by a
/// random change of basis, so d o d = 0 holds by construction.
inline std::vector<CochainComplex<Integers>> corpus_generate(CorpusKind kind, const CorpusParams& P, std::uint64_t seed) {
    const Integers ring;
    std::vector<CochainComplex<Integers>> out;
    switch (kind) {
        case CorpusKind::random_free_z: {
            if (P.max_degrees < 3) throw DomainError("random complexes need at least 3 degrees");
            Rng rng(seed);
            for (std::size_t i = 0; i < P.cases; ++i) out.push_back(corpus_detail::random_free_z(rng, P));
            break;
        }
        case CorpusKind::two_term_p_power:
            for (int a = 0; a <= P.max_power; ++a) out.push_back(two_term(ring, BigInt(ipow(P.p, static_cast<unsigned>(a)))));
            break;
        case CorpusKind::koszul_grid:
            for (const auto& w : weight_box(P.d, P.B)) {
                std::vector<BigInt> c(w.begin(), w.end());
                out.push_back(koszul(ring, c));
            }
            break;
    }
    for (const auto& C : out) {
        const auto v = validate(ring, C);
        if (!v.ok) throw VerificationFailure("generated complex is invalid: " + v.message);
    }
    return out;
}

}  // namespace etakit
