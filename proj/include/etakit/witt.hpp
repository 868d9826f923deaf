#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "polynomial.hpp"
#include "quotient.hpp"
#include "tower.hpp"

namespace etakit {

namespace witt_detail {

// Monomials in up to 2r variables, exponents packed into a 128-bit key with
// 128 / (2r) bits per variable.
using Key = unsigned __int128;

struct KeyHash {
    std::size_t operator()(Key k) const {
        const auto lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
        return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
    }
};

struct Layout {
    int vars;
    int bits;
    unsigned exponent(Key k, int i) const {
        return static_cast<unsigned>((k >> (bits * i)) & ((Key(1) << bits) - 1));
    }
    Key var(int i) const { return Key(1) << (bits * i); }
};

using Terms = std::unordered_map<Key, BigInt, KeyHash>;

inline void accumulate(Terms& t, Key k, const BigInt& c) {
    auto [it, fresh] = t.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

inline Terms add(const Terms& a, const Terms& b, int sign = 1) {
    Terms r = a;
    for (const auto& [k, c] : b) accumulate(r, k, sign > 0 ? c : BigInt(-c));
    return r;
}

inline Terms mul(const Terms& a, const Terms& b) {
    Terms r;
    r.reserve(a.size() * b.size() / 2 + 1);
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) accumulate(r, ka + kb, ca * cb);
    return r;
}

inline Terms pow(Terms a, std::int64_t e) {
    Terms r{{Key(0), BigInt(1)}};
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

inline Terms scale(Terms a, const BigInt& c) {
    if (c == 0) return {};
    for (auto& [k, v] : a) v *= c;
    return a;
}

/// Division by an integer; every coefficient must be divisible.
inline Terms divide_exact(Terms a, const BigInt& d, const std::string& what) {
    for (auto& [k, v] : a) {
        if (v % d != 0) throw VerificationFailure("inexact division by " + d.str() + " while building " + what);
        v /= d;
    }
    return a;
}

/// Ghost polynomial w_n in variables offset .. offset + n.
inline Terms ghost_poly(const Layout& L, std::int64_t p, int n, int offset) {
    Terms w;
    for (int j = 0; j <= n; ++j) {
        const auto e = ipow(p, static_cast<unsigned>(n - j));
        accumulate(w, L.var(offset + j) * static_cast<unsigned>(e), bigpow(BigInt(p), static_cast<unsigned>(j)));
    }
    return w;
}

/// A polynomial stored for evaluation: terms grouped by the monomial in the
/// first `split` variables, each group listing the remaining monomials.
struct Compiled {
    Layout layout;
    int split = 0;
    std::vector<std::pair<Key, std::vector<std::pair<Key, BigInt>>>> groups;
    std::vector<unsigned> max_exp;
    std::size_t terms = 0;
};

inline Compiled compile(const Layout& L, const Terms& t, int split) {
    Compiled c{L, split, {}, std::vector<unsigned>(static_cast<std::size_t>(L.vars), 0u), t.size()};
    const Key mask = split * L.bits >= 128 ? ~Key(0) : (Key(1) << (split * L.bits)) - 1;
    std::map<Key, std::vector<std::pair<Key, BigInt>>> g;
    for (const auto& [k, v] : t) {
        g[k & mask].emplace_back(k & ~mask, v);
        for (int i = 0; i < L.vars; ++i)
            c.max_exp[static_cast<std::size_t>(i)] = std::max(c.max_exp[static_cast<std::size_t>(i)], L.exponent(k, i));
    }
    for (auto& [k, v] : g) {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        c.groups.emplace_back(k, std::move(v));
    }
    return c;
}

template <class R>
typename R::value_type evaluate(const R& ring, const Compiled& P, const std::vector<typename R::value_type>& x) {
    using V = typename R::value_type;
    const auto& L = P.layout;
    std::vector<std::vector<V>> pw(static_cast<std::size_t>(L.vars));
    for (int i = 0; i < L.vars; ++i) {
        auto& row = pw[static_cast<std::size_t>(i)];
        row.push_back(ring.one());
        for (unsigned e = 1; e <= P.max_exp[static_cast<std::size_t>(i)]; ++e)
            row.push_back(ring.mul(row.back(), x[static_cast<std::size_t>(i)]));
    }
    std::unordered_map<Key, V, KeyHash> memo;
    auto mono = [&](Key k) -> const V& {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        V v = ring.one();
        for (int i = 0; i < L.vars; ++i) {
            const unsigned e = L.exponent(k, i);
            if (e) v = ring.mul(v, pw[static_cast<std::size_t>(i)][e]);
        }
        return memo.emplace(k, std::move(v)).first->second;
    };
    V total = ring.zero();
    for (const auto& [outer, inner] : P.groups) {
        V s = ring.zero();
        for (const auto& [k, c] : inner) s = ring.add(s, ring.mul(ring.from_bigint(c), mono(k)));
        total = ring.add(total, ring.mul(mono(outer), s));
    }
    return total;
}

}  // namespace witt_detail

/// Universal integral polynomials for p-typical Witt vectors of length r:
/// sum and product in X_0..X_{r-1}, Y_0..Y_{r-1}, Frobenius in X_0..X_{r-1}.
struct WittStructurePolys {
    std::int64_t p = 0;
    int r = 0;
    std::vector<witt_detail::Compiled> sum, product, frobenius;
};

namespace witt_detail {

inline WittStructurePolys build_structure(std::int64_t p, int r) {
    const int bits = 128 / (2 * r);
    // Exponents reach p^{r-1} in sums and products.
    if (r > 8 || bits > 64 || ipow(p, static_cast<unsigned>(r - 1)) >= (std::int64_t(1) << std::min(bits, 62)))
        throw Unsupported("Witt structure polynomials for p=" + std::to_string(p) + ", r=" + std::to_string(r) +
                          " exceed the packed monomial range");
    Layout L{2 * r, bits};
    WittStructurePolys W{p, r, {}, {}, {}};
    std::vector<Terms> S, P, F;
    for (int n = 0; n < r; ++n) {
        const BigInt pn = bigpow(BigInt(p), static_cast<unsigned>(n));
        const Terms wx = ghost_poly(L, p, n, 0), wy = ghost_poly(L, p, n, r);
        Terms s = add(wx, wy), m = mul(wx, wy);
        for (int j = 0; j < n; ++j) {
            const auto e = ipow(p, static_cast<unsigned>(n - j));
            const BigInt pj = bigpow(BigInt(p), static_cast<unsigned>(j));
            s = add(s, scale(pow(S[static_cast<std::size_t>(j)], e), pj), -1);
            m = add(m, scale(pow(P[static_cast<std::size_t>(j)], e), pj), -1);
        }
        S.push_back(divide_exact(std::move(s), pn, "the sum polynomial S_" + std::to_string(n)));
        P.push_back(divide_exact(std::move(m), pn, "the product polynomial P_" + std::to_string(n)));
    }
    // ghost_n(F x) = ghost_{n+1}(x)
    for (int n = 0; n + 1 < r; ++n) {
        const BigInt pn = bigpow(BigInt(p), static_cast<unsigned>(n));
        Terms f = ghost_poly(L, p, n + 1, 0);
        for (int j = 0; j < n; ++j)
            f = add(f, scale(pow(F[static_cast<std::size_t>(j)], ipow(p, static_cast<unsigned>(n - j))),
                             bigpow(BigInt(p), static_cast<unsigned>(j))),
                    -1);
        F.push_back(divide_exact(std::move(f), pn, "the Frobenius polynomial F_" + std::to_string(n)));
    }
    for (const auto& t : S) W.sum.push_back(compile(L, t, r));
    for (const auto& t : P) W.product.push_back(compile(L, t, r));
    for (const auto& t : F) W.frobenius.push_back(compile(L, t, r));
    return W;
}

}  // namespace witt_detail

/// Cached structure polynomials; built once per (p, r) under a lock.
inline const WittStructurePolys& witt_structure(std::int64_t p, int r) {
    static std::mutex mtx;
    static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const WittStructurePolys>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{p, r}];
    if (!slot) slot = std::make_shared<const WittStructurePolys>(witt_detail::build_structure(p, r));
    return *slot;
}

template <class R>
struct WittVector {
    std::int64_t p = 0;
    std::vector<typename R::value_type> components;
    std::size_t length() const { return components.size(); }
    bool operator==(const WittVector&) const = default;
};

/// W_r(base) for one prime p and every length 1..r_max.
template <class R>
class WittRing {
   public:
    using W = WittVector<R>;
    using value_type = typename R::value_type;

    WittRing(R base, std::int64_t p) : base_(std::move(base)), p_(p) {
        if (!is_prime(p)) throw DomainError("Witt vectors need a prime p");
    }

    const R& base() const { return base_; }
    std::int64_t p() const { return p_; }

    W zero(int r) const { return W{p_, std::vector<value_type>(static_cast<std::size_t>(check_length(r)), base_.zero())}; }
    W one(int r) const { return teichmuller(base_.one(), r); }
    W teichmuller(const value_type& x, int r) const {
        W w = zero(r);
        w.components[0] = x;
        return w;
    }
    W from_integer(std::int64_t n, int r) const {
        W acc = zero(r);
        W b = one(r);
        bool neg = n < 0;
        for (std::uint64_t m = static_cast<std::uint64_t>(neg ? -n : n); m; m >>= 1) {
            if (m & 1) acc = add(acc, b);
            b = add(b, b);
        }
        return neg ? negate(acc) : acc;
    }

    /// ghost_i = sum_{j <= i} p^j x_j^{p^{i-j}}.
    std::vector<value_type> ghost(const W& w) const {
        std::vector<value_type> g;
        for (std::size_t i = 0; i < w.length(); ++i) {
            value_type s = base_.zero();
            for (std::size_t j = 0; j <= i; ++j) {
                auto t = power(w.components[j], ipow(p_, static_cast<unsigned>(i - j)));
                s = base_.add(s, base_.mul(base_.from_bigint(bigpow(BigInt(p_), static_cast<unsigned>(j))), t));
            }
            g.push_back(std::move(s));
        }
        return g;
    }

    W add(const W& a, const W& b) const { return binary(a, b, &WittStructurePolys::sum); }
    W mul(const W& a, const W& b) const { return binary(a, b, &WittStructurePolys::product); }
    /// -a, using -1 = (-1, 0, ...) for odd p and the solved lift for p = 2.
    W negate(const W& a) const {
        const int r = static_cast<int>(a.length());
        if (p_ != 2) return mul(teichmuller(base_.neg(base_.one()), r), a);
        // For p = 2 solve a + x = 0 component by component: x_n is the unique
        // value making the n-th sum component vanish, and that component is
        // x_n plus a polynomial in lower components.
        W x = zero(r);
        for (int n = 0; n < r; ++n) {
            const auto& P = witt_structure(p_, r).sum[static_cast<std::size_t>(n)];
            auto v = witt_detail::evaluate(base_, P, concat(a, x));
            x.components[static_cast<std::size_t>(n)] = base_.neg(v);
        }
        return x;
    }
    W sub(const W& a, const W& b) const { return add(a, negate(b)); }

    /// F: W_r -> W_{r-1}.
    W frobenius(const W& a) const {
        const int r = static_cast<int>(a.length());
        if (r < 2) throw DomainError("Frobenius needs length at least 2");
        const auto& S = witt_structure(p_, r);
        auto args = a.components;
        args.resize(static_cast<std::size_t>(2 * r), base_.zero());
        W out{p_, {}};
        for (const auto& f : S.frobenius) out.components.push_back(witt_detail::evaluate(base_, f, args));
        return out;
    }
    /// V: W_{r-1} -> W_r.
    W verschiebung(const W& a) const {
        W out{p_, {base_.zero()}};
        for (const auto& c : a.components) out.components.push_back(c);
        return out;
    }
    /// R: W_r -> W_{r-1}.
    W restriction(const W& a) const {
        if (a.length() < 2) throw DomainError("restriction needs length at least 2");
        W out = a;
        out.components.pop_back();
        return out;
    }

    std::string to_string(const W& w) const {
        std::string s = "(";
        for (std::size_t i = 0; i < w.length(); ++i) s += (i ? ", " : "") + base_.to_string(w.components[i]);
        return s + ")";
    }

   private:
    int check_length(int r) const {
        if (r < 1) throw DomainError("Witt vector length must be at least 1");
        return r;
    }
    value_type power(value_type x, std::int64_t e) const {
        value_type r = base_.one();
        while (e > 0) {
            if (e & 1) r = base_.mul(r, x);
            e >>= 1;
            if (e) x = base_.mul(x, x);
        }
        return r;
    }
    std::vector<value_type> concat(const W& a, const W& b) const {
        auto v = a.components;
        v.insert(v.end(), b.components.begin(), b.components.end());
        return v;
    }
    W binary(const W& a, const W& b, std::vector<witt_detail::Compiled> WittStructurePolys::*which) const {
        if (a.p != p_ || b.p != p_ || a.length() != b.length()) throw RingMismatch("Witt vectors of different shape");
        const int r = static_cast<int>(a.length());
        const auto& polys = witt_structure(p_, r).*which;
        const auto args = concat(a, b);
        W out{p_, {}};
        for (const auto& P : polys) out.components.push_back(witt_detail::evaluate(base_, P, args));
        return out;
    }

    R base_;
    std::int64_t p_;
};

/// One named identity over a batch of random inputs.
struct IdentityResult {
    std::string name;
    std::size_t cases = 0;
    bool pass = true;
    bool skipped = false;
    std::string counterexample;
};

struct IdentityReport {
    std::string ring;
    std::int64_t p = 0;
    int r = 0;
    std::vector<IdentityResult> identities;
    bool pass() const {
        return std::all_of(identities.begin(), identities.end(), [](const auto& i) { return i.pass; });
    }
};

/// Random base-ring elements for the identity suites.
inline BigInt random_element(const Integers&, Rng& rng) { return rng.uniform(-4, 4); }
inline BigInt random_element(const IntegersMod& R, Rng& rng) {
    return R.reduce(BigInt(static_cast<std::int64_t>(rng.next() % 1000000)));
}
inline std::vector<std::int64_t> random_element(const Poly<PrimeField>& R, Rng& rng) {
    std::vector<std::int64_t> c;
    for (int i = 0; i < 2; ++i) c.push_back(rng.uniform(0, R.base().p() - 1));
    poly::trim(R.base(), c);
    return c;
}

/// Ghost homomorphism, FV = p, V(F(x) y) = x V(y), F[x] = [x^p], RF = FR and
/// RV = VR, each on `cases` random inputs of length r.
template <class R>
IdentityReport witt_identities(const R& base, std::int64_t p, int r, std::size_t cases, Rng& rng) {
    const WittRing<R> W(base, p);
    IdentityReport rep{base.name(), p, r, {}};
    auto rand_w = [&](int len) {
        WittVector<R> w{p, {}};
        for (int i = 0; i < len; ++i) w.components.push_back(random_element(base, rng));
        return w;
    };
    auto run = [&](const std::string& name, bool applicable, auto&& body) {
        IdentityResult res{name, 0, true, !applicable, {}};
        if (applicable)
            for (std::size_t c = 0; c < cases && res.pass; ++c) {
                ++res.cases;
                if (auto bad = body(); !bad.empty()) {
                    res.pass = false;
                    res.counterexample = bad;
                }
            }
        rep.identities.push_back(std::move(res));
    };
    auto ghost_eq = [&](const std::vector<typename R::value_type>& a, const std::vector<typename R::value_type>& b) {
        return a == b;
    };
    run("ghost(a+b) = ghost(a)+ghost(b)", true, [&]() -> std::string {
        auto a = rand_w(r), b = rand_w(r);
        auto ga = W.ghost(a), gb = W.ghost(b), gs = W.ghost(W.add(a, b));
        for (std::size_t i = 0; i < ga.size(); ++i) ga[i] = base.add(ga[i], gb[i]);
        return ghost_eq(ga, gs) ? "" : "a=" + W.to_string(a) + " b=" + W.to_string(b);
    });
    run("ghost(ab) = ghost(a)ghost(b)", true, [&]() -> std::string {
        auto a = rand_w(r), b = rand_w(r);
        auto ga = W.ghost(a), gb = W.ghost(b), gm = W.ghost(W.mul(a, b));
        for (std::size_t i = 0; i < ga.size(); ++i) ga[i] = base.mul(ga[i], gb[i]);
        return ghost_eq(ga, gm) ? "" : "a=" + W.to_string(a) + " b=" + W.to_string(b);
    });
    run("FV = p", r >= 2, [&]() -> std::string {
        auto x = rand_w(r - 1);
        auto lhs = W.frobenius(W.verschiebung(x));
        auto rhs = W.mul(W.from_integer(p, r - 1), x);
        return lhs == rhs ? "" : "x=" + W.to_string(x);
    });
    run("V(F(x)y) = xV(y)", r >= 2, [&]() -> std::string {
        auto x = rand_w(r), y = rand_w(r - 1);
        auto lhs = W.verschiebung(W.mul(W.frobenius(x), y));
        auto rhs = W.mul(x, W.verschiebung(y));
        return lhs == rhs ? "" : "x=" + W.to_string(x) + " y=" + W.to_string(y);
    });
    run("F[x] = [x^p]", r >= 2, [&]() -> std::string {
        auto x = random_element(base, rng);
        auto xp = base.one();
        for (std::int64_t i = 0; i < p; ++i) xp = base.mul(xp, x);
        return W.frobenius(W.teichmuller(x, r)) == W.teichmuller(xp, r - 1) ? "" : "x=" + base.to_string(x);
    });
    run("RF = FR", r >= 3, [&]() -> std::string {
        auto x = rand_w(r);
        return W.restriction(W.frobenius(x)) == W.frobenius(W.restriction(x)) ? "" : "x=" + W.to_string(x);
    });
    run("RV = VR", r >= 3, [&]() -> std::string {
        auto y = rand_w(r - 1);
        return W.restriction(W.verschiebung(y)) == W.verschiebung(W.restriction(y)) ? "" : "y=" + W.to_string(y);
    });
    run("[x][y] = [xy]", true, [&]() -> std::string {
        auto x = random_element(base, rng), y = random_element(base, rng);
        return W.mul(W.teichmuller(x, r), W.teichmuller(y, r)) == W.teichmuller(base.mul(x, y), r)
                   ? ""
                   : "x=" + base.to_string(x) + " y=" + base.to_string(y);
    });
    return rep;
}

/// A_m / (xi_r) at level m, standing in for W_r of the perfectoid side.
/// R is the projection, F is phi (relabel one level down) and V is
/// x |-> xi * phi^{-1}(x) (relabel one level up, then multiply by xi).
template <class K>
class ThetaModel {
   public:
    using Tower = TowerRing<K>;
    using value_type = typename Tower::value_type;

    ThetaModel(K base, std::int64_t p, int k, int r) : base_(std::move(base)), p_(p), k_(k), r_(r) {
        if (r < 1) throw DomainError("truncation r must be at least 1");
        if (k < r) throw DomainError("level too low: theta model needs k >= r (k=" + std::to_string(k) + ", r=" + std::to_string(r) + ")");
    }

    int level() const { return k_; }
    int truncation() const { return r_; }
    Tower tower(int m) const { return Tower(base_, p_, m); }
    /// xi_s at level m, the generator of ker(theta_s).
    value_type xi(int s, int m) const { return tower(m).xi_r(s); }
    Quotient<Tower> quotient(int s, int m) const { return Quotient<Tower>(tower(m), xi(s, m)); }

    value_type reduce(const value_type& x, int s, int m) const { return quotient(s, m).reduce(x); }
    /// A_m/xi_s -> A_m/xi_{s-1}.
    value_type restriction(const value_type& x, int s, int m) const { return reduce(x, s - 1, m); }
    /// A_m/xi_s -> A_{m-1}/xi_{s-1}.
    value_type frobenius(const value_type& x, int s, int m) const { return reduce(x, s - 1, m - 1); }
    /// A_m/xi_{s-1} -> A_{m+1}/xi_s.
    value_type verschiebung(const value_type& x, int s, int m) const {
        return reduce(tower(m + 1).mul(xi(1, m + 1), x), s, m + 1);
    }

    /// The identities that make R, F, V well defined, plus the Witt-side
    /// relations on random elements.
    IdentityReport verify(std::size_t samples, Rng& rng) const {
        IdentityReport rep{tower(k_).name() + "/(xi_" + std::to_string(r_) + ")", p_, r_, {}};
        auto check = [&](const std::string& name, bool applicable, auto&& body) {
            IdentityResult res{name, 0, true, !applicable, {}};
            if (applicable) {
                for (std::size_t c = 0; c < std::max<std::size_t>(samples, 1) && res.pass; ++c) {
                    ++res.cases;
                    if (auto bad = body(); !bad.empty()) {
                        res.pass = false;
                        res.counterexample = bad;
                    }
                }
            }
            rep.identities.push_back(std::move(res));
        };
        const int m = k_;
        const int s = r_;
        const auto A = tower(m);
        auto rand = [&](const Tower& T) {
            typename Tower::Coeffs c;
            const auto deg = static_cast<std::size_t>(std::max<std::int64_t>(1, T.q_exponent()));
            for (std::size_t i = 0; i <= deg; ++i) c.push_back(random_element_base(rng));
            return T.from_poly(std::move(c));
        };
        check("xi_r maps to 0", true, [&]() -> std::string {
            return A.is_zero(reduce(xi(s, m), s, m)) ? "" : "xi_r is not zero in the quotient";
        });
        check("xi_{r-1} | xi_r", s >= 2, [&]() -> std::string {
            return A.try_divide(xi(s, m), xi(s - 1, m)) ? "" : "xi_{r-1} does not divide xi_r";
        });
        check("xi * phi^{-1}(xi_{r-1}) = xi_r", s >= 2, [&]() -> std::string {
            // phi^{-1} relabels q_m to q_{m+1}: identical coefficients one level up.
            const auto up = tower(m + 1);
            const auto lhs = up.mul(xi(1, m + 1), xi(s - 1, m));
            return lhs == xi(s, m + 1) ? "" : "xi * phi^{-1}(xi_{r-1}) = " + up.to_string(lhs);
        });
        check("phi(xi_r) = 0 mod xi_{r-1}", s >= 2 && m >= 1, [&]() -> std::string {
            // phi relabels q_m to q_{m-1}.
            return tower(m - 1).is_zero(reduce(xi(s, m), s - 1, m - 1)) ? "" : "phi(xi_r) is not divisible by xi_{r-1}";
        });
        check("F V = p", s >= 2, [&]() -> std::string {
            const auto x = reduce(rand(A), s - 1, m);
            const auto lhs = frobenius(verschiebung(x, s, m), s, m + 1);
            const auto rhs = reduce(A.mul(A.from_int(p_), x), s - 1, m);
            return lhs == rhs ? "" : "x=" + A.to_string(x);
        });
        check("V(F(x) y) = x V(y)", s >= 2, [&]() -> std::string {
            const auto x = reduce(rand(A), s, m);
            const auto y = reduce(rand(tower(m - 1)), s - 1, m - 1);
            const auto lhs = verschiebung(tower(m - 1).mul(frobenius(x, s, m), y), s, m - 1);
            const auto rhs = reduce(A.mul(x, verschiebung(y, s, m - 1)), s, m);
            return lhs == rhs ? "" : "x=" + A.to_string(x) + " y=" + A.to_string(y);
        });
        check("R F = F R", s >= 3, [&]() -> std::string {
            const auto x = reduce(rand(A), s, m);
            return restriction(frobenius(x, s, m), s - 1, m - 1) == frobenius(restriction(x, s, m), s - 1, m)
                       ? ""
                       : "x=" + A.to_string(x);
        });
        check("R V = V R", s >= 3, [&]() -> std::string {
            const auto y = reduce(rand(tower(m - 1)), s - 1, m - 1);
            return restriction(verschiebung(y, s, m - 1), s, m) == verschiebung(restriction(y, s - 1, m - 1), s - 1, m - 1)
                       ? ""
                       : "y=" + A.to_string(y);
        });
        return rep;
    }

   private:
    typename K::value_type random_element_base(Rng& rng) const {
        return base_.from_int(rng.uniform(-3, 3));
    }

    K base_;
    std::int64_t p_;
    int k_;
    int r_;
};

}  // namespace etakit
