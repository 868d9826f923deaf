#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace etakit {

/// q_k^exp * (c_0 + c_1 q_k + ...), with c_0 != 0 unless the element is zero.
template <class C>
struct Laurent {
    std::int64_t exp = 0;
    std::vector<C> coeffs;

    bool operator==(const Laurent&) const = default;
};

/// The level-k ring base[q_k^{±1}] of the cyclotomic tower, where q = q_k^{p^k}
/// and q_k = q_{k+1}^p. The base is the integers or a prime field.
template <class K>
class TowerRing {
   public:
    using base_ring = K;
    using coeff_type = typename K::value_type;
    using value_type = Laurent<coeff_type>;
    using Coeffs = std::vector<coeff_type>;
    static constexpr bool is_euclidean = K::is_field;
    static constexpr bool is_field = false;

    TowerRing(K base, std::int64_t p, int level) : base_(std::move(base)), p_(p), level_(level) {
        if (!is_prime(p)) throw DomainError("tower prime must be prime");
        if (level < 0) throw DomainError("tower level must be non-negative");
        if constexpr (std::is_same_v<K, PrimeField>) {
            if (base_.p() != p) throw DomainError("tower base field characteristic must equal the tower prime");
        }
    }

    const K& base() const { return base_; }
    std::int64_t p() const { return p_; }
    int level() const { return level_; }
    /// p^level, the exponent of q_k in q.
    std::int64_t q_exponent() const { return ipow(p_, static_cast<unsigned>(level_)); }
    TowerRing at_level(int k) const { return TowerRing(base_, p_, k); }

    value_type normalize(std::int64_t e, Coeffs c) const {
        poly::trim(base_, c);
        std::size_t lead = 0;
        while (lead < c.size() && base_.is_zero(c[lead])) ++lead;
        if (lead == c.size()) return {};
        if (lead) c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
        return {e + static_cast<std::int64_t>(lead), std::move(c)};
    }

    value_type zero() const { return {}; }
    value_type one() const { return constant(base_.one()); }
    value_type constant(const coeff_type& c) const { return normalize(0, Coeffs{c}); }
    value_type from_int(std::int64_t n) const { return constant(base_.from_int(n)); }
    value_type from_bigint(const BigInt& n) const { return constant(base_.from_bigint(n)); }
    value_type from_poly(Coeffs c) const { return normalize(0, std::move(c)); }
    /// c * q_k^e.
    value_type monomial(std::int64_t e, const coeff_type& c) const { return normalize(e, Coeffs{c}); }
    value_type qk() const { return monomial(1, base_.one()); }
    /// q_k^e - 1.
    value_type binomial(std::int64_t e) const { return sub(monomial(e, base_.one()), one()); }

    value_type add(const value_type& a, const value_type& b) const {
        if (a.coeffs.empty()) return b;
        if (b.coeffs.empty()) return a;
        const std::int64_t e = std::min(a.exp, b.exp);
        const std::size_t sa = static_cast<std::size_t>(a.exp - e), sb = static_cast<std::size_t>(b.exp - e);
        Coeffs c(std::max(sa + a.coeffs.size(), sb + b.coeffs.size()), base_.zero());
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[sa + i] = a.coeffs[i];
        for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[sb + i] = base_.add(c[sb + i], b.coeffs[i]);
        return normalize(e, std::move(c));
    }
    value_type neg(const value_type& a) const { return {a.exp, poly::neg(base_, a.coeffs)}; }
    value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }
    value_type mul(const value_type& a, const value_type& b) const {
        if (a.coeffs.empty() || b.coeffs.empty()) return {};
        return normalize(a.exp + b.exp, poly::mul(base_, a.coeffs, b.coeffs));
    }
    value_type scale(const value_type& a, const coeff_type& c) const {
        return normalize(a.exp, poly::scale(base_, a.coeffs, c));
    }
    value_type pow(const value_type& a, unsigned e) const {
        if (a.coeffs.empty()) return e == 0 ? one() : zero();
        return {a.exp * static_cast<std::int64_t>(e), poly::pow(base_, a.coeffs, e)};
    }
    bool is_zero(const value_type& a) const { return a.coeffs.empty(); }
    /// Units are c * q_k^e with c a unit of the base.
    bool is_unit(const value_type& a) const { return a.coeffs.size() == 1 && base_.is_unit(a.coeffs[0]); }
    value_type inv_unit(const value_type& a) const {
        if (!is_unit(a)) throw DomainError("not a unit in " + name());
        return {-a.exp, Coeffs{base_.inv(a.coeffs[0])}};
    }

    std::optional<value_type> try_divide(const value_type& a, const value_type& b) const {
        if (b.coeffs.empty()) throw DomainError("division by zero in " + name());
        if (a.coeffs.empty()) return zero();
        auto q = poly::try_divide(base_, a.coeffs, b.coeffs);
        if (!q) return std::nullopt;
        return normalize(a.exp - b.exp, std::move(*q));
    }
    value_type divide_exact(const value_type& a, const value_type& b) const {
        auto q = try_divide(a, b);
        if (!q) throw NotDivisible(to_string(b) + " does not divide " + to_string(a));
        return std::move(*q);
    }

    // Euclidean structure of the Laurent ring over a field: norm is one more
    // than the degree of the polynomial part, and the canonical remainder
    // modulo b is the polynomial of degree below deg(b) in the same class.

    std::size_t norm(const value_type& a) const { return a.coeffs.size(); }
    value_type unit_part(const value_type& a) const
        requires K::is_field
    {
        if (a.coeffs.empty()) return one();
        return monomial(a.exp, a.coeffs.back());
    }
    value_type unit_inverse(const value_type& u) const
        requires K::is_field
    {
        return inv_unit(u);
    }
    /// Reduction of a modulo the polynomial part of b, as a polynomial of
    /// degree below deg(b).
    /// Needs a unit leading coefficient in b, and a unit constant term when a
    /// has negative exponent.
    Coeffs residue(const value_type& a, const value_type& b) const {
        const Coeffs& B = b.coeffs;
        if (B.size() <= 1 || a.coeffs.empty()) return {};
        Coeffs r = poly::divmod(base_, a.coeffs, B).second;
        if (a.exp > 0) {
            Coeffs sh = poly::monomial(base_, static_cast<std::size_t>(a.exp), base_.one());
            r = poly::divmod(base_, poly::mul(base_, r, sh), B).second;
        } else if (a.exp < 0) {
            // q^{-1} = -(B - B(0)) / (q B(0)) modulo B
            Coeffs qinv(B.begin() + 1, B.end());
            qinv = poly::scale(base_, qinv, base_.neg(base_.inv(B[0])));
            Coeffs acc = poly::pow(base_, qinv, static_cast<unsigned>(-a.exp));
            acc = poly::divmod(base_, acc, B).second;
            r = poly::divmod(base_, poly::mul(base_, r, acc), B).second;
        }
        return r;
    }
    std::pair<value_type, value_type> canonical_divmod(const value_type& a, const value_type& b) const
        requires K::is_field
    {
        if (b.coeffs.empty()) throw DomainError("division by zero in " + name());
        if (is_unit(b)) return {mul(a, inv_unit(b)), zero()};
        value_type r = from_poly(residue(a, b));
        return {divide_exact(sub(a, r), b), r};
    }
    /// Division with a remainder of smaller norm (not canonical).
    std::pair<value_type, value_type> divmod(const value_type& a, const value_type& b) const
        requires K::is_field
    {
        if (b.coeffs.empty()) throw DomainError("division by zero in " + name());
        if (a.coeffs.empty()) return {zero(), zero()};
        auto [q, r] = poly::divmod(base_, a.coeffs, b.coeffs);
        return {normalize(a.exp - b.exp, std::move(q)), normalize(a.exp, std::move(r))};
    }

    /// Frobenius q_k -> q_k^p at the same level.
    value_type frobenius(const value_type& a) const {
        if (a.coeffs.empty()) return a;
        return {a.exp * p_, poly::inflate(base_, a.coeffs, static_cast<std::size_t>(p_))};
    }
    value_type frobenius(const value_type& a, int power) const {
        value_type r = a;
        for (int i = 0; i < power; ++i) r = frobenius(r);
        return r;
    }
    /// Image of a level-k element in level k + steps (q_k = q_{k+steps}^{p^steps}).
    value_type embed(const value_type& a, int steps) const {
        if (steps < 0) throw DomainError("level embedding goes upward only");
        return frobenius(a, steps);
    }
    // phi^{-s} sends a level-k element to the level-(k+s) element with the same
    // data: q_k |-> q_{k+s}. No function is needed beyond at_level().

    coeff_type evaluate_at_one(const value_type& a) const {
        coeff_type s = base_.zero();
        for (const auto& c : a.coeffs) s = base_.add(s, c);
        return s;
    }
    /// Substitute q_k = v (v must be a unit if negative powers occur).
    coeff_type specialize(const value_type& a, const coeff_type& v) const {
        coeff_type r = poly::evaluate(base_, a.coeffs, v);
        if (a.exp >= 0) {
            for (std::int64_t i = 0; i < a.exp; ++i) r = base_.mul(r, v);
        } else {
            const coeff_type vi = base_.inv(v);
            for (std::int64_t i = 0; i < -a.exp; ++i) r = base_.mul(r, vi);
        }
        return r;
    }

    // Distinguished elements at this level. With t = q_k:
    //   mu = t^{p^k} - 1, phi^{-r}(mu) = t^{p^{k-r}} - 1,
    //   xi_r = mu / phi^{-r}(mu) = sum_{i < p^r} t^{i p^{k-r}}, phi(xi) = [p]_q.

    value_type mu() const { return binomial(q_exponent()); }
    value_type phi_inv_mu(int r) const {
        require_level(r);
        return binomial(ipow(p_, static_cast<unsigned>(level_ - r)));
    }
    value_type xi_r(int r) const {
        require_level(r);
        const std::int64_t step = ipow(p_, static_cast<unsigned>(level_ - r));
        const std::int64_t n = ipow(p_, static_cast<unsigned>(r));
        Coeffs c(static_cast<std::size_t>((n - 1) * step + 1), base_.zero());
        for (std::int64_t i = 0; i < n; ++i) c[static_cast<std::size_t>(i * step)] = base_.one();
        return from_poly(std::move(c));
    }
    value_type xi() const { return xi_r(1); }
    /// phi^{-i}(xi) viewed at this level; requires level >= i + 1.
    value_type phi_inv_xi(int i) const {
        require_level(i + 1);
        return at_level(level_ - i).xi();
    }
    value_type phi_xi() const { return q_int(p_); }
    /// [j]_q = (q^j - 1)/(q - 1), and -q^j [-j]_q for negative j.
    value_type q_int(std::int64_t j) const {
        if (j == 0) return zero();
        const std::int64_t step = q_exponent();
        const std::int64_t n = j > 0 ? j : -j;
        Coeffs c(static_cast<std::size_t>((n - 1) * step + 1), base_.zero());
        for (std::int64_t i = 0; i < n; ++i) c[static_cast<std::size_t>(i * step)] = base_.one();
        value_type r = from_poly(std::move(c));
        if (j < 0) r = neg(mul(r, monomial(j * step, base_.one())));
        return r;
    }

    std::string variable() const { return "q_" + std::to_string(level_); }
    std::string to_string(const value_type& a) const {
        if (a.coeffs.empty()) return "0";
        if (a.exp >= 0) {
            Coeffs c(static_cast<std::size_t>(a.exp), base_.zero());
            c.insert(c.end(), a.coeffs.begin(), a.coeffs.end());
            return poly::to_string(base_, c, variable());
        }
        return variable() + "^" + std::to_string(a.exp) + "*(" + poly::to_string(base_, a.coeffs, variable()) + ")";
    }
    std::string name() const { return base_.name() + "[" + variable() + "^+-1; p=" + std::to_string(p_) + "]"; }
    bool operator==(const TowerRing&) const = default;

   private:
    void require_level(int r) const {
        if (r < 0 || r > level_)
            throw DomainError("level " + std::to_string(level_) + " too low for index " + std::to_string(r));
    }

    K base_;
    std::int64_t p_;
    int level_;
};

/// True iff h is a unit in (base/p^n)[q_k]/((q_k - 1)^M). That quotient is
/// local with residue field F_p, so this is h(1) != 0 mod p.
template <class K>
bool unit_in_truncation(const TowerRing<K>& ring, const typename TowerRing<K>::value_type& h, int n, int M) {
    if (n < 1 || M < 1) throw DomainError("truncation exponents must be positive");
    if (h.coeffs.empty()) return false;
    const auto v = ring.evaluate_at_one(h);
    if constexpr (std::is_same_v<K, PrimeField>) {
        return v != 0;
    } else {
        BigInt r = BigInt(v) % ring.p();
        return r != 0;
    }
}

// Cyclotomic machinery over the integers.

/// Phi_n(x) over ZZ, memoized.
inline const std::vector<BigInt>& cyclotomic(std::int64_t n) {
    static std::mutex mtx;
    static std::map<std::int64_t, std::vector<BigInt>> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    Integers zz;
    std::vector<BigInt> f(static_cast<std::size_t>(n) + 1, BigInt(0));
    f[0] = -1;
    f[static_cast<std::size_t>(n)] = 1;
    for (std::int64_t d = 1; d < n; ++d) {
        if (n % d) continue;
        f = *poly::try_divide(zz, f, cyclotomic(d));
    }
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(n, std::move(f)).first->second;
}

/// h = sign * q_k^exp * prod Phi_n(q_k)^{m_n}.
struct CyclotomicShape {
    int sign = 1;
    std::int64_t exp = 0;
    std::map<std::int64_t, int> mult;
};

/// Factor h into cyclotomic polynomials, or nullopt if h is not of that shape.
inline std::optional<CyclotomicShape> cyclotomic_factor(const Laurent<BigInt>& h) {
    if (h.coeffs.empty()) return std::nullopt;
    Integers zz;
    CyclotomicShape s;
    s.exp = h.exp;
    std::vector<BigInt> rest = h.coeffs;
    const std::int64_t deg0 = static_cast<std::int64_t>(rest.size()) - 1;
    auto totient = [](std::int64_t n) {
        std::int64_t t = n;
        for (std::int64_t f = 2; f * f <= n; ++f)
            if (n % f == 0) {
                while (n % f == 0) n /= f;
                t -= t / f;
            }
        if (n > 1) t -= t / n;
        return t;
    };
    // phi(n) >= sqrt(n / 2), so only n <= 2 deg^2 can contribute.
    for (std::int64_t n = 1; n <= 2 * deg0 * deg0 + 2 && rest.size() > 1; ++n) {
        if (totient(n) + 1 > static_cast<std::int64_t>(rest.size())) continue;
        const auto& phi = cyclotomic(n);
        while (phi.size() <= rest.size()) {
            auto q = poly::try_divide(zz, rest, phi);
            if (!q) break;
            rest = std::move(*q);
            ++s.mult[n];
        }
    }
    if (rest.size() != 1 || (rest[0] != 1 && rest[0] != -1)) return std::nullopt;
    s.sign = rest[0] == 1 ? 1 : -1;
    return s;
}

inline Laurent<BigInt> cyclotomic_expand(const std::map<std::int64_t, int>& mult) {
    Integers zz;
    std::vector<BigInt> r{BigInt(1)};
    for (const auto& [n, m] : mult)
        for (int i = 0; i < m; ++i) r = poly::mul(zz, r, cyclotomic(n));
    return {0, r};
}

/// Normalized gcd in ZZ[q_k^{±1}] for cyclotomic-shaped arguments (a
/// positive product of cyclotomic polynomials). Throws Unsupported otherwise.
inline Laurent<BigInt> cyclotomic_gcd(const Laurent<BigInt>& a, const Laurent<BigInt>& b) {
    if (a.coeffs.empty() && b.coeffs.empty()) return {};
    const Laurent<BigInt>& nz = a.coeffs.empty() ? b : a;
    const Laurent<BigInt>& other = a.coeffs.empty() ? a : b;
    auto fa = cyclotomic_factor(nz);
    if (!fa) throw Unsupported("gcd over ZZ[q_k] needs cyclotomic-monomial arguments");
    if (other.coeffs.empty()) return cyclotomic_expand(fa->mult);
    auto fb = cyclotomic_factor(other);
    if (!fb) throw Unsupported("gcd over ZZ[q_k] needs cyclotomic-monomial arguments");
    std::map<std::int64_t, int> g;
    for (const auto& [n, m] : fa->mult) {
        auto it = fb->mult.find(n);
        if (it != fb->mult.end()) g[n] = std::min(m, it->second);
    }
    return cyclotomic_expand(g);
}

/// gcd in the tower: Euclidean over a field, cyclotomic shapes over ZZ. The
/// result is normalized (exponent 0, monic or positive leading term).
template <class K>
typename TowerRing<K>::value_type tower_gcd(const TowerRing<K>& ring, const typename TowerRing<K>::value_type& a,
                                            const typename TowerRing<K>::value_type& b) {
    if constexpr (K::is_field) {
        auto g = poly::gcd(ring.base(), a.coeffs, b.coeffs);
        return ring.from_poly(std::move(g));
    } else {
        return cyclotomic_gcd(a, b);
    }
}

}  // namespace etakit
