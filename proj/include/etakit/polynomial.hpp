#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scalar_rings.hpp"

namespace etakit {

// Dense univariate polynomials, coefficients stored low degree first with no
// trailing zeros. The zero polynomial is the empty vector.
namespace poly {

template <class K>
using Coeffs = std::vector<typename K::value_type>;

template <class K>
void trim(const K& k, Coeffs<K>& a) {
    while (!a.empty() && k.is_zero(a.back())) a.pop_back();
}

template <class K>
long degree(const Coeffs<K>& a) {
    return static_cast<long>(a.size()) - 1;
}

template <class K>
Coeffs<K> add(const K& k, const Coeffs<K>& a, const Coeffs<K>& b) {
    const Coeffs<K>& big = a.size() >= b.size() ? a : b;
    const Coeffs<K>& small = a.size() >= b.size() ? b : a;
    Coeffs<K> r = big;
    for (std::size_t i = 0; i < small.size(); ++i) r[i] = k.add(r[i], small[i]);
    trim(k, r);
    return r;
}

template <class K>
Coeffs<K> neg(const K& k, Coeffs<K> a) {
    for (auto& c : a) c = k.neg(c);
    return a;
}

template <class K>
Coeffs<K> sub(const K& k, const Coeffs<K>& a, const Coeffs<K>& b) {
    Coeffs<K> r = a;
    if (r.size() < b.size()) r.resize(b.size(), k.zero());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = k.sub(r[i], b[i]);
    trim(k, r);
    return r;
}

template <class K>
Coeffs<K> scale(const K& k, const Coeffs<K>& a, const typename K::value_type& c) {
    if (k.is_zero(c)) return {};
    Coeffs<K> r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(k.mul(x, c));
    trim(k, r);
    return r;
}

namespace detail {

// Schoolbook product over machine-word residues, with delayed reduction.
inline std::vector<std::int64_t> mul_word(std::int64_t p, const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
    if (p < (std::int64_t{1} << 20)) {
        // Products stay below 2^40, so 2^23 of them fit before reducing.
        const std::size_t n = r.size();
        std::vector<std::uint64_t> buf(n, 0);
        int pending = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::uint64_t ai = static_cast<std::uint64_t>(a[i]);
            if (ai == 0) continue;
            std::uint64_t* out = buf.data() + i;
            for (std::size_t j = 0; j < b.size(); ++j) out[j] += ai * static_cast<std::uint64_t>(b[j]);
            if (++pending == (1 << 23)) {
                for (auto& x : buf) x %= static_cast<std::uint64_t>(p);
                pending = 0;
            }
        }
        for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::int64_t>(buf[i] % static_cast<std::uint64_t>(p));
        return r;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return r;
}

}  // namespace detail

template <class K>
Coeffs<K> mul(const K& k, const Coeffs<K>& a, const Coeffs<K>& b) {
    if (a.empty() || b.empty()) return {};
    if constexpr (std::is_same_v<K, PrimeField>) {
        auto r = detail::mul_word(k.p(), a, b);
        trim(k, r);
        return r;
    } else {
        Coeffs<K> r(a.size() + b.size() - 1, k.zero());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (k.is_zero(a[i])) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
        }
        trim(k, r);
        return r;
    }
}

template <class K>
Coeffs<K> pow(const K& k, Coeffs<K> a, unsigned e) {
    Coeffs<K> r{k.one()};
    trim(k, r);
    while (e) {
        if (e & 1u) r = mul(k, r, a);
        e >>= 1u;
        if (e) a = mul(k, a, a);
    }
    return r;
}

/// Quotient and remainder when the leading coefficient of b divides every
/// leading coefficient met along the way (always true over a field). Returns
/// nullopt when that fails.
template <class K>
std::optional<std::pair<Coeffs<K>, Coeffs<K>>> try_divmod(const K& k, const Coeffs<K>& a, const Coeffs<K>& b) {
    if (b.empty()) throw DomainError("polynomial division by zero");
    Coeffs<K> r = a;
    if (r.size() < b.size()) return std::make_pair(Coeffs<K>{}, r);
    Coeffs<K> q(r.size() - b.size() + 1, k.zero());
    const auto& lead = b.back();
    const bool unit_lead = k.is_unit(lead);
    typename K::value_type lead_inv{};
    if (unit_lead) lead_inv = k.inv(lead);
    for (std::size_t i = r.size() - 1;; --i) {
        if (k.is_zero(r[i])) {
            if (i == b.size() - 1) break;
            continue;
        }
        typename K::value_type c;
        if (unit_lead) {
            c = k.mul(r[i], lead_inv);
        } else {
            auto t = k.try_divide(r[i], lead);
            if (!t) return std::nullopt;
            c = *t;
        }
        const std::size_t shift = i - (b.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = k.sub(r[shift + j], k.mul(c, b[j]));
        if (i == b.size() - 1) break;
    }
    trim(k, q);
    trim(k, r);
    return std::make_pair(std::move(q), std::move(r));
}

template <class K>
std::pair<Coeffs<K>, Coeffs<K>> divmod(const K& k, const Coeffs<K>& a, const Coeffs<K>& b) {
    auto r = try_divmod(k, a, b);
    if (!r) throw NotDivisible("leading coefficient does not divide");
    return std::move(*r);
}

/// Exact quotient a / b, or nullopt if b does not divide a.
template <class K>
std::optional<Coeffs<K>> try_divide(const K& k, const Coeffs<K>& a, const Coeffs<K>& b) {
    auto r = try_divmod(k, a, b);
    if (!r || !r->second.empty()) return std::nullopt;
    return std::move(r->first);
}

/// Monic gcd over a field.
template <class K>
Coeffs<K> gcd(const K& k, Coeffs<K> a, Coeffs<K> b) {
    while (!b.empty()) {
        auto r = divmod(k, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = scale(k, a, k.inv(a.back()));
    return a;
}

/// Monic g = gcd(a, b) over a field with s a + t b = g.
template <class K>
std::tuple<Coeffs<K>, Coeffs<K>, Coeffs<K>> xgcd(const K& k, Coeffs<K> a, Coeffs<K> b) {
    Coeffs<K> s0{k.one()}, s1{}, t0{}, t1{k.one()};
    while (!b.empty()) {
        auto [q, r] = divmod(k, a, b);
        a = std::move(b);
        b = std::move(r);
        auto s2 = sub(k, s0, mul(k, q, s1));
        auto t2 = sub(k, t0, mul(k, q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!a.empty()) {
        const auto inv = k.inv(a.back());
        a = scale(k, a, inv);
        s0 = scale(k, s0, inv);
        t0 = scale(k, t0, inv);
    }
    return {std::move(a), std::move(s0), std::move(t0)};
}

template <class K>
typename K::value_type evaluate(const K& k, const Coeffs<K>& a, const typename K::value_type& x) {
    typename K::value_type r = k.zero();
    for (std::size_t i = a.size(); i-- > 0;) r = k.add(k.mul(r, x), a[i]);
    return r;
}

/// a(x^m).
template <class K>
Coeffs<K> inflate(const K& k, const Coeffs<K>& a, std::size_t m) {
    if (a.empty()) return {};
    Coeffs<K> r((a.size() - 1) * m + 1, k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i * m] = a[i];
    return r;
}

template <class K>
Coeffs<K> monomial(const K& k, std::size_t e, const typename K::value_type& c) {
    if (k.is_zero(c)) return {};
    Coeffs<K> r(e + 1, k.zero());
    r[e] = c;
    return r;
}

template <class K>
std::string to_string(const K& k, const Coeffs<K>& a, const std::string& var) {
    if (a.empty()) return "0";
    std::string s;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (k.is_zero(a[i])) continue;
        std::string c = k.to_string(a[i]);
        bool negative = !c.empty() && c[0] == '-';
        if (negative) c = c.substr(1);
        if (!s.empty()) s += negative ? " - " : " + ";
        else if (negative) s += "-";
        if (i == 0) {
            s += c;
        } else {
            if (c != "1") s += c + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace poly

/// The polynomial ring K[x]. Euclidean exactly when K is a field.
template <class K>
class Poly {
   public:
    using base_ring = K;
    using coeff_type = typename K::value_type;
    using value_type = std::vector<coeff_type>;
    static constexpr bool is_euclidean = K::is_field;
    static constexpr bool is_field = false;

    explicit Poly(K base, std::string var = "q") : base_(std::move(base)), var_(std::move(var)) {}

    const K& base() const { return base_; }
    const std::string& variable() const { return var_; }

    value_type zero() const { return {}; }
    value_type one() const { return constant(base_.one()); }
    value_type constant(const coeff_type& c) const {
        value_type r{c};
        poly::trim(base_, r);
        return r;
    }
    value_type from_int(std::int64_t n) const { return constant(base_.from_int(n)); }
    value_type from_bigint(const BigInt& n) const { return constant(base_.from_bigint(n)); }
    value_type x() const { return poly::monomial(base_, 1, base_.one()); }

    value_type add(const value_type& a, const value_type& b) const { return poly::add(base_, a, b); }
    value_type sub(const value_type& a, const value_type& b) const { return poly::sub(base_, a, b); }
    value_type mul(const value_type& a, const value_type& b) const { return poly::mul(base_, a, b); }
    value_type neg(const value_type& a) const { return poly::neg(base_, a); }
    bool is_zero(const value_type& a) const { return a.empty(); }
    bool is_unit(const value_type& a) const { return a.size() == 1 && base_.is_unit(a[0]); }
    std::optional<value_type> try_divide(const value_type& a, const value_type& b) const {
        return poly::try_divide(base_, a, b);
    }

    std::pair<value_type, value_type> divmod(const value_type& a, const value_type& b) const
        requires K::is_field
    {
        return poly::divmod(base_, a, b);
    }
    std::pair<value_type, value_type> canonical_divmod(const value_type& a, const value_type& b) const
        requires K::is_field
    {
        return poly::divmod(base_, a, b);
    }
    std::size_t norm(const value_type& a) const { return a.size(); }
    value_type unit_part(const value_type& a) const
        requires K::is_field
    {
        return a.empty() ? one() : constant(a.back());
    }
    value_type unit_inverse(const value_type& u) const
        requires K::is_field
    {
        return constant(base_.inv(u.at(0)));
    }

    std::string to_string(const value_type& a) const { return poly::to_string(base_, a, var_); }
    std::string name() const { return base_.name() + "[" + var_ + "]"; }
    bool operator==(const Poly&) const = default;

   private:
    K base_;
    std::string var_;
};

}  // namespace etakit
