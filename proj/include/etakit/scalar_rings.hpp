#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>

#include "common.hpp"

namespace etakit {

// Every ring class below follows the same informal protocol: a ring object
// carries the parameters (modulus, prime, level, ...) and `value_type` is
// plain data. Euclidean rings additionally provide divmod / canonical_divmod /
// norm / unit_part / unit_inverse.

/// The integers.
class Integers {
   public:
    using value_type = BigInt;
    static constexpr bool is_euclidean = true;
    static constexpr bool is_field = false;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t n) const { return n; }
    value_type from_bigint(const BigInt& n) const { return n; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    bool is_zero(const value_type& a) const { return a == 0; }
    bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
    value_type inv(const value_type& a) const {
        if (!is_unit(a)) throw DomainError("not a unit in ZZ");
        return a;
    }
    std::optional<value_type> try_divide(const value_type& a, const value_type& b) const {
        if (b == 0) throw DomainError("division by zero");
        if (a % b != 0) return std::nullopt;
        return value_type(a / b);
    }

    /// Floor-style division with remainder in [0, |b|).
    std::pair<value_type, value_type> canonical_divmod(const value_type& a, const value_type& b) const {
        if (b == 0) throw DomainError("division by zero");
        BigInt m = abs(b);
        BigInt r = a % m;
        if (r < 0) r += m;
        return {(a - r) / b, r};
    }
    std::pair<value_type, value_type> divmod(const value_type& a, const value_type& b) const {
        return canonical_divmod(a, b);
    }
    BigInt norm(const value_type& a) const { return abs(a); }
    value_type unit_part(const value_type& a) const { return a < 0 ? BigInt(-1) : BigInt(1); }
    value_type unit_inverse(const value_type& u) const { return u; }

    std::string to_string(const value_type& a) const { return a.str(); }
    std::string name() const { return "ZZ"; }
    bool operator==(const Integers&) const = default;
};

/// The rationals.
class Rationals {
   public:
    using value_type = BigRat;
    static constexpr bool is_euclidean = true;
    static constexpr bool is_field = true;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t n) const { return n; }
    value_type from_bigint(const BigInt& n) const { return BigRat(n); }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    bool is_zero(const value_type& a) const { return a == 0; }
    bool is_unit(const value_type& a) const { return a != 0; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw DomainError("inverse of zero");
        return 1 / a;
    }
    std::optional<value_type> try_divide(const value_type& a, const value_type& b) const {
        if (b == 0) throw DomainError("division by zero");
        return value_type(a / b);
    }

    std::pair<value_type, value_type> canonical_divmod(const value_type& a, const value_type& b) const {
        return {a / b, 0};
    }
    std::pair<value_type, value_type> divmod(const value_type& a, const value_type& b) const {
        return canonical_divmod(a, b);
    }
    std::size_t norm(const value_type& a) const { return a == 0 ? 0 : 1; }
    value_type unit_part(const value_type& a) const { return a == 0 ? BigRat(1) : a; }
    value_type unit_inverse(const value_type& u) const { return inv(u); }

    std::string to_string(const value_type& a) const { return a.str(); }
    std::string name() const { return "QQ"; }
    bool operator==(const Rationals&) const = default;
};

/// Z/p for a prime p < 2^31, with machine-word residues.
class PrimeField {
   public:
    using value_type = std::int64_t;
    static constexpr bool is_euclidean = true;
    static constexpr bool is_field = true;

    explicit PrimeField(std::int64_t p) : p_(p) {
        if (!is_prime(p) || p >= (std::int64_t{1} << 31)) throw DomainError("PrimeField needs a prime below 2^31");
    }

    std::int64_t p() const { return p_; }
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t n) const {
        n %= p_;
        return n < 0 ? n + p_ : n;
    }
    value_type from_bigint(const BigInt& n) const {
        BigInt r = n % p_;
        if (r < 0) r += p_;
        return r.convert_to<std::int64_t>();
    }

    value_type add(value_type a, value_type b) const {
        a += b;
        return a >= p_ ? a - p_ : a;
    }
    value_type sub(value_type a, value_type b) const {
        a -= b;
        return a < 0 ? a + p_ : a;
    }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    bool is_zero(value_type a) const { return a == 0; }
    bool is_unit(value_type a) const { return a != 0; }
    value_type inv(value_type a) const {
        if (a == 0) throw DomainError("inverse of zero in F_p");
        std::int64_t r = 1, b = a;
        std::int64_t e = p_ - 2;
        while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return r;
    }

    std::optional<value_type> try_divide(value_type a, value_type b) const { return mul(a, inv(b)); }

    std::pair<value_type, value_type> canonical_divmod(value_type a, value_type b) const { return {mul(a, inv(b)), 0}; }
    std::pair<value_type, value_type> divmod(value_type a, value_type b) const { return canonical_divmod(a, b); }
    std::size_t norm(value_type a) const { return a == 0 ? 0 : 1; }
    value_type unit_part(value_type a) const { return a == 0 ? 1 : a; }
    value_type unit_inverse(value_type u) const { return inv(u); }

    std::string to_string(value_type a) const { return std::to_string(a); }
    std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
    bool operator==(const PrimeField&) const = default;

   private:
    std::int64_t p_;
};

/// Z/m for an arbitrary modulus m >= 1. A ring only; linear algebra over it
/// goes through lifts to the integers.
class IntegersMod {
   public:
    using value_type = BigInt;
    static constexpr bool is_euclidean = false;
    static constexpr bool is_field = false;

    explicit IntegersMod(BigInt m) : m_(std::move(m)) {
        if (m_ < 1) throw DomainError("IntegersMod needs a positive modulus");
    }

    const BigInt& modulus() const { return m_; }
    value_type reduce(const BigInt& a) const {
        BigInt r = a % m_;
        if (r < 0) r += m_;
        return r;
    }
    value_type zero() const { return 0; }
    value_type one() const { return reduce(1); }
    value_type from_int(std::int64_t n) const { return reduce(n); }
    value_type from_bigint(const BigInt& n) const { return reduce(n); }

    value_type add(const value_type& a, const value_type& b) const { return reduce(a + b); }
    value_type sub(const value_type& a, const value_type& b) const { return reduce(a - b); }
    value_type mul(const value_type& a, const value_type& b) const { return reduce(a * b); }
    value_type neg(const value_type& a) const { return reduce(-a); }
    bool is_zero(const value_type& a) const { return a == 0; }
    bool is_unit(const value_type& a) const { return gcd(a, m_) == 1; }
    /// Inverse of a unit.
    value_type inv(const value_type& a) const {
        BigInt old_r = a, r = m_, old_s = 1, s = 0;
        while (r != 0) {
            BigInt q = old_r / r;
            BigInt t = old_r - q * r;
            old_r = r;
            r = t;
            t = old_s - q * s;
            old_s = s;
            s = t;
        }
        if (abs(old_r) != 1) throw DomainError("not a unit in Z/m");
        return reduce(old_s * old_r);
    }
    /// Some c with b*c = a, if one exists.
    std::optional<value_type> try_divide(const value_type& a, const value_type& b) const {
        BigInt g = gcd(b, m_);
        if (a % g != 0) return std::nullopt;
        IntegersMod sub(m_ / g);
        if (sub.modulus() == 1) return value_type(0);
        return reduce(sub.mul(sub.reduce(a / g), sub.inv(sub.reduce(b / g))));
    }

    std::string to_string(const value_type& a) const { return a.str(); }
    std::string name() const { return "ZZ/" + m_.str(); }
    bool operator==(const IntegersMod&) const = default;

   private:
    BigInt m_;
};

}  // namespace etakit
