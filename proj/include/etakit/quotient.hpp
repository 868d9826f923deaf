#pragma once

#include <string>
#include <type_traits>
#include <utility>

#include "smith.hpp"
#include "tower.hpp"

namespace etakit {

template <class R>
struct is_tower : std::false_type {};
template <class K>
struct is_tower<TowerRing<K>> : std::true_type {};

/// R/(f) with canonical representatives. R is Euclidean, or an integral tower
/// ring with a modulus whose polynomial part is monic with unit constant term.
template <class R>
class Quotient {
   public:
    using base_ring = R;
    using value_type = typename R::value_type;
    static constexpr bool is_euclidean = false;
    static constexpr bool is_field = false;

    Quotient(R base, value_type modulus) : base_(std::move(base)), f_(std::move(modulus)) {
        if (base_.is_zero(f_)) throw DomainError("quotient by zero");
        if constexpr (is_tower<R>::value && !R::is_euclidean) {
            const auto& c = f_.coeffs;
            if (!base_.base().is_unit(c.back()) || !base_.base().is_unit(c.front()))
                throw Unsupported("integral tower quotients need a monic modulus with unit constant term");
        }
    }

    const R& base() const { return base_; }
    const value_type& modulus() const { return f_; }

    value_type reduce(const value_type& a) const {
        if constexpr (is_tower<R>::value) {
            if (base_.is_unit(f_)) return base_.zero();
            return base_.from_poly(base_.residue(a, f_));
        } else {
            return base_.canonical_divmod(a, f_).second;
        }
    }

    value_type zero() const { return base_.zero(); }
    value_type one() const { return reduce(base_.one()); }
    value_type from_int(std::int64_t n) const { return reduce(base_.from_int(n)); }
    value_type from_bigint(const BigInt& n) const { return reduce(base_.from_bigint(n)); }
    value_type from_base(const value_type& a) const { return reduce(a); }

    value_type add(const value_type& a, const value_type& b) const { return reduce(base_.add(a, b)); }
    value_type sub(const value_type& a, const value_type& b) const { return reduce(base_.sub(a, b)); }
    value_type mul(const value_type& a, const value_type& b) const { return reduce(base_.mul(a, b)); }
    value_type neg(const value_type& a) const { return reduce(base_.neg(a)); }
    bool is_zero(const value_type& a) const { return base_.is_zero(a); }
    bool is_unit(const value_type& a) const {
        if constexpr (R::is_euclidean) {
            return base_.is_unit(ring_gcd(base_, a, f_));
        } else {
            throw Unsupported("unit test in " + name());
        }
    }

    std::string to_string(const value_type& a) const { return base_.to_string(a); }
    std::string name() const { return base_.name() + "/(" + base_.to_string(f_) + ")"; }
    bool operator==(const Quotient&) const = default;

   private:
    R base_;
    value_type f_;
};

}  // namespace etakit
