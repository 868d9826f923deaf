#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace etakit {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operands live in rings that cannot be combined.
class RingMismatch : public Error {
   public:
    using Error::Error;
};

/// The requested operation is not available for this ring or input shape.
class Unsupported : public Error {
   public:
    using Error::Error;
};

/// A division that was required to be exact left a remainder.
class NotDivisible : public Error {
   public:
    using Error::Error;
};

/// A precondition on the arguments failed (zero divisor, level too low, ...).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// A weight left the declared truncation band.
class BandOverflow : public Error {
   public:
    using Error::Error;
};

/// Malformed external input (JSON, CLI arguments).
class InputError : public Error {
   public:
    using Error::Error;
};

/// An internal certificate did not verify. Never expected for valid input.
class VerificationFailure : public Error {
   public:
    using Error::Error;
};

inline std::int64_t ipow(std::int64_t base, unsigned exp) {
    std::int64_t r = 1;
    while (exp--) r *= base;
    return r;
}

inline BigInt bigpow(const BigInt& base, unsigned exp) {
    BigInt r = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        exp >>= 1u;
        if (exp) b *= b;
    }
    return r;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// p-adic valuation of a nonzero integer.
inline int valuation(std::int64_t n, std::int64_t p) {
    if (n == 0) throw DomainError("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Deterministic generator. The bounded draws use plain modular reduction on
/// mt19937_64 output so results are identical across standard libraries.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return state_(); }

    /// Uniform-ish integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    bool coin() { return (next() & 1u) != 0; }

   private:
    std::mt19937_64 state_;
};

}  // namespace etakit
