#pragma once

#include <json.hpp>

#include <limits>
#include <regex>
#include <string>
#include <variant>
#include <vector>

#include "complex.hpp"
#include "polynomial.hpp"
#include "quotient.hpp"
#include "tower.hpp"
#include "witt.hpp"

namespace etakit::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "etakit-report/1";
inline constexpr const char* kToolVersion = "etakit 0.1.0";

inline BigInt parse_integer(const std::string& s) {
    static const std::regex pat("-?[0-9]+");
    if (!std::regex_match(s, pat)) throw InputError("not a decimal integer: \"" + s + "\"");
    return BigInt(s);
}

inline BigInt integer_field(const Json& j, const char* what) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw InputError(std::string(what) + " must be a decimal string");
}

inline std::int64_t small_integer(const Json& j, const char* what) {
    const BigInt v = integer_field(j, what);
    if (v > BigInt(std::numeric_limits<std::int64_t>::max()) || v < BigInt(std::numeric_limits<std::int64_t>::min()))
        throw InputError(std::string(what) + " out of range");
    return v.convert_to<std::int64_t>();
}

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

// Descriptors.

inline Json descriptor(const Integers&) { return {{"kind", "Integers"}}; }
inline Json descriptor(const Rationals&) { return {{"kind", "Rationals"}}; }
inline Json descriptor(const PrimeField& k) { return {{"kind", "PrimeField"}, {"p", std::to_string(k.p())}}; }
inline Json descriptor(const IntegersMod& k) { return {{"kind", "IntegersMod"}, {"modulus", k.modulus().str()}}; }
template <class K>
Json descriptor(const Poly<K>& k) {
    return {{"kind", "Polynomial"}, {"base", descriptor(k.base())}, {"variable", k.variable()}};
}
template <class K>
Json descriptor(const TowerRing<K>& k) {
    return {{"kind", "Tower"}, {"base", descriptor(k.base())}, {"p", std::to_string(k.p())}, {"level", k.level()}};
}
template <class R>
Json encode(const Quotient<R>& ring, const typename Quotient<R>::value_type& a);
template <class R>
Json descriptor(const Quotient<R>& k);

// Values. Scalars are decimal strings; polynomial-like values are
// {"unit_exp": e, "coeffs": [...]} with coefficients low degree first.

inline Json encode(const Integers&, const BigInt& a) { return a.str(); }
inline Json encode(const Rationals&, const BigRat& a) { return a.str(); }
inline Json encode(const PrimeField&, std::int64_t a) { return std::to_string(a); }
inline Json encode(const IntegersMod&, const BigInt& a) { return a.str(); }

template <class K>
Json coeff_list(const K& k, const std::vector<typename K::value_type>& c) {
    Json out = Json::array();
    for (const auto& x : c) out.push_back(encode(k, x));
    return out;
}

template <class K>
Json encode(const Poly<K>& ring, const typename Poly<K>::value_type& a) {
    return {{"unit_exp", 0}, {"coeffs", coeff_list(ring.base(), a)}};
}
template <class K>
Json encode(const TowerRing<K>& ring, const typename TowerRing<K>::value_type& a) {
    return {{"unit_exp", a.coeffs.empty() ? 0 : a.exp}, {"coeffs", coeff_list(ring.base(), a.coeffs)}};
}
template <class R>
Json encode(const Quotient<R>& ring, const typename Quotient<R>::value_type& a) {
    return encode(ring.base(), a);
}
template <class R>
Json descriptor(const Quotient<R>& k) {
    return {{"kind", "Quotient"}, {"base", descriptor(k.base())}, {"modulus", encode(k.base(), k.modulus())}};
}

inline BigInt decode(const Integers&, const Json& j) { return integer_field(j, "integer"); }
inline BigRat decode(const Rationals&, const Json& j) {
    if (j.is_number_integer()) return BigRat(j.get<std::int64_t>());
    if (!j.is_string()) throw InputError("rational must be a string \"a\" or \"a/b\"");
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return BigRat(parse_integer(s));
    const BigInt den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in \"" + s + "\"");
    return BigRat(parse_integer(s.substr(0, slash)), den);
}
inline std::int64_t decode(const PrimeField& k, const Json& j) { return k.from_bigint(integer_field(j, "residue")); }
inline BigInt decode(const IntegersMod& k, const Json& j) { return k.from_bigint(integer_field(j, "residue")); }

template <class K>
std::pair<std::int64_t, std::vector<typename K::value_type>> decode_coeffs(const K& k, const Json& j) {
    const Json* list = &j;
    std::int64_t e = 0;
    if (j.is_object()) {
        list = &field(j, "coeffs");
        if (j.contains("unit_exp")) e = small_integer(j.at("unit_exp"), "unit_exp");
    }
    if (!list->is_array()) throw InputError("coefficients must be an array");
    std::vector<typename K::value_type> c;
    for (const auto& x : *list) c.push_back(decode(k, x));
    return {e, std::move(c)};
}

template <class K>
typename Poly<K>::value_type decode(const Poly<K>& ring, const Json& j) {
    auto [e, c] = decode_coeffs(ring.base(), j);
    if (e < 0) throw InputError("negative unit_exp in a polynomial ring");
    poly::trim(ring.base(), c);
    if (e > 0 && !c.empty()) c.insert(c.begin(), static_cast<std::size_t>(e), ring.base().zero());
    return c;
}
template <class K>
typename TowerRing<K>::value_type decode(const TowerRing<K>& ring, const Json& j) {
    auto [e, c] = decode_coeffs(ring.base(), j);
    return ring.normalize(e, std::move(c));
}
template <class R>
typename Quotient<R>::value_type decode(const Quotient<R>& ring, const Json& j) {
    return ring.reduce(decode(ring.base(), j));
}

template <class R>
inline constexpr bool kPolynomialLike = false;
template <class K>
inline constexpr bool kPolynomialLike<Poly<K>> = true;
template <class K>
inline constexpr bool kPolynomialLike<TowerRing<K>> = true;
template <class R>
inline constexpr bool kPolynomialLike<Quotient<R>> = true;

// Elements: {"ring": descriptor, "unit_exp": e, "coeffs": [...]}.

template <class R>
Json element_to_json(const R& ring, const typename R::value_type& a) {
    Json out{{"ring", descriptor(ring)}};
    Json v = encode(ring, a);
    if (v.is_object()) {
        out["unit_exp"] = v["unit_exp"];
        out["coeffs"] = v["coeffs"];
    } else {
        out["unit_exp"] = 0;
        out["coeffs"] = ring.is_zero(a) ? Json::array() : Json::array({v});
    }
    return out;
}

template <class R>
void check_ring(const R& ring, const Json& j) {
    if (j.is_object() && j.contains("ring") && j.at("ring") != descriptor(ring))
        throw RingMismatch("descriptor " + j.at("ring").dump() + " does not match " + descriptor(ring).dump());
}

template <class R>
typename R::value_type element_from_json(const R& ring, const Json& j) {
    check_ring(ring, j);
    if (j.is_string() || j.is_number_integer()) {
        if constexpr (kPolynomialLike<R>) return ring.from_bigint(integer_field(j, "element"));
        else return decode(ring, j);
    }
    const Json& c = field(j, "coeffs");
    if (!c.is_array()) throw InputError("coefficients must be an array");
    if constexpr (kPolynomialLike<R>) return decode(ring, j);
    if (c.empty()) return ring.zero();
    if (c.size() != 1) throw InputError("scalar element needs exactly one coefficient");
    if (j.contains("unit_exp") && small_integer(j.at("unit_exp"), "unit_exp") != 0)
        throw InputError("scalar element with nonzero unit_exp");
    return decode(ring, c[0]);
}

// Matrices and complexes.

template <class R>
Json matrix_to_json(const R& ring, const Mat<R>& A) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < A.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < A.cols; ++j) row.push_back(encode(ring, A(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"ring", descriptor(ring)}, {"rows", A.rows}, {"cols", A.cols}, {"entries", std::move(rows)}};
}

inline std::size_t dimension(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw InputError(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

template <class R>
Mat<R> matrix_from_json(const R& ring, const Json& j) {
    check_ring(ring, j);
    const auto rows = dimension(field(j, "rows"), "rows");
    const auto cols = dimension(field(j, "cols"), "cols");
    const Json& e = field(j, "entries");
    if (!e.is_array() || e.size() != rows) throw InputError("entries do not match the row count");
    Mat<R> A(rows, cols, ring.zero());
    for (std::size_t i = 0; i < rows; ++i) {
        if (!e[i].is_array() || e[i].size() != cols) throw InputError("entries do not match the column count");
        for (std::size_t k = 0; k < cols; ++k) A(i, k) = decode(ring, e[i][k]);
    }
    return A;
}

template <class R>
Json complex_to_json(const R& ring, const CochainComplex<R>& C) {
    Json d = Json::array();
    for (const auto& m : C.d) d.push_back(matrix_to_json(ring, m));
    return {{"ring", descriptor(ring)},
            {"degrees", {C.lo, C.lo + static_cast<int>(C.ranks.size()) - 1}},
            {"ranks", C.ranks},
            {"differentials", std::move(d)}};
}

template <class R>
CochainComplex<R> complex_from_json(const R& ring, const Json& j) {
    check_ring(ring, j);
    const Json& deg = field(j, "degrees");
    if (!deg.is_array() || deg.size() != 2) throw InputError("degrees must be [lo, hi]");
    const auto lo = small_integer(deg[0], "degree");
    const auto hi = small_integer(deg[1], "degree");
    if (hi < lo) throw InputError("degrees must satisfy lo <= hi");
    const Json& r = field(j, "ranks");
    if (!r.is_array() || static_cast<std::int64_t>(r.size()) != hi - lo + 1) throw InputError("one rank per degree");
    std::vector<std::size_t> ranks;
    for (const auto& x : r) ranks.push_back(dimension(x, "rank"));
    const Json& dj = field(j, "differentials");
    if (!dj.is_array() || dj.size() + 1 != ranks.size()) throw InputError("one differential between consecutive degrees");
    std::vector<Mat<R>> d;
    for (std::size_t n = 0; n < dj.size(); ++n) {
        auto m = matrix_from_json(ring, dj[n]);
        if (m.rows != ranks[n + 1] || m.cols != ranks[n])
            throw InputError("differential " + std::to_string(n) + " has the wrong shape");
        d.push_back(std::move(m));
    }
    CochainComplex<R> C{static_cast<int>(lo), std::move(ranks), std::move(d)};
    const auto v = validate(ring, C);
    if (!v.ok) throw InputError("not a complex: " + v.message);
    return C;
}

// Witt vectors: {"p": "3", "ring": descriptor, "components": [...]}.

template <class R>
Json witt_to_json(const R& ring, const WittVector<R>& x) {
    Json c = Json::array();
    for (const auto& a : x.components) c.push_back(encode(ring, a));
    return {{"p", std::to_string(x.p)}, {"ring", descriptor(ring)}, {"components", std::move(c)}};
}

template <class R>
WittVector<R> witt_from_json(const R& ring, const Json& j) {
    check_ring(ring, j);
    const Json& c = field(j, "components");
    if (!c.is_array() || c.empty()) throw InputError("components must be a non-empty array");
    WittVector<R> x{small_integer(field(j, "p"), "p"), {}};
    for (const auto& a : c) x.components.push_back(decode(ring, a));
    return x;
}

// Runtime ring selection.

using AnyRing = std::variant<Integers, Rationals, PrimeField, IntegersMod, Poly<Integers>, Poly<Rationals>,
                             Poly<PrimeField>, TowerRing<Integers>, TowerRing<PrimeField>,
                             Quotient<TowerRing<PrimeField>>>;

inline std::int64_t prime_field(const Json& j) {
    const auto p = small_integer(field(j, "p"), "p");
    if (!is_prime(p)) throw InputError("p must be prime");
    return p;
}

inline AnyRing ring_from_descriptor(const Json& j) {
    const Json& kind = field(j, "kind");
    if (!kind.is_string()) throw InputError("ring kind must be a string");
    const auto k = kind.get<std::string>();
    if (k == "Integers") return Integers{};
    if (k == "Rationals") return Rationals{};
    if (k == "PrimeField") return PrimeField(prime_field(j));
    if (k == "IntegersMod") {
        const BigInt m = integer_field(field(j, "modulus"), "modulus");
        if (m < 1) throw InputError("modulus must be positive");
        return IntegersMod(m);
    }
    if (k == "Polynomial" || k == "Tower" || k == "Quotient") {
        const AnyRing base = ring_from_descriptor(field(j, "base"));
        if (k == "Polynomial") {
            const std::string var = j.contains("variable") ? j.at("variable").get<std::string>() : "q";
            if (auto* b = std::get_if<Integers>(&base)) return Poly<Integers>(*b, var);
            if (auto* b = std::get_if<Rationals>(&base)) return Poly<Rationals>(*b, var);
            if (auto* b = std::get_if<PrimeField>(&base)) return Poly<PrimeField>(*b, var);
            throw Unsupported("polynomials over this base");
        }
        if (k == "Tower") {
            const auto p = prime_field(j);
            const auto level = small_integer(field(j, "level"), "level");
            if (level < 0 || level > 12) throw InputError("tower level must be in [0, 12]");
            if (auto* b = std::get_if<Integers>(&base)) return TowerRing<Integers>(*b, p, static_cast<int>(level));
            if (auto* b = std::get_if<PrimeField>(&base)) return TowerRing<PrimeField>(*b, p, static_cast<int>(level));
            throw Unsupported("towers over this base");
        }
        if (auto* b = std::get_if<TowerRing<PrimeField>>(&base))
            return Quotient<TowerRing<PrimeField>>(*b, decode(*b, field(j, "modulus")));
        throw Unsupported("quotients of this base");
    }
    throw InputError("unknown ring kind \"" + k + "\"");
}

/// Parses JSON text, mapping syntax errors to InputError.
inline Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace etakit::io
