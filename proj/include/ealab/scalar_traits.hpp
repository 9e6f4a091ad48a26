#pragma once

#include "ealab/qrational.hpp"

namespace ealab {

/// Uniform access to the two scalar fields the library instantiates its
/// templates with: the cyclotomic field itself, and its transcendental
/// extension by the generic marker.
template <class F>
struct ScalarTraits;

template <>
struct ScalarTraits<Cyc> {
    static constexpr bool has_marker = false;
    static Cyc from_cyc(Cyc c) { return c; }
    static Cyc from_rat(Rat r) { return Cyc(std::move(r)); }
    static bool is_monomial(Cyc const& x) { return true; }
    /// (cyclotomic coefficient, marker exponent) of a monomial value
    static std::pair<Cyc, int32_t> monomial_parts(Cyc const& x) { return {x, 0}; }
    static Cyc marker_pow(int32_t e) {
        if (e != 0) throw EalabError("generic marker not available in this field");
        return Cyc::one();
    }
    static std::string name() { return "cyclotomic"; }
};

template <>
struct ScalarTraits<QRat> {
    static constexpr bool has_marker = true;
    static QRat from_cyc(Cyc c) { return QRat(std::move(c)); }
    static QRat from_rat(Rat r) { return QRat(Cyc(std::move(r))); }
    static bool is_monomial(QRat const& x) {
        return x.den_trivial() && x.num().terms().size() <= 1;
    }
    static std::pair<Cyc, int32_t> monomial_parts(QRat const& x) {
        if (!is_monomial(x)) throw EalabError("value is not a monomial in the marker");
        if (x.is_zero()) return {Cyc::zero(), 0};
        return {x.num().terms()[0].second, x.num().terms()[0].first};
    }
    static QRat marker_pow(int32_t e) { return QRat::marker(e); }
    static std::string name() { return "generic";
    }
};

/// Multiplicative order of a root of unity in the current cyclotomic
/// context; nullopt if the value is not a root of unity.
inline std::optional<unsigned> root_of_unity_order(Cyc const& x) {
    if (x.is_zero()) return std::nullopt;
    unsigned M = CycContext::instance().max_conductor();
    Cyc p = x;
    for (unsigned k = 1; k <= M; ++k) {
        if (p == Cyc::one()) return k;
        p = p * x;
    }
    return std::nullopt;
}

/// Discrete log base zeta_M, for roots of unity: x = zeta_M^k.
inline std::optional<unsigned> dlog_root_of_unity(Cyc const& x) {
    unsigned M = CycContext::instance().max_conductor();
    Cyc z = Cyc::primitive_root(M);
    Cyc p = Cyc::one();
    for (unsigned k = 0; k < M; ++k) {
        if (p == x) return k;
        p = p * z;
    }
    return std::nullopt;
}

}  // namespace ealab
