#pragma once

#include <gmpxx.h>

#include <string>

#include "ealab/common.hpp"

namespace ealab {

/// Arbitrary-precision rational number. All arithmetic in the library is
/// exact; there is no floating point anywhere.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool rat_is_zero(Rat const& r) { return sgn(r) == 0; }

inline std::string rat_str(Rat const& r) { return r.get_str(); }

/// Parses "p", "-p" or "p/q".
inline Rat rat_parse(std::string const& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw EalabError("bad rational literal: " + s);
    if (sgn(r.get_den()) == 0) throw EalabError("zero denominator: " + s);
    r.canonicalize();
    return r;
}

/// Field-interface wrapper around Rat, for use with the generic linear
/// algebra templates.
struct RatF {
    Rat v;
    RatF() : v(0) {}
    RatF(long x) : v(x) {}
    RatF(Rat x) : v(std::move(x)) {}
    bool is_zero() const { return sgn(v) == 0; }
    void make_zero() { v = 0; }
    void add_mul(RatF const& a, RatF const& b) { v += a.v * b.v; }
    RatF inv() const {
        if (is_zero()) throw EalabError("division by zero");
        return RatF(Rat(1) / v);
    }
    std::string str() const { return v.get_str(); }
    friend RatF operator+(RatF const& a, RatF const& b) { return RatF(a.v + b.v); }
    friend RatF operator-(RatF const& a, RatF const& b) { return RatF(a.v - b.v); }
    friend RatF operator*(RatF const& a, RatF const& b) { return RatF(a.v * b.v); }
    friend RatF operator/(RatF const& a, RatF const& b) { return a * b.inv(); }
    RatF operator-() const { return RatF(-v); }
    friend bool operator==(RatF const& a, RatF const& b) { return cmp(a.v, b.v) == 0; }
    friend bool operator!=(RatF const& a, RatF const& b) { return cmp(a.v, b.v) != 0; }
};

}  // namespace ealab
