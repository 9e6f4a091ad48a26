#pragma once

#include <map>
#include <mutex>
#include <numeric>

#include "ealab/rational.hpp"

namespace ealab {

namespace detail {

using Poly = std::vector<Rat>;  // coefficient list, index = power

inline void poly_trim(Poly& p) {
    while (!p.empty() && rat_is_zero(p.back())) p.pop_back();
}

inline Poly poly_mul(Poly const& a, Poly const& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (rat_is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

// q, r with a = q*b + r, deg r < deg b. Requires b != 0.
inline std::pair<Poly, Poly> poly_divmod(Poly a, Poly const& b) {
    Poly q;
    poly_trim(a);
    if (b.empty()) throw EalabError("polynomial division by zero");
    if (a.size() < b.size()) return {Poly{}, a};
    q.assign(a.size() - b.size() + 1, Rat(0));
    Rat lead = b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (rat_is_zero(a[i])) {
            if (i + 1 == b.size()) break;
            continue;
        }
        Rat f = a[i] / lead;
        q[i - (b.size() - 1)] = f;
        for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= f * b[j];
        if (i + 1 == b.size()) break;
    }
    poly_trim(a);
    return {q, a};
}

inline unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

}  // namespace detail

/// Per-process cyclotomic tables. Conductors are capped by a fixed maximal
/// conductor, declared up front (default 24); every scalar in a run lives in
/// a subfield of Q(zeta_max).
class CycContext {
public:
    static CycContext& instance() {
        static CycContext ctx;
        return ctx;
    }

    /// Must be called before any scalar of conductor > 1 is created.
    void set_max_conductor(unsigned m) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!tables_.empty() && m != max_)
            throw EalabError("max conductor can only be set before use");
        max_ = m;
    }
    unsigned max_conductor() const { return max_; }

    struct Table {
        unsigned phi;
        detail::Poly cyclo;                     // monic cyclotomic polynomial
        std::vector<detail::Poly> power_rows;   // x^k reduced, k in [phi, 2 phi - 2]
    };

    Table const& table(unsigned m) {
        // hot path: per-thread pointer cache (table nodes are never freed)
        thread_local std::array<Table const*, 64> cache{};
        if (m < cache.size() && cache[m]) return *cache[m];
        std::lock_guard<std::mutex> lock(mu_);
        Table const& t = table_locked(m);
        if (m < cache.size()) cache[m] = &t;
        return t;
    }

    /// Row map of the embedding Q(zeta_m) -> Q(zeta_M), zeta_m = zeta_M^{M/m}.
    /// Entry i is the image of the basis element zeta_m^i, as a coefficient
    /// vector of length phi(M).
    std::vector<std::vector<Rat>> const& lift_rows(unsigned m, unsigned M) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(m, M);
        auto it = lifts_.find(key);
        if (it != lifts_.end()) return it->second;
        if (M % m != 0) throw EalabError("conductor lift requires divisibility");
        auto const& src = table_locked(m);
        auto const& dst = table_locked(M);
        unsigned step = M / m;
        std::vector<std::vector<Rat>> rows;
        rows.reserve(src.phi);
        for (unsigned i = 0; i < src.phi; ++i)
            rows.push_back(reduced_power_locked(M, i * step, dst));
        return lifts_.emplace(key, std::move(rows)).first->second;
    }

    std::vector<Rat> reduced_power(unsigned m, unsigned k) {
        std::lock_guard<std::mutex> lock(mu_);
        auto const& t = table_locked(m);
        return reduced_power_locked(m, k, t);
    }

private:
    CycContext() = default;

    Table const& table_locked(unsigned m) {
        if (m == 0) throw EalabError("conductor must be positive");
        if (max_ % m != 0)
            throw EalabError("conductor " + std::to_string(m) +
                             " does not divide the maximal conductor " + std::to_string(max_));
        auto it = tables_.find(m);
        if (it != tables_.end()) return it->second;
        Table t;
        t.phi = detail::euler_phi(m);
        t.cyclo = cyclotomic_poly_locked(m);
        // reduction rows for products: degrees up to 2 phi - 2
        detail::Poly x_phi(t.phi + 1, Rat(0));
        x_phi[t.phi] = Rat(1);
        detail::Poly row = detail::poly_divmod(x_phi, t.cyclo).second;
        row.resize(t.phi, Rat(0));
        for (unsigned k = t.phi; k + 1 <= 2 * t.phi - 1; ++k) {
            t.power_rows.push_back(row);
            // multiply row by x, reduce once
            detail::Poly next(t.phi, Rat(0));
            Rat carry = row.empty() ? Rat(0) : row[t.phi - 1];
            for (unsigned i = t.phi; i-- > 1;) next[i] = row[i - 1];
            next[0] = Rat(0);
            if (!rat_is_zero(carry))
                for (unsigned i = 0; i < t.phi; ++i) next[i] -= carry * t.cyclo[i];
            row = next;
        }
        return tables_.emplace(m, std::move(t)).first->second;
    }

    detail::Poly cyclotomic_poly_locked(unsigned m) {
        auto it = cyclos_.find(m);
        if (it != cyclos_.end()) return it->second;
        detail::Poly result;
        if (m == 1) {
            result = {Rat(-1), Rat(1)};  // x - 1
        } else {
            detail::Poly num(m + 1, Rat(0));
            num[0] = Rat(-1);
            num[m] = Rat(1);  // x^m - 1
            for (unsigned d = 1; d < m; ++d) {
                if (m % d != 0) continue;
                auto [q, r] = detail::poly_divmod(num, cyclotomic_poly_locked(d));
                if (!r.empty()) throw EalabError("cyclotomic division failed");
                num = q;
            }
            result = num;
        }
        cyclos_.emplace(m, result);
        return result;
    }

    std::vector<Rat> reduced_power_locked(unsigned m, unsigned k, Table const& t) {
        std::vector<Rat> out(t.phi, Rat(0));
        if (t.phi == 0) throw EalabError("bad conductor table");
        unsigned kk = k % m;  // zeta^m = 1
        if (kk < t.phi) {
            out[kk] = Rat(1);
            return out;
        }
        // repeated single-step reduction via the cached rows when possible
        if (kk <= 2 * t.phi - 2) return {t.power_rows[kk - t.phi].begin(), t.power_rows[kk - t.phi].end()};
        detail::Poly p(kk + 1, Rat(0));
        p[kk] = Rat(1);
        auto r = detail::poly_divmod(p, t.cyclo).second;
        r.resize(t.phi, Rat(0));
        return {r.begin(), r.end()};
    }

    std::mutex mu_;
    unsigned max_ = 24;
    std::map<unsigned, Table> tables_;
    std::map<unsigned, detail::Poly> cyclos_;
    std::map<std::pair<unsigned, unsigned>, std::vector<std::vector<Rat>>> lifts_;
};

/// Exact element of the cyclotomic field Q(zeta_M): coordinates in the power
/// basis {1, zeta, ..., zeta^{phi(M)-1}}, fully reduced modulo the M-th
/// cyclotomic polynomial. Rationals embed as conductor-1 scalars.
class Cyc {
public:
    using Coeffs = boost::container::small_vector<Rat, 2>;

    Cyc() : m_(1), c_{Rat(0)} {}
    Cyc(long v) : m_(1), c_{Rat(v)} {}
    explicit Cyc(Rat v) : m_(1) {
        v.canonicalize();  // raw two-argument Rat constructions are accepted
        c_.push_back(std::move(v));
    }
    Cyc(unsigned conductor, Coeffs coeffs) : m_(conductor), c_(std::move(coeffs)) {
        auto const& t = CycContext::instance().table(m_);
        if (c_.size() != t.phi) throw EalabError("coefficient vector has wrong length");
        for (auto& x : c_) x.canonicalize();
    }

    static Cyc zero() { return Cyc(0L); }
    static Cyc one() { return Cyc(1L); }

    /// zeta_M, a primitive M-th root of unity.
    static Cyc primitive_root(unsigned M) {
        if (M == 0) throw EalabError("conductor must be positive");
        auto const& t = CycContext::instance().table(M);
        Coeffs c(t.phi, Rat(0));
        if (M == 1) {
            c[0] = Rat(1);
            return Cyc(M, std::move(c));
        }
        if (t.phi >= 2) {
            c[1] = Rat(1);
            return Cyc(M, std::move(c));
        }
        // phi(M) = 1 only for M = 2: zeta_2 = -1
        c[0] = Rat(-1);
        return Cyc(M, std::move(c));
    }

    unsigned conductor() const { return m_; }
    Coeffs const& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto const& x : c_)
            if (!rat_is_zero(x)) return false;
        return true;
    }

    /// In-place reset to 0, reusing allocated storage.
    void make_zero() {
        m_ = 1;
        c_.resize(1);
        c_[0] = 0;
    }

    /// *this += a * b, minimizing temporaries on the quadratic-subfield and
    /// rational fast paths.
    void add_mul(Cyc const& a, Cyc const& b) {
        if (a.m_ == 1) {
            if (rat_is_zero(a.c_[0])) return;
            if (b.m_ == 1) {
                if (m_ == 1) {
                    c_[0] += a.c_[0] * b.c_[0];
                    return;
                }
                c_[0] += a.c_[0] * b.c_[0];
                return;
            }
            if (m_ == b.m_) {
                for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a.c_[0] * b.c_[i];
                return;
            }
            *this = *this + a * b;
            return;
        }
        if (b.m_ == 1) {
            add_mul(b, a);
            return;
        }
        if (a.m_ == b.m_ && m_ == a.m_ && c_.size() == 2) {
            auto const& t = CycContext::instance().table(m_);
            Rat hi = a.c_[1] * b.c_[1];
            c_[0] += a.c_[0] * b.c_[0];
            c_[1] += a.c_[0] * b.c_[1];
            c_[1] += a.c_[1] * b.c_[0];
            if (!rat_is_zero(hi)) {
                c_[0] += hi * t.power_rows[0][0];
                c_[1] += hi * t.power_rows[0][1];
            }
            return;
        }
        *this = *this + a * b;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!rat_is_zero(c_[i])) return false;
        return true;
    }
    /// The rational part; only meaningful when is_rational().
    Rat const& rational_part() const { return c_[0]; }

    friend bool operator==(Cyc const& a, Cyc const& b) {
        if (a.m_ == b.m_) return std::equal(a.c_.begin(), a.c_.end(), b.c_.begin());
        unsigned M = std::lcm(a.m_, b.m_);
        return a.lift(M).c_ == b.lift(M).c_;
    }
    friend bool operator!=(Cyc const& a, Cyc const& b) { return !(a == b); }

    Cyc lift(unsigned M) const {
        if (M == m_) return *this;
        auto const& rows = CycContext::instance().lift_rows(m_, M);
        unsigned phiM = CycContext::instance().table(M).phi;
        Coeffs out(phiM, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (rat_is_zero(c_[i])) continue;
            for (unsigned j = 0; j < phiM; ++j) out[j] += c_[i] * rows[i][j];
        }
        return Cyc(M, std::move(out));
    }

    friend Cyc operator+(Cyc const& a, Cyc const& b) {
        if (a.m_ == b.m_) {
            Cyc r = a;
            for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
            return r;
        }
        auto [x, y] = Cyc::aligned(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyc operator-(Cyc const& a, Cyc const& b) {
        if (a.m_ == b.m_) {
            Cyc r = a;
            for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
            return r;
        }
        auto [x, y] = Cyc::aligned(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    Cyc operator-() const {
        Cyc r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Cyc operator*(Cyc const& a, Cyc const& b) {
        if (a.m_ == 1 && b.m_ == 1) return Cyc(a.c_[0] * b.c_[0]);
        if (a.m_ == 1) {
            if (rat_is_zero(a.c_[0])) return Cyc(0L);
            Cyc r = b;
            for (auto& x : r.c_) x *= a.c_[0];
            return r;
        }
        if (b.m_ == 1) return b * a;
        if (a.m_ == b.m_) return mul_same(a, b);
        auto [x, y] = Cyc::aligned(a, b);
        return mul_same(x, y);
    }

    Cyc inv() const {
        if (is_zero()) throw EalabError("division by zero");
        if (m_ == 1) return Cyc(Rat(1) / c_[0]);
        // extended Euclid: u * this + v * cyclo = 1 in Q[x]
        auto const& t = CycContext::instance().table(m_);
        detail::Poly r0(t.cyclo), r1(c_.begin(), c_.end());
        detail::poly_trim(r1);
        detail::Poly s0{}, s1{Rat(1)};  // coefficients of `this`
        while (!r1.empty()) {
            auto [q, r] = detail::poly_divmod(r0, r1);
            detail::Poly s2 = s0;
            detail::Poly qs = detail::poly_mul(q, s1);
            if (s2.size() < qs.size()) s2.resize(qs.size(), Rat(0));
            for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            detail::poly_trim(s2);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.size() != 1) throw EalabError("element not invertible");
        Coeffs out(t.phi, Rat(0));
        auto reduced = detail::poly_divmod(s0, t.cyclo).second;
        for (std::size_t i = 0; i < reduced.size(); ++i) out[i] = reduced[i] / r0[0];
        return Cyc(m_, std::move(out));
    }

    friend Cyc operator/(Cyc const& a, Cyc const& b) { return a * b.inv(); }

    Cyc pow(long e) const {
        if (e < 0) return inv().pow(-e);
        Cyc acc = Cyc::one();
        Cyc base = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) acc = acc * base;
            base = base * base;
            u >>= 1;
        }
        return acc;
    }

    std::string str() const {
        if (is_rational()) return rat_str(c_[0]);
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (rat_is_zero(c_[i])) continue;
            if (!first) os << " + ";
            first = false;
            os << rat_str(c_[i]);
            if (i >= 1) os << "*z" << m_ << (i > 1 ? "^" + std::to_string(i) : "");
        }
        if (first) os << "0";
        return os.str();
    }

private:
    static Cyc mul_same(Cyc const& x, Cyc const& y) {
        auto const& t = CycContext::instance().table(x.m_);
        unsigned phi = t.phi;
        if (phi == 2) {
            // quadratic subfields (conductors 3, 4, 6): inline reduction
            Rat hi = x.c_[1] * y.c_[1];
            Coeffs out;
            out.push_back(x.c_[0] * y.c_[0]);
            out.push_back(x.c_[0] * y.c_[1] + x.c_[1] * y.c_[0]);
            if (!rat_is_zero(hi)) {
                auto const& row = t.power_rows[0];
                out[0] += hi * row[0];
                out[1] += hi * row[1];
            }
            return Cyc(x.m_, std::move(out), NoCheck{});
        }
        std::vector<Rat> prod(2 * phi - 1, Rat(0));
        for (unsigned i = 0; i < phi; ++i) {
            if (rat_is_zero(x.c_[i])) continue;
            for (unsigned j = 0; j < phi; ++j) {
                if (rat_is_zero(y.c_[j])) continue;
                prod[i + j] += x.c_[i] * y.c_[j];
            }
        }
        Coeffs out(prod.begin(), prod.begin() + phi);
        for (unsigned k = phi; k < 2 * phi - 1; ++k) {
            if (rat_is_zero(prod[k])) continue;
            auto const& row = t.power_rows[k - phi];
            for (unsigned j = 0; j < phi; ++j) out[j] += prod[k] * row[j];
        }
        return Cyc(x.m_, std::move(out), NoCheck{});
    }

    struct NoCheck {};
    Cyc(unsigned conductor, Coeffs coeffs, NoCheck) : m_(conductor), c_(std::move(coeffs)) {}

    static std::pair<Cyc, Cyc> aligned(Cyc const& a, Cyc const& b) {
        if (a.m_ == b.m_) return {a, b};
        unsigned M = std::lcm(a.m_, b.m_);
        return {a.lift(M), b.lift(M)};
    }

    unsigned m_;
    Coeffs c_;
};

inline Cyc cyc_rat(Rat r) { return Cyc(std::move(r)); }

}  // namespace ealab
