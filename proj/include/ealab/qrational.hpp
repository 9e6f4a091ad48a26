#pragma once

#include "ealab/cyclotomic.hpp"

namespace ealab {

/// Laurent polynomial in the designated generic marker, with cyclotomic
/// coefficients. Terms are kept sorted by exponent with no zero coefficients.
class QPoly {
public:
    using Term = std::pair<int32_t, Cyc>;
    using Terms = boost::container::small_vector<Term, 1>;

    QPoly() = default;
    QPoly(Cyc c) {
        if (!c.is_zero()) t_.emplace_back(0, std::move(c));
    }
    static QPoly marker_pow(int32_t e, Cyc c = Cyc::one()) {
        QPoly p;
        if (!c.is_zero()) p.t_.emplace_back(e, std::move(c));
        return p;
    }

    Terms const& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 0); }
    Cyc constant() const { return t_.empty() ? Cyc::zero() : t_[0].second; }
    int32_t min_exp() const { return t_.empty() ? 0 : t_.front().first; }
    int32_t max_exp() const { return t_.empty() ? 0 : t_.back().first; }

    friend QPoly operator+(QPoly const& a, QPoly const& b) {
        QPoly r;
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first))
                r.t_.push_back(a.t_[i++]);
            else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first)
                r.t_.push_back(b.t_[j++]);
            else {
                Cyc s = a.t_[i].second + b.t_[j].second;
                if (!s.is_zero()) r.t_.emplace_back(a.t_[i].first, std::move(s));
                ++i, ++j;
            }
        }
        return r;
    }
    friend QPoly operator-(QPoly const& a, QPoly const& b) { return a + (-b); }
    QPoly operator-() const {
        QPoly r = *this;
        for (auto& [e, c] : r.t_) c = -c;
        return r;
    }
    friend QPoly operator*(QPoly const& a, QPoly const& b) {
        if (a.t_.empty() || b.t_.empty()) return {};
        if (a.t_.size() == 1 && b.t_.size() == 1) {
            QPoly r;
            Cyc c = a.t_[0].second * b.t_[0].second;
            if (!c.is_zero()) r.t_.emplace_back(a.t_[0].first + b.t_[0].first, std::move(c));
            return r;
        }
        std::map<int32_t, Cyc> acc;
        for (auto const& [ea, ca] : a.t_)
            for (auto const& [eb, cb] : b.t_) {
                auto it = acc.find(ea + eb);
                if (it == acc.end())
                    acc.emplace(ea + eb, ca * cb);
                else
                    it->second = it->second + ca * cb;
            }
        QPoly r;
        for (auto& [e, c] : acc)
            if (!c.is_zero()) r.t_.emplace_back(e, std::move(c));
        return r;
    }
    friend bool operator==(QPoly const& a, QPoly const& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].first != b.t_[i].first || a.t_[i].second != b.t_[i].second) return false;
        return true;
    }

    /// Shifts exponents so the minimal one becomes 0.
    QPoly shifted_to_zero() const {
        QPoly r = *this;
        if (r.t_.empty()) return r;
        int32_t s = r.t_.front().first;
        for (auto& [e, c] : r.t_) e -= s;
        return r;
    }

    QPoly scaled(Cyc const& s) const {
        QPoly r;
        if (s.is_zero()) return r;
        for (auto const& [e, c] : t_) r.t_.emplace_back(e, c * s);
        return r;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i) os << " + ";
            os << "(" << t_[i].second.str() << ")";
            if (t_[i].first != 0) os << "*q^" << t_[i].first;
        }
        return os.str();
    }

private:
    Terms t_;
};

namespace detail {

// Ordinary (non-Laurent) polynomial division over Q(zeta): both inputs must
// have min_exp >= 0. Returns the remainder.
inline QPoly qpoly_rem(QPoly a, QPoly const& b) {
    if (b.is_zero()) throw EalabError("polynomial division by zero");
    while (!a.is_zero() && a.max_exp() >= b.max_exp()) {
        Cyc f = a.terms().back().second / b.terms().back().second;
        QPoly t = QPoly::marker_pow(a.max_exp() - b.max_exp(), f);
        a = a - t * b;
    }
    return a;
}

inline QPoly qpoly_gcd(QPoly a, QPoly b) {
    a = a.shifted_to_zero();
    b = b.shifted_to_zero();
    while (!b.is_zero()) {
        QPoly r = qpoly_rem(a, b).shifted_to_zero();
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.scaled(a.terms().back().second.inv());  // monic
    return a;
}

}  // namespace detail

/// Element of the field Q(zeta_M)(q), where q is the designated generic
/// marker: multiplicatively independent, all integer powers distinct.
/// Kept normalized: den is monic with minimal exponent 0 and gcd(num,den)=1;
/// plain cyclotomic values have den = 1.
class QRat {
public:
    QRat() : num_(), den_(Cyc::one()) {}
    QRat(long v) : num_(Cyc(v)), den_(Cyc::one()) {}
    QRat(Cyc c) : num_(std::move(c)), den_(Cyc::one()) {}
    QRat(QPoly num, QPoly den) { assign(std::move(num), std::move(den)); }

    static QRat zero() { return QRat(); }
    static QRat one() { return QRat(1L); }
    static QRat marker(int32_t e = 1) { return QRat(QPoly::marker_pow(e), QPoly(Cyc::one())); }

    QPoly const& num() const { return num_; }
    QPoly const& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    void make_zero() { *this = QRat(); }
    void add_mul(QRat const& a, QRat const& b) { *this = *this + a * b; }
    bool den_trivial() const { return den_.is_constant(); }
    bool is_cyclotomic() const { return den_trivial() && num_.is_constant(); }
    Cyc cyclotomic_part() const {
        if (!is_cyclotomic()) throw EalabError("value involves the generic marker");
        return num_.constant();
    }

    friend bool operator==(QRat const& a, QRat const& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(QRat const& a, QRat const& b) { return !(a == b); }

    friend QRat operator+(QRat const& a, QRat const& b) {
        if (a.den_trivial() && b.den_trivial()) {
            QRat r;
            r.num_ = a.num_ + b.num_;
            return r;
        }
        return QRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QRat operator-(QRat const& a, QRat const& b) { return a + (-b); }
    QRat operator-() const {
        QRat r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend QRat operator*(QRat const& a, QRat const& b) {
        if (a.den_trivial() && b.den_trivial()) {
            QRat r;
            r.num_ = a.num_ * b.num_;
            return r;
        }
        return QRat(a.num_ * b.num_, a.den_ * b.den_);
    }
    QRat inv() const {
        if (is_zero()) throw EalabError("division by zero");
        return QRat(den_, num_);
    }
    friend QRat operator/(QRat const& a, QRat const& b) {
        if (b.is_zero()) throw EalabError("division by zero");
        if (a.den_trivial() && b.den_trivial() && b.num_.terms().size() == 1) {
            // dividing by a monomial stays a Laurent polynomial
            QRat r;
            Cyc c = b.num_.terms()[0].second.inv();
            r.num_ = (a.num_ * QPoly::marker_pow(-b.num_.terms()[0].first, std::move(c)));
            return r;
        }
        return QRat(a.num_ * b.den_, a.den_ * b.num_);
    }

    QRat pow(long e) const {
        if (e < 0) return inv().pow(-e);
        QRat acc = one(), base = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) acc = acc * base;
            base = base * base;
            u >>= 1;
        }
        return acc;
    }

    std::string str() const {
        if (is_cyclotomic()) return num_.constant().str();
        if (den_trivial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void assign(QPoly num, QPoly den) {
        if (den.is_zero()) throw EalabError("division by zero");
        if (num.is_zero()) {
            num_ = QPoly();
            den_ = QPoly(Cyc::one());
            return;
        }
        // pull the Laurent monomial q^k into the numerator
        int32_t shift = den.min_exp();
        den = den.shifted_to_zero();
        if (shift != 0) num = num * QPoly::marker_pow(-shift);
        if (!den.is_constant()) {
            QPoly g = detail::qpoly_gcd(num, den);
            if (g.max_exp() > 0) {
                num = exact_div(num, g);
                den = exact_div(den, g);
            }
        }
        Cyc lead = den.terms().back().second;
        if (den.is_constant()) {
            num = num.scaled(lead.inv());
            den = QPoly(Cyc::one());
        } else if (!(lead == Cyc::one())) {
            Cyc li = lead.inv();
            num = num.scaled(li);
            den = den.scaled(li);
        }
        num_ = std::move(num);
        den_ = std::move(den);
    }

    static QPoly exact_div(QPoly const& a, QPoly const& b) {
        // a = q*b exactly (up to a Laurent shift); long division
        int32_t shift = a.min_exp() - b.min_exp();
        QPoly aa = a.shifted_to_zero(), bb = b.shifted_to_zero(), q;
        while (!aa.is_zero()) {
            if (aa.max_exp() < bb.max_exp()) throw EalabError("inexact polynomial division");
            Cyc f = aa.terms().back().second / bb.terms().back().second;
            QPoly t = QPoly::marker_pow(aa.max_exp() - bb.max_exp(), f);
            q = q + t;
            aa = aa - t * bb;
        }
        return q * QPoly::marker_pow(shift);
    }

    QPoly num_, den_;
};

}  // namespace ealab
