#pragma once

#include "ealab/root_system.hpp"

namespace ealab {

/// Total degree of a doubly graded algebra: a root-lattice component xi
/// (ambient coordinates of the root system) and a lattice component lam in
/// Z^n. Addition is componentwise.
struct Degree {
    IntVec xi;
    IntVec lam;

    friend bool operator==(Degree const& a, Degree const& b) {
        return a.xi == b.xi && a.lam == b.lam;
    }
    friend bool operator!=(Degree const& a, Degree const& b) { return !(a == b); }
    friend bool operator<(Degree const& a, Degree const& b) {
        if (a.xi != b.xi) return std::lexicographical_compare(a.xi.begin(), a.xi.end(),
                                                              b.xi.begin(), b.xi.end());
        return std::lexicographical_compare(a.lam.begin(), a.lam.end(), b.lam.begin(),
                                            b.lam.end());
    }
    friend Degree operator+(Degree const& a, Degree const& b) {
        return {a.xi + b.xi, a.lam + b.lam};
    }
    friend Degree operator-(Degree const& a, Degree const& b) {
        return {a.xi - b.xi, a.lam - b.lam};
    }
    Degree operator-() const {
        Degree d;
        d.xi = xi;
        d.lam = lam;
        for (auto& x : d.xi) x = -x;
        for (auto& x : d.lam) x = -x;
        return d;
    }

    std::string str() const { return to_string(xi) + "@" + to_string(lam); }
};

/// Homogeneous component: a dense coefficient vector over the basis of one
/// degree.
template <class F>
struct HomElt {
    Degree deg;
    std::vector<F> v;

    bool is_zero() const {
        for (auto const& x : v)
            if (!x.is_zero()) return false;
        return true;
    }
};

/// Sparse element: finitely many homogeneous components, no zero vectors
/// stored.
template <class F>
class Element {
public:
    Element() = default;

    static Element basis(Degree deg, std::size_t idx, std::size_t dim, F coeff = F(1)) {
        Element e;
        std::vector<F> v(dim, F(0));
        v[idx] = std::move(coeff);
        e.parts_.emplace(std::move(deg), std::move(v));
        return e;
    }

    bool is_zero() const { return parts_.empty(); }
    std::map<Degree, std::vector<F>> const& parts() const { return parts_; }

    void add(HomElt<F> const& h) {
        if (h.is_zero()) return;
        auto it = parts_.find(h.deg);
        if (it == parts_.end()) {
            parts_.emplace(h.deg, h.v);
            return;
        }
        for (std::size_t i = 0; i < h.v.size(); ++i) it->second[i] = it->second[i] + h.v[i];
        if (std::all_of(it->second.begin(), it->second.end(),
                        [](F const& x) { return x.is_zero(); }))
            parts_.erase(it);
    }

    void add_scaled(Element const& other, F const& c) {
        if (c.is_zero()) return;
        for (auto const& [deg, v] : other.parts_) {
            HomElt<F> h{deg, v};
            for (auto& x : h.v) x = x * c;
            add(h);
        }
    }

    friend Element operator+(Element const& a, Element const& b) {
        Element r = a;
        r.add_scaled(b, F(1));
        return r;
    }
    friend Element operator-(Element const& a, Element const& b) {
        Element r = a;
        r.add_scaled(b, -F(1));
        return r;
    }
    Element scaled(F const& c) const {
        Element r;
        r.add_scaled(*this, c);
        return r;
    }

    friend bool operator==(Element const& a, Element const& b) {
        return (a - b).is_zero();
    }

    std::string str(std::function<std::string(Degree const&, std::size_t)> const& label) const {
        if (parts_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto const& [deg, v] : parts_)
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i].is_zero()) continue;
                if (!first) os << " + ";
                first = false;
                os << "(" << v[i].str() << ")*" << label(deg, i);
            }
        return os.str();
    }

private:
    std::map<Degree, std::vector<F>> parts_;
};

/// Basis slot of a handle: a degree plus an index below dim(degree).
struct BasisKey {
    Degree deg;
    std::size_t idx;

    friend bool operator==(BasisKey const& a, BasisKey const& b) {
        return a.deg == b.deg && a.idx == b.idx;
    }
    friend bool operator<(BasisKey const& a, BasisKey const& b) {
        if (!(a.deg == b.deg)) return a.deg < b.deg;
        return a.idx < b.idx;
    }
};

/// Intensional doubly graded Lie algebra: homogeneous dimensions and the
/// bracket are closed-form rules, never materialized tables, so windows of
/// any radius can be enumerated lazily.
template <class F>
struct GradedHandle {
    RootSystemId sys{Family::A, 1};
    std::size_t lam_rank = 0;
    std::string tag;

    std::function<std::size_t(Degree const&)> dim;
    std::function<std::string(Degree const&, std::size_t)> label;
    /// bracket of two basis vectors; result is homogeneous of the sum degree
    std::function<HomElt<F>(Degree const&, std::size_t, Degree const&, std::size_t)> bracket;
    /// graded invariant form on basis vectors (optional)
    std::function<F(Degree const&, std::size_t, Degree const&, std::size_t)> form;

    /// centroid support lattice and normalized centroid action (optional;
    /// realizations provide it, generic handles may not)
    std::optional<Lattice> centroid_support;
    std::function<HomElt<F>(IntVec const&, Degree const&, std::size_t)> centroid_action;

    /// set on loop/multiloop realizations: kappa(u,v) = kappa_scale * form
    /// between matrix parts; absent means the handle carries no Killing data
    std::optional<F> kappa_scale;

    bool n3_caveat = false;  // realization below the classification bound

    Degree zero_degree() const {
        return Degree{zero_vec(ambient_dim(sys)), zero_vec(lam_rank)};
    }

    bool has_form() const { return static_cast<bool>(form); }

    HomElt<F> bracket_basis_elt(BasisKey const& a, BasisKey const& b) const {
        return bracket(a.deg, a.idx, b.deg, b.idx);
    }

    Element<F> bracket_elements(Element<F> const& x, Element<F> const& y) const {
        Element<F> out;
        for (auto const& [dx, vx] : x.parts())
            for (auto const& [dy, vy] : y.parts())
                for (std::size_t i = 0; i < vx.size(); ++i) {
                    if (vx[i].is_zero()) continue;
                    for (std::size_t j = 0; j < vy.size(); ++j) {
                        if (vy[j].is_zero()) continue;
                        HomElt<F> h = bracket(dx, i, dy, j);
                        F c = vx[i] * vy[j];
                        for (auto& t : h.v) t = t * c;
                        out.add(h);
                    }
                }
        return out;
    }

    /// [x, b] for a basis slot b, accumulated into a homogeneous component of
    /// x's (single) degree plus b's degree. x must be homogeneous.
    HomElt<F> bracket_hom_basis(HomElt<F> const& x, BasisKey const& b) const {
        Degree target = x.deg + b.deg;
        HomElt<F> out{target, std::vector<F>(dim(target), F(0))};
        for (std::size_t i = 0; i < x.v.size(); ++i) {
            if (x.v[i].is_zero()) continue;
            HomElt<F> h = bracket(x.deg, i, b.deg, b.idx);
            for (std::size_t j = 0; j < h.v.size(); ++j)
                out.v[j] = out.v[j] + x.v[i] * h.v[j];
        }
        return out;
    }

    F form_elements(Element<F> const& x, Element<F> const& y) const {
        if (!has_form()) throw EalabError("handle carries no invariant form");
        F s(0);
        for (auto const& [dx, vx] : x.parts())
            for (auto const& [dy, vy] : y.parts())
                for (std::size_t i = 0; i < vx.size(); ++i) {
                    if (vx[i].is_zero()) continue;
                    for (std::size_t j = 0; j < vy.size(); ++j) {
                        if (vy[j].is_zero()) continue;
                        s = s + vx[i] * vy[j] * form(dx, i, dy, j);
                    }
                }
        return s;
    }
};

/// All window degrees (xi in S, |lam|_inf <= radius) with positive dimension,
/// in deterministic order.
template <class F>
std::vector<Degree> window_degrees(GradedHandle<F> const& h, int32_t radius) {
    std::vector<Degree> out;
    auto const& rs = RootSystem::get(h.sys);
    for (auto const& xi : rs.roots())
        for_each_box_point(h.lam_rank, radius, [&](IntVec const& lam) {
            Degree d{xi, lam};
            if (h.dim(d) > 0) out.push_back(std::move(d));
        });
    std::sort(out.begin(), out.end());
    return out;
}

template <class F>
std::vector<BasisKey> window_basis(GradedHandle<F> const& h, int32_t radius) {
    std::vector<BasisKey> out;
    for (auto const& d : window_degrees(h, radius))
        for (std::size_t i = 0; i < h.dim(d); ++i) out.push_back({d, i});
    return out;
}

/// Element-level dispatcher used by the CLI and tests.
template <class F>
Element<F> algebra_eval_bracket(GradedHandle<F> const& h, Element<F> const& x,
                                Element<F> const& y) {
    return h.bracket_elements(x, y);
}

}  // namespace ealab
