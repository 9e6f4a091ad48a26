#pragma once

#include "ealab/cocycles.hpp"
#include "ealab/reflection.hpp"

namespace ealab {

/// Basis slot of the derivation space: a lattice degree plus an index into
/// the theta basis at that degree.
struct DKey {
    IntVec gamma;
    std::size_t idx;
    friend bool operator<(DKey const& a, DKey const& b) {
        if (!(a.gamma == b.gamma))
            return std::lexicographical_compare(a.gamma.begin(), a.gamma.end(), b.gamma.begin(),
                                                b.gamma.end());
        return a.idx < b.idx;
    }
    friend bool operator==(DKey const& a, DKey const& b) {
        return a.gamma == b.gamma && a.idx == b.idx;
    }
};

/// Abelian 2-cocycle tau : D x D -> D^{gr*}. The default is zero; nontrivial
/// tables are accepted only after all five structural identities hold on
/// their support.
struct AffineCocycle {
    // value of tau(d1, d2): list of ((gamma, idx), coefficient) dual slots
    std::map<std::pair<DKey, DKey>, std::vector<std::pair<DKey, Rat>>> table;

    bool is_zero() const { return table.empty(); }

    std::vector<std::pair<DKey, Rat>> eval(DKey const& a, DKey const& b) const {
        auto it = table.find({a, b});
        if (it != table.end()) return it->second;
        it = table.find({b, a});
        if (it != table.end()) {
            auto v = it->second;
            for (auto& [k, c] : v) c = -c;
            return v;
        }
        return {};
    }
};

inline bool is_zero_gamma(DKey const& k) { return is_zero(k.gamma); }

/// tau(d,d) = 0, antisymmetry, tau(D^0, D) = 0, the cyclic identity, the
/// symmetry tau(d1,d2)(d3) = tau(d2,d3)(d1) and gradedness, verified on the
/// finite support of the table (all trivially true for the zero cocycle).
inline CheckReport check_affine_cocycle(AffineCocycle const& tau, DerivationSpace const& D,
                                        int32_t B) {
    CheckReport rep;
    rep.axiom = "affine-cocycle";
    rep.window = B;
    if (tau.is_zero()) {
        rep.certification = "structural";
        rep.note("zero", "the zero cocycle satisfies every identity");
        return rep;
    }
    std::vector<DKey> support;
    for (auto const& [pk, val] : tau.table) {
        support.push_back(pk.first);
        support.push_back(pk.second);
        for (auto const& [k, c] : val) support.push_back(k);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    auto pair_eval = [&](DKey const& a, DKey const& b, DKey const& c) {
        Rat s(0);
        for (auto const& [k, coeff] : tau.eval(a, b))
            if (k == c) s += coeff;
        return s;
    };
    for (auto const& a : support) {
        if (!tau.eval(a, a).empty()) rep.fail("tau(d,d) != 0");
        if (is_zero_gamma(a) )
            for (auto const& b : support)
                if (!tau.eval(a, b).empty()) rep.fail("tau(D^0, D) != 0");
    }
    for (auto const& a : support)
        for (auto const& b : support) {
            // gradedness: values live at gamma_a + gamma_b
            for (auto const& [k, c] : tau.eval(a, b))
                if (!(k.gamma == a.gamma + b.gamma) && !rat_is_zero(c))
                    rep.fail("tau not graded of degree 0");
            for (auto const& c : support) {
                if (!rat_is_zero(pair_eval(a, b, c) - pair_eval(b, c, a)))
                    rep.fail("tau symmetry fails");
            }
        }
    // cyclic identity: sum d1.tau(d2,d3) = sum tau([d1,d2],d3) over the
    // support, with the contragredient action (d.c)(d') = -c([d,d'])
    auto theta_of = [&](DKey const& k) {
        auto ts = D.thetas(k.gamma);
        if (k.idx >= ts.size()) throw EalabError("tau references a slot outside D");
        return ts[k.idx];
    };
    auto bracket_coords = [&](DKey const& a, DKey const& b) {
        // [d_a, d_b] expressed in D's basis at gamma_a + gamma_b
        auto terms = DerivationSpace::bracket(a.gamma, theta_of(a), b.gamma, theta_of(b));
        std::vector<std::pair<DKey, Rat>> out;
        auto basis = D.thetas(a.gamma + b.gamma);
        if (basis.empty()) {
            if (!terms.empty()) throw EalabError("D is not closed under the bracket");
            return out;
        }
        std::vector<std::vector<RatF>> vecs;
        for (auto const& t : basis) {
            std::vector<RatF> row;
            for (auto const& x : t) row.push_back(RatF(x));
            vecs.push_back(std::move(row));
        }
        auto exp = Expander<RatF>::build(vecs, D.n);
        std::vector<RatF> target(D.n, RatF(Rat(0)));
        for (auto const& [theta, c] : terms)
            for (std::size_t i = 0; i < D.n; ++i) target[i] = target[i] + RatF(c * theta[i]);
        auto coords = exp.coords(target);
        if (!coords) throw EalabError("D is not closed under the bracket");
        for (std::size_t i = 0; i < coords->size(); ++i)
            if (!(*coords)[i].is_zero())
                out.emplace_back(DKey{a.gamma + b.gamma, i}, (*coords)[i].v);
        return out;
    };
    for (auto const& d1 : support)
        for (auto const& d2 : support)
            for (auto const& d3 : support)
                for (auto const& probe : support) {
                    // lhs: sum_cyc (d1 . tau(d2,d3))(probe) = -sum tau(d2,d3)([d1,probe])
                    Rat lhs(0), rhs(0);
                    auto term = [&](DKey const& x, DKey const& y, DKey const& z) {
                        Rat s(0);
                        for (auto const& [bk, bc] : bracket_coords(x, probe))
                            s += bc * pair_eval(y, z, bk);
                        return -s;
                    };
                    lhs += term(d1, d2, d3) + term(d2, d3, d1) + term(d3, d1, d2);
                    auto rterm = [&](DKey const& x, DKey const& y, DKey const& z) {
                        Rat s(0);
                        for (auto const& [bk, bc] : bracket_coords(x, y))
                            s += bc * pair_eval(bk, z, probe);
                        return s;
                    };
                    rhs += rterm(d1, d2, d3) + rterm(d2, d3, d1) + rterm(d3, d1, d2);
                    if (!rat_is_zero(lhs - rhs)) rep.fail("tau cyclic identity fails");
                }
    return rep;
}

/// The assembled algebra E = L + D^{gr*} + D with its toral subalgebra
/// H = E_0 and the hyperbolic form. Zero-root degrees order their slots as
/// [L part][(D^{-lam})* part][D^lam part].
template <class F>
struct EalaData {
    GradedHandle<F> L;
    DerivationSpace D;
    AffineCocycle tau;
    GradedHandle<F> E;
    SuiteReport build_report;

    std::size_t l_dim(Degree const& d) const { return L.dim(d); }
    std::size_t cstar_dim(IntVec const& lam) const { return D.dim(-lam); }
    std::size_t d_dim(IntVec const& lam) const { return D.dim(lam); }
};

namespace detail {

template <class F>
Rat as_rational(F const& x);

template <>
inline Rat as_rational<Cyc>(Cyc const& x) {
    if (!x.is_rational()) throw EalabError("value is not rational");
    return x.rational_part();
}
template <>
inline Rat as_rational<QRat>(QRat const& x) {
    Cyc c = x.cyclotomic_part();
    if (!c.is_rational()) throw EalabError("value is not rational");
    return c.rational_part();
}

}  // namespace detail

/// Assembles E(L, D, tau). Preconditions are verified: L passes the
/// Lie-torus and invariant-form suites at the build window, D is skew and
/// bracket-closed, tau satisfies its identities, and the evaluation of the
/// lattice against D^0 is injective.
template <class F>
EalaData<F> build_eala(GradedHandle<F> const& L, DerivationSpace const& D, AffineCocycle tau,
                       int32_t precheck_window = 2) {
    EalaData<F> out;
    out.L = L;
    out.D = D;
    out.tau = std::move(tau);
    out.build_report.suite = "build";
    {
        auto lt = check_lie_torus(L, precheck_window);
        for (auto& c : lt.report.checks) out.build_report.checks.push_back(c);
        auto fr = check_invariant_form(L, precheck_window);
        for (auto& c : fr.checks) out.build_report.checks.push_back(c);
        if (D.kind == DerivationSpace::Kind::Custom)
            out.build_report.checks.push_back(check_scder_closed(D, precheck_window));
        if (L.has_form()) out.build_report.checks.push_back(check_scder_skew(L, D, 1));
        out.build_report.checks.push_back(check_affine_cocycle(out.tau, D, precheck_window));
        if (!out.build_report.pass())
            throw EalabError("ingredients fail their preconditions");
    }
    // injectivity of ev_{D^0}: the theta vectors of D^0 must separate Z^n
    {
        auto thetas = D.thetas(zero_vec(D.n));
        std::vector<std::vector<RatF>> rows;
        for (auto const& t : thetas) {
            std::vector<RatF> r;
            for (auto const& x : t) r.push_back(RatF(x));
            rows.push_back(std::move(r));
        }
        if (rank_of(rows, D.n) != D.n)
            throw EalabError("ev on D^0 is not injective: degree maps do not separate the lattice");
    }
    if (D.n != L.lam_rank) throw EalabError("derivation space rank mismatch");

    auto Lh = std::make_shared<GradedHandle<F>>(L);
    auto Dh = std::make_shared<DerivationSpace>(D);
    auto tauh = std::make_shared<AffineCocycle>(out.tau);
    std::size_t n = L.lam_rank;

    GradedHandle<F> E;
    E.sys = L.sys;
    E.lam_rank = n;
    E.tag = "E(" + L.tag + ")";
    auto dim = [Lh, Dh](Degree const& d) -> std::size_t {
        std::size_t base = Lh->dim(d);
        if (is_zero(d.xi)) base += Dh->dim(-d.lam) + Dh->dim(d.lam);
        return base;
    };
    E.dim = dim;
    E.label = [Lh, Dh](Degree const& d, std::size_t i) -> std::string {
        std::size_t ld = Lh->dim(d);
        if (i < ld) return Lh->label(d, i);
        std::size_t cs = Dh->dim(-d.lam);
        if (i < ld + cs) return "c" + to_string(d.lam) + "[" + std::to_string(i - ld) + "]";
        return "d" + to_string(d.lam) + "[" + std::to_string(i - ld - cs) + "]";
    };

    // slot decode: 0 = L, 1 = C (graded dual), 2 = D
    auto decode = [Lh, Dh](Degree const& d, std::size_t i) {
        std::size_t ld = Lh->dim(d);
        if (i < ld) return std::make_pair(0, i);
        if (!is_zero(d.xi)) throw EalabError("slot outside support");
        std::size_t cs = Dh->dim(-d.lam);
        if (i < ld + cs) return std::make_pair(1, i - ld);
        return std::make_pair(2, i - ld - cs);
    };

    auto dtheta = [Dh](IntVec const& gamma, std::size_t idx) {
        auto ts = Dh->thetas(gamma);
        if (idx >= ts.size()) throw EalabError("derivation slot outside D");
        return ts[idx];
    };

    // coordinates of a theta vector in D's basis at gamma
    auto dcoords = [Dh](IntVec const& gamma, DegreeMap const& theta) {
        auto basis = Dh->thetas(gamma);
        std::vector<Rat> out(basis.size(), Rat(0));
        if (basis.empty()) {
            for (auto const& x : theta)
                if (!rat_is_zero(x)) throw EalabError("derivation bracket escapes D");
            return out;
        }
        std::vector<std::vector<RatF>> vecs;
        for (auto const& t : basis) {
            std::vector<RatF> row;
            for (auto const& x : t) row.push_back(RatF(x));
            vecs.push_back(std::move(row));
        }
        auto exp = Expander<RatF>::build(vecs, Dh->n);
        std::vector<RatF> target;
        for (auto const& x : theta) target.push_back(RatF(x));
        auto coords = exp.coords(target);
        if (!coords) throw EalabError("derivation bracket escapes D");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*coords)[i].v;
        return out;
    };

    E.bracket = [Lh, Dh, tauh, dim, decode, dtheta, dcoords, n](
                    Degree const& d1, std::size_t i1, Degree const& d2,
                    std::size_t i2) -> HomElt<F> {
        Degree target = d1 + d2;
        HomElt<F> out{target, std::vector<F>(dim(target), F(0))};
        auto [k1, s1] = decode(d1, i1);
        auto [k2, s2] = decode(d2, i2);
        std::size_t ltd = Lh->dim(target);
        std::size_t cstart = ltd;
        std::size_t dstart = ltd + (is_zero(target.xi) ? Dh->dim(-target.lam) : 0);
        if (k1 == 0 && k2 == 0) {
            // [l1, l2] plus psi_D(l1, l2) in the dual part
            HomElt<F> br = Lh->bracket(d1, i1, d2, i2);
            for (std::size_t t = 0; t < br.v.size(); ++t) out.v[t] = br.v[t];
            if (is_zero(target.xi) && Lh->has_form()) {
                IntVec g = -target.lam;
                auto thetas = Dh->thetas(g);
                for (std::size_t t = 0; t < thetas.size(); ++t) {
                    HomElt<F> da = scder_action(*Lh, g, thetas[t], d1, i1);
                    F s(0);
                    for (std::size_t a = 0; a < da.v.size(); ++a)
                        if (!da.v[a].is_zero())
                            s = s + da.v[a] * Lh->form(da.deg, a, d2, i2);
                    out.v[cstart + t] = std::move(s);
                }
            }
            return out;
        }
        if (k1 == 2 && k2 == 0) {
            // d(l2)
            HomElt<F> act = scder_action(*Lh, d1.lam, dtheta(d1.lam, s1), d2, i2);
            for (std::size_t t = 0; t < act.v.size(); ++t) out.v[t] = act.v[t];
            return out;
        }
        if (k1 == 0 && k2 == 2) {
            HomElt<F> act = scder_action(*Lh, d2.lam, dtheta(d2.lam, s2), d1, i1);
            for (std::size_t t = 0; t < act.v.size(); ++t) out.v[t] = -act.v[t];
            return out;
        }
        if (k1 == 2 && k2 == 2) {
            // [d1, d2] in D plus tau(d1, d2) in the dual part
            auto terms = DerivationSpace::bracket(d1.lam, dtheta(d1.lam, s1), d2.lam,
                                                  dtheta(d2.lam, s2));
            DegreeMap combo(n, Rat(0));
            for (auto const& [theta, c] : terms)
                for (std::size_t i = 0; i < n; ++i) combo[i] += c * theta[i];
            auto coords = dcoords(target.lam, combo);
            for (std::size_t i = 0; i < coords.size(); ++i)
                out.v[dstart + i] = ScalarTraits<F>::from_rat(coords[i]);
            for (auto const& [key, c] : tauh->eval(DKey{d1.lam, s1}, DKey{d2.lam, s2})) {
                if (!(key.gamma == -target.lam)) continue;
                out.v[cstart + key.idx] = out.v[cstart + key.idx] + ScalarTraits<F>::from_rat(c);
            }
            return out;
        }
        if (k1 == 2 && k2 == 1) {
            // d . c with (d.c)(d') = -c([d, d']); c is the dual slot s2 at
            // gamma_c = -d2.lam
            IntVec gc = -d2.lam;
            IntVec gcp = -target.lam;  // degree of the dual slots hit
            auto dual_basis = Dh->thetas(gcp);
            for (std::size_t j = 0; j < dual_basis.size(); ++j) {
                // coefficient against d' = basis j at gcp
                auto terms = DerivationSpace::bracket(d1.lam, dtheta(d1.lam, s1), gcp,
                                                      dual_basis[j]);
                DegreeMap combo(n, Rat(0));
                for (auto const& [theta, c] : terms)
                    for (std::size_t i = 0; i < n; ++i) combo[i] += c * theta[i];
                auto coords = dcoords(gc, combo);
                Rat val = coords.size() > s2 ? -coords[s2] : Rat(0);
                if (!rat_is_zero(val))
                    out.v[cstart + j] = out.v[cstart + j] + ScalarTraits<F>::from_rat(val);
            }
            (void)terms_basis;
            return out;
        }
        if (k1 == 1 && k2 == 2) {
            // antisymmetric to the (d, c) case
            IntVec gc = -d1.lam;
            IntVec gcp = -target.lam;
            auto dual_basis = Dh->thetas(gcp);
            for (std::size_t j = 0; j < dual_basis.size(); ++j) {
                auto terms = DerivationSpace::bracket(d2.lam, dtheta(d2.lam, s2), gcp,
                                                      dual_basis[j]);
                DegreeMap combo(n, Rat(0));
                for (auto const& [theta, c] : terms)
                    for (std::size_t i = 0; i < n; ++i) combo[i] += c * theta[i];
                auto coords = dcoords(gc, combo);
                Rat val = coords.size() > s1 ? -coords[s1] : Rat(0);
                if (!rat_is_zero(val))
                    out.v[cstart + j] = out.v[cstart + j] - ScalarTraits<F>::from_rat(val);
            }
            return out;
        }
        // centre against centre or centre against L: zero
        return out;
    };

    E.form = [Lh, Dh, decode](Degree const& d1, std::size_t i1, Degree const& d2,
                              std::size_t i2) -> F {
        auto [k1, s1] = decode(d1, i1);
        auto [k2, s2] = decode(d2, i2);
        if (k1 == 0 && k2 == 0) return Lh->form(d1, i1, d2, i2);
        if ((k1 == 1 && k2 == 2) || (k1 == 2 && k2 == 1)) {
            // c(d): dual slot pairs with the matching derivation slot
            if (!is_zero(d1.lam + d2.lam)) return F(0);
            return (s1 == s2) ? F(1) : F(0);
        }
        return F(0);
    };

    out.E = std::move(E);
    return out;
}

}  // namespace ealab
