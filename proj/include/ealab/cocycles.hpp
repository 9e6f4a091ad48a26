#pragma once

#include "ealab/checks.hpp"
#include "ealab/derivations.hpp"

namespace ealab {

/// Graded 2-cocycle into a Lambda-graded centre: per-degree target dimensions
/// plus a closed-form evaluation on basis pairs. Values land in C^{lam1+lam2}.
template <class F>
struct Cocycle {
    std::string kind;
    std::size_t lam_rank = 0;
    /// values vanish unless the root degrees sum to zero; required for the
    /// doubly graded extension, false for families of root-shifted
    /// derivations such as ad(x) with x outside the Cartan part
    bool root_graded = true;
    std::function<std::size_t(IntVec const&)> target_dim;
    std::function<std::string(IntVec const&, std::size_t)> target_label;
    std::function<std::vector<F>(BasisKey const&, BasisKey const&)> eval;
};

enum class StandardCocycleKind { Loop, MultiloopFn, UniversalMultiloop };

/// kappa(u, v) between the coefficient parts of two basis slots, read off the
/// handle's graded form at the reflected lattice degree. Well defined for
/// loop and multiloop realizations, whose basis matrices depend on the
/// lattice degree only through its class modulo the centroid support.
template <class F>
F kappa_of(GradedHandle<F> const& h, BasisKey const& a, BasisKey const& b) {
    if (!h.kappa_scale) throw EalabError("handle carries no Killing data");
    Degree reflected{b.deg.xi, -a.deg.lam};
    if (h.dim(reflected) <= b.idx) return F(0);
    return *h.kappa_scale * h.form(a.deg, a.idx, reflected, b.idx);
}

/// The standard loop/multiloop cocycles in closed form.
template <class F>
Cocycle<F> standard_cocycle(StandardCocycleKind kind, GradedHandle<F> const& handle) {
    if (!handle.kappa_scale) throw EalabError("handle carries no Killing data");
    Cocycle<F> c;
    c.lam_rank = handle.lam_rank;
    std::size_t n = handle.lam_rank;
    auto h = std::make_shared<GradedHandle<F>>(handle);
    switch (kind) {
        case StandardCocycleKind::Loop: {
            if (n != 1) throw EalabError("loop cocycle needs a rank-1 lattice");
            c.kind = "loop";
            c.target_dim = [](IntVec const& lam) -> std::size_t { return is_zero(lam) ? 1 : 0; };
            c.target_label = [](IntVec const&, std::size_t) { return std::string("c"); };
            c.eval = [h](BasisKey const& a, BasisKey const& b) {
                std::vector<F> out;
                if (!is_zero(a.deg.lam + b.deg.lam)) return out;
                F v = ScalarTraits<F>::from_rat(Rat(a.deg.lam[0])) * kappa_of(*h, a, b);
                out.push_back(std::move(v));
                return out;
            };
            return c;
        }
        case StandardCocycleKind::MultiloopFn: {
            c.kind = "multiloop-fn";
            c.target_dim = [n](IntVec const& lam) -> std::size_t { return is_zero(lam) ? n : 0; };
            c.target_label = [](IntVec const&, std::size_t i) {
                return "c" + std::to_string(i + 1);
            };
            c.eval = [h, n](BasisKey const& a, BasisKey const& b) {
                std::vector<F> out;
                if (!is_zero(a.deg.lam + b.deg.lam)) return out;
                F k = kappa_of(*h, a, b);
                out.assign(n, F(0));
                for (std::size_t i = 0; i < n; ++i)
                    out[i] = ScalarTraits<F>::from_rat(Rat(a.deg.lam[i])) * k;
                return out;
            };
            return c;
        }
        case StandardCocycleKind::UniversalMultiloop: {
            if (!handle.centroid_support)
                throw EalabError("universal cocycle needs the centroid support lattice");
            c.kind = "universal-multiloop";
            Lattice gamma = *handle.centroid_support;
            // C^delta = F^n / F(-delta) for delta in -Gamma = Gamma; the
            // quotient drops the pivot coordinate of gamma = -delta
            auto pivot_of = [](IntVec const& g) -> std::size_t {
                for (std::size_t i = 0; i < g.size(); ++i)
                    if (g[i] != 0) return i;
                return g.size();
            };
            c.target_dim = [gamma, n](IntVec const& lam) -> std::size_t {
                if (!gamma.contains(lam)) return 0;
                return is_zero(lam) ? n : n - 1;
            };
            c.target_label = [gamma, pivot_of](IntVec const& lam, std::size_t i) {
                return "c" + to_string(lam) + "[" + std::to_string(i) + "]";
            };
            c.eval = [h, gamma, n, pivot_of](BasisKey const& a, BasisKey const& b) {
                std::vector<F> out;
                IntVec delta = a.deg.lam + b.deg.lam;
                if (!gamma.contains(delta)) return out;
                F k = kappa_of(*h, a, b);
                IntVec g = -delta;  // component at gamma = -(lam+mu)
                std::vector<Rat> w(n);
                for (std::size_t i = 0; i < n; ++i) w[i] = Rat(a.deg.lam[i]);
                if (is_zero(g)) {
                    out.assign(n, F(0));
                    for (std::size_t i = 0; i < n; ++i)
                        out[i] = ScalarTraits<F>::from_rat(w[i]) * k;
                    return out;
                }
                std::size_t p = pivot_of(g);
                Rat f = Rat(w[p]) / Rat(g[p]);
                out.assign(n - 1, F(0));
                std::size_t at = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p) continue;
                    out[at++] = ScalarTraits<F>::from_rat(w[i] - f * Rat(g[i])) * k;
                }
                return out;
            };
            return c;
        }
    }
    throw EalabError("unknown cocycle kind");
}

/// psi_D(l1, l2)(d) = (d(l1) | l2) for a family D of skew derivations; values
/// in the graded dual of D, with (D^g)* sitting at lattice degree -g.
template <class F>
Cocycle<F> cocycle_from_derivations(GradedHandle<F> const& handle, DerivationSpace const& D,
                                    int32_t skew_window = 2) {
    if (!handle.form) throw EalabError("handle carries no invariant form");
    {
        auto rep = check_scder_skew(handle, D, skew_window);
        if (!rep.pass) throw EalabError("derivation family is not skew: " + rep.witnesses[0]);
    }
    Cocycle<F> c;
    c.kind = "from-derivations";
    c.lam_rank = handle.lam_rank;
    auto h = std::make_shared<GradedHandle<F>>(handle);
    auto d = std::make_shared<DerivationSpace>(D);
    c.target_dim = [d](IntVec const& lam) { return d->dim(-lam); };
    c.target_label = [](IntVec const& lam, std::size_t i) {
        return "D" + to_string(lam) + "*[" + std::to_string(i) + "]";
    };
    c.eval = [h, d](BasisKey const& a, BasisKey const& b) {
        IntVec g = -(a.deg.lam + b.deg.lam);
        auto thetas = d->thetas(g);
        std::vector<F> out;
        if (thetas.empty()) return out;
        out.assign(thetas.size(), F(0));
        for (std::size_t t = 0; t < thetas.size(); ++t) {
            HomElt<F> da = scder_action(*h, g, thetas[t], a.deg, a.idx);
            for (std::size_t i = 0; i < da.v.size(); ++i) {
                if (da.v[i].is_zero()) continue;
                out[t] = out[t] + da.v[i] * h->form(da.deg, i, b.deg, b.idx);
            }
        }
        return out;
    };
    return c;
}

/// psi_D for explicitly given derivation actions (inner derivations of
/// finite-dimensional handles, custom tables). Each derivation carries a
/// lattice degree.
template <class F>
struct ExplicitDerivation {
    IntVec gamma;
    std::string name;
    std::function<HomElt<F>(Degree const&, std::size_t)> action;
};

template <class F>
Cocycle<F> cocycle_from_actions(GradedHandle<F> const& handle,
                                std::vector<ExplicitDerivation<F>> ders) {
    if (!handle.form) throw EalabError("handle carries no invariant form");
    Cocycle<F> c;
    c.kind = "from-actions";
    c.root_graded = false;
    c.lam_rank = handle.lam_rank;
    auto h = std::make_shared<GradedHandle<F>>(handle);
    auto ds = std::make_shared<std::vector<ExplicitDerivation<F>>>(std::move(ders));
    c.target_dim = [ds](IntVec const& lam) -> std::size_t {
        std::size_t k = 0;
        for (auto const& d : *ds)
            if (d.gamma == -lam) ++k;
        return k;
    };
    c.target_label = [ds](IntVec const& lam, std::size_t i) {
        std::size_t k = 0;
        for (auto const& d : *ds)
            if (d.gamma == -lam && k++ == i) return d.name + "*";
        return std::string("?");
    };
    c.eval = [h, ds](BasisKey const& a, BasisKey const& b) {
        IntVec g = -(a.deg.lam + b.deg.lam);
        std::vector<F> out;
        for (auto const& d : *ds) {
            if (!(d.gamma == g)) continue;
            HomElt<F> da = d.action(a.deg, a.idx);
            F s(0);
            for (std::size_t i = 0; i < da.v.size(); ++i)
                if (!da.v[i].is_zero()) s = s + da.v[i] * h->form(da.deg, i, b.deg, b.idx);
            out.push_back(std::move(s));
        }
        return out;
    };
    return c;
}

/// 2-coboundary of a linear map h (given degreewise): beta_h(x,y) = h([x,y]).
template <class F>
Cocycle<F> coboundary_cocycle(GradedHandle<F> const& handle,
                              std::function<std::size_t(IntVec const&)> target_dim,
                              std::function<std::vector<std::vector<F>>(Degree const&)> h_blocks) {
    Cocycle<F> c;
    c.kind = "coboundary";
    c.lam_rank = handle.lam_rank;
    auto hh = std::make_shared<GradedHandle<F>>(handle);
    c.target_dim = target_dim;
    c.target_label = [](IntVec const& lam, std::size_t i) {
        return "b" + to_string(lam) + "[" + std::to_string(i) + "]";
    };
    c.eval = [hh, h_blocks, target_dim](BasisKey const& a, BasisKey const& b) {
        HomElt<F> br = hh->bracket_basis_elt(a, b);
        std::size_t k = target_dim(br.deg.lam);
        std::vector<F> out;
        if (k == 0) return out;
        out.assign(k, F(0));
        auto blocks = h_blocks(br.deg);  // per basis slot, a length-k value
        for (std::size_t i = 0; i < br.v.size(); ++i) {
            if (br.v[i].is_zero()) continue;
            for (std::size_t t = 0; t < k; ++t) out[t].add_mul(br.v[i], blocks[i][t]);
        }
        return out;
    };
    return c;
}

/// Pushforward pi . psi along a degreewise linear map on the target.
template <class F>
Cocycle<F> pushforward_cocycle(Cocycle<F> inner,
                               std::function<std::size_t(IntVec const&)> new_dim,
                               std::function<std::vector<F>(IntVec const&, std::vector<F> const&)> pi) {
    Cocycle<F> c;
    c.kind = inner.kind + "+pushforward";
    c.lam_rank = inner.lam_rank;
    auto in = std::make_shared<Cocycle<F>>(std::move(inner));
    c.target_dim = new_dim;
    c.target_label = [](IntVec const& lam, std::size_t i) {
        return "p" + to_string(lam) + "[" + std::to_string(i) + "]";
    };
    c.eval = [in, pi, new_dim](BasisKey const& a, BasisKey const& b) {
        std::vector<F> v = in->eval(a, b);
        IntVec lam = a.deg.lam + b.deg.lam;
        std::vector<F> out;
        if (new_dim(lam) == 0) return out;
        if (v.empty()) v.assign(in->target_dim(lam), F(0));
        return pi(lam, v);
    };
    return c;
}

/// User-supplied antisymmetric table over window degrees; entries outside
/// the table are zero.
template <class F>
Cocycle<F> table_cocycle(std::size_t lam_rank,
                         std::function<std::size_t(IntVec const&)> target_dim,
                         std::map<std::pair<BasisKey, BasisKey>, std::vector<F>> table) {
    Cocycle<F> c;
    c.kind = "user-table";
    c.lam_rank = lam_rank;
    auto t = std::make_shared<std::map<std::pair<BasisKey, BasisKey>, std::vector<F>>>(
        std::move(table));
    c.target_dim = target_dim;
    c.target_label = [](IntVec const& lam, std::size_t i) {
        return "u" + to_string(lam) + "[" + std::to_string(i) + "]";
    };
    c.eval = [t, target_dim](BasisKey const& a, BasisKey const& b) {
        std::vector<F> out;
        auto it = t->find(std::make_pair(a, b));
        if (it != t->end()) return it->second;
        it = t->find(std::make_pair(b, a));
        if (it != t->end()) {
            out = it->second;
            for (auto& x : out) x = -x;
            return out;
        }
        return out;
    };
    return c;
}

/// Antisymmetry, lattice- and root-gradedness, and the cyclic identity over
/// window triples. The cyclic sum is alternating once the bracket and the
/// cocycle are antisymmetric, so strict triples are exhaustive.
template <class F>
SuiteReport check_cocycle(Cocycle<F> const& psi, GradedHandle<F> const& h, int32_t B) {
    SuiteReport rep;
    rep.suite = "cocycle";
    WindowIndex<F> W(h, B);
    auto& anti = rep.add("cocycle-antisymmetric", B);
    auto& graded = rep.add("cocycle-graded", B);
    auto& cyclic = rep.add("cocycle-cyclic", B);
    graded.certification = "structural";
    graded.note("typing", "values are produced in C^{lam1+lam2} by construction");

    for (std::size_t i = 0; i < W.total(); ++i)
        for (std::size_t j = i; j < W.total(); ++j) {
            auto const& a = W.key(i);
            auto const& b = W.key(j);
            auto v = psi.eval(a, b);
            auto w = psi.eval(b, a);
            IntVec lam = a.deg.lam + b.deg.lam;
            std::size_t k = psi.target_dim(lam);
            if (v.size() != k && !v.empty())
                graded.fail("value size mismatch at (" + h.label(a.deg, a.idx) + "," +
                            h.label(b.deg, b.idx) + ")");
            if (psi.root_graded && !is_zero(a.deg.xi + b.deg.xi)) {
                // the centre carries no root grading: values must vanish off
                // the zero root
                for (auto const& x : v)
                    if (!x.is_zero())
                        graded.fail("nonzero value at nonzero root sum (" +
                                    h.label(a.deg, a.idx) + "," + h.label(b.deg, b.idx) + ")");
            }
            if (v.size() != w.size() && !(v.empty() || w.empty()))
                anti.fail("shape mismatch");
            std::size_t m = std::max(v.size(), w.size());
            for (std::size_t tdx = 0; tdx < m; ++tdx) {
                F x = tdx < v.size() ? v[tdx] : F(0);
                F y = tdx < w.size() ? w[tdx] : F(0);
                if (!(x + y).is_zero()) {
                    anti.fail("antisymmetry fails at (" + h.label(a.deg, a.idx) + "," +
                              h.label(b.deg, b.idx) + ")");
                    break;
                }
            }
        }

    // cyclic identity on strict triples
    BracketCache<F> C(h, W, W);
    std::vector<F> acc;
    for (std::size_t x = 0; x < W.total(); ++x) {
        auto const& kx = W.key(x);
        for (std::size_t y = x + 1; y < W.total(); ++y) {
            auto const& ky = W.key(y);
            for (std::size_t z = y + 1; z < W.total(); ++z) {
                auto const& kz = W.key(z);
                IntVec lam = kx.deg.lam + ky.deg.lam + kz.deg.lam;
                std::size_t k = psi.target_dim(lam);
                if (k == 0) continue;
                acc.assign(k, F(0));
                bool nonzero = false;
                auto add = [&](std::size_t p, std::size_t q, BasisKey const& rkey) {
                    auto const& br = C.at(p, q);
                    Degree bd = W.key(p).deg + W.key(q).deg;
                    for (std::size_t t = 0; t < br.size(); ++t) {
                        if (br[t].is_zero()) continue;
                        auto val = psi.eval(BasisKey{bd, t}, rkey);
                        for (std::size_t s = 0; s < val.size(); ++s) {
                            if (val[s].is_zero()) continue;
                            acc[s].add_mul(br[t], val[s]);
                            nonzero = true;
                        }
                    }
                };
                add(x, y, kz);  // psi([x,y], z)
                add(y, z, kx);
                add(z, x, ky);
                if (!nonzero) continue;
                for (auto const& c : acc)
                    if (!c.is_zero()) {
                        cyclic.fail("cyclic identity fails at (" + h.label(kx.deg, kx.idx) + "," +
                                    h.label(ky.deg, ky.idx) + "," + h.label(kz.deg, kz.idx) + ")");
                        break;
                    }
                if (!cyclic.pass && cyclic.witnesses.size() >= CheckReport::kMaxWitnesses)
                    return rep;
            }
        }
    }
    cyclic.note("alternating", "cyclic sum is alternating given antisymmetry");
    return rep;
}

enum class CoboundaryAnswer { Yes, YesOnWindow, No };

template <class F>
struct CoboundaryResult {
    CoboundaryAnswer answer = CoboundaryAnswer::YesOnWindow;
    CheckReport report;
    // when feasible: h given degreewise as blocks (basis slot -> value vector)
    std::map<Degree, std::vector<std::vector<F>>> h_blocks;
};

/// Solves psi = beta_h over the window, exactly. "No" is only returned with
/// a window-infeasibility certificate (a pair of basis slots whose equations
/// are inconsistent). A feasible window yields "yes on window", upgraded to
/// a plain "yes" when the lattice is trivial and the window therefore covers
/// the whole algebra.
template <class F>
CoboundaryResult<F> is_coboundary(Cocycle<F> const& psi, GradedHandle<F> const& h, int32_t B) {
    CoboundaryResult<F> out;
    out.report.axiom = "coboundary";
    out.report.window = B;
    WindowIndex<F> W(h, B);
    // unknowns: h's blocks on window degrees with nontrivial targets
    struct Block {
        Degree deg;
        std::size_t dim, cdim, offset;
    };
    std::vector<Block> blocks;
    std::map<Degree, std::size_t> block_of;
    std::size_t total = 0;
    for (auto const& d : W.degrees()) {
        std::size_t cd = psi.target_dim(d.lam);
        if (cd == 0) continue;
        // root-graded cocycles only constrain h on the zero root; ungraded
        // families need components everywhere
        if (psi.root_graded && !is_zero(d.xi)) continue;
        blocks.push_back({d, h.dim(d), cd, total});
        block_of[d] = blocks.size() - 1;
        total += h.dim(d) * cd;
    }
    Echelon<F> ech(total + 1);
    std::vector<std::pair<BasisKey, BasisKey>> provenance;
    bool infeasible = false;
    std::pair<BasisKey, BasisKey> bad;
    for (std::size_t i = 0; i < W.total() && !infeasible; ++i)
        for (std::size_t j = 0; j < W.total(); ++j) {
            auto const& a = W.key(i);
            auto const& b = W.key(j);
            auto val = psi.eval(a, b);
            HomElt<F> br = h.bracket_basis_elt(a, b);
            std::size_t cd = psi.target_dim(br.deg.lam);
            if (cd == 0) {
                // no equation; psi must vanish here (gradedness checked in
                // check_cocycle)
                continue;
            }
            auto itb = block_of.find(br.deg);
            if (itb == block_of.end()) {
                // bracket lands outside the window: cannot constrain h there
                continue;
            }
            auto const& blk = blocks[itb->second];
            for (std::size_t c = 0; c < cd; ++c) {
                std::vector<F> row(total + 1, F(0));
                bool any = false;
                for (std::size_t t = 0; t < br.v.size(); ++t) {
                    if (br.v[t].is_zero()) continue;
                    row[blk.offset + t * cd + c] = br.v[t];
                    any = true;
                }
                F rhs = val.empty() ? F(0) : val[c];
                if (!any && rhs.is_zero()) continue;
                row[total] = -rhs;
                ech.add(std::move(row));
                if (!ech.pivots().empty() && ech.pivots().back() == total) {
                    infeasible = true;
                    bad = {a, b};
                    break;
                }
            }
            if (infeasible) break;
        }
    if (infeasible) {
        out.answer = CoboundaryAnswer::No;
        out.report.pass = true;
        out.report.note("certificate", "window-infeasible; final inconsistent equation from "
                                       "pair (" + h.label(bad.first.deg, bad.first.idx) + ", " +
                                       h.label(bad.second.deg, bad.second.idx) + ")");
        return out;
    }
    // read off one solution (free unknowns zero)
    std::vector<F> sol(total, F(0));
    for (std::size_t r = 0; r < ech.rows().size(); ++r) {
        if (ech.pivots()[r] < total) sol[ech.pivots()[r]] = -ech.rows()[r][total];
    }
    for (auto const& blk : blocks) {
        std::vector<std::vector<F>> hb(blk.dim, std::vector<F>(blk.cdim, F(0)));
        for (std::size_t t = 0; t < blk.dim; ++t)
            for (std::size_t c = 0; c < blk.cdim; ++c) hb[t][c] = sol[blk.offset + t * blk.cdim + c];
        out.h_blocks[blk.deg] = std::move(hb);
    }
    out.answer = (h.lam_rank == 0) ? CoboundaryAnswer::Yes : CoboundaryAnswer::YesOnWindow;
    out.report.certification = (h.lam_rank == 0) ? "structural" : "window-certified";
    return out;
}

/// Central extension K = L + C with [l1+c1, l2+c2] = [l1,l2] + psi(l1,l2).
/// K's zero-root degrees gain the centre slots after the L slots.
template <class F>
GradedHandle<F> central_extension(GradedHandle<F> const& handle, Cocycle<F> const& psi,
                                  int32_t precheck_window = 2) {
    if (!psi.root_graded) throw EalabError("extension needs a root-graded cocycle");
    {
        auto rep = check_cocycle(psi, handle, precheck_window);
        if (!rep.pass()) throw EalabError("cocycle fails its identities");
    }
    GradedHandle<F> K;
    K.sys = handle.sys;
    K.lam_rank = handle.lam_rank;
    K.tag = handle.tag + "+" + psi.kind;
    auto L = std::make_shared<GradedHandle<F>>(handle);
    auto C = std::make_shared<Cocycle<F>>(psi);
    auto ldim = [L, C](Degree const& d) -> std::size_t {
        std::size_t base = L->dim(d);
        if (is_zero(d.xi)) base += C->target_dim(d.lam);
        return base;
    };
    K.dim = ldim;
    K.label = [L, C](Degree const& d, std::size_t i) {
        std::size_t ld = L->dim(d);
        if (i < ld) return L->label(d, i);
        return C->target_label(d.lam, i - ld);
    };
    K.bracket = [L, C, ldim](Degree const& d1, std::size_t i1, Degree const& d2, std::size_t i2) {
        Degree target = d1 + d2;
        HomElt<F> out{target, std::vector<F>(ldim(target), F(0))};
        std::size_t l1 = L->dim(d1), l2 = L->dim(d2);
        if (i1 >= l1 || i2 >= l2) return out;  // centre slots are central
        HomElt<F> br = L->bracket(d1, i1, d2, i2);
        for (std::size_t t = 0; t < br.v.size(); ++t) out.v[t] = br.v[t];
        if (is_zero(target.xi)) {
            auto val = C->eval(BasisKey{d1, i1}, BasisKey{d2, i2});
            std::size_t ld = L->dim(target);
            for (std::size_t t = 0; t < val.size(); ++t) out.v[ld + t] = val[t];
        } else {
            auto val = C->eval(BasisKey{d1, i1}, BasisKey{d2, i2});
            for (auto const& x : val)
                if (!x.is_zero())
                    throw EalabError("cocycle value at a nonzero root sum");
        }
        return out;
    };
    return K;
}

}  // namespace ealab
