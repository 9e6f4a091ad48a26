#pragma once

#include "ealab/graded.hpp"
#include "ealab/report.hpp"
#include "ealab/scalar_traits.hpp"

namespace ealab {

/// Flat indexing of all basis slots whose degree lies in a window.
template <class F>
class WindowIndex {
public:
    WindowIndex(GradedHandle<F> const& h, int32_t radius) : h_(&h), radius_(radius) {
        degs_ = window_degrees(h, radius);
        std::size_t off = 0;
        for (std::size_t i = 0; i < degs_.size(); ++i) {
            pos_[degs_[i]] = i;
            dims_.push_back(h.dim(degs_[i]));
            offsets_.push_back(off);
            off += dims_.back();
        }
        total_ = off;
        for (std::size_t i = 0; i < degs_.size(); ++i)
            for (std::size_t k = 0; k < dims_[i]; ++k) keys_.push_back({degs_[i], k});
    }

    std::size_t total() const { return total_; }
    std::vector<Degree> const& degrees() const { return degs_; }
    std::vector<BasisKey> const& keys() const { return keys_; }
    BasisKey const& key(std::size_t flat) const { return keys_[flat]; }
    int32_t radius() const { return radius_; }

    std::optional<std::size_t> deg_pos(Degree const& d) const {
        auto it = pos_.find(d);
        if (it == pos_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> flat(Degree const& d, std::size_t idx) const {
        auto p = deg_pos(d);
        if (!p || idx >= dims_[*p]) return std::nullopt;
        return offsets_[*p] + idx;
    }
    std::size_t dim_at(std::size_t deg_pos) const { return dims_[deg_pos]; }
    std::size_t offset_at(std::size_t deg_pos) const { return offsets_[deg_pos]; }

private:
    GradedHandle<F> const* h_;
    int32_t radius_;
    std::vector<Degree> degs_;
    std::map<Degree, std::size_t> pos_;
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offsets_;
    std::vector<BasisKey> keys_;
    std::size_t total_ = 0;
};

/// Precomputed basis-pair brackets: rows over a window WB, columns over a
/// (typically larger) window W2. Entry (i,j) is the coefficient vector of
/// [b_i, b_j] in the basis of the sum degree.
template <class F>
class BracketCache {
public:
    BracketCache(GradedHandle<F> const& h, WindowIndex<F> const& rows, WindowIndex<F> const& cols)
        : h_(&h), rows_(&rows), cols_(&cols) {
        table_.resize(rows.total() * cols.total());
        for (std::size_t i = 0; i < rows.total(); ++i)
            for (std::size_t j = 0; j < cols.total(); ++j) {
                HomElt<F> r = h.bracket_basis_elt(rows.key(i), cols.key(j));
                Degree sum = rows.key(i).deg + cols.key(j).deg;
                if (!(r.deg == sum) || r.v.size() != h.dim(sum))
                    throw EalabError("bracket violates the grading contract at [" +
                                     h.label(rows.key(i).deg, rows.key(i).idx) + "," +
                                     h.label(cols.key(j).deg, cols.key(j).idx) + "]");
                table_[i * cols.total() + j] = std::move(r.v);
            }
    }

    std::vector<F> const& at(std::size_t i, std::size_t j) const {
        return table_[i * cols_->total() + j];
    }

private:
    GradedHandle<F> const* h_;
    WindowIndex<F> const* rows_;
    WindowIndex<F> const* cols_;
    std::vector<std::vector<F>> table_;
};

/// Exhaustive Jacobi identity and grading verification over homogeneous
/// basis triples with degrees in the window; products are evaluated where
/// they stay within the tripled window.
template <class F>
SuiteReport check_jacobi_grading(GradedHandle<F> const& h, int32_t B) {
    SuiteReport rep;
    rep.suite = "jacobi";
    WindowIndex<F> W(h, B);
    WindowIndex<F> W2(h, 2 * B);

    auto& grading = rep.add("grading", B);
    auto& anti = rep.add("antisymmetry", B);
    auto& jacobi = rep.add("jacobi", B);

    // support probe: sums of two roots outside S must carry dimension 0
    {
        auto const& rs = RootSystem::get(h.sys);
        std::set<IntVec> probes;
        for (auto const& a : rs.roots())
            for (auto const& b : rs.roots()) {
                IntVec s = a + b;
                if (!rs.contains(s)) probes.insert(s);
            }
        for (auto const& xi : probes)
            for_each_box_point(h.lam_rank, B, [&](IntVec const& lam) {
                if (h.dim(Degree{xi, lam}) != 0)
                    grading.fail("support leaks outside S at " + Degree{xi, lam}.str());
            });
    }

    BracketCache<F> C(h, W, W2);  // rows: window B; cols: window 2B

    // grading and antisymmetry on pairs
    for (std::size_t i = 0; i < W.total(); ++i) {
        auto const& ki = W.key(i);
        for (std::size_t j = 0; j < W.total(); ++j) {
            auto const& kj = W.key(j);
            std::size_t j2 = *W2.flat(kj.deg, kj.idx);
            Degree target = ki.deg + kj.deg;
            auto const& v = C.at(i, j2);
            if (v.size() != h.dim(target)) {
                grading.fail("bracket size mismatch at [" + h.label(ki.deg, ki.idx) + "," +
                             h.label(kj.deg, kj.idx) + "]");
                continue;
            }
            std::size_t i2 = *W2.flat(ki.deg, ki.idx);
            auto const& w = C.at(j, i2);
            for (std::size_t t = 0; t < v.size(); ++t)
                if (!(v[t] + w[t]).is_zero()) {
                    anti.fail("[x,y] != -[y,x] at [" + h.label(ki.deg, ki.idx) + "," +
                              h.label(kj.deg, kj.idx) + "]");
                    break;
                }
        }
        std::size_t i2 = *W2.flat(ki.deg, ki.idx);
        for (auto const& x : C.at(i, i2))
            if (!x.is_zero()) {
                anti.fail("[x,x] != 0 at " + h.label(ki.deg, ki.idx));
                break;
            }
    }

    // Jacobi over triples, assembled from cached pair brackets. Degree-level
    // tables keep the inner loops free of map lookups.
    std::size_t const nd = W.degrees().size();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    // position in W2 of the sum of two window degrees (kNone if dimension 0)
    std::vector<std::size_t> sum2(nd * nd, kNone);
    for (std::size_t a = 0; a < nd; ++a)
        for (std::size_t b = 0; b < nd; ++b) {
            auto p = W2.deg_pos(W.degrees()[a] + W.degrees()[b]);
            if (p) sum2[a * nd + b] = *p;
        }
    // dimension of (w2 degree + window degree)
    std::size_t const nd2 = W2.degrees().size();
    std::vector<std::size_t> dim3(nd2 * nd, 0);
    for (std::size_t p = 0; p < nd2; ++p)
        for (std::size_t c = 0; c < nd; ++c)
            dim3[p * nd + c] = h.dim(W2.degrees()[p] + W.degrees()[c]);
    // flat position of each window slot inside the doubled window
    std::vector<std::size_t> wflat2(W.total());
    for (std::size_t i = 0; i < W.total(); ++i)
        wflat2[i] = *W2.flat(W.key(i).deg, W.key(i).idx);
    std::vector<std::size_t> deg_of(W.total());
    {
        std::size_t flat = 0;
        for (std::size_t p = 0; p < nd; ++p)
            for (std::size_t k = 0; k < W.dim_at(p); ++k) deg_of[flat++] = p;
    }

    // compacted nonzero entries of every window-pair bracket
    struct NZ {
        boost::container::small_vector<std::pair<uint32_t, F const*>, 3> ent;
    };
    std::vector<NZ> nz(W.total() * W.total());
    for (std::size_t i = 0; i < W.total(); ++i)
        for (std::size_t j = 0; j < W.total(); ++j) {
            auto const& v = C.at(i, wflat2[j]);
            auto& e = nz[i * W.total() + j].ent;
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!v[k].is_zero()) e.emplace_back(static_cast<uint32_t>(k), &v[k]);
        }

    // The jacobiator is trilinear and, given the antisymmetry verified above,
    // alternating; strict basis triples x < y < z therefore exhaust it.
    struct Failure {
        std::size_t x, y, z;
        bool operator<(Failure const& o) const {
            return std::tie(x, y, z) < std::tie(o.x, o.y, o.z);
        }
    };
    unsigned const workers = worker_count();
    std::vector<std::vector<Failure>> fails(workers);
    // interleaved striding balances the triangular loop and keeps each
    // worker's findings independent of scheduling
    run_workers(workers, [&](unsigned worker) {
        std::vector<F> acc;
        auto& out = fails[worker];
        for (std::size_t x = worker; x < W.total(); x += workers) {
            if (out.size() >= CheckReport::kMaxWitnesses) break;
            std::size_t pa = deg_of[x];
            for (std::size_t y = x + 1; y < W.total(); ++y) {
                std::size_t pb = deg_of[y];
                std::size_t pab = sum2[pa * nd + pb];
                auto const& nz_xy = nz[x * W.total() + y];
                for (std::size_t z = y + 1; z < W.total(); ++z) {
                    auto const& nz_yz = nz[y * W.total() + z];
                    auto const& nz_zx = nz[z * W.total() + x];
                    if (nz_yz.ent.empty() && nz_zx.ent.empty() && nz_xy.ent.empty()) continue;
                    std::size_t pc = deg_of[z];
                    std::size_t dim_t =
                        pab != kNone ? dim3[pab * nd + pc]
                                     : (sum2[pb * nd + pc] != kNone
                                            ? dim3[sum2[pb * nd + pc] * nd + pa]
                                            : (sum2[pc * nd + pa] != kNone
                                                   ? dim3[sum2[pc * nd + pa] * nd + pb]
                                                   : 0));
                    if (dim_t == 0) continue;  // every term lands in a zero space
                    if (acc.size() < dim_t) acc.resize(dim_t, F(0));
                    for (std::size_t t = 0; t < dim_t; ++t) acc[t].make_zero();
                    bool nonzero = false;
                    auto add_term = [&](std::size_t outer, std::size_t pin, NZ const& w) {
                        if (pin == kNone || w.ent.empty()) return;
                        std::size_t base = W2.offset_at(pin);
                        for (auto const& [k, wk] : w.ent) {
                            auto const& u = C.at(outer, base + k);
                            for (std::size_t t = 0; t < u.size(); ++t) {
                                if (u[t].is_zero()) continue;
                                acc[t].add_mul(*wk, u[t]);
                                nonzero = true;
                            }
                        }
                    };
                    // [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
                    add_term(x, sum2[pb * nd + pc], nz_yz);
                    add_term(y, sum2[pc * nd + pa], nz_zx);
                    add_term(z, pab, nz_xy);
                    if (!nonzero) continue;
                    for (std::size_t t = 0; t < dim_t; ++t)
                        if (!acc[t].is_zero()) {
                            out.push_back({x, y, z});
                            break;
                        }
                    if (out.size() >= CheckReport::kMaxWitnesses) break;
                }
                if (out.size() >= CheckReport::kMaxWitnesses) break;
            }
        }
    });
    std::vector<Failure> all;
    for (auto const& chunk : fails) all.insert(all.end(), chunk.begin(), chunk.end());
    std::sort(all.begin(), all.end());
    if (all.size() > CheckReport::kMaxWitnesses) all.resize(CheckReport::kMaxWitnesses);
    for (auto const& f : all) {
        auto const& kx = W.key(f.x);
        auto const& ky = W.key(f.y);
        auto const& kz = W.key(f.z);
        jacobi.fail("jacobi fails at (" + h.label(kx.deg, kx.idx) + ", " +
                    h.label(ky.deg, ky.idx) + ", " + h.label(kz.deg, kz.idx) + ")");
    }
    jacobi.note("strict_triples",
                std::to_string(W.total() * (W.total() - 1) * (W.total() - 2) / 6));
    jacobi.note("alternating", "jacobiator is alternating once antisymmetry holds");
    return rep;
}

/// Graded invariant form: gradedness and symmetry on window pairs,
/// invariance on window triples of total degree zero (all other triples
/// vanish by gradedness, which is checked separately), and degreewise
/// nondegeneracy via opposite-degree pairing matrices.
template <class F>
SuiteReport check_invariant_form(GradedHandle<F> const& h, int32_t B) {
    SuiteReport rep;
    rep.suite = "form";
    if (!h.has_form()) throw EalabError("handle carries no invariant form");
    WindowIndex<F> W(h, B);

    auto& graded = rep.add("form-graded", B);
    auto& sym = rep.add("form-symmetric", B);
    auto& inv = rep.add("form-invariant", B);
    auto& nondeg = rep.add("form-nondegenerate", B);

    for (std::size_t i = 0; i < W.total(); ++i)
        for (std::size_t j = i; j < W.total(); ++j) {
            auto const& a = W.key(i);
            auto const& b = W.key(j);
            F v = h.form(a.deg, a.idx, b.deg, b.idx);
            F w = h.form(b.deg, b.idx, a.deg, a.idx);
            if (!(v - w).is_zero())
                sym.fail("form not symmetric at (" + h.label(a.deg, a.idx) + "," +
                         h.label(b.deg, b.idx) + ")");
            bool opposite = is_zero(a.deg.xi + b.deg.xi) && is_zero(a.deg.lam + b.deg.lam);
            if (!opposite && !v.is_zero())
                graded.fail("form not graded at (" + h.label(a.deg, a.idx) + "," +
                            h.label(b.deg, b.idx) + ")");
        }

    // invariance ([x,y]|z) = (x|[y,z]) on total-degree-zero triples
    for (std::size_t x = 0; x < W.total(); ++x)
        for (std::size_t y = 0; y < W.total(); ++y) {
            auto const& kx = W.key(x);
            auto const& ky = W.key(y);
            Degree dz = -(kx.deg + ky.deg);
            auto p = W.deg_pos(dz);
            if (!p) continue;
            HomElt<F> xy = h.bracket_basis_elt(kx, ky);
            for (std::size_t zi = 0; zi < W.dim_at(*p); ++zi) {
                HomElt<F> yz = h.bracket_basis_elt(ky, BasisKey{dz, zi});
                F lhs(0), rhs(0);
                for (std::size_t t = 0; t < xy.v.size(); ++t)
                    if (!xy.v[t].is_zero())
                        lhs = lhs + xy.v[t] * h.form(xy.deg, t, dz, zi);
                for (std::size_t t = 0; t < yz.v.size(); ++t)
                    if (!yz.v[t].is_zero())
                        rhs = rhs + h.form(kx.deg, kx.idx, yz.deg, t) * yz.v[t];
                if (!(lhs - rhs).is_zero()) {
                    inv.fail("invariance fails at (" + h.label(kx.deg, kx.idx) + "," +
                             h.label(ky.deg, ky.idx) + "," + h.label(dz, zi) + ")");
                    if (inv.witnesses.size() >= CheckReport::kMaxWitnesses) break;
                }
            }
        }

    for (auto const& d : W.degrees()) {
        Degree nd = -d;
        std::size_t k = h.dim(d);
        if (h.dim(nd) != k) {
            nondeg.fail("opposite degree dimension mismatch at " + d.str());
            continue;
        }
        std::vector<std::vector<F>> m(k, std::vector<F>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m[i][j] = h.form(d, i, nd, j);
        if (rank_of(m, k) != k) nondeg.fail("degenerate pairing at degree " + d.str());
    }
    return rep;
}

/// Outcome of the Lie-torus axiom suite, together with the support family
/// restricted to the window.
template <class F>
struct LieTorusResult {
    SuiteReport report;
    std::map<std::string, std::vector<IntVec>> family;  // length class -> window points
    std::vector<std::string> sl2_witnesses;
};

template <class F>
LieTorusResult<F> check_lie_torus(GradedHandle<F> const& h, int32_t B) {
    LieTorusResult<F> out;
    auto& rep = out.report;
    rep.suite = "lie-torus";
    auto const& rs = RootSystem::get(h.sys);
    WindowIndex<F> W(h, B);

    auto& lt1 = rep.add("LT1", B);
    auto& lt2 = rep.add("LT2", B);
    auto& lt3a = rep.add("LT3a", B);
    auto& lt3b = rep.add("LT3b", B);
    auto& lt3c = rep.add("LT3c", B);
    auto& ed = rep.add("ED1-ED2", B);

    // LT1: support contained in S, one-dimensional root spaces
    {
        std::set<IntVec> probes;
        for (auto const& a : rs.roots())
            for (auto const& b : rs.roots()) {
                IntVec s = a + b;
                if (!rs.contains(s)) probes.insert(s);
            }
        for (auto const& xi : probes)
            for_each_box_point(h.lam_rank, B, [&](IntVec const& lam) {
                if (h.dim(Degree{xi, lam}) != 0)
                    lt1.fail("support outside S at " + Degree{xi, lam}.str());
            });
        for (auto const& d : W.degrees())
            if (!is_zero(d.xi) && h.dim(d) > 1)
                lt1.fail("dim > 1 at anisotropic degree " + d.str());
    }

    // LT2: sl2 pairs act with the prescribed integral eigenvalues
    for (auto const& d : W.degrees()) {
        if (is_zero(d.xi)) continue;
        Degree nd = -d;
        if (h.dim(nd) != 1) {
            lt2.fail("missing opposite space at " + d.str());
            continue;
        }
        BasisKey e{d, 0}, f0{nd, 0};
        HomElt<F> hh = h.bracket_basis_elt(e, f0);
        HomElt<F> he = h.bracket_hom_basis(hh, e);
        if (he.v.empty() || he.v[0].is_zero()) {
            lt2.fail("no sl2 pair at " + d.str());
            continue;
        }
        F c = F(2) / he.v[0];
        // h = [e, c f0]
        for (auto& v : hh.v) v = v * c;
        bool good = true;
        for (std::size_t t = 0; t < W.total() && good; ++t) {
            auto const& kt = W.key(t);
            long want = rs.cartan_int(kt.deg.xi, d.xi);
            HomElt<F> act = h.bracket_hom_basis(hh, kt);
            for (std::size_t s = 0; s < act.v.size(); ++s) {
                F expect = (s == kt.idx) ? F(want) : F(0);
                if (!(act.v[s] - expect).is_zero()) {
                    lt2.fail("adjoint eigenvalue fails for sl2 pair at " + d.str() +
                             " acting on " + h.label(kt.deg, kt.idx));
                    good = false;
                    break;
                }
            }
        }
        if (good && out.sl2_witnesses.size() < 8)
            out.sl2_witnesses.push_back("(e,h,f) at " + d.str() + " with f = (" + c.str() +
                                        ")*" + h.label(nd, 0));
    }

    // LT3a: nonzero indivisible roots are supported at lambda = 0
    for (auto const& xi : rs.indivisible())
        if (!is_zero(xi) && h.dim(Degree{xi, zero_vec(h.lam_rank)}) == 0)
            lt3a.fail("L_xi^0 = 0 for indivisible xi = " + to_string(xi));

    // LT3b: zero-degree spaces are spanned by brackets of opposite root pairs
    for (auto const& d : W.degrees()) {
        if (!is_zero(d.xi)) continue;
        std::size_t k = h.dim(d);
        Echelon<F> span(k);
        for (auto const& xi : rs.roots()) {
            if (is_zero(xi)) continue;
            for_each_box_point(h.lam_rank, B, [&](IntVec const& mu) {
                Degree a{xi, mu};
                IntVec nxi = xi;
                for (auto& t : nxi) t = -t;
                Degree b{nxi, d.lam - mu};
                if (max_abs(b.lam) > B) return;
                if (h.dim(a) == 0 || h.dim(b) == 0) return;
                HomElt<F> br = h.bracket_basis_elt({a, 0}, {b, 0});
                span.add(br.v);
            });
        }
        if (span.dim() != k)
            lt3b.fail("zero-degree space not spanned by opposite brackets at lam=" +
                      to_string(d.lam));
    }

    // LT3c: the window support generates the full lattice
    {
        std::vector<IntVec> supp;
        for (auto const& d : W.degrees()) supp.push_back(d.lam);
        if (!(Lattice::from_generators(h.lam_rank, supp) == Lattice::full(h.lam_rank)))
            lt3c.fail("window support does not span the lattice");
    }

    // support family by length class, with W-invariance across each class
    {
        std::map<std::string, std::vector<IntVec>> family;
        std::map<std::string, IntVec> rep_root;
        bool invariant = true;
        for (auto const& xi : rs.roots()) {
            if (is_zero(xi)) continue;
            std::string cls = length_class_name(rs.class_of(xi));
            std::vector<IntVec> pts;
            for_each_box_point(h.lam_rank, B, [&](IntVec const& lam) {
                if (h.dim(Degree{xi, lam}) > 0) pts.push_back(lam);
            });
            auto it = family.find(cls);
            if (it == family.end()) {
                family[cls] = pts;
                rep_root[cls] = xi;
            } else if (!(it->second == pts)) {
                ed.fail("support sets differ inside length class " + cls + " (roots " +
                        to_string(rep_root[cls]) + " vs " + to_string(xi) + ")");
                invariant = false;
            }
        }
        {
            std::vector<IntVec> pts;
            for_each_box_point(h.lam_rank, B, [&](IntVec const& lam) {
                if (h.dim(Degree{zero_vec(rs.dim()), lam}) > 0) pts.push_back(lam);
            });
            family["zero"] = pts;
        }
        out.family = family;
        if (invariant) {
            // (ED1) inside the window
            for (auto const& xi : rs.roots()) {
                if (is_zero(xi)) continue;
                for (auto const& eta : rs.roots()) {
                    if (is_zero(eta)) continue;
                    long c = rs.cartan_int(eta, xi);
                    auto const& lxi = family[length_class_name(rs.class_of(xi))];
                    auto const& leta = family[length_class_name(rs.class_of(eta))];
                    IntVec target_root = rs.reflect(eta, xi);
                    auto const& ltarget =
                        is_zero(target_root) ? family["zero"]
                                             : family[length_class_name(rs.class_of(target_root))];
                    for (auto const& mu : leta)
                        for (auto const& lam : lxi) {
                            IntVec nu = mu - static_cast<int32_t>(c) * lam;
                            if (max_abs(nu) > B) continue;
                            if (!std::binary_search(ltarget.begin(), ltarget.end(), nu))
                                ed.fail("(ED1) fails: " + to_string(nu) +
                                        " missing in class of " + to_string(target_root));
                        }
                }
            }
            // (ED2)
            for (auto const& xi : rs.indivisible()) {
                if (is_zero(xi)) continue;
                auto const& l = family[length_class_name(rs.class_of(xi))];
                if (!std::binary_search(l.begin(), l.end(), zero_vec(h.lam_rank)))
                    ed.fail("(ED2) fails: 0 missing for indivisible " + to_string(xi));
            }
            if (rs.has_class(LengthClass::Divisible) && family["div"].empty())
                ed.fail("(ED2) fails: empty divisible class in the window");
        }
    }
    return out;
}

/// Kernel of the adjoint action against all window basis vectors, degree by
/// degree. Central elements of an intensionally infinite algebra can only be
/// certified at window level.
template <class F>
struct CenterResult {
    SuiteReport report;
    std::vector<std::pair<Degree, std::vector<std::vector<F>>>> basis;  // per-degree kernels
    std::map<std::string, std::size_t> dims_by_lam;
};

template <class F>
CenterResult<F> graded_center(GradedHandle<F> const& h, int32_t B) {
    CenterResult<F> out;
    out.report.suite = "center";
    auto& rep = out.report.add("graded-center", B);
    WindowIndex<F> W(h, B);
    for (auto const& d : W.degrees()) {
        std::size_t k = h.dim(d);
        std::vector<std::vector<F>> rows;
        for (std::size_t b = 0; b < W.total(); ++b) {
            auto const& kb = W.key(b);
            Degree target = d + kb.deg;
            std::size_t td = h.dim(target);
            if (td == 0) continue;
            std::vector<std::vector<F>> block(td, std::vector<F>(k, F(0)));
            for (std::size_t i = 0; i < k; ++i) {
                HomElt<F> br = h.bracket(d, i, kb.deg, kb.idx);
                for (std::size_t t = 0; t < td; ++t) block[t][i] = br.v[t];
            }
            for (auto& r : block) rows.push_back(std::move(r));
        }
        auto ker = nullspace(rows, k);
        if (!ker.empty()) {
            if (!is_zero(d.xi))
                rep.fail("central element at anisotropic degree " + d.str());
            out.dims_by_lam[to_string(d.lam)] += ker.size();
            out.basis.emplace_back(d, std::move(ker));
        }
    }
    rep.note("window_certified",
             "kernel computed against window basis vectors only");
    return out;
}

/// Perfectness over the window: every basis vector of a window-B degree is a
/// combination of brackets of basis vectors from window 2B.
template <class F>
CheckReport check_perfect(GradedHandle<F> const& h, int32_t B) {
    CheckReport rep;
    rep.axiom = "perfect";
    rep.window = B;
    WindowIndex<F> W(h, B);
    WindowIndex<F> W2(h, 2 * B);
    for (auto const& d : W.degrees()) {
        std::size_t k = h.dim(d);
        Echelon<F> span(k);
        for (auto const& a : W2.degrees()) {
            Degree b = d - a;
            auto pb = W2.deg_pos(b);
            if (!pb) continue;
            for (std::size_t i = 0; i < h.dim(a); ++i)
                for (std::size_t j = 0; j < W2.dim_at(*pb); ++j) {
                    if (span.dim() == k) break;
                    span.add(h.bracket(a, i, b, j).v);
                }
        }
        if (span.dim() != k) rep.fail("degree " + d.str() + " not spanned by brackets");
    }
    return rep;
}

/// Composite exponential automorphism attached to an sl2 pair: permutes the
/// window degrees by the affine reflection rule.
template <class F>
struct WeylAutResult {
    CheckReport report;
    std::vector<std::pair<BasisKey, Element<F>>> images;
};

template <class F>
Element<F> exp_ad(GradedHandle<F> const& h, Element<F> const& x, Element<F> const& target,
                  int max_steps = 12) {
    Element<F> acc = target;
    Element<F> cur = target;
    Rat fact(1);
    for (int k = 1; k <= max_steps; ++k) {
        cur = h.bracket_elements(x, cur);
        if (cur.is_zero()) return acc;
        fact *= Rat(k);
        acc = acc + cur.scaled(ScalarTraits<F>::from_rat(Rat(1) / fact));
    }
    throw EalabError("adjoint operator not nilpotent within the step bound");
}

template <class F>
WeylAutResult<F> weyl_automorphism(GradedHandle<F> const& h, IntVec const& xi, IntVec const& lam,
                                   int32_t B) {
    WeylAutResult<F> out;
    out.report.axiom = "weyl-automorphism";
    out.report.window = B;
    auto const& rs = RootSystem::get(h.sys);
    if (is_zero(xi)) throw EalabError("no Weyl automorphism at an isotropic root");
    Degree d{xi, lam}, nd = -d;
    if (h.dim(d) != 1 || h.dim(nd) != 1) throw EalabError("missing sl2 witness");
    // normalize f so that (e, [e,f], f) is an sl2 triple
    Element<F> e = Element<F>::basis(d, 0, 1);
    HomElt<F> hh = h.bracket_basis_elt({d, 0}, {nd, 0});
    HomElt<F> he = h.bracket_hom_basis(hh, BasisKey{d, 0});
    if (he.v.empty() || he.v[0].is_zero()) throw EalabError("missing sl2 witness");
    F c = F(2) / he.v[0];
    Element<F> f = Element<F>::basis(nd, 0, 1, c);

    WindowIndex<F> W(h, B);
    for (std::size_t t = 0; t < W.total(); ++t) {
        auto const& kt = W.key(t);
        Element<F> v = Element<F>::basis(kt.deg, kt.idx, h.dim(kt.deg));
        Element<F> img = exp_ad(h, e, exp_ad(h, f.scaled(-F(1)), exp_ad(h, e, v)));
        long shift = rs.cartan_int(kt.deg.xi, xi);
        Degree expect{rs.reflect(kt.deg.xi, xi), kt.deg.lam - static_cast<int32_t>(shift) * lam};
        for (auto const& [deg, vec] : img.parts())
            if (!(deg == expect))
                out.report.fail("image of " + h.label(kt.deg, kt.idx) +
                                " leaves the reflected degree " + expect.str());
        if (img.is_zero()) out.report.fail("automorphism kills " + h.label(kt.deg, kt.idx));
        out.images.emplace_back(kt, std::move(img));
    }
    return out;
}

}  // namespace ealab
