#pragma once

#include <array>
#include <map>
#include <set>

#include "ealab/intlinalg.hpp"
#include "ealab/linalg.hpp"
#include "ealab/rational.hpp"

namespace ealab {

enum class Family { A, B, C, D, E, F, G, BC };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::E: return "E";
        case Family::F: return "F";
        case Family::G: return "G";
        case Family::BC: return "BC";
    }
    return "?";
}

inline std::optional<Family> family_parse(std::string const& s) {
    if (s == "A") return Family::A;
    if (s == "B") return Family::B;
    if (s == "C") return Family::C;
    if (s == "D") return Family::D;
    if (s == "E") return Family::E;
    if (s == "F") return Family::F;
    if (s == "G") return Family::G;
    if (s == "BC") return Family::BC;
    return std::nullopt;
}

struct RootSystemId {
    Family fam;
    unsigned rank;

    friend bool operator==(RootSystemId const& a, RootSystemId const& b) {
        return a.fam == b.fam && a.rank == b.rank;
    }
    std::string str() const { return family_name(fam) + std::to_string(rank); }
};

/// Valid rank ranges. B accepts rank 1 (identified with A1); BC starts at 1.
inline void validate_id(RootSystemId id) {
    auto bad = [&] { throw EalabError("invalid root system id: " + id.str()); };
    switch (id.fam) {
        case Family::A:
        case Family::B:
        case Family::BC:
            if (id.rank < 1) bad();
            break;
        case Family::C:
            if (id.rank < 2) bad();
            break;
        case Family::D:
            if (id.rank < 3) bad();
            break;
        case Family::E:
            if (id.rank < 6 || id.rank > 8) bad();
            break;
        case Family::F:
            if (id.rank != 4) bad();
            break;
        case Family::G:
            if (id.rank != 2) bad();
            break;
    }
    if (id.rank > 10) bad();
}

/// Ambient coordinate dimension of the standard epsilon-basis embedding.
/// A_l sits inside the sum-zero hyperplane of Z^{l+1}; G2 inside the sum-zero
/// hyperplane of Z^3; E and F types use doubled coordinates so every root is
/// an integer vector.
inline std::size_t ambient_dim(RootSystemId id) {
    validate_id(id);
    switch (id.fam) {
        case Family::A: return id.rank + 1;
        case Family::B:
        case Family::C:
        case Family::D:
        case Family::BC: return id.rank;
        case Family::E: return 8;
        case Family::F: return 4;
        case Family::G: return 3;
    }
    return 0;
}

enum class LengthClass { Zero, Short, Long, Divisible };

inline std::string length_class_name(LengthClass c) {
    switch (c) {
        case LengthClass::Zero: return "zero";
        case LengthClass::Short: return "sh";
        case LengthClass::Long: return "lg";
        case LengthClass::Divisible: return "div";
    }
    return "?";
}

namespace detail {

inline void push_sign_combos(std::vector<IntVec>& out, IntVec base,
                             std::vector<std::size_t> const& positions, std::size_t k,
                             std::function<bool(IntVec const&)> const& accept) {
    if (k == positions.size()) {
        if (accept(base)) out.push_back(base);
        return;
    }
    push_sign_combos(out, base, positions, k + 1, accept);
    base[positions[k]] = -base[positions[k]];
    push_sign_combos(out, base, positions, k + 1, accept);
}

}  // namespace detail

/// Enumerates the full root set of the system, including the zero vector.
inline std::vector<IntVec> enumerate_roots(RootSystemId id) {
    validate_id(id);
    std::size_t n = ambient_dim(id);
    std::vector<IntVec> out;
    auto unit = [&](std::size_t i, int32_t v) {
        IntVec e(n, 0);
        e[i] = v;
        return e;
    };
    auto pair_roots = [&](int32_t scale) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (int si : {1, -1})
                    for (int sj : {1, -1}) {
                        IntVec e(n, 0);
                        e[i] = si * scale;
                        e[j] = sj * scale;
                        out.push_back(e);
                    }
    };
    auto singles = [&](int32_t v) {
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(unit(i, v));
            out.push_back(unit(i, -v));
        }
    };
    switch (id.fam) {
        case Family::A:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j) {
                        IntVec e(n, 0);
                        e[i] = 1;
                        e[j] = -1;
                        out.push_back(e);
                    }
            break;
        case Family::B:
            singles(1);
            if (id.rank >= 2) pair_roots(1);
            break;
        case Family::C:
            pair_roots(1);
            singles(2);
            break;
        case Family::D:
            pair_roots(1);
            break;
        case Family::BC:
            singles(1);
            singles(2);
            if (id.rank >= 2) pair_roots(1);
            break;
        case Family::G:
            // short: differences of basis vectors; long: 2e_i - e_j - e_k
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    if (i != j) {
                        IntVec e(3, 0);
                        e[i] = 1;
                        e[j] = -1;
                        out.push_back(e);
                    }
            for (std::size_t i = 0; i < 3; ++i)
                for (int s : {1, -1}) {
                    IntVec e(3, -s);
                    e[i] = 2 * s;
                    out.push_back(e);
                }
            break;
        case Family::F: {
            // doubled coordinates: 2e_i (short), 2e_i +- 2e_j (long),
            // (+-1,+-1,+-1,+-1) (short)
            singles(2);
            pair_roots(2);
            IntVec base(4, 1);
            detail::push_sign_combos(out, base, {0, 1, 2, 3}, 0,
                                     [](IntVec const&) { return true; });
            break;
        }
        case Family::E: {
            // doubled coordinates inside the E8 frame
            std::size_t top = (id.rank == 8) ? 8 : (id.rank == 7 ? 6 : 5);
            for (std::size_t i = 0; i < top; ++i)
                for (std::size_t j = i + 1; j < top; ++j)
                    for (int si : {2, -2})
                        for (int sj : {2, -2}) {
                            IntVec e(8, 0);
                            e[i] = si;
                            e[j] = sj;
                            out.push_back(e);
                        }
            if (id.rank == 8) {
                IntVec base(8, 1);
                detail::push_sign_combos(out, base, {0, 1, 2, 3, 4, 5, 6, 7}, 0,
                                         [](IntVec const& v) {
                                             int neg = 0;
                                             for (auto x : v) neg += (x < 0);
                                             return neg % 2 == 0;
                                         });
            } else if (id.rank == 7) {
                for (int s : {1, -1}) {
                    IntVec e(8, 0);
                    e[6] = 2 * s;
                    e[7] = -2 * s;
                    out.push_back(e);
                }
                IntVec base(8, 1);
                base[6] = 1;
                base[7] = -1;
                detail::push_sign_combos(
                    out, base, {0, 1, 2, 3, 4, 5}, 0, [](IntVec const& v) {
                        if (!((v[6] == 1 && v[7] == -1) || (v[6] == -1 && v[7] == 1))) return true;
                        // count minus signs among the first six, relative to sign of slot 7
                        int neg = 0;
                        for (int i = 0; i < 6; ++i) neg += (v[i] * v[7] > 0);
                        return neg % 2 == 1;
                    });
                // the sign-combo helper only flips the first six slots; add the
                // global negatives explicitly
                std::vector<IntVec> more;
                for (auto const& v : out)
                    if (v.size() == 8 && v[6] != 0 && v[7] != 0 && std::abs(v[6]) == 1) more.push_back(-v);
                out.insert(out.end(), more.begin(), more.end());
            } else {
                IntVec base(8, 1);
                base[5] = -1;
                base[6] = -1;
                base[7] = 1;
                detail::push_sign_combos(
                    out, base, {0, 1, 2, 3, 4}, 0, [](IntVec const& v) {
                        int neg = 0;
                        for (int i = 0; i < 5; ++i) neg += (v[i] * v[7] < 0);
                        return neg % 2 == 0;
                    });
                std::vector<IntVec> more;
                for (auto const& v : out)
                    if (v.size() == 8 && std::abs(v[7]) == 1) more.push_back(-v);
                out.insert(out.end(), more.begin(), more.end());
            }
            break;
        }
    }
    out.push_back(IntVec(n, 0));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// A finite root system with 0 included, its normalized form and length
/// classes. The normalized form (.|.)_u is the W-invariant rescaling of the
/// coordinate dot product with short roots of squared length 2.
class RootSystem {
public:
    static RootSystem const& get(RootSystemId id) {
        static std::mutex mu;
        static std::map<std::pair<int, unsigned>, std::unique_ptr<RootSystem>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(static_cast<int>(id.fam), id.rank);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::unique_ptr<RootSystem>(new RootSystem(id))).first;
        return *it->second;
    }

    RootSystemId id() const { return id_; }
    std::size_t dim() const { return dim_; }
    std::vector<IntVec> const& roots() const { return roots_; }

    bool contains(IntVec const& v) const {
        return std::binary_search(roots_.begin(), roots_.end(), v);
    }

    int64_t raw_dot(IntVec const& a, IntVec const& b) const { return dot(a, b); }

    /// (alpha|alpha)_u, in {2,4,6,8} for nonzero roots.
    int64_t u_norm(IntVec const& a) const {
        Rat v = Rat(2 * dot(a, a)) / Rat(min_norm_);
        if (v.get_den() != 1) throw EalabError("non-integral normalized norm");
        return v.get_num().get_si();
    }

    /// Normalized form value (x|y)_u on integer vectors.
    Rat u_form(IntVec const& a, IntVec const& b) const {
        return Rat(2 * dot(a, b)) / Rat(min_norm_);
    }

    LengthClass class_of(IntVec const& a) const {
        if (is_zero(a)) return LengthClass::Zero;
        switch (u_norm(a)) {
            case 2: return LengthClass::Short;
            case 4:
            case 6: return LengthClass::Long;
            case 8: return LengthClass::Divisible;
        }
        throw EalabError("vector is not a root");
    }

    std::vector<IntVec> of_class(LengthClass c) const {
        std::vector<IntVec> out;
        for (auto const& r : roots_)
            if (!is_zero(r) || c == LengthClass::Zero)
                if (class_of(r) == c) out.push_back(r);
        return out;
    }

    /// Indivisible roots: 0 together with all alpha such that alpha/2 is not
    /// a root.
    std::vector<IntVec> indivisible() const {
        std::vector<IntVec> out;
        for (auto const& r : roots_)
            if (class_of(r) != LengthClass::Divisible || is_zero(r)) out.push_back(r);
        return out;
    }

    bool has_class(LengthClass c) const {
        for (auto const& r : roots_)
            if (!is_zero(r) && class_of(r) == c) return true;
        return false;
    }

    /// <x, alpha^vee> = 2 (x|alpha)/(alpha|alpha); exact integer for roots.
    int64_t cartan_int(IntVec const& x, IntVec const& alpha) const {
        if (is_zero(alpha)) throw EalabError("no reflection in an isotropic root");
        int64_t num = 2 * dot(x, alpha);
        int64_t den = dot(alpha, alpha);
        if (num % den != 0) throw EalabError("non-integral Cartan pairing");
        return num / den;
    }

    /// s_alpha(x) = x - <x,alpha^vee> alpha.
    IntVec reflect(IntVec const& x, IntVec const& alpha) const {
        int64_t c = cartan_int(x, alpha);
        return x - static_cast<int32_t>(c) * alpha;
    }

    /// Rational-vector pairing and reflection, for ambient vectors that are
    /// not lattice points.
    std::pair<Rat, std::vector<Rat>> pairing_reflect(std::vector<Rat> const& x,
                                                     IntVec const& alpha) const {
        if (is_zero(alpha)) throw EalabError("no reflection in an isotropic root");
        Rat num(0);
        for (std::size_t i = 0; i < x.size(); ++i) num += x[i] * Rat(alpha[i]);
        Rat c = Rat(2) * num / Rat(dot(alpha, alpha));
        std::vector<Rat> y = x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= c * Rat(alpha[i]);
        return {c, y};
    }

    /// Unbroken string {beta - d alpha, ..., beta + u alpha} inside the root
    /// set; satisfies d - u = <beta, alpha^vee>.
    std::pair<int, int> root_string(IntVec const& beta, IntVec const& alpha) const {
        if (is_zero(alpha)) throw EalabError("no root string through an isotropic root");
        if (!contains(beta)) throw EalabError("string base is not a root");
        int d = 0, u = 0;
        IntVec cur = beta;
        for (;;) {
            cur = cur - alpha;
            if (!contains(cur)) break;
            ++d;
            if (d > 8) throw EalabError("root string too long");
        }
        cur = beta;
        for (;;) {
            cur = cur + alpha;
            if (!contains(cur)) break;
            ++u;
            if (u > 8) throw EalabError("root string too long");
        }
        return {d, u};
    }

    /// The alternative Weyl-invariant form sum_{alpha in Phi} <x,a^v><y,a^v>,
    /// exposed read-only for cross-checks against the normalized form.
    Rat covee_form(std::vector<Rat> const& x, std::vector<Rat> const& y) const {
        Rat s(0);
        for (auto const& a : roots_) {
            if (is_zero(a)) continue;
            Rat ax(0), ay(0);
            for (std::size_t i = 0; i < dim_; ++i) {
                ax += x[i] * Rat(a[i]);
                ay += y[i] * Rat(a[i]);
            }
            Rat den(dot(a, a));
            s += (Rat(2) * ax / den) * (Rat(2) * ay / den);
        }
        return s;
    }

private:
    explicit RootSystem(RootSystemId id) : id_(id) {
        roots_ = enumerate_roots(id);
        dim_ = ambient_dim(id);
        min_norm_ = 0;
        for (auto const& r : roots_) {
            if (is_zero(r)) continue;
            int64_t n = dot(r, r);
            if (min_norm_ == 0 || n < min_norm_) min_norm_ = n;
        }
    }

    RootSystemId id_;
    std::size_t dim_;
    std::vector<IntVec> roots_;
    int64_t min_norm_ = 0;
};

/// Connected components of a set of nonzero vectors under "nonzero pairing"
/// linking; the gram callback returns whether (a|b) != 0.
inline std::vector<std::vector<std::size_t>> linking_components(
    std::vector<IntVec> const& vecs, std::function<bool(IntVec const&, IntVec const&)> linked) {
    std::vector<std::size_t> parent(vecs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = i + 1; j < vecs.size(); ++j)
            if (linked(vecs[i], vecs[j])) parent[find(i)] = find(j);
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < vecs.size(); ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [k, g] : groups) out.push_back(std::move(g));
    return out;
}

struct IrreducibilityReport {
    bool irreducible = false;
    std::size_t component_count = 0;
};

/// Connectedness of the nonzero part under the dot-product linking graph.
inline IrreducibilityReport is_irreducible(RootSystemId id) {
    auto const& rs = RootSystem::get(id);
    std::vector<IntVec> nz;
    for (auto const& r : rs.roots())
        if (!is_zero(r)) nz.push_back(r);
    auto comps = linking_components(
        nz, [&](IntVec const& a, IntVec const& b) { return dot(a, b) != 0; });
    return {comps.size() == 1, comps.size()};
}

inline IrreducibilityReport is_irreducible_set(std::vector<IntVec> const& raw) {
    std::vector<IntVec> nz;
    for (auto const& r : raw)
        if (!is_zero(r)) nz.push_back(r);
    if (nz.empty()) return {true, 0};
    auto comps = linking_components(
        nz, [&](IntVec const& a, IntVec const& b) { return dot(a, b) != 0; });
    return {comps.size() == 1, comps.size()};
}

// ---------------------------------------------------------------------------
// Catalog matching: identify a finite set of vectors carrying a symmetric
// form as a standard root system, up to an integral base change.

struct RootMatch {
    RootSystemId id;
    // images of the input span basis roots under the identification
    std::vector<IntVec> basis_in;   // input coordinates
    std::vector<IntVec> basis_out;  // standard coordinates
};

namespace detail {

struct MatchProblem {
    std::vector<IntVec> in_roots;                 // nonzero inputs
    std::vector<Rat> norm;                        // u-normalized norms
    std::function<Rat(std::size_t, std::size_t)> form;  // u-normalized pairings

    // Cartan integer <a, b^vee> = 2 (a|b)/(b|b)
    std::optional<int64_t> cartan(std::size_t a, std::size_t b) const {
        Rat v = Rat(2) * form(a, b) / norm[b];
        if (v.get_den() != 1) return std::nullopt;
        return v.get_num().get_si();
    }
};

inline bool try_assign(MatchProblem const& p, RootSystem const& rs,
                       std::vector<std::size_t> const& base_idx, std::size_t k,
                       std::vector<IntVec>& assigned) {
    if (k == base_idx.size()) return true;
    std::size_t bi = base_idx[k];
    for (auto const& cand : rs.roots()) {
        if (is_zero(cand)) continue;
        if (rs.u_norm(cand) != p.norm[bi]) continue;
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
            auto c1 = p.cartan(base_idx[j], bi);
            auto c2 = p.cartan(bi, base_idx[j]);
            if (!c1 || !c2) {
                ok = false;
                break;
            }
            if (rs.cartan_int(assigned[j], cand) != *c1) ok = false;
            if (rs.cartan_int(cand, assigned[j]) != *c2) ok = false;
        }
        if (!ok) continue;
        assigned.push_back(cand);
        if (try_assign(p, rs, base_idx, k + 1, assigned)) return true;
        assigned.pop_back();
    }
    return false;
}

}  // namespace detail

/// Tries to identify {vectors, form} with a catalog root system. The form is
/// given by a callback returning (v_i|v_j) as exact rationals; any positive
/// rescaling of the form yields the same result. Vectors must include 0 or
/// not; 0 is ignored. On success the returned bases define the unique linear
/// identification.
inline std::optional<RootMatch> match_root_system(
    std::vector<IntVec> const& vectors,
    std::function<Rat(std::size_t, std::size_t)> const& form) {
    detail::MatchProblem p;
    std::vector<std::size_t> orig_index;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        if (!is_zero(vectors[i])) {
            p.in_roots.push_back(vectors[i]);
            orig_index.push_back(i);
        }
    if (p.in_roots.empty()) return std::nullopt;
    // normalize so the minimal norm is 2
    std::vector<Rat> raw(p.in_roots.size());
    Rat minn;
    bool first = true;
    for (std::size_t i = 0; i < p.in_roots.size(); ++i) {
        raw[i] = form(orig_index[i], orig_index[i]);
        if (sgn(raw[i]) <= 0) return std::nullopt;  // anisotropic inputs only
        if (first || raw[i] < minn) {
            minn = raw[i];
            first = false;
        }
    }
    p.norm.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        p.norm[i] = Rat(2) * raw[i] / minn;
        if (p.norm[i].get_den() != 1) return std::nullopt;
    }
    p.form = [&, minn](std::size_t a, std::size_t b) -> Rat {
        Rat v = Rat(2) * form(orig_index[a], orig_index[b]) / minn;
        return v;
    };

    // span rank over Q
    std::size_t d = p.in_roots[0].size();
    std::vector<std::vector<Rat>> rows;
    for (auto const& r : p.in_roots) {
        std::vector<Rat> row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = Rat(r[j]);
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> base_idx;
    {
        Echelon<RatF> ech(d);
        for (std::size_t i = 0; i < p.in_roots.size(); ++i) {
            std::vector<RatF> row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = RatF(Rat(p.in_roots[i][j]));
            if (ech.add(std::move(row))) base_idx.push_back(i);
        }
    }
    std::size_t rank = base_idx.size();
    Expander<RatF> base_exp = [&] {
        std::vector<std::vector<RatF>> vecs;
        for (auto bi : base_idx) {
            std::vector<RatF> row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = RatF(Rat(p.in_roots[bi][j]));
            vecs.push_back(std::move(row));
        }
        return Expander<RatF>::build(vecs, d);
    }();

    // count roots per normalized length
    std::map<int64_t, std::size_t> counts;
    for (auto const& nm : p.norm) ++counts[nm.get_num().get_si()];

    std::vector<RootSystemId> candidates;
    auto add_candidate = [&](Family f, unsigned r) {
        RootSystemId cid{f, r};
        try {
            validate_id(cid);
        } catch (EalabError const&) {
            return;
        }
        auto const& rs = RootSystem::get(cid);
        if (rs.roots().size() - 1 != p.in_roots.size()) return;
        std::map<int64_t, std::size_t> cc;
        for (auto const& root : rs.roots())
            if (!is_zero(root)) ++cc[rs.u_norm(root)];
        if (cc == counts) candidates.push_back(cid);
    };
    unsigned r = static_cast<unsigned>(rank);
    // C before B so the standalone rank-2 system gets the C label; B_l is the
    // name reserved for the indivisible part of BC_l.
    add_candidate(Family::A, r);
    add_candidate(Family::C, r);
    add_candidate(Family::B, r);
    add_candidate(Family::D, r);
    add_candidate(Family::BC, r);
    add_candidate(Family::E, r);
    add_candidate(Family::F, r);
    add_candidate(Family::G, r);

    for (auto cid : candidates) {
        auto const& rs = RootSystem::get(cid);
        std::vector<IntVec> assigned;
        if (!detail::try_assign(p, rs, base_idx, 0, assigned)) continue;
        // verify the induced linear map sends inputs bijectively onto roots
        std::size_t sd = rs.dim();
        // coordinates of each input root in terms of the chosen base
        bool all_ok = true;
        std::set<IntVec> image;
        for (std::size_t i = 0; i < p.in_roots.size() && all_ok; ++i) {
            std::vector<RatF> row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = RatF(Rat(p.in_roots[i][j]));
            auto coords = base_exp.coords(row);
            if (!coords) {
                all_ok = false;
                break;
            }
            std::vector<Rat> img(sd, Rat(0));
            for (std::size_t k = 0; k < rank; ++k) {
                if (coords->at(k).is_zero()) continue;
                for (std::size_t j = 0; j < sd; ++j)
                    img[j] += coords->at(k).v * Rat(assigned[k][j]);
            }
            IntVec iv(sd);
            for (std::size_t j = 0; j < sd; ++j) {
                if (img[j].get_den() != 1) {
                    all_ok = false;
                    break;
                }
                iv[j] = static_cast<int32_t>(img[j].get_num().get_si());
            }
            if (!all_ok) break;
            if (!rs.contains(iv) || is_zero(iv)) {
                all_ok = false;
                break;
            }
            image.insert(iv);
        }
        if (!all_ok || image.size() != p.in_roots.size()) continue;
        RootMatch m;
        m.id = cid;
        for (std::size_t k = 0; k < rank; ++k) {
            m.basis_in.push_back(p.in_roots[base_idx[k]]);
            m.basis_out.push_back(assigned[k]);
        }
        return m;
    }
    return std::nullopt;
}

}  // namespace ealab
