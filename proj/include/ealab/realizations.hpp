#pragma once

#include "ealab/graded.hpp"
#include "ealab/matrix_lie.hpp"
#include "ealab/torus.hpp"

namespace ealab {

namespace detail {

/// Matrix monomial c * t^mu E_ij; the common coin of the sl_N(A) bracket.
template <class F>
struct MatMono {
    F c;
    IntVec mu;
    unsigned i, j;
};

template <class F>
using MonoList = boost::container::small_vector<MatMono<F>, 4>;

}  // namespace detail

/// sl_N over an associative torus A: the Lie torus of type (A_{N-1}, Z^n).
/// Root degrees carry t^lam E_ij; the zero degree carries t^lam H_k for
/// k < N-1 plus, when lam is outside the centre support, the slot
/// t^lam E_N spanning the [A,A]-part of the diagonal.
template <class F>
class SlTorus {
public:
    SlTorus(std::size_t N, AssocTorus<F> A) : N_(N), A_(std::move(A)) {
        if (N_ < 3) throw EalabError("sl over a torus requires N >= 3");
        ensure_killing_verified();
        gamma_ = torus_center_support(A_.qmatrix());
        inv_n_ = F(1) / F(static_cast<long>(N_));
    }

    std::size_t N() const { return N_; }
    AssocTorus<F> const& torus() const { return A_; }
    Lattice const& gamma() const { return gamma_; }

    GradedHandle<F> handle() const {
        GradedHandle<F> h;
        h.sys = RootSystemId{Family::A, static_cast<unsigned>(N_ - 1)};
        h.lam_rank = A_.n();
        h.tag = "sl" + std::to_string(N_) + "(" +
                (A_.is_commutative() ? "laurent" : "quantum") + ", n=" + std::to_string(A_.n()) +
                ")";
        h.n3_caveat = (N_ == 3);
        auto self = std::make_shared<SlTorus>(*this);
        h.dim = [self](Degree const& d) { return self->dim(d); };
        h.label = [self](Degree const& d, std::size_t i) { return self->label(d, i); };
        h.bracket = [self](Degree const& d1, std::size_t i1, Degree const& d2, std::size_t i2) {
            return self->bracket(d1, i1, d2, i2);
        };
        h.form = [self](Degree const& d1, std::size_t i1, Degree const& d2, std::size_t i2) {
            return self->form(d1, i1, d2, i2);
        };
        h.centroid_support = gamma_;
        h.centroid_action = [self](IntVec const& g, Degree const& d, std::size_t i) {
            return self->centroid_action(g, d, i);
        };
        if (A_.is_commutative()) h.kappa_scale = F(static_cast<long>(2 * N_));
        return h;
    }

    std::size_t dim(Degree const& d) const {
        auto cell = root_cell(d.xi);
        if (!cell) return 0;
        auto [i, j] = *cell;
        if (i == j) return (N_ - 1) + (gamma_.contains(d.lam) ? 0 : 1);
        return 1;
    }

    std::string label(Degree const& d, std::size_t idx) const {
        auto cell = root_cell(d.xi);
        if (!cell) throw EalabError("label outside support");
        auto [i, j] = *cell;
        std::string t = "t" + to_string(d.lam);
        if (i != j) return t + "E(" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (idx < N_ - 1) return t + "H(" + std::to_string(idx) + ")";
        return t + "Z";
    }

    HomElt<F> bracket(Degree const& d1, std::size_t i1, Degree const& d2, std::size_t i2) const {
        auto m1 = monos(d1, i1);
        auto m2 = monos(d2, i2);
        Degree target = d1 + d2;
        detail::MonoList<F> out;
        for (auto const& a : m1)
            for (auto const& b : m2) {
                if (a.j == b.i) {
                    F c = a.c * b.c * A_.cocycle(a.mu, b.mu);
                    if (!c.is_zero()) out.push_back({std::move(c), a.mu + b.mu, a.i, b.j});
                }
                if (b.j == a.i) {
                    F c = a.c * b.c * A_.cocycle(b.mu, a.mu);
                    if (!c.is_zero()) out.push_back({-std::move(c), b.mu + a.mu, b.i, a.j});
                }
            }
        return recombine(out, target);
    }

    F form(Degree const& d1, std::size_t i1, Degree const& d2, std::size_t i2) const {
        // (x|y) = sum_{i,j} (x_ij y_ji)_0
        if (!is_zero(d1.lam + d2.lam) || !is_zero(d1.xi + d2.xi)) return F(0);
        F s(0);
        for (auto const& a : monos(d1, i1))
            for (auto const& b : monos(d2, i2)) {
                if (a.j != b.i || a.i != b.j) continue;
                if (!is_zero(a.mu + b.mu)) continue;
                s = s + a.c * b.c * A_.cocycle(a.mu, b.mu);
            }
        return s;
    }

    /// Right multiplication by the central element t^g; the normalized
    /// centroid basis action.
    HomElt<F> centroid_action(IntVec const& g, Degree const& d, std::size_t idx) const {
        if (!gamma_.contains(g)) throw EalabError("degree outside the centroid support");
        detail::MonoList<F> out;
        for (auto const& a : monos(d, idx))
            out.push_back({a.c * A_.cocycle(a.mu, g), a.mu + g, a.i, a.j});
        Degree target{d.xi, d.lam + g};
        return recombine(out, target);
    }

private:
    // maps a root-lattice vector to the matrix cell: (i,j), diagonal = (0,0)
    std::optional<std::pair<unsigned, unsigned>> root_cell(IntVec const& xi) const {
        if (xi.size() != N_) throw EalabError("wrong root coordinate length");
        int plus = -1, minus = -1;
        for (std::size_t k = 0; k < N_; ++k) {
            if (xi[k] == 0) continue;
            if (xi[k] == 1 && plus < 0)
                plus = static_cast<int>(k);
            else if (xi[k] == -1 && minus < 0)
                minus = static_cast<int>(k);
            else
                return std::nullopt;
        }
        if (plus < 0 && minus < 0) return std::make_pair(0u, 0u);
        if (plus >= 0 && minus >= 0) return std::make_pair(unsigned(plus), unsigned(minus));
        return std::nullopt;
    }

    detail::MonoList<F> monos(Degree const& d, std::size_t idx) const {
        auto cell = root_cell(d.xi);
        if (!cell || idx >= dim(d)) throw EalabError("basis slot outside support");
        auto [i, j] = *cell;
        detail::MonoList<F> out;
        if (i != j) {
            out.push_back({F(1), d.lam, i, j});
        } else if (idx < N_ - 1) {
            unsigned k = static_cast<unsigned>(idx);
            out.push_back({F(1), d.lam, k, k});
            out.push_back({-F(1), d.lam, k + 1, k + 1});
        } else {
            for (unsigned k = 0; k < N_; ++k) out.push_back({F(1), d.lam, k, k});
        }
        return out;
    }

    HomElt<F> recombine(detail::MonoList<F> const& list, Degree const& target) const {
        HomElt<F> out{target, std::vector<F>(dim(target), F(0))};
        auto cell = root_cell(target.xi);
        std::vector<F> diag(N_, F(0));
        bool have_diag = false;
        for (auto const& m : list) {
            if (!(m.mu == target.lam)) throw EalabError("bracket degree mismatch");
            if (m.i == m.j) {
                diag[m.i] = diag[m.i] + m.c;
                have_diag = true;
            } else {
                if (!cell || cell->first != m.i || cell->second != m.j)
                    throw EalabError("bracket escaped the declared degree");
                out.v[0] = out.v[0] + m.c;
            }
        }
        if (have_diag) {
            if (!cell || cell->first != cell->second)
                throw EalabError("bracket escaped the declared degree");
            F tr(0);
            for (auto const& x : diag) tr = tr + x;
            F xc = tr * inv_n_;
            if (gamma_.contains(target.lam)) {
                if (!xc.is_zero()) throw EalabError("trace escaped [A,A]");
            } else {
                out.v[N_ - 1] = out.v[N_ - 1] + xc;
            }
            F acc(0);
            for (std::size_t k = 0; k + 1 < N_; ++k) {
                acc = acc + diag[k] - xc;
                out.v[k] = out.v[k] + acc;
            }
        }
        return out;
    }

    std::size_t N_;
    AssocTorus<F> A_;
    Lattice gamma_;
    F inv_n_;
};

template <class F>
GradedHandle<F> sl_torus(std::size_t N, AssocTorus<F> A) {
    return SlTorus<F>(N, std::move(A)).handle();
}

// ---------------------------------------------------------------------------
// Twisted and untwisted loop algebras of sl_N.

/// Finite-order automorphism of sl_N: conjugation by a monomial matrix, or
/// x -> -J x^T J^{-1} for a monomial J with J^T = +-J.
struct FiniteOrderAut {
    enum class Kind { Identity, Inner, NegTransposeJ };
    Kind kind = Kind::Identity;
    std::size_t N = 0;
    unsigned order = 1;
    CMat matrix;  // a or J; unused for Identity

    static FiniteOrderAut identity(std::size_t N) {
        FiniteOrderAut s;
        s.kind = Kind::Identity;
        s.N = N;
        s.order = 1;
        return s;
    }
    static FiniteOrderAut inner(CMat a, unsigned order) {
        FiniteOrderAut s;
        s.kind = Kind::Inner;
        s.N = a.rows();
        s.order = order;
        s.matrix = std::move(a);
        return s;
    }
    static FiniteOrderAut neg_transpose(CMat J, unsigned order = 2) {
        FiniteOrderAut s;
        s.kind = Kind::NegTransposeJ;
        s.N = J.rows();
        s.order = order;
        s.matrix = std::move(J);
        return s;
    }
};

/// Loop algebra of (sl_N, sigma) with its weight data.
struct TwistedLoopData {
    GradedHandle<Cyc> handle;
    RootSystemId S{Family::A, 1};
    std::vector<std::vector<IntVec>> delta;  // delta[s] in standard coordinates of S
    std::string delta0_name;
    unsigned order = 1;
};

namespace detail {

struct Monomial {
    // matrix with single entry s at (i, perm(i)) per row
    std::vector<unsigned> perm;
    std::vector<Cyc> scale;
};

inline std::optional<Monomial> decompose_monomial(CMat const& m) {
    Monomial out;
    std::size_t n = m.rows();
    out.perm.assign(n, 0);
    out.scale.assign(n, Cyc::zero());
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        int hit = -1;
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j).is_zero()) continue;
            if (hit >= 0) return std::nullopt;
            hit = static_cast<int>(j);
        }
        if (hit < 0 || used[hit]) return std::nullopt;
        used[hit] = true;
        out.perm[i] = static_cast<unsigned>(hit);
        out.scale[i] = m(i, static_cast<std::size_t>(hit));
    }
    return out;
}

}  // namespace detail

/// Builds the loop algebra L(sl_N, sigma) = sum_lam g_{lam mod m} t^lam as a
/// Z-graded handle, root-graded by the weights of the fixed Cartan h_0.
/// Reports the weight sets of each eigenspace and their union, matched to
/// the catalog.
class TwistedLoop {
public:
    TwistedLoop(std::size_t N, FiniteOrderAut const& sigma) : N_(N), m_(sigma.order) {
        if (N_ < 2) throw EalabError("loop realization requires N >= 2");
        ensure_killing_verified();
        build_cartan_and_conjugation(sigma);
        decompose(sigma);
        match_weights();
        precompute_structure();
    }

    TwistedLoopData data() const {
        TwistedLoopData out;
        out.S = S_;
        out.delta = delta_std_;
        out.delta0_name = delta0_name_;
        out.order = m_;
        out.handle = make_handle();
        return out;
    }

private:
    struct Cell {
        unsigned s;        // eigenvalue index
        IntVec xi_std;     // standard coordinates of the weight
        std::vector<CMat> basis;
    };

    void build_cartan_and_conjugation(FiniteOrderAut const& sigma) {
        // Produce: working-coordinates automorphism action and a diagonal
        // integer Cartan basis of the fixed algebra.
        if (sigma.N != N_) throw EalabError("automorphism size mismatch");
        switch (sigma.kind) {
            case FiniteOrderAut::Kind::Identity: {
                if (m_ != 1) throw EalabError("identity automorphism must have order 1");
                for (std::size_t k = 0; k + 1 < N_; ++k) {
                    std::vector<long> d(N_, 0);
                    d[k] = 1;
                    d[k + 1] = -1;
                    cartan_diag_.push_back(d);
                }
                apply_ = [](CMat const& x) { return x; };
                return;
            }
            case FiniteOrderAut::Kind::Inner: {
                auto mono = detail::decompose_monomial(sigma.matrix);
                if (!mono) throw EalabError("inner automorphism matrix must be monomial");
                // verify order: a^m must be scalar
                CMat p = Mat<Cyc>::identity(N_);
                for (unsigned k = 0; k < m_; ++k) p = p * sigma.matrix;
                for (std::size_t i = 0; i < N_; ++i)
                    for (std::size_t j = 0; j < N_; ++j)
                        if (i != j ? !p(i, j).is_zero() : !(p(i, i) == p(0, 0)))
                            throw EalabError("automorphism does not have the declared order");
                auto ainv = sigma.matrix.inverse();
                if (!ainv) throw EalabError("inner automorphism matrix is singular");
                CMat a = sigma.matrix, ai = *ainv;
                apply_ = [a, ai](CMat const& x) { return a * x * ai; };
                // fixed diagonal subalgebra: constant along permutation cycles
                std::vector<int> cyc_of(N_, -1);
                std::vector<std::vector<std::size_t>> cycles;
                for (std::size_t i = 0; i < N_; ++i) {
                    if (cyc_of[i] >= 0) continue;
                    std::vector<std::size_t> c;
                    std::size_t cur = i;
                    while (cyc_of[cur] < 0) {
                        cyc_of[cur] = static_cast<int>(cycles.size());
                        c.push_back(cur);
                        cur = mono->perm[cur];
                    }
                    cycles.push_back(c);
                }
                if (cycles.size() < 2)
                    throw EalabError("fixed Cartan of the inner automorphism is trivial");
                auto const& last = cycles.back();
                for (std::size_t t = 0; t + 1 < cycles.size(); ++t) {
                    std::vector<long> d(N_, 0);
                    for (auto i : cycles[t]) d[i] = static_cast<long>(last.size());
                    for (auto i : last) d[i] = -static_cast<long>(cycles[t].size());
                    cartan_diag_.push_back(d);
                }
                return;
            }
            case FiniteOrderAut::Kind::NegTransposeJ: {
                if (m_ != 2) throw EalabError("neg-transpose automorphism has order 2");
                auto mono = detail::decompose_monomial(sigma.matrix);
                if (!mono) throw EalabError("J must be monomial");
                // J^T = +- J
                CMat Jt = transpose(sigma.matrix);
                bool sym = true, skew = true;
                for (std::size_t i = 0; i < N_; ++i)
                    for (std::size_t j = 0; j < N_; ++j) {
                        if (!(Jt(i, j) == sigma.matrix(i, j))) sym = false;
                        if (!(Jt(i, j) == -sigma.matrix(i, j))) skew = false;
                    }
                if (!sym && !skew) throw EalabError("J must satisfy J^T = +-J");
                auto jinv = sigma.matrix.inverse();
                if (!jinv) throw EalabError("J is singular");
                CMat J = sigma.matrix, Ji = *jinv;
                bool is_identity_perm = true;
                for (std::size_t i = 0; i < N_; ++i)
                    if (mono->perm[i] != i) is_identity_perm = false;
                if (is_identity_perm) {
                    // orthogonal form; change coordinates so the split Cartan
                    // of so_N becomes diagonal. Requires J scalar.
                    for (std::size_t i = 1; i < N_; ++i)
                        if (!(J(i, i) == J(0, 0)))
                            throw EalabError("diagonal J must be scalar (use J = identity)");
                    unsigned M = CycContext::instance().max_conductor();
                    if (M % 4 != 0)
                        throw EalabError("orthogonal case needs a 4th root of unity");
                    Cyc im = Cyc::primitive_root(4);
                    CMat P(N_, N_), Pi(N_, N_);
                    Cyc half = Cyc(Rat(1, 2));
                    for (std::size_t k = 0; 2 * k + 1 < N_; ++k) {
                        // columns 2k, 2k+1: e_{2k} -+ i e_{2k+1}
                        P(2 * k, 2 * k) = Cyc::one();
                        P(2 * k + 1, 2 * k) = -im;
                        P(2 * k, 2 * k + 1) = Cyc::one();
                        P(2 * k + 1, 2 * k + 1) = im;
                        Pi(2 * k, 2 * k) = half;
                        Pi(2 * k, 2 * k + 1) = half * im;
                        Pi(2 * k + 1, 2 * k) = half;
                        Pi(2 * k + 1, 2 * k + 1) = -half * im;
                    }
                    if (N_ % 2 == 1) P(N_ - 1, N_ - 1) = Pi(N_ - 1, N_ - 1) = Cyc::one();
                    apply_ = [P, Pi](CMat const& x) {
                        CMat y = P * x * Pi;  // back to original coordinates
                        CMat z = transpose(y);
                        for (std::size_t i = 0; i < z.rows(); ++i)
                            for (std::size_t j = 0; j < z.cols(); ++j) z(i, j) = -z(i, j);
                        return Pi * z * P;
                    };
                    for (std::size_t k = 0; 2 * k + 1 < N_; ++k) {
                        std::vector<long> d(N_, 0);
                        d[2 * k] = 1;
                        d[2 * k + 1] = -1;
                        cartan_diag_.push_back(d);
                    }
                    return;
                }
                // monomial J with an involutive permutation: diagonal Cartan
                for (std::size_t i = 0; i < N_; ++i)
                    if (mono->perm[mono->perm[i]] != i)
                        throw EalabError("J permutation must be an involution");
                apply_ = [J, Ji](CMat const& x) {
                    CMat z = transpose(x);
                    CMat y = J * z * Ji;
                    for (std::size_t i = 0; i < y.rows(); ++i)
                        for (std::size_t j = 0; j < y.cols(); ++j) y(i, j) = -y(i, j);
                    return y;
                };
                for (std::size_t i = 0; i < N_; ++i) {
                    std::size_t j = mono->perm[i];
                    if (j <= i) continue;
                    std::vector<long> d(N_, 0);
                    d[i] = 1;
                    d[j] = -1;
                    cartan_diag_.push_back(d);
                }
                if (cartan_diag_.empty())
                    throw EalabError("fixed Cartan of the automorphism is trivial");
                return;
            }
        }
    }

    IntVec weight_of(std::size_t i, std::size_t j) const {
        IntVec w(cartan_diag_.size());
        for (std::size_t t = 0; t < cartan_diag_.size(); ++t)
            w[t] = static_cast<int32_t>(cartan_diag_[t][i] - cartan_diag_[t][j]);
        return w;
    }

    void decompose(FiniteOrderAut const& sigma) {
        (void)sigma;
        // group basis slots of sl_N by weight
        std::map<IntVec, std::vector<CMat>> wspace;
        for (std::size_t i = 0; i < N_; ++i)
            for (std::size_t j = 0; j < N_; ++j) {
                if (i == j) continue;
                CMat e(N_, N_);
                e(i, j) = Cyc::one();
                wspace[weight_of(i, j)].push_back(std::move(e));
            }
        {
            auto& diag = wspace[zero_vec(cartan_diag_.size())];
            for (std::size_t k = 0; k + 1 < N_; ++k) {
                CMat h(N_, N_);
                h(k, k) = Cyc::one();
                h(k + 1, k + 1) = -Cyc::one();
                diag.push_back(std::move(h));
            }
        }
        Cyc zeta = (m_ == 1) ? Cyc::one() : Cyc::primitive_root(m_);
        std::size_t total = 0;
        for (auto const& [w, mats] : wspace) {
            // sigma' restricted to this weight space
            std::size_t k = mats.size();
            std::vector<std::vector<Cyc>> vecs;
            for (auto const& mt : mats) vecs.push_back(cmat_vectorize(mt));
            auto expander = Expander<Cyc>::build(vecs, N_ * N_);
            Mat<Cyc> rep(k, k);
            for (std::size_t c = 0; c < k; ++c) {
                auto img = expander.coords(cmat_vectorize(apply_(mats[c])));
                if (!img)
                    throw EalabError("automorphism does not preserve the weight spaces of "
                                     "the fixed Cartan");
                for (std::size_t r = 0; r < k; ++r) rep(r, c) = (*img)[r];
            }
            Cyc pw = Cyc::one();
            for (unsigned s = 0; s < m_; ++s) {
                // kernel of rep - zeta^s
                std::vector<std::vector<Cyc>> rows(k, std::vector<Cyc>(k));
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = 0; c < k; ++c)
                        rows[r][c] = rep(r, c) - (r == c ? pw : Cyc::zero());
                auto ker = nullspace(rows, k);
                if (!ker.empty()) {
                    Cell cell;
                    cell.s = s;
                    cell.xi_std = w;  // rewritten to standard coordinates later
                    for (auto const& coef : ker) {
                        CMat b(N_, N_);
                        for (std::size_t c = 0; c < k; ++c) {
                            if (coef[c].is_zero()) continue;
                            for (std::size_t x = 0; x < N_; ++x)
                                for (std::size_t y = 0; y < N_; ++y)
                                    b(x, y) = b(x, y) + coef[c] * mats[c](x, y);
                        }
                        cell.basis.push_back(std::move(b));
                    }
                    total += cell.basis.size();
                    cells_.push_back(std::move(cell));
                }
                pw = pw * zeta;
            }
        }
        if (total != N_ * N_ - 1)
            throw EalabError("eigenspace decomposition does not exhaust sl_N");
    }

    void match_weights() {
        // form on weights: dual of the Killing gram of the Cartan basis
        std::size_t r = cartan_diag_.size();
        Mat<RatF> gram(r, r);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) {
                long s = 0;
                for (std::size_t i = 0; i < N_; ++i) s += cartan_diag_[a][i] * cartan_diag_[b][i];
                gram(a, b) = RatF(Rat(static_cast<long>(2 * N_) * s));
            }
        auto ginv = gram.inverse();
        if (!ginv) throw EalabError("degenerate Cartan gram matrix");
        std::set<IntVec> wset;
        for (auto const& c : cells_)
            if (!is_zero(c.xi_std)) wset.insert(c.xi_std);
        std::vector<IntVec> weights(wset.begin(), wset.end());
        auto form = [&](std::size_t a, std::size_t b) {
            Rat s(0);
            for (std::size_t x = 0; x < r; ++x)
                for (std::size_t y = 0; y < r; ++y)
                    s += Rat(weights[a][x]) * ginv->operator()(x, y).v * Rat(weights[b][y]);
            return s;
        };
        auto match = match_root_system(weights, form);
        if (!match) throw EalabError("weights do not form a catalog root system");
        S_ = match->id;
        // base-change map into standard coordinates
        Echelon<RatF> ech(r);
        std::vector<std::size_t> pivot_order;
        std::vector<IntVec> bin = match->basis_in;
        std::vector<IntVec> bout = match->basis_out;
        Expander<RatF> exp = [&] {
            std::vector<std::vector<RatF>> vecs;
            for (auto const& v : bin) {
                std::vector<RatF> row(r);
                for (std::size_t t = 0; t < r; ++t) row[t] = RatF(Rat(v[t]));
                vecs.push_back(std::move(row));
            }
            return Expander<RatF>::build(vecs, r);
        }();
        std::size_t sd = ambient_dim(S_);
        auto to_std = [&](IntVec const& w) {
            std::vector<RatF> t(r);
            for (std::size_t x = 0; x < r; ++x) t[x] = RatF(Rat(w[x]));
            auto coords = exp.coords(t);
            if (!coords) throw EalabError("weight outside the matched span");
            std::vector<Rat> img(sd, Rat(0));
            for (std::size_t k = 0; k < coords->size(); ++k)
                for (std::size_t y = 0; y < sd; ++y)
                    img[y] += (*coords)[k].v * Rat(bout[k][y]);
            IntVec out(sd);
            for (std::size_t y = 0; y < sd; ++y) {
                if (img[y].get_den() != 1) throw EalabError("non-integral base change");
                out[y] = static_cast<int32_t>(img[y].get_num().get_si());
            }
            return out;
        };
        for (auto& c : cells_)
            c.xi_std = is_zero(c.xi_std) ? zero_vec(sd) : to_std(c.xi_std);
        // weight sets per eigenvalue, standard coordinates
        delta_std_.assign(m_, {});
        for (auto const& c : cells_) delta_std_[c.s].push_back(c.xi_std);
        for (auto& v : delta_std_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        delta0_name_ = name_subsystem(delta_std_[0]);
    }

    std::string name_subsystem(std::vector<IntVec> const& sub) const {
        auto const& rs = RootSystem::get(S_);
        std::vector<IntVec> all = rs.roots();
        std::sort(all.begin(), all.end());
        auto ind = rs.indivisible();
        std::sort(ind.begin(), ind.end());
        std::vector<IntVec> s = sub;
        std::sort(s.begin(), s.end());
        if (s == all) return S_.str();
        if (S_.fam == Family::BC && s == ind)
            return S_.rank >= 2 ? "B" + std::to_string(S_.rank) : "A1";
        auto m = match_root_system(s, [&](std::size_t a, std::size_t b) {
            return rs.u_form(s[a], s[b]);
        });
        return m ? m->id.str() : "?";
    }

    void precompute_structure() {
        // flat basis indexing and one-time structure constants
        for (std::size_t ci = 0; ci < cells_.size(); ++ci)
            for (std::size_t bi = 0; bi < cells_[ci].basis.size(); ++bi)
                flat_.push_back({ci, bi});
        cell_index_.clear();
        for (std::size_t ci = 0; ci < cells_.size(); ++ci)
            cell_index_[{cells_[ci].s, cells_[ci].xi_std}] = ci;
        // expander per cell
        for (auto const& c : cells_) {
            std::vector<std::vector<Cyc>> vecs;
            for (auto const& b : c.basis) vecs.push_back(cmat_vectorize(b));
            expanders_.push_back(Expander<Cyc>::build(vecs, N_ * N_));
        }
        struct_.resize(flat_.size() * flat_.size());
        kappa_.resize(flat_.size() * flat_.size());
        for (std::size_t x = 0; x < flat_.size(); ++x)
            for (std::size_t y = 0; y < flat_.size(); ++y) {
                auto const& cx = cells_[flat_[x].first];
                auto const& cy = cells_[flat_[y].first];
                CMat br = commutator(cx.basis[flat_[x].second], cy.basis[flat_[y].second]);
                unsigned s = (cx.s + cy.s) % m_;
                IntVec xi = cx.xi_std + cy.xi_std;
                auto it = cell_index_.find({s, xi});
                std::vector<Cyc> coeffs;
                if (it != cell_index_.end()) {
                    auto coords = expanders_[it->second].coords(cmat_vectorize(br));
                    if (!coords) throw EalabError("bracket escaped its cell");
                    coeffs = *coords;
                } else if (!cmat_is_zero(br)) {
                    throw EalabError("bracket escaped the declared support");
                }
                struct_[x * flat_.size() + y] = std::move(coeffs);
                kappa_[x * flat_.size() + y] = killing_closed(
                    N_, cx.basis[flat_[x].second], cy.basis[flat_[y].second]);
            }
    }

    std::optional<std::size_t> cell_of(Degree const& d) const {
        if (d.lam.size() != 1) throw EalabError("loop degree has rank 1");
        unsigned s = static_cast<unsigned>(((d.lam[0] % static_cast<int>(m_)) + m_) % m_);
        auto it = cell_index_.find({s, d.xi});
        if (it == cell_index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<std::size_t> flat_of(Degree const& d, std::size_t idx) const {
        auto c = cell_of(d);
        if (!c) return std::nullopt;
        for (std::size_t f = 0; f < flat_.size(); ++f)
            if (flat_[f].first == *c && flat_[f].second == idx) return f;
        return std::nullopt;
    }

    GradedHandle<Cyc> make_handle() const {
        auto self = std::make_shared<TwistedLoop>(*this);
        GradedHandle<Cyc> h;
        h.sys = S_;
        h.lam_rank = 1;
        h.tag = "loop(sl" + std::to_string(N_) + ", m=" + std::to_string(m_) + ")";
        h.dim = [self](Degree const& d) -> std::size_t {
            auto c = self->cell_of(d);
            return c ? self->cells_[*c].basis.size() : 0;
        };
        h.label = [self](Degree const& d, std::size_t i) {
            return "t^" + std::to_string(d.lam[0]) + "file" + to_string(d.xi) + "#" +
                   std::to_string(i);
        };
        h.bracket = [self](Degree const& d1, std::size_t i1, Degree const& d2, std::size_t i2) {
            auto f1 = self->flat_of(d1, i1);
            auto f2 = self->flat_of(d2, i2);
            if (!f1 || !f2) throw EalabError("basis slot outside support");
            Degree target = d1 + d2;
            HomElt<Cyc> out{target, {}};
            auto const& coeffs = self->struct_[*f1 * self->flat_.size() + *f2];
            auto tc = self->cell_of(target);
            out.v.assign(tc ? self->cells_[*tc].basis.size() : 0, Cyc::zero());
            for (std::size_t k = 0; k < coeffs.size(); ++k) out.v[k] = coeffs[k];
            return out;
        };
        h.form = [self](Degree const& d1, std::size_t i1, Degree const& d2, std::size_t i2) {
            if (d1.lam[0] + d2.lam[0] != 0) return Cyc::zero();
            auto f1 = self->flat_of(d1, i1);
            auto f2 = self->flat_of(d2, i2);
            if (!f1 || !f2) throw EalabError("basis slot outside support");
            return self->kappa_[*f1 * self->flat_.size() + *f2];
        };
        h.kappa_scale = Cyc::one();
        std::vector<IntVec> gens;
        IntVec g(1);
        g[0] = static_cast<int32_t>(m_);
        gens.push_back(g);
        h.centroid_support = Lattice::from_generators(1, gens);
        h.centroid_action = [self](IntVec const& gamma, Degree const& d, std::size_t i) {
            if (gamma.size() != 1 || gamma[0] % static_cast<int32_t>(self->m_) != 0)
                throw EalabError("degree outside the centroid support");
            Degree target{d.xi, d.lam + gamma};
            HomElt<Cyc> out{target, std::vector<Cyc>(self->cells_[*self->cell_of(target)].basis.size(),
                                                     Cyc::zero())};
            out.v[i] = Cyc::one();
            return out;
        };
        return h;
    }

    std::size_t N_;
    unsigned m_;
    std::vector<std::vector<long>> cartan_diag_;
    std::function<CMat(CMat const&)> apply_;
    std::vector<Cell> cells_;
    std::map<std::pair<unsigned, IntVec>, std::size_t> cell_index_;
    std::vector<Expander<Cyc>> expanders_;
    std::vector<std::pair<std::size_t, std::size_t>> flat_;
    std::vector<std::vector<Cyc>> struct_;
    std::vector<Cyc> kappa_;
    RootSystemId S_{Family::A, 1};
    std::vector<std::vector<IntVec>> delta_std_;
    std::string delta0_name_;
};

inline TwistedLoopData twisted_loop(std::size_t N, FiniteOrderAut const& sigma) {
    return TwistedLoop(N, sigma).data();
}

}  // namespace ealab
