#pragma once

#include "ealab/intlinalg.hpp"
#include "ealab/scalar_traits.hpp"

namespace ealab {

/// Defining matrix of a quantum torus: q_ii = 1 and q_ij q_ji = 1. Entries
/// are roots of unity, 1, or (over the marker field) powers of the generic
/// marker.
template <class F>
class QuantumMatrix {
public:
    QuantumMatrix(std::size_t n, std::vector<std::vector<F>> entries)
        : n_(n), q_(std::move(entries)) {
        if (q_.size() != n_) throw EalabError("quantum matrix: wrong shape");
        for (auto const& row : q_)
            if (row.size() != n_) throw EalabError("quantum matrix: wrong shape");
        for (std::size_t i = 0; i < n_; ++i) {
            if (!(q_[i][i] == F(1))) throw EalabError("quantum matrix: diagonal must be 1");
            for (std::size_t j = 0; j < n_; ++j) {
                if (!(q_[i][j] * q_[j][i] == F(1)))
                    throw EalabError("quantum matrix: q_ij q_ji must be 1");
                if (!ScalarTraits<F>::is_monomial(q_[i][j]))
                    throw EalabError("quantum matrix entries must be monomials");
            }
        }
    }

    static QuantumMatrix laurent(std::size_t n) {
        std::vector<std::vector<F>> e(n, std::vector<F>(n, F(1)));
        return QuantumMatrix(n, std::move(e));
    }

    /// 2x2 matrix with q_12 = q.
    static QuantumMatrix rank2(F q) {
        std::vector<std::vector<F>> e(2, std::vector<F>(2, F(1)));
        e[0][1] = q;
        e[1][0] = F(1) / q;
        return QuantumMatrix(2, std::move(e));
    }

    std::size_t n() const { return n_; }
    F const& q(std::size_t i, std::size_t j) const { return q_[i][j]; }

private:
    std::size_t n_;
    std::vector<std::vector<F>> q_;
};

/// Twisted group algebra over Z^n with basis {t^lam} and multiplication
/// t^lam t^mu = c(lam,mu) t^{lam+mu}, where the cocycle comes in closed form
/// from a quantum matrix.
template <class F>
class AssocTorus {
public:
    explicit AssocTorus(QuantumMatrix<F> q) : q_(std::move(q)) {
        // precomputed entry powers: root-of-unity parts cycle with their
        // multiplicative order, marker parts add exponents
        std::size_t n = q_.n();
        pows_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto& e = pows_[i * n + j];
                auto [cyc, mexp] = ScalarTraits<F>::monomial_parts(q_.q(i, j));
                e.marker_exp = mexp;
                e.trivial = (cyc == Cyc::one()) && mexp == 0;
                auto ord = root_of_unity_order(cyc);
                if (!ord) throw EalabError("quantum matrix entry is not a root of unity");
                e.cyc_pows.reserve(*ord);
                Cyc p = Cyc::one();
                for (unsigned k = 0; k < *ord; ++k) {
                    e.cyc_pows.push_back(p);
                    p = p * cyc;
                }
            }
    }

    static AssocTorus laurent(std::size_t n) { return AssocTorus(QuantumMatrix<F>::laurent(n)); }

    std::size_t n() const { return q_.n(); }
    QuantumMatrix<F> const& qmatrix() const { return q_; }

    /// c(lam, mu) = prod_{j < i} q_ij^{lam_i mu_j}
    F cocycle(IntVec const& lam, IntVec const& mu) const {
        std::size_t n = q_.n();
        Cyc cyc = Cyc::one();
        long mexp = 0;
        bool touched = false;
        for (std::size_t i = 1; i < n; ++i) {
            if (lam[i] == 0) continue;
            for (std::size_t j = 0; j < i; ++j) {
                if (mu[j] == 0) continue;
                auto const& p = pows_[i * n + j];
                if (p.trivial) continue;
                long e = static_cast<long>(lam[i]) * mu[j];
                mexp += p.marker_exp * e;
                unsigned ord = static_cast<unsigned>(p.cyc_pows.size());
                unsigned k = static_cast<unsigned>(((e % long(ord)) + long(ord)) % long(ord));
                if (k != 0) {
                    cyc = touched ? cyc * p.cyc_pows[k] : p.cyc_pows[k];
                    touched = true;
                }
            }
        }
        if (mexp == 0) return ScalarTraits<F>::from_cyc(std::move(cyc));
        return ScalarTraits<F>::from_cyc(std::move(cyc)) *
               ScalarTraits<F>::marker_pow(static_cast<int32_t>(mexp));
    }

    /// [t^lam, t^mu] coefficient: c(lam,mu) - c(mu,lam).
    F commutator_coeff(IntVec const& lam, IntVec const& mu) const {
        return cocycle(lam, mu) - cocycle(mu, lam);
    }

    bool is_commutative() const {
        for (std::size_t i = 0; i < q_.n(); ++i)
            for (std::size_t j = 0; j < q_.n(); ++j)
                if (!(q_.q(i, j) == F(1))) return false;
        return true;
    }

private:
    struct EntryPow {
        std::vector<Cyc> cyc_pows;
        int32_t marker_exp = 0;
        bool trivial = true;
    };
    QuantumMatrix<F> q_;
    std::vector<EntryPow> pows_;
};

/// Support lattice Gamma of the centre: all gamma with
/// prod_j q_ij^{gamma_j} = 1 for every i, returned in Hermite normal form.
/// Marker entries contribute exact integer conditions; root-of-unity entries
/// contribute congruences modulo the maximal conductor.
template <class F>
Lattice torus_center_support(QuantumMatrix<F> const& q) {
    std::size_t n = q.n();
    unsigned M = CycContext::instance().max_conductor();
    // decompose each entry as zeta_M^{a_ij} * marker^{e_ij}
    std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
    std::vector<std::vector<long>> e(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto [cyc, mexp] = ScalarTraits<F>::monomial_parts(q.q(i, j));
            auto dl = dlog_root_of_unity(cyc);
            if (!dl) throw EalabError("quantum matrix entry is not a root of unity");
            a[i][j] = static_cast<long>(*dl);
            e[i][j] = mexp;
        }
    // gamma in Gamma  iff  for all i:  sum_j e_ij gamma_j = 0  and
    //                                  sum_j a_ij gamma_j = 0 (mod M).
    // Solve as an integer kernel in variables (gamma, slack).
    std::size_t vars = n + n;  // gamma plus one congruence slack per row i
    std::vector<ZVec> constraint;
    for (std::size_t i = 0; i < n; ++i) {
        ZVec row(vars, mpz_class(0));
        for (std::size_t j = 0; j < n; ++j) row[j] = e[i][j];
        constraint.push_back(row);
    }
    for (std::size_t i = 0; i < n; ++i) {
        ZVec row(vars, mpz_class(0));
        for (std::size_t j = 0; j < n; ++j) row[j] = a[i][j];
        row[n + i] = M;
        constraint.push_back(row);
    }
    auto kernel = integer_kernel(constraint, vars);
    std::vector<IntVec> gens;
    for (auto const& row : kernel) {
        IntVec g(n);
        for (std::size_t j = 0; j < n; ++j) g[j] = static_cast<int32_t>(row[j].get_si());
        gens.push_back(g);
    }
    return Lattice::from_generators(n, gens);
}

}  // namespace ealab
