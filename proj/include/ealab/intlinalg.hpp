#pragma once

#include <gmpxx.h>

#include "ealab/common.hpp"

namespace ealab {

using ZVec = std::vector<mpz_class>;

inline ZVec to_zvec(IntVec const& v) {
    ZVec z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) z[i] = v[i];
    return z;
}

/// Row-style Hermite normal form: returns the canonical basis (as rows) of
/// the lattice generated by the input rows. Pivots are positive and entries
/// above each pivot are reduced into [0, pivot).
inline std::vector<ZVec> hermite_normal_form(std::vector<ZVec> rows, std::size_t cols) {
    std::vector<ZVec> basis;
    for (auto& r : rows) {
        if (r.size() != cols) throw EalabError("HNF: ragged rows");
    }
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
        // eliminate below via gcd steps
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = pivot_row; i < rows.size(); ++i) {
                if (sgn(rows[i][col]) == 0) continue;
                if (best == rows.size() || cmp(abs(rows[i][col]), abs(rows[best][col])) < 0) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[pivot_row], rows[best]);
            bool clean = true;
            for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
                if (sgn(rows[i][col]) == 0) continue;
                mpz_class q = rows[i][col] / rows[pivot_row][col];  // truncated division
                if (sgn(q) != 0)
                    for (std::size_t j = col; j < cols; ++j) rows[i][j] -= q * rows[pivot_row][j];
                if (sgn(rows[i][col]) != 0) clean = false;
            }
            if (clean) break;
        }
        if (sgn(rows[pivot_row][col]) == 0) continue;
        if (sgn(rows[pivot_row][col]) < 0)
            for (std::size_t j = col; j < cols; ++j) rows[pivot_row][j] = -rows[pivot_row][j];
        // reduce entries above the pivot
        for (std::size_t i = 0; i < pivot_row; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
            if (sgn(q) != 0)
                for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[pivot_row][j];
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

/// Rank of an integer matrix, read off the Smith normal form.
inline std::size_t smith_rank(std::vector<ZVec> m, std::size_t cols) {
    // Alternate row and column reductions until diagonal; only the count of
    // non-zero diagonal entries is needed here.
    std::size_t rank = 0;
    std::size_t r = 0, c = 0;
    while (r < m.size() && c < cols) {
        // find a non-zero pivot
        std::size_t pi = m.size(), pj = cols;
        for (std::size_t i = r; i < m.size() && pi == m.size(); ++i)
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(m[i][j]) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == m.size()) break;
        std::swap(m[r], m[pi]);
        for (auto& row : m) std::swap(row[c], row[pj]);
        for (;;) {
            bool done = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (sgn(m[i][c]) == 0) continue;
                mpz_class q = m[i][c] / m[r][c];
                for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (sgn(m[i][c]) != 0) {
                    std::swap(m[r], m[i]);
                    done = false;
                }
            }
            for (std::size_t j = c + 1; j < cols; ++j) {
                if (sgn(m[r][j]) == 0) continue;
                mpz_class q = m[r][j] / m[r][c];
                for (std::size_t i = r; i < m.size(); ++i) m[i][j] -= q * m[i][c];
                if (sgn(m[r][j]) != 0) {
                    for (std::size_t i = r; i < m.size(); ++i) std::swap(m[i][c], m[i][j]);
                    done = false;
                }
            }
            if (done) break;
        }
        ++rank;
        ++r;
        ++c;
    }
    return rank;
}

inline std::size_t integer_rank(std::vector<IntVec> const& vecs, std::size_t cols) {
    std::vector<ZVec> rows;
    rows.reserve(vecs.size());
    for (auto const& v : vecs) rows.push_back(to_zvec(v));
    return smith_rank(std::move(rows), cols);
}

/// Basis (as rows) of the integer kernel {x in Z^cols : M x = 0} of an
/// integer matrix given by rows. The kernel lattice is saturated.
inline std::vector<ZVec> integer_kernel(std::vector<ZVec> const& rows, std::size_t cols) {
    std::size_t m = rows.size();
    std::vector<ZVec> aug;
    for (std::size_t v = 0; v < cols; ++v) {
        ZVec row(m + cols, mpz_class(0));
        for (std::size_t r = 0; r < m; ++r) row[r] = rows[r][v];
        row[m + v] = 1;
        aug.push_back(std::move(row));
    }
    auto h = hermite_normal_form(std::move(aug), m + cols);
    std::vector<ZVec> out;
    for (auto const& row : h) {
        bool lead_zero = true;
        for (std::size_t r = 0; r < m; ++r)
            if (sgn(row[r]) != 0) {
                lead_zero = false;
                break;
            }
        if (!lead_zero) continue;
        out.emplace_back(row.begin() + m, row.end());
    }
    return out;
}

/// Sublattice of Z^n given by its canonical Hermite-normal-form basis rows.
/// The rank may be smaller than n. Membership tests are exact.
class Lattice {
public:
    Lattice() : n_(0) {}
    explicit Lattice(std::size_t n) : n_(n) {}

    static Lattice from_generators(std::size_t n, std::vector<IntVec> const& gens) {
        Lattice l(n);
        std::vector<ZVec> rows;
        for (auto const& g : gens) {
            if (g.size() != n) throw EalabError("lattice generator has wrong length");
            rows.push_back(to_zvec(g));
        }
        l.basis_ = hermite_normal_form(std::move(rows), n);
        l.compute_pivots();
        return l;
    }

    static Lattice full(std::size_t n) {
        std::vector<IntVec> gens;
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, 0);
            e[i] = 1;
            gens.push_back(e);
        }
        return from_generators(n, gens);
    }

    static Lattice scaled(std::size_t n, int32_t factor) {
        std::vector<IntVec> gens;
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, 0);
            e[i] = factor;
            gens.push_back(e);
        }
        return from_generators(n, gens);
    }

    std::size_t ambient() const { return n_; }
    std::size_t rank() const { return basis_.size(); }
    std::vector<ZVec> const& basis() const { return basis_; }

    bool contains(IntVec const& v) const {
        IntVec r = reduce(v);
        return is_zero(r);
    }

    /// Canonical representative of v modulo the lattice.
    IntVec reduce(IntVec const& v) const {
        if (v.size() != n_) throw EalabError("lattice reduce: wrong length");
        ZVec z = to_zvec(v);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            std::size_t p = pivots_[i];
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), z[p].get_mpz_t(), basis_[i][p].get_mpz_t());
            if (sgn(q) != 0)
                for (std::size_t j = 0; j < n_; ++j) z[j] -= q * basis_[i][j];
        }
        IntVec out(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            if (!z[j].fits_sint_p()) throw EalabError("lattice residue overflow");
            out[j] = static_cast<int32_t>(z[j].get_si());
        }
        return out;
    }

    Lattice scaled_by(int32_t factor) const {
        std::vector<IntVec> gens;
        for (auto const& r : basis_) {
            IntVec v(n_);
            for (std::size_t j = 0; j < n_; ++j) {
                mpz_class s = r[j] * factor;
                if (!s.fits_sint_p()) throw EalabError("lattice scale overflow");
                v[j] = static_cast<int32_t>(s.get_si());
            }
            gens.push_back(v);
        }
        return from_generators(n_, gens);
    }

    Lattice sum(Lattice const& other) const {
        if (n_ != other.n_) throw EalabError("lattice sum: ambient mismatch");
        std::vector<IntVec> gens;
        auto push_rows = [&](std::vector<ZVec> const& rows) {
            for (auto const& r : rows) {
                IntVec v(n_);
                for (std::size_t j = 0; j < n_; ++j) v[j] = static_cast<int32_t>(r[j].get_si());
                gens.push_back(v);
            }
        };
        push_rows(basis_);
        push_rows(other.basis_);
        return from_generators(n_, gens);
    }

    friend bool operator==(Lattice const& a, Lattice const& b) {
        return a.n_ == b.n_ && a.basis_ == b.basis_;
    }

private:
    void compute_pivots() {
        pivots_.clear();
        for (auto const& row : basis_) {
            std::size_t p = 0;
            while (p < n_ && sgn(row[p]) == 0) ++p;
            pivots_.push_back(p);
        }
    }

    std::size_t n_;
    std::vector<ZVec> basis_;
    std::vector<std::size_t> pivots_;
};

}  // namespace ealab
