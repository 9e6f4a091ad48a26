#pragma once

#include "ealab/common.hpp"

namespace ealab {

/// Incrementally maintained row space in reduced echelon form, over an exact
/// field F. The workhorse behind all span, rank and membership computations.
template <class F>
class Echelon {
public:
    explicit Echelon(std::size_t cols) : cols_(cols) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    /// Reduces v against the current rows; returns true if v enlarged the span
    /// (in which case it is inserted).
    bool add(std::vector<F> v) {
        std::size_t p = reduce_inplace(v);
        if (p == cols_) return false;
        F lead = v[p];
        F li = lead.inv();
        for (auto& x : v) x = x * li;
        // back-substitute into existing rows
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            F c = rows_[i][p];
            if (c.is_zero()) continue;
            for (std::size_t j = p; j < cols_; ++j) rows_[i][j] = rows_[i][j] - c * v[j];
        }
        std::size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < p) ++at;
        rows_.insert(rows_.begin() + at, std::move(v));
        pivots_.insert(pivots_.begin() + at, p);
        return true;
    }

    bool contains(std::vector<F> v) const {
        return reduce_inplace(v) == cols_;
    }

    /// Coordinates of v in terms of the stored rows; empty if not in the span.
    std::optional<std::vector<F>> coordinates(std::vector<F> v) const {
        std::vector<F> coef(rows_.size(), F(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            F c = v[pivots_[i]];
            if (c.is_zero()) continue;
            coef[i] = c;
            for (std::size_t j = pivots_[i]; j < cols_; ++j) v[j] = v[j] - c * rows_[i][j];
        }
        for (auto const& x : v)
            if (!x.is_zero()) return std::nullopt;
        return coef;
    }

    std::vector<std::vector<F>> const& rows() const { return rows_; }
    std::vector<std::size_t> const& pivots() const { return pivots_; }

private:
    // returns pivot column of the residual, or cols_ if fully reduced to zero
    std::size_t reduce_inplace(std::vector<F>& v) const {
        if (v.size() != cols_) throw EalabError("echelon: wrong length");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            F c = v[pivots_[i]];
            if (c.is_zero()) continue;
            for (std::size_t j = pivots_[i]; j < cols_; ++j) v[j] = v[j] - c * rows_[i][j];
        }
        for (std::size_t j = 0; j < cols_; ++j)
            if (!v[j].is_zero()) return j;
        return cols_;
    }

    std::size_t cols_;
    std::vector<std::vector<F>> rows_;
    std::vector<std::size_t> pivots_;
};

template <class F>
std::size_t rank_of(std::vector<std::vector<F>> const& rows, std::size_t cols) {
    Echelon<F> e(cols);
    for (auto const& r : rows) e.add(r);
    return e.dim();
}

/// Nullspace basis of the linear map given by constraint rows: all x with
/// row . x = 0 for every row.
template <class F>
std::vector<std::vector<F>> nullspace(std::vector<std::vector<F>> const& rows, std::size_t cols) {
    Echelon<F> e(cols);
    for (auto const& r : rows) e.add(r);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots()) is_pivot[p] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<F> v(cols, F(0));
        v[fc] = F(1);
        for (std::size_t i = 0; i < e.rows().size(); ++i)
            v[e.pivots()[i]] = -e.rows()[i][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
struct SolveResult {
    bool feasible = false;
    std::vector<F> solution;        // one solution when feasible
    std::size_t inconsistent_row = 0;  // an input row witnessing infeasibility
};

/// Solves A x = b exactly (A given as rows). When infeasible, reports the
/// index of an input row whose reduction exposed the inconsistency.
template <class F>
SolveResult<F> solve_linear(std::vector<std::vector<F>> const& rows, std::vector<F> const& rhs,
                            std::size_t cols) {
    if (rows.size() != rhs.size()) throw EalabError("solve: shape mismatch");
    Echelon<F> e(cols + 1);
    SolveResult<F> res;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<F> aug = rows[i];
        aug.push_back(rhs[i]);
        e.add(std::move(aug));
        // inconsistency shows up as a pivot in the augmented column
        if (!e.pivots().empty() && e.pivots().back() == cols) {
            res.feasible = false;
            res.inconsistent_row = i;
            return res;
        }
    }
    res.feasible = true;
    res.solution.assign(cols, F(0));
    for (std::size_t i = 0; i < e.rows().size(); ++i)
        res.solution[e.pivots()[i]] = e.rows()[i][cols];
    return res;
}

/// Expresses targets in terms of a fixed list of linearly independent
/// spanning vectors. Augmented-echelon based; build once, query many times.
template <class F>
class Expander {
public:
    static Expander build(std::vector<std::vector<F>> const& vecs, std::size_t n) {
        Expander ex;
        ex.n_ = n;
        ex.k_ = vecs.size();
        ex.ech_ = std::make_unique<Echelon<F>>(n + vecs.size());
        for (std::size_t j = 0; j < vecs.size(); ++j) {
            if (vecs[j].size() != n) throw EalabError("expander: wrong vector length");
            std::vector<F> aug(n + vecs.size(), F(0));
            for (std::size_t i = 0; i < n; ++i) aug[i] = vecs[j][i];
            aug[n + j] = F(1);
            ex.ech_->add(std::move(aug));
            if (ex.ech_->pivots().back() >= n)
                throw EalabError("expander: spanning vectors are dependent");
        }
        return ex;
    }

    /// Coefficients c with sum_j c_j vec_j = target, or nullopt.
    std::optional<std::vector<F>> coords(std::vector<F> const& target) const {
        std::vector<F> aug(n_ + k_, F(0));
        for (std::size_t i = 0; i < n_; ++i) aug[i] = target[i];
        for (auto const& [row, p] : zip()) {
            F c = aug[p];
            if (c.is_zero()) continue;
            for (std::size_t j = p; j < aug.size(); ++j) aug[j] = aug[j] - c * row[j];
        }
        for (std::size_t i = 0; i < n_; ++i)
            if (!aug[i].is_zero()) return std::nullopt;
        std::vector<F> out(k_);
        for (std::size_t j = 0; j < k_; ++j) out[j] = -aug[n_ + j];
        return out;
    }

    std::size_t size() const { return k_; }

private:
    std::vector<std::pair<std::vector<F> const&, std::size_t>> zip() const {
        std::vector<std::pair<std::vector<F> const&, std::size_t>> v;
        for (std::size_t i = 0; i < ech_->rows().size(); ++i)
            v.emplace_back(ech_->rows()[i], ech_->pivots()[i]);
        return v;
    }

    std::size_t n_ = 0, k_ = 0;
    std::shared_ptr<Echelon<F>> ech_;
};

/// Dense square-matrix helpers (small sizes only).
template <class F>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, F(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    F& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    F const& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    friend Mat operator*(Mat const& a, Mat const& b) {
        if (a.c_ != b.r_) throw EalabError("mat mul: shape mismatch");
        Mat m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.c_; ++j)
                    m(i, j) = m(i, j) + a(i, k) * b(k, j);
            }
        return m;
    }

    std::vector<F> apply(std::vector<F> const& v) const {
        if (v.size() != c_) throw EalabError("mat apply: shape mismatch");
        std::vector<F> out(r_, F(0));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!(*this)(i, j).is_zero()) out[i] = out[i] + (*this)(i, j) * v[j];
        return out;
    }

    bool invertible() const {
        if (r_ != c_) return false;
        std::vector<std::vector<F>> rows;
        for (std::size_t i = 0; i < r_; ++i) {
            std::vector<F> row(c_);
            for (std::size_t j = 0; j < c_; ++j) row[j] = (*this)(i, j);
            rows.push_back(std::move(row));
        }
        return rank_of(rows, c_) == r_;
    }

    std::optional<Mat> inverse() const {
        if (r_ != c_) return std::nullopt;
        Echelon<F> e(2 * c_);
        for (std::size_t i = 0; i < r_; ++i) {
            std::vector<F> row(2 * c_, F(0));
            for (std::size_t j = 0; j < c_; ++j) row[j] = (*this)(i, j);
            row[c_ + i] = F(1);
            e.add(std::move(row));
        }
        if (e.dim() != r_) return std::nullopt;
        for (std::size_t i = 0; i < r_; ++i)
            if (e.pivots()[i] != i) return std::nullopt;
        Mat inv(r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) inv(i, j) = e.rows()[i][c_ + j];
        return inv;
    }

private:
    std::size_t r_, c_;
    std::vector<F> a_;
};

}  // namespace ealab
