#pragma once

#include <mutex>

#include "ealab/cyclotomic.hpp"
#include "ealab/linalg.hpp"

namespace ealab {

using CMat = Mat<Cyc>;

inline CMat cmat_zero(std::size_t n) { return CMat(n, n); }

inline CMat transpose(CMat const& a) {
    CMat t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline CMat commutator(CMat const& a, CMat const& b) {
    CMat ab = a * b;
    CMat ba = b * a;
    CMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = ab(i, j) - ba(i, j);
    return r;
}

inline Cyc trace(CMat const& a) {
    Cyc t = Cyc::zero();
    for (std::size_t i = 0; i < a.rows(); ++i) t = t + a(i, i);
    return t;
}

inline Cyc trace_product(CMat const& a, CMat const& b) {
    Cyc t = Cyc::zero();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero() || b(k, i).is_zero()) continue;
            t = t + a(i, k) * b(k, i);
        }
    return t;
}

inline bool cmat_is_zero(CMat const& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) return false;
    return true;
}

inline std::vector<Cyc> cmat_vectorize(CMat const& a) {
    std::vector<Cyc> v;
    v.reserve(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
    return v;
}

/// Standard basis of sl_N over the rationals: E_ij (i != j) followed by
/// H_k = E_kk - E_{k+1,k+1}.
inline std::vector<CMat> sl_basis(std::size_t N) {
    std::vector<CMat> basis;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (i == j) continue;
            CMat m(N, N);
            m(i, j) = Cyc::one();
            basis.push_back(std::move(m));
        }
    for (std::size_t k = 0; k + 1 < N; ++k) {
        CMat m(N, N);
        m(k, k) = Cyc::one();
        m(k + 1, k + 1) = -Cyc::one();
        basis.push_back(std::move(m));
    }
    return basis;
}

/// Killing form of sl_N in closed form: kappa(x,y) = 2N tr(xy).
inline Cyc killing_closed(std::size_t N, CMat const& x, CMat const& y) {
    return Cyc(long(2 * N)) * trace_product(x, y);
}

/// Verifies kappa(x,y) = tr(ad x . ad y) against the closed form 2N tr(xy)
/// on the full sl_N basis. Runs once per process for N = 2 and N = 3 before
/// the closed form is used by any realization; throws on mismatch.
inline void verify_killing_form(std::size_t N) {
    auto basis = sl_basis(N);
    std::size_t d = basis.size();
    std::vector<std::vector<Cyc>> vecs;
    for (auto const& b : basis) vecs.push_back(cmat_vectorize(b));
    auto expander = Expander<Cyc>::build(vecs, N * N);
    std::vector<Mat<Cyc>> ad(d, Mat<Cyc>(d, d));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            auto coords = expander.coords(cmat_vectorize(commutator(basis[a], basis[b])));
            if (!coords) throw EalabError("bracket escaped sl_N");
            for (std::size_t r = 0; r < d; ++r) ad[a](r, b) = (*coords)[r];
        }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            Cyc t = Cyc::zero();
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t k = 0; k < d; ++k) {
                    if (ad[a](i, k).is_zero() || ad[b](k, i).is_zero()) continue;
                    t = t + ad[a](i, k) * ad[b](k, i);
                }
            if (!(t == killing_closed(N, basis[a], basis[b])))
                throw EalabError("Killing form closed form failed verification for N=" +
                                 std::to_string(N));
        }
}

/// Gate used by every realization that relies on the closed form.
inline void ensure_killing_verified() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        verify_killing_form(2);
        verify_killing_form(3);
    });
}

}  // namespace ealab
