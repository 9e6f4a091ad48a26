#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace ealab {

/// Short integer vector, used for lattice points and root coordinates.
using IntVec = boost::container::small_vector<int32_t, 8>;

struct EalabError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline IntVec zero_vec(std::size_t n) { return IntVec(n, 0); }

inline IntVec operator+(IntVec const& a, IntVec const& b) {
    if (a.size() != b.size()) throw EalabError("vector size mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec operator-(IntVec const& a, IntVec const& b) {
    if (a.size() != b.size()) throw EalabError("vector size mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec operator-(IntVec const& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IntVec operator*(int32_t s, IntVec const& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline int64_t dot(IntVec const& a, IntVec const& b) {
    if (a.size() != b.size()) throw EalabError("vector size mismatch");
    int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += int64_t(a[i]) * b[i];
    return s;
}

inline bool is_zero(IntVec const& a) {
    return std::all_of(a.begin(), a.end(), [](int32_t x) { return x == 0; });
}

inline int32_t max_abs(IntVec const& a) {
    int32_t m = 0;
    for (auto x : a) m = std::max(m, x < 0 ? -x : x);
    return m;
}

inline std::string to_string(IntVec const& a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ',';
        os << a[i];
    }
    os << ')';
    return os.str();
}

/// Enumerates all integer vectors v of length n with |v_i| <= radius.
/// Visits in lexicographic order, so traversals are deterministic.
template <class Fn>
void for_each_box_point(std::size_t n, int32_t radius, Fn&& fn) {
    IntVec v(n, -radius);
    if (n == 0) {
        fn(v);
        return;
    }
    for (;;) {
        fn(v);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (v[i] < radius) {
                ++v[i];
                for (std::size_t j = i + 1; j < n; ++j) v[j] = -radius;
                break;
            }
            if (i == 0) return;
        }
    }
}

inline std::vector<IntVec> box_points(std::size_t n, int32_t radius) {
    std::vector<IntVec> out;
    for_each_box_point(n, radius, [&](IntVec const& v) { out.push_back(v); });
    return out;
}

}  // namespace ealab

#include <thread>

namespace ealab {

inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : std::min(n, 8u);
}

/// Runs fn(worker_id) on `workers` threads. Work must be split by id so the
/// result of each worker is independent of scheduling.
template <class Fn>
void run_workers(unsigned workers, Fn&& fn) {
    if (workers <= 1) {
        fn(0u);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&fn, w] { fn(w); });
    for (auto& t : pool) t.join();
}

}  // namespace ealab
