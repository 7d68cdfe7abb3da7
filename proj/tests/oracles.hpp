#pragma once

// Shared oracles and seeded random generators for the test suite. Oracles are
// computed by routes independent of the code under test wherever feasible.

#include "torbun/fan.hpp"
#include "torbun/lattice.hpp"
#include "torbun/numeric.hpp"

#include <random>
#include <vector>

namespace oracle {

using torbun::Int;
using torbun::IntMat;
using torbun::IntVec;
using torbun::Rat;

inline std::mt19937_64 seeded(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Int rand_int(std::mt19937_64& g, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Int(d(g));
}

inline IntMat random_mat(std::mt19937_64& g, int r, int c, int lo, int hi) {
    IntMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = rand_int(g, lo, hi);
    return m;
}

inline Int int_det(const IntMat& m) {
    Rat d = torbun::det(torbun::to_rational(m));
    if (boost::multiprecision::denominator(d) != 1)
        throw torbun::Error("int_det: non-integer determinant");
    return boost::multiprecision::numerator(d);
}

// gcd of all k x k minors (0 if every minor vanishes); gcd over the empty
// index set is defined as 1 so the d_k = g_k / g_{k-1} formula starts cleanly.
inline Int minor_gcd(const IntMat& a, int k) {
    if (k == 0) return 1;
    std::vector<int> rows(k), cols(k);
    Int g = 0;
    auto pick = [&](auto&& self, std::vector<int>& idx, int depth, int limit, auto&& next) -> void {
        if (depth == k) {
            next();
            return;
        }
        int start = depth == 0 ? 0 : idx[depth - 1] + 1;
        for (int v = start; v <= limit - (k - depth); ++v) {
            idx[depth] = v;
            self(self, idx, depth + 1, limit, next);
        }
    };
    pick(pick, rows, 0, a.rows(), [&] {
        pick(pick, cols, 0, a.cols(), [&] {
            IntMat sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
            g = boost::multiprecision::gcd(g, int_det(sub));
        });
    });
    return g;
}

// Smith diagonal via the gcd-of-minors formula, the oracle for snf.
inline std::vector<Int> snf_diagonal_oracle(const IntMat& a) {
    int n = std::min(a.rows(), a.cols());
    std::vector<Int> d(n, Int(0));
    Int prev = 1;
    for (int k = 1; k <= n; ++k) {
        Int g = minor_gcd(a, k);
        if (g == 0) break;  // all later minors vanish too
        d[k - 1] = g / prev;
        prev = g;
    }
    return d;
}

inline IntVec random_primitive(std::mt19937_64& g, int rank, int bound) {
    for (;;) {
        IntVec v(rank);
        for (int i = 0; i < rank; ++i) v[i] = rand_int(g, -bound, bound);
        if (!torbun::is_zero(v)) return torbun::primitive(v);
    }
}

// Random strongly convex cone: rejection-sample, falling back to rays with a
// strictly positive first coordinate (always strongly convex) to bound retries.
inline torbun::Cone random_strongly_convex_cone(std::mt19937_64& g, int rank, int max_rays,
                                                int bound) {
    std::uniform_int_distribution<int> nd(0, max_rays);
    for (int attempt = 0; attempt < 12; ++attempt) {
        int n = nd(g);
        std::vector<IntVec> rays;
        for (int i = 0; i < n; ++i) rays.push_back(random_primitive(g, rank, bound));
        torbun::Cone c = torbun::Cone::from_rays(rank, rays);
        if (torbun::is_strongly_convex(c)) return c;
    }
    int n = std::max(1, nd(g));
    std::vector<IntVec> rays;
    for (int i = 0; i < n; ++i) {
        IntVec v = random_primitive(g, rank, bound);
        if (v[0] <= 0) v[0] = 1 + boost::multiprecision::abs(v[0]);
        rays.push_back(torbun::primitive(v));
    }
    return torbun::Cone::from_rays(rank, rays);
}

}  // namespace oracle
