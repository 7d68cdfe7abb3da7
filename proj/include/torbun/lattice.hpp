#pragma once

// Exact integer linear algebra over the cocharacter lattice N: Smith normal
// form with unimodular transforms, saturated sublattices, and the canonical
// complements that split N and define the chart projections.

#include "torbun/numeric.hpp"

#include <algorithm>

namespace torbun {

struct SnfResult {
    IntMat u;  // rows x rows, unimodular
    IntMat d;  // rows x cols, diagonal, nonnegative, d_i | d_{i+1}
    IntMat v;  // cols x cols, unimodular

    // Number of nonzero invariant factors.
    int rank() const {
        int r = 0;
        int m = std::min(d.rows(), d.cols());
        for (int i = 0; i < m; ++i)
            if (d(i, i) != 0) ++r;
        return r;
    }
};

namespace detail {

inline void swap_rows(IntMat& a, int i, int j) {
    for (int c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}
inline void swap_cols(IntMat& a, int i, int j) {
    for (int r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}
inline void add_row(IntMat& a, int dst, int src, const Int& f) {
    for (int c = 0; c < a.cols(); ++c) a(dst, c) += f * a(src, c);
}
inline void add_col(IntMat& a, int dst, int src, const Int& f) {
    for (int r = 0; r < a.rows(); ++r) a(r, dst) += f * a(r, src);
}
inline void negate_row(IntMat& a, int i) {
    for (int c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
}

// Smallest nonzero |entry| in the lower-right block starting at (t,t);
// row-major scan breaks ties, so the result is deterministic.
inline bool find_pivot(const IntMat& d, int t, int& pi, int& pj) {
    bool found = false;
    Int best = 0;
    for (int i = t; i < d.rows(); ++i)
        for (int j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            Int a = boost::multiprecision::abs(d(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

// Row-style Hermite normal form of a full-row-rank matrix; canonical for the
// lattice spanned by the rows, used to normalize basis output.
inline IntMat row_hnf(IntMat h) {
    int r = 0;
    for (int c = 0; c < h.cols() && r < h.rows(); ++c) {
        for (;;) {
            int p = -1;
            Int best = 0;
            for (int i = r; i < h.rows(); ++i) {
                if (h(i, c) == 0) continue;
                Int a = boost::multiprecision::abs(h(i, c));
                if (p < 0 || a < best) {
                    p = i;
                    best = a;
                }
            }
            if (p < 0) break;
            if (p != r) swap_rows(h, r, p);
            bool done = true;
            for (int i = r + 1; i < h.rows(); ++i) {
                if (h(i, c) == 0) continue;
                Int q = h(i, c) / h(r, c);
                add_row(h, i, r, -q);
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) negate_row(h, r);
        for (int i = 0; i < r; ++i) {
            // floor division keeps entries above the pivot in [0, pivot)
            Int q = h(i, c) / h(r, c);
            if (h(i, c) - q * h(r, c) < 0) q -= 1;
            if (q != 0) add_row(h, i, r, -q);
        }
        ++r;
    }
    return h;
}

}  // namespace detail

// u*a*v = d with u, v unimodular and d in Smith normal form.
inline SnfResult snf(const IntMat& a) {
    if (a.rows() == 0 || a.cols() == 0) throw Error("snf: empty matrix");
    const int m = a.rows(), n = a.cols();
    SnfResult res{IntMat::identity(m), a, IntMat::identity(n)};
    IntMat& u = res.u;
    IntMat& d = res.d;
    IntMat& v = res.v;

    const int steps = std::min(m, n);
    for (int t = 0; t < steps; ++t) {
        for (;;) {
            int pi, pj;
            if (!detail::find_pivot(d, t, pi, pj)) break;  // block is zero
            if (pi != t) {
                detail::swap_rows(d, t, pi);
                detail::swap_rows(u, t, pi);
            }
            if (pj != t) {
                detail::swap_cols(d, t, pj);
                detail::swap_cols(v, t, pj);
            }
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                Int q = d(i, t) / d(t, t);
                if (q != 0) {
                    detail::add_row(d, i, t, -q);
                    detail::add_row(u, i, t, -q);
                }
                if (d(i, t) != 0) clean = false;  // remainder left, next pass shrinks pivot
            }
            for (int j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                Int q = d(t, j) / d(t, t);
                if (q != 0) {
                    detail::add_col(d, j, t, -q);
                    detail::add_col(v, j, t, -q);
                }
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Pivot divides its row and column; enforce divisibility of the
            // remaining block by folding a bad row into row t.
            int bi = -1;
            for (int i = t + 1; i < m && bi < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bi = i;
                        break;
                    }
            if (bi < 0) break;
            detail::add_row(d, t, bi, 1);
            detail::add_row(u, t, bi, 1);
        }
        if (t < steps && d(t, t) < 0) {
            detail::negate_row(d, t);
            detail::negate_row(u, t);
        }
    }
    return res;
}

// Exact inverse of a unimodular integer matrix.
inline IntMat int_inverse(const IntMat& a) {
    auto inv = inverse(to_rational(a));
    if (!inv) throw Error("int_inverse: matrix is singular");
    return to_integer(*inv);  // throws if non-integral, i.e. not unimodular
}

struct Sublattice {
    int ambient_rank = 0;
    IntMat basis;  // rows are the basis vectors; 0 x ambient_rank when trivial

    Sublattice() = default;
    Sublattice(int rank, IntMat b) : ambient_rank(rank), basis(std::move(b)) {
        if (basis.cols() != ambient_rank)
            throw Error("Sublattice: basis width does not match ambient rank");
    }

    int rank() const { return basis.rows(); }

    static Sublattice zero(int ambient) { return Sublattice(ambient, IntMat(0, ambient)); }
    static Sublattice full(int ambient) {
        return Sublattice(ambient, IntMat::identity(ambient));
    }
};

inline bool is_saturated(const Sublattice& s) {
    if (s.rank() == 0) return true;
    SnfResult f = snf(s.basis);
    if (f.rank() != s.rank()) throw Error("sublattice basis is linearly dependent");
    for (int i = 0; i < s.rank(); ++i)
        if (f.d(i, i) != 1) return false;
    return true;
}

// Saturation: all ambient lattice points inside the rational span. The first
// rows of v^{-1} span it; Hermite normalization makes the basis canonical for
// the lattice, so saturate is idempotent on representations too.
inline Sublattice saturate(const Sublattice& s) {
    if (s.rank() == 0) return s;
    SnfResult f = snf(s.basis);
    if (f.rank() != s.rank()) throw Error("saturate: basis is linearly dependent");
    IntMat vinv = int_inverse(f.v);
    IntMat b(s.rank(), s.ambient_rank);
    for (int i = 0; i < s.rank(); ++i) b.set_row(i, vinv.row(i));
    return Sublattice(s.ambient_rank, detail::row_hnf(b));
}

// Canonical direct-sum complement of a saturated sublattice: the trailing
// rows of v^{-1} from the SNF of the basis.
inline Sublattice complement(const Sublattice& s) {
    if (s.rank() == 0) return Sublattice::full(s.ambient_rank);
    if (!is_saturated(s)) throw Error("complement: sublattice is not saturated");
    SnfResult f = snf(s.basis);
    IntMat vinv = int_inverse(f.v);
    int k = s.rank();
    IntMat b(s.ambient_rank - k, s.ambient_rank);
    for (int i = k; i < s.ambient_rank; ++i) b.set_row(i - k, vinv.row(i));
    return Sublattice(s.ambient_rank, b);
}

// Basis (as rows) of the saturated lattice {x : a * x = 0}.
inline IntMat int_kernel(const IntMat& a) {
    if (a.rows() == 0) return IntMat::identity(a.cols());
    SnfResult f = snf(a);
    int r = f.rank();
    IntMat k(a.cols() - r, a.cols());
    for (int j = r; j < a.cols(); ++j)
        for (int i = 0; i < a.cols(); ++i) k(j - r, i) = f.v(i, j);
    return k;
}

// Integer coordinates of v in the given row basis, if they exist.
inline std::optional<IntVec> coordinates_in(const Sublattice& s, const IntVec& v) {
    if (static_cast<int>(v.size()) != s.ambient_rank)
        throw Error("coordinates_in: dimension mismatch");
    // Solve x * basis = v over Q, then demand integrality.
    RatMat bt = to_rational(s.basis.transposed());
    RatVec rhs(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) rhs[i] = Rat(v[i]);
    auto sol = solve_affine(bt, rhs);
    if (!sol) return std::nullopt;
    if (!sol->nullspace.empty())
        throw Error("coordinates_in: basis is linearly dependent");
    IntVec x(sol->particular.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Rat& q = sol->particular[i];
        if (boost::multiprecision::denominator(q) != 1) return std::nullopt;
        x[i] = boost::multiprecision::numerator(q);
    }
    return x;
}

}  // namespace torbun
