#pragma once

// Character algebra over the dual lattice M: Laurent polynomials with exact
// rational coefficients, matrices of them, torus homomorphisms into GL(n) in
// diagonalized form, and regularity / unit / group-membership predicates on
// toric charts.

#include "torbun/fan.hpp"
#include "torbun/numeric.hpp"

#include <map>
#include <string>
#include <vector>

namespace torbun {

// Finite QQ-linear combination of characters chi^u; `dim` is the exponent
// length, fixed per value so map keys stay comparable.
struct LaurentPoly {
    int dim = 0;
    std::map<IntVec, Rat, LexLess> terms;  // exponent -> nonzero coefficient

    LaurentPoly() = default;
    explicit LaurentPoly(int d) : dim(d) {
        if (d < 0) throw Error("LaurentPoly: negative dimension");
    }

    static LaurentPoly constant(int d, const Rat& c) {
        LaurentPoly p(d);
        if (c != 0) p.terms.emplace(IntVec(d, Int(0)), c);
        return p;
    }
    static LaurentPoly character(const IntVec& u, const Rat& c = Rat(1)) {
        LaurentPoly p(static_cast<int>(u.size()));
        if (c != 0) p.terms.emplace(u, c);
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && torbun::is_zero(terms.begin()->first));
    }
    bool is_one() const {
        return terms.size() == 1 && torbun::is_zero(terms.begin()->first) &&
               terms.begin()->second == 1;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.dim == b.dim && a.terms == b.terms;
    }
};

inline void add_term(LaurentPoly& p, const IntVec& u, const Rat& c) {
    if (static_cast<int>(u.size()) != p.dim) throw Error("add_term: exponent length mismatch");
    if (c == 0) return;
    auto it = p.terms.find(u);
    if (it == p.terms.end()) {
        p.terms.emplace(u, c);
    } else {
        it->second += c;
        if (it->second == 0) p.terms.erase(it);
    }
}

inline LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.dim != b.dim) throw Error("LaurentPoly +: dimension mismatch");
    LaurentPoly r = a;
    for (const auto& [u, c] : b.terms) add_term(r, u, c);
    return r;
}

inline LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r(a.dim);
    for (const auto& [u, c] : a.terms) r.terms.emplace(u, -c);
    return r;
}

inline LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.dim != b.dim) throw Error("LaurentPoly *: dimension mismatch");
    LaurentPoly r(a.dim);
    for (const auto& [u, cu] : a.terms)
        for (const auto& [v, cv] : b.terms) add_term(r, add(u, v), cu * cv);
    return r;
}

inline LaurentPoly operator*(const Rat& c, const LaurentPoly& a) {
    LaurentPoly r(a.dim);
    if (c != 0)
        for (const auto& [u, cu] : a.terms) r.terms.emplace(u, c * cu);
    return r;
}

inline std::string to_string(const LaurentPoly& p) {
    if (p.terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [u, c] : p.terms) {
        if (!first) s += " + ";
        first = false;
        s += to_string(c) + "*x^" + to_string(u);
    }
    return s;
}

struct LaurentMatrix {
    int n = 0;
    int dim = 0;
    std::vector<LaurentPoly> entries;

    LaurentMatrix() = default;
    LaurentMatrix(int n_, int dim_) : n(n_), dim(dim_), entries(static_cast<std::size_t>(n_) * n_, LaurentPoly(dim_)) {
        if (n_ < 0) throw Error("LaurentMatrix: negative size");
    }

    static LaurentMatrix identity(int n, int dim) {
        LaurentMatrix m(n, dim);
        for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(dim, Rat(1));
        return m;
    }

    LaurentPoly& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
    const LaurentPoly& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * n + j];
    }

    friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
        return a.n == b.n && a.dim == b.dim && a.entries == b.entries;
    }
};

inline LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.n != b.n || a.dim != b.dim) throw Error("LaurentMatrix *: shape mismatch");
    LaurentMatrix r(a.n, a.dim);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            LaurentPoly s(a.dim);
            for (int k = 0; k < a.n; ++k) s = s + a.at(i, k) * b.at(k, j);
            r.at(i, j) = std::move(s);
        }
    return r;
}

// Laplace expansion along the first row; fine at the sizes we handle.
inline LaurentPoly det(const LaurentMatrix& m) {
    if (m.n == 0) return LaurentPoly::constant(m.dim, Rat(1));
    if (m.n == 1) return m.at(0, 0);
    LaurentPoly d(m.dim);
    for (int j = 0; j < m.n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        LaurentMatrix sub(m.n - 1, m.dim);
        for (int i = 1; i < m.n; ++i) {
            int jj = 0;
            for (int k = 0; k < m.n; ++k) {
                if (k == j) continue;
                sub.at(i - 1, jj++) = m.at(i, k);
            }
        }
        LaurentPoly cof = m.at(0, j) * det(sub);
        d = (j % 2 == 0) ? d + cof : d - cof;
    }
    return d;
}

// t |-> A * diag(chi^{u_1}, ..., chi^{u_n}) * A^{-1}; a homomorphism into
// GL(n) by construction.
struct TorusHom {
    int n = 0;
    int torus_rank = 0;
    RatMat base_change;
    std::vector<IntVec> weights;

    TorusHom() = default;
    TorusHom(RatMat a, std::vector<IntVec> w) : base_change(std::move(a)), weights(std::move(w)) {
        n = base_change.rows();
        if (base_change.cols() != n) throw Error("TorusHom: base change must be square");
        if (static_cast<int>(weights.size()) != n)
            throw Error("TorusHom: need one weight per row");
        if (weights.empty()) throw Error("TorusHom: empty");
        torus_rank = static_cast<int>(weights[0].size());
        for (const auto& u : weights)
            if (static_cast<int>(u.size()) != torus_rank)
                throw Error("TorusHom: weights of unequal length");
        if (!inverse(base_change)) throw Error("TorusHom: base change is singular");
    }
};

inline TorusHom trivial_hom(int n, int torus_rank) {
    return TorusHom(RatMat::identity(n), std::vector<IntVec>(n, IntVec(torus_rank, Int(0))));
}

inline TorusHom inverse_hom(const TorusHom& h) {
    std::vector<IntVec> w;
    for (const auto& u : h.weights) w.push_back(negated(u));
    return TorusHom(h.base_change, std::move(w));
}

inline LaurentMatrix hom_to_matrix(const TorusHom& h) {
    RatMat ainv = inverse_or_throw(h.base_change);
    LaurentMatrix m(h.n, h.torus_rank);
    for (int k = 0; k < h.n; ++k)
        for (int l = 0; l < h.n; ++l)
            for (int i = 0; i < h.n; ++i)
                add_term(m.at(k, l), h.weights[i], h.base_change(k, i) * ainv(i, l));
    return m;
}

inline LaurentMatrix hom_to_matrix_inverse(const TorusHom& h) {
    return hom_to_matrix(inverse_hom(h));
}

// chi^u is regular on X_omega iff u pairs nonnegatively with every ray; a
// collected polynomial is regular iff all its surviving exponents are.
inline bool regular_on(const LaurentPoly& p, const Cone& omega) {
    if (p.dim != omega.rank()) throw Error("regular_on: exponent length mismatch");
    for (const auto& [u, c] : p.terms)
        for (const auto& r : omega.rays())
            if (dot(u, r) < 0) return false;
    return true;
}

// Units of the chart coordinate ring are the single terms c*chi^u with u
// orthogonal to the cone.
inline bool unit_on(const LaurentPoly& p, const Cone& omega) {
    if (p.dim != omega.rank()) throw Error("unit_on: exponent length mismatch");
    if (p.terms.size() != 1) return false;
    const IntVec& u = p.terms.begin()->first;
    for (const auto& r : omega.rays())
        if (dot(u, r) != 0) return false;
    return true;
}

enum class GroupKind { GeneralLinear, DiagonalTorus, UpperTriangular, Unipotent };

struct GroupTag {
    GroupKind kind = GroupKind::GeneralLinear;
    int n = 1;

    friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

inline std::string to_string(GroupKind k) {
    switch (k) {
        case GroupKind::GeneralLinear: return "GL";
        case GroupKind::DiagonalTorus: return "T";
        case GroupKind::UpperTriangular: return "B";
        case GroupKind::Unipotent: return "U";
    }
    throw InternalError("to_string: unknown group kind");
}

namespace detail {

inline bool pattern_ok(const LaurentMatrix& m, const GroupTag& g) {
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            bool below = i > j, off = i != j;
            switch (g.kind) {
                case GroupKind::GeneralLinear: break;
                case GroupKind::DiagonalTorus:
                    if (off && !m.at(i, j).is_zero()) return false;
                    break;
                case GroupKind::UpperTriangular:
                    if (below && !m.at(i, j).is_zero()) return false;
                    break;
                case GroupKind::Unipotent:
                    if (below && !m.at(i, j).is_zero()) return false;
                    if (i == j && !m.at(i, j).is_one()) return false;
                    break;
            }
        }
    return true;
}

}  // namespace detail

// Membership of a Laurent matrix in G over the chart of omega: the entry
// pattern of the tag, regularity of every entry, and det a unit.
inline bool group_member(const LaurentMatrix& m, const GroupTag& g, const Cone& omega) {
    if (m.n != g.n) throw Error("group_member: size mismatch");
    if (!detail::pattern_ok(m, g)) return false;
    for (const auto& e : m.entries)
        if (!regular_on(e, omega)) return false;
    return unit_on(det(m), omega);
}

// Membership of a constant rational matrix in G.
inline bool group_member(const RatMat& m, const GroupTag& g) {
    if (m.rows() != g.n || m.cols() != g.n) throw Error("group_member: size mismatch");
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            bool below = i > j, off = i != j;
            switch (g.kind) {
                case GroupKind::GeneralLinear: break;
                case GroupKind::DiagonalTorus:
                    if (off && m(i, j) != 0) return false;
                    break;
                case GroupKind::UpperTriangular:
                    if (below && m(i, j) != 0) return false;
                    break;
                case GroupKind::Unipotent:
                    if (below && m(i, j) != 0) return false;
                    if (i == j && m(i, j) != 1) return false;
                    break;
            }
        }
    return det(m) != 0;
}

// A torus homomorphism lands in G iff its character matrix has the right
// pattern; on the dense torus every entry is regular and det is a unit.
inline bool hom_in_group(const TorusHom& h, const GroupTag& g) {
    if (h.n != g.n) throw Error("hom_in_group: size mismatch");
    return detail::pattern_ok(hom_to_matrix(h), g);
}

// Exponent embedding into a larger lattice, u placed at `offset`.
inline LaurentPoly shift_embed(const LaurentPoly& p, int offset, int total) {
    if (offset < 0 || offset + p.dim > total) throw Error("shift_embed: bad layout");
    LaurentPoly q(total);
    for (const auto& [u, c] : p.terms) {
        IntVec v(total, Int(0));
        for (int i = 0; i < p.dim; ++i) v[offset + i] = u[i];
        q.terms.emplace(std::move(v), c);
    }
    return q;
}

inline LaurentMatrix shift_embed(const LaurentMatrix& m, int offset, int total) {
    LaurentMatrix r(m.n, total);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r.at(i, j) = shift_embed(m.at(i, j), offset, total);
    return r;
}

// u |-> (u|u): the formal substitution x -> t*x (every chi^u picks up the
// same character in the fresh t variables).
inline LaurentPoly doubled(const LaurentPoly& p) {
    LaurentPoly q(2 * p.dim);
    for (const auto& [u, c] : p.terms) {
        IntVec v(2 * static_cast<std::size_t>(p.dim));
        for (int i = 0; i < p.dim; ++i) v[i] = v[p.dim + i] = u[i];
        q.terms.emplace(std::move(v), c);
    }
    return q;
}

inline LaurentMatrix doubled(const LaurentMatrix& m) {
    LaurentMatrix r(m.n, 2 * m.dim);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r.at(i, j) = doubled(m.at(i, j));
    return r;
}

// Does s(t*x) = rho_amb(t) * s(x) * rho(t)^{-1} hold identically? rho_amb is
// the diagonal action on the fiber coordinates given by action_weights.
// Checked symbolically in the doubled lattice (t-part first, x-part second).
inline bool semi_equivariant_check(const LaurentMatrix& s, const TorusHom& rho,
                                   const std::vector<IntVec>& action_weights) {
    const int n = s.n, d = s.dim;
    if (rho.n != n || static_cast<int>(action_weights.size()) != n || rho.torus_rank != d)
        throw Error("semi_equivariant_check: dimension mismatch");
    for (const auto& w : action_weights)
        if (static_cast<int>(w.size()) != d)
            throw Error("semi_equivariant_check: dimension mismatch");

    LaurentMatrix amb(n, 2 * d);
    for (int i = 0; i < n; ++i) {
        IntVec v(2 * static_cast<std::size_t>(d), Int(0));
        for (int k = 0; k < d; ++k) v[k] = action_weights[i][k];
        amb.at(i, i) = LaurentPoly::character(v);
    }
    LaurentMatrix rhs = amb * shift_embed(s, d, 2 * d) * shift_embed(hom_to_matrix_inverse(rho), 0, 2 * d);
    return doubled(s) == rhs;
}

// Same identity with a general (not necessarily diagonal) ambient action.
inline bool semi_equivariant_check(const LaurentMatrix& s, const TorusHom& rho,
                                   const TorusHom& ambient) {
    const int n = s.n, d = s.dim;
    if (rho.n != n || ambient.n != n || rho.torus_rank != d || ambient.torus_rank != d)
        throw Error("semi_equivariant_check: dimension mismatch");
    LaurentMatrix amb = shift_embed(hom_to_matrix(ambient), 0, 2 * d);
    LaurentMatrix rhs = amb * shift_embed(s, d, 2 * d) * shift_embed(hom_to_matrix_inverse(rho), 0, 2 * d);
    return doubled(s) == rhs;
}

}  // namespace torbun
