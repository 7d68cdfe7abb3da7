#pragma once

// Classification machinery on top of admissible collections: the gauge
// action, canonical forms and equivalence testing, trivialization over a
// single chart, the product splitting of an affine chart, reduction of
// triangular collections to the diagonal torus, and enumeration of rank-one
// collections with bounded weights.

#include "torbun/collection.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torbun {

// ---------------------------------------------------------------- gauges --

struct GaugeWitness {
    std::map<int, RatMat> g;  // maximal cone index -> constant group element
};

inline GaugeWitness identity_gauge(const AdmissibleCollection& c) {
    GaugeWitness w;
    for (int s : c.fan.maximal) w.g.emplace(s, RatMat::identity(c.group.n));
    return w;
}

// rho_sigma -> g_sigma^{-1} rho_sigma g_sigma,
// P(tau,sigma) -> g_tau^{-1} P(tau,sigma) g_sigma.
inline AdmissibleCollection apply_gauge(const AdmissibleCollection& c, const GaugeWitness& w) {
    for (int s : c.fan.maximal) {
        auto it = w.g.find(s);
        if (it == w.g.end())
            throw Error("apply_gauge: no gauge at cone " + std::to_string(s));
        if (!group_member(it->second, c.group))
            throw Error("apply_gauge: gauge at cone " + std::to_string(s) +
                        " is not a group element");
    }
    std::map<int, TorusHom> rho;
    std::map<std::pair<int, int>, RatMat> p;
    for (int s : c.fan.maximal) {
        const TorusHom& h = c.rho_at(s);
        rho.emplace(s, TorusHom(inverse_or_throw(w.g.at(s)) * h.base_change, h.weights));
    }
    for (int t : c.fan.maximal)
        for (int s : c.fan.maximal)
            p.emplace(std::make_pair(t, s),
                      inverse_or_throw(w.g.at(t)) * c.p_at(t, s) * w.g.at(s));
    return AdmissibleCollection(c.fan, c.group, std::move(rho), std::move(p));
}

// ------------------------------------------------------- canonical forms --

// Two torus homomorphisms are equal as functions iff they share the weight
// multiset and, for each weight, the span of the columns carrying it. The
// canonical form sorts the weights and replaces every equal-weight block of
// columns by the reduced echelon basis of its span.
inline TorusHom canonical_hom(const TorusHom& h) {
    const int n = h.n;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return lex_less(h.weights[a], h.weights[b]); });
    std::vector<IntVec> w;
    RatMat a(n, n);
    for (int j = 0; j < n; ++j) {
        w.push_back(h.weights[idx[j]]);
        for (int i = 0; i < n; ++i) a(i, j) = h.base_change(i, idx[j]);
    }
    int b = 0;
    while (b < n) {
        int e = b;
        while (e < n && w[e] == w[b]) ++e;
        RatMat block(e - b, n);  // the block's columns, written as rows
        for (int j = b; j < e; ++j)
            for (int i = 0; i < n; ++i) block(j - b, i) = a(i, j);
        rref(block);
        for (int j = b; j < e; ++j)
            for (int i = 0; i < n; ++i) a(i, j) = block(j - b, i);
        b = e;
    }
    return TorusHom(std::move(a), std::move(w));
}

inline bool hom_equal(const TorusHom& x, const TorusHom& y) {
    if (x.n != y.n || x.torus_rank != y.torus_rank) return false;
    TorusHom cx = canonical_hom(x), cy = canonical_hom(y);
    return cx.weights == cy.weights && cx.base_change == cy.base_change;
}

inline bool fans_equal(const Fan& a, const Fan& b) {
    if (a.rank != b.rank || a.cones.size() != b.cones.size()) return false;
    for (std::size_t i = 0; i < a.cones.size(); ++i)
        if (!(a.cones[i] == b.cones[i])) return false;
    return a.maximal == b.maximal;
}

// Exact equality of collections (rho compared as functions, P entrywise).
inline bool collections_equal(const AdmissibleCollection& a, const AdmissibleCollection& b) {
    if (!fans_equal(a.fan, b.fan)) return false;
    if (!(a.group == b.group)) return false;
    for (int s : a.fan.maximal)
        if (!hom_equal(a.rho_at(s), b.rho_at(s))) return false;
    for (int t : a.fan.maximal)
        for (int s : a.fan.maximal)
            if (!(a.p_at(t, s) == b.p_at(t, s))) return false;
    return true;
}

// Per-cone weight multisets; invariant under the gauge action.
inline std::map<int, std::vector<IntVec>> weight_invariants(const AdmissibleCollection& c) {
    std::map<int, std::vector<IntVec>> out;
    for (int s : c.fan.maximal) {
        std::vector<IntVec> w = c.rho_at(s).weights;
        std::sort(w.begin(), w.end(), LexLess{});
        out.emplace(s, std::move(w));
    }
    return out;
}

// ------------------------------------------------------------ equivalence --

enum class EquivStatus { Equivalent, NotEquivalent, NoWitnessInFamily };

struct EquivResult {
    EquivStatus status = EquivStatus::NoWitnessInFamily;
    std::optional<GaugeWitness> witness;
    std::string detail;
};

namespace detail {

// Coefficient row of the entry (l*g*r)(i,j), linear in the n*n unknowns g(k,m).
inline RatVec bilinear_row(const RatMat& l, const RatMat& r, int i, int j) {
    const int n = l.rows();
    RatVec row(static_cast<std::size_t>(n) * n, Rat(0));
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) row[static_cast<std::size_t>(k) * n + m] = l(i, k) * r(m, j);
    return row;
}

inline RatMat vec_to_mat(const RatVec& v, int n) {
    RatMat g(n, n);
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) g(k, m) = v[static_cast<std::size_t>(k) * n + m];
    return g;
}

inline RatMat stack_rows(const std::vector<RatVec>& rows, int cols) {
    RatMat a(static_cast<int>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j) a(static_cast<int>(i), j) = rows[i][j];
    return a;
}

// Smallest point of the grid {0..n}^k whose affine combination is invertible.
// det has degree <= n in each grid coordinate, so vanishing on the whole grid
// means the family contains no invertible element at all.
inline std::optional<RatMat> invertible_in_family(const AffineSolution& sol, int n) {
    const std::size_t k = sol.nullspace.size();
    std::vector<int> t(k, 0);
    for (;;) {
        RatVec v = sol.particular;
        for (std::size_t i = 0; i < k; ++i)
            if (t[i] != 0)
                for (std::size_t j = 0; j < v.size(); ++j) v[j] += Rat(t[i]) * sol.nullspace[i][j];
        RatMat g = vec_to_mat(v, n);
        if (det(g) != 0) return g;
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && t[pos] == n) t[pos--] = 0;
        if (pos < 0) return std::nullopt;
        ++t[pos];
    }
}

// Shape constraints on l*g*r for membership in the tagged group; unipotent
// diagonals are pinned to 1.
inline void pattern_rows(const GroupTag& g, const RatMat& l, const RatMat& r,
                         std::vector<RatVec>& rows, RatVec& rhs) {
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            bool zero = false;
            if (g.kind == GroupKind::DiagonalTorus) zero = (i != j);
            if (g.kind == GroupKind::UpperTriangular || g.kind == GroupKind::Unipotent)
                zero = (i > j);
            if (zero) {
                rows.push_back(bilinear_row(l, r, i, j));
                rhs.push_back(Rat(0));
            } else if (g.kind == GroupKind::Unipotent && i == j) {
                rows.push_back(bilinear_row(l, r, i, j));
                rhs.push_back(Rat(1));
            }
        }
}

}  // namespace detail

// Decide whether c2 = gauge(c1). A witness, if any, is determined by its
// value g at the base cone: the cocycle conditions force
// g_sigma = P1(sigma, base) * g * P2(sigma, base)^{-1}, and the remaining
// requirements are linear in g apart from invertibility, which is settled by
// a finite determinant grid.
inline EquivResult equivalent(const AdmissibleCollection& c1, const AdmissibleCollection& c2,
                              std::optional<int> base_cone = std::nullopt) {
    if (!fans_equal(c1.fan, c2.fan))
        throw Error("equivalent: collections live on different fans");
    if (!(c1.group == c2.group))
        throw Error("equivalent: collections have different structure groups");
    if (!validate(c1).ok || !validate(c2).ok)
        throw Error("equivalent: inputs must be admissible");
    const int s0 = base_cone.value_or(c1.fan.maximal.front());
    if (std::find(c1.fan.maximal.begin(), c1.fan.maximal.end(), s0) == c1.fan.maximal.end())
        throw Error("equivalent: base cone " + std::to_string(s0) + " is not maximal");

    if (collections_equal(c1, c2)) {
        EquivResult r;
        r.status = EquivStatus::Equivalent;
        r.witness = identity_gauge(c1);
        return r;
    }
    if (weight_invariants(c1) != weight_invariants(c2)) {
        EquivResult r;
        r.status = EquivStatus::NotEquivalent;
        r.detail = "per-cone weight multisets differ";
        return r;
    }

    const int n = c1.group.n;
    std::vector<RatVec> rows;
    RatVec rhs;
    for (int s : c1.fan.maximal) {
        RatMat cm = c1.p_at(s, s0);
        RatMat em = inverse_or_throw(c2.p_at(s, s0));
        // A_s^{-1} g_s A2_s intertwines the characters: zero wherever the
        // weights disagree.
        RatMat l = inverse_or_throw(c1.rho_at(s).base_change) * cm;
        RatMat r = em * c2.rho_at(s).base_change;
        const auto& u1 = c1.rho_at(s).weights;
        const auto& u2 = c2.rho_at(s).weights;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (u1[i] != u2[j]) {
                    rows.push_back(detail::bilinear_row(l, r, i, j));
                    rhs.push_back(Rat(0));
                }
        detail::pattern_rows(c1.group, cm, em, rows, rhs);
    }
    auto sol = solve_affine(detail::stack_rows(rows, n * n), rhs);
    if (!sol) {
        EquivResult r;
        r.detail = "gauge constraints are inconsistent";
        return r;
    }
    auto g = detail::invertible_in_family(*sol, n);
    if (!g) {
        EquivResult r;
        r.detail = "no invertible gauge in the constraint family";
        return r;
    }

    GaugeWitness w;
    for (int s : c1.fan.maximal)
        w.g.emplace(s, c1.p_at(s, s0) * *g * inverse_or_throw(c2.p_at(s, s0)));
    bool verified = false;
    try {
        verified = collections_equal(apply_gauge(c1, w), c2);
    } catch (const Error&) {
        verified = false;
    }
    if (!verified) throw InternalError("equivalent: witness failed verification");
    EquivResult r;
    r.status = EquivStatus::Equivalent;
    r.witness = std::move(w);
    return r;
}

// -------------------------------------------------- affine trivialization --

struct ProductStructure {
    TorusHom rho;
    RatMat base_gauge;  // gauge reaching the product presentation
};

inline ProductStructure trivialize_affine(const AdmissibleCollection& c) {
    if (c.fan.maximal.size() != 1)
        throw Error("fan is not affine (|Ξ*| = " + std::to_string(c.fan.maximal.size()) +
                    ")");
    if (!validate(c).ok) throw Error("trivialize_affine: collection does not validate");
    return ProductStructure{c.rho_at(c.fan.maximal.front()), RatMat::identity(c.group.n)};
}

// Rebuild the collection a product structure describes (P == identity).
inline AdmissibleCollection collection_from_product(const Fan& f, const GroupTag& g,
                                                    const ProductStructure& ps) {
    std::map<int, TorusHom> rho;
    std::map<std::pair<int, int>, RatMat> p;
    for (int s : f.maximal) rho.emplace(s, ps.rho);
    for (int t : f.maximal)
        for (int s : f.maximal) p.emplace(std::make_pair(t, s), RatMat::identity(g.n));
    return AdmissibleCollection(f, g, std::move(rho), std::move(p));
}

// The equivariant frame A * diag(chi^{u_1}, ..., chi^{u_n}) of a product
// structure; satisfies s(t*x) = rho(t) * s(x).
inline LaurentMatrix induced_section(const TorusHom& h) {
    LaurentMatrix s(h.n, h.torus_rank);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j)
            if (h.base_change(i, j) != 0)
                s.at(i, j) = LaurentPoly::character(h.weights[j], h.base_change(i, j));
    return s;
}

// ------------------------------------------------------- chart splitting --

// X_sigma = Y x (torus of rank orbit_rank), where Y is the toric variety of
// sigma inside its own span. `basis` stacks a basis of N_sigma over a basis
// of the complement N'; it is unimodular, and its inverse transports weights.
struct ToricSplit {
    Fan y_fan;
    int orbit_rank = 0;
    Sublattice n_sigma = Sublattice::zero(0);
    Sublattice n_prime = Sublattice::zero(0);
    IntMat basis;
    IntMat basis_inv;
};

inline ToricSplit split_affine_toric(const Fan& f) {
    if (f.maximal.size() != 1)
        throw Error("fan is not affine (|Ξ*| = " + std::to_string(f.maximal.size()) + ")");
    if (!validate_fan(f).ok) throw Error("split_affine_toric: fan is not valid");
    const int smax = f.maximal.front();
    ConeSplit cs = cone_split(f, smax);
    const Cone& sigma = f.cones[static_cast<std::size_t>(smax)];
    const int k = cs.n_sigma.rank();

    ToricSplit out;
    out.orbit_rank = f.rank - k;
    out.n_sigma = cs.n_sigma;
    out.n_prime = cs.n_prime;
    out.y_fan.rank = k;
    for (const Cone& face : faces(sigma)) {
        std::vector<IntVec> rr;
        for (const IntVec& r : face.rays()) {
            auto co = coordinates_in(cs.n_sigma, r);
            if (!co) throw InternalError("split_affine_toric: ray escapes the stabilizer span");
            rr.push_back(*co);
        }
        out.y_fan.cones.push_back(Cone::from_rays(k, rr));
        if (face == sigma)
            out.y_fan.maximal = {static_cast<int>(out.y_fan.cones.size()) - 1};
    }

    out.basis = IntMat(f.rank, f.rank);
    for (int i = 0; i < k; ++i) out.basis.set_row(i, cs.n_sigma.basis.row(i));
    for (int i = 0; i < f.rank - k; ++i) out.basis.set_row(k + i, cs.n_prime.basis.row(i));
    out.basis_inv = int_inverse(out.basis);
    return out;
}

// Restrict a single-chart collection to the Y factor: weights pair with the
// stabilizer basis, the base change is untouched.
inline AdmissibleCollection restrict_collection(const AdmissibleCollection& c,
                                                const ToricSplit& sp) {
    if (c.fan.maximal.size() != 1)
        throw Error("fan is not affine (|Ξ*| = " + std::to_string(c.fan.maximal.size()) +
                    ")");
    const int k = sp.n_sigma.rank();
    const TorusHom& h = c.rho_at(c.fan.maximal.front());
    std::vector<IntVec> w;
    for (const IntVec& u : h.weights) {
        IntVec v(static_cast<std::size_t>(k), Int(0));
        for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = dot(u, sp.n_sigma.basis.row(i));
        w.push_back(std::move(v));
    }
    const int ymax = sp.y_fan.maximal.front();
    std::map<int, TorusHom> rho;
    rho.emplace(ymax, TorusHom(h.base_change, std::move(w)));
    std::map<std::pair<int, int>, RatMat> p;
    p.emplace(std::make_pair(ymax, ymax), RatMat::identity(c.group.n));
    return AdmissibleCollection(sp.y_fan, c.group, std::move(rho), std::move(p));
}

// Extend a weight on the Y factor by zero on the torus factor: the unique
// preimage under restriction that kills N'.
inline TorusHom extend_hom(const TorusHom& h, const ToricSplit& sp) {
    const int k = sp.n_sigma.rank();
    const int amb = sp.basis.rows();
    if (h.torus_rank != k) throw Error("extend_hom: weight length differs from the Y factor");
    std::vector<IntVec> w;
    for (const IntVec& u : h.weights) {
        IntVec v(static_cast<std::size_t>(amb), Int(0));
        for (int j = 0; j < amb; ++j) {
            Int acc(0);
            for (int i = 0; i < k; ++i) acc += u[static_cast<std::size_t>(i)] * sp.basis_inv(j, i);
            v[static_cast<std::size_t>(j)] = acc;
        }
        w.push_back(std::move(v));
    }
    return TorusHom(h.base_change, std::move(w));
}

inline ProductStructure extend_section(const ProductStructure& ps, const ToricSplit& sp) {
    return ProductStructure{extend_hom(ps.rho, sp), ps.base_gauge};
}

// --------------------------------------------------------- torus reduction --

struct TorusReduction {
    GaugeWitness witness;
    AdmissibleCollection reduced;  // DiagonalTorus-tagged
};

namespace detail {

inline std::vector<std::vector<IntVec>> weight_orderings(std::vector<IntVec> w) {
    std::sort(w.begin(), w.end(), LexLess{});
    std::vector<std::vector<IntVec>> out;
    do out.push_back(w);
    while (std::next_permutation(w.begin(), w.end(), LexLess{}));
    return out;
}

inline AdmissibleCollection retag_diagonal(const AdmissibleCollection& c) {
    return AdmissibleCollection(c.fan, GroupTag{GroupKind::DiagonalTorus, c.group.n}, c.rho, c.p);
}

}  // namespace detail

// Search for a gauge moving a triangular collection into the diagonal torus.
// Witnesses with diagonally reduced image can be normalized so that the
// reduced transitions are trivial; such a witness is again determined by its
// base-cone value, with the target diagonal order per cone the only choice
// left, so exhausting orders and determinant grids is conclusive for the
// reduced family.
inline std::optional<TorusReduction> reduce_to_torus(const AdmissibleCollection& c,
                                                     std::optional<int> base_cone = std::nullopt) {
    if (c.group.kind != GroupKind::UpperTriangular && c.group.kind != GroupKind::Unipotent)
        throw Error("reduce_to_torus: structure group is not triangular");
    if (!validate(c).ok) throw Error("reduce_to_torus: input must be admissible");
    const int n = c.group.n;
    const GroupTag diag{GroupKind::DiagonalTorus, n};

    bool already = true;
    for (int s : c.fan.maximal)
        if (!hom_in_group(c.rho_at(s), diag)) already = false;
    for (int t : c.fan.maximal)
        for (int s : c.fan.maximal)
            if (!group_member(c.p_at(t, s), diag)) already = false;
    if (already) return TorusReduction{identity_gauge(c), detail::retag_diagonal(c)};

    const int s0 = base_cone.value_or(c.fan.maximal.front());
    if (std::find(c.fan.maximal.begin(), c.fan.maximal.end(), s0) == c.fan.maximal.end())
        throw Error("reduce_to_torus: base cone " + std::to_string(s0) + " is not maximal");

    std::vector<int> cones = c.fan.maximal;
    std::vector<std::vector<std::vector<IntVec>>> orders;
    for (int s : cones) orders.push_back(detail::weight_orderings(c.rho_at(s).weights));

    std::vector<std::size_t> pick(cones.size(), 0);
    for (;;) {
        std::vector<RatVec> rows;
        RatVec rhs;
        RatMat id = RatMat::identity(n);
        for (std::size_t ci = 0; ci < cones.size(); ++ci) {
            const int s = cones[ci];
            const auto& target = orders[ci][pick[ci]];
            RatMat cm = c.p_at(s, s0);
            RatMat l = inverse_or_throw(c.rho_at(s).base_change) * cm;
            const auto& u = c.rho_at(s).weights;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (u[i] != target[j]) {
                        rows.push_back(detail::bilinear_row(l, id, i, j));
                        rhs.push_back(Rat(0));
                    }
            detail::pattern_rows(c.group, cm, id, rows, rhs);
        }
        auto sol = solve_affine(detail::stack_rows(rows, n * n), rhs);
        if (sol) {
            if (auto g = detail::invertible_in_family(*sol, n)) {
                GaugeWitness w;
                for (int s : cones) w.g.emplace(s, c.p_at(s, s0) * *g);
                std::optional<AdmissibleCollection> reduced;
                try {
                    reduced = detail::retag_diagonal(apply_gauge(c, w));
                } catch (const Error&) {
                }
                if (!reduced) throw InternalError("reduce_to_torus: witness failed verification");
                return TorusReduction{std::move(w), std::move(*reduced)};
            }
        }
        std::size_t pos = pick.size();
        while (pos > 0 && pick[pos - 1] + 1 == orders[pos - 1].size()) pick[--pos] = 0;
        if (pos == 0) return std::nullopt;
        ++pick[pos - 1];
    }
}

// ------------------------------------------------------ unipotent bundles --

struct UnipotentTrivialization {
    bool trivial = true;
    GaugeWitness witness;
};

// A valid unipotent collection has rho == id (the diagonal characters sum to
// the constant n), and g_sigma = P(sigma, base) telescopes every transition
// to the identity. Failure of that verification cannot come from the input.
inline UnipotentTrivialization check_unipotent_trivial(const AdmissibleCollection& c,
                                                       std::optional<int> base_cone = std::nullopt) {
    if (c.group.kind != GroupKind::Unipotent)
        throw Error("check_unipotent_trivial: structure group is not unipotent");
    if (!validate(c).ok) throw Error("check_unipotent_trivial: input must be admissible");
    const int s0 = base_cone.value_or(c.fan.maximal.front());
    if (std::find(c.fan.maximal.begin(), c.fan.maximal.end(), s0) == c.fan.maximal.end())
        throw Error("check_unipotent_trivial: base cone " + std::to_string(s0) +
                    " is not maximal");
    GaugeWitness w;
    for (int s : c.fan.maximal) w.g.emplace(s, c.p_at(s, s0));
    bool ok = false;
    try {
        ok = collections_equal(apply_gauge(c, w), trivial_collection(c.fan, c.group));
    } catch (const Error&) {
    }
    if (!ok) throw InternalError("check_unipotent_trivial: telescoping gauge failed");
    return UnipotentTrivialization{true, std::move(w)};
}

// ------------------------------------------------------------ enumeration --

// All equivalence classes of GL(1) collections whose weights have entries in
// [-bound, bound]: every class contains exactly one representative with
// P == 1, and those are cut out by conditions (1) and (2) on the weights.
inline std::vector<AdmissibleCollection> enumerate_gl1(const Fan& f, int bound) {
    if (bound < 0) throw Error("enumerate_gl1: bound must be nonnegative");
    if (!validate_fan(f).ok) throw Error("enumerate_gl1: fan is not valid");
    const int d = f.rank;
    std::vector<int> cones = f.maximal;
    std::sort(cones.begin(), cones.end());

    std::vector<std::vector<IntVec>> cands(cones.size());
    for (std::size_t ci = 0; ci < cones.size(); ++ci) {
        Sublattice nprime = cone_split(f, cones[ci]).n_prime;
        IntVec m(static_cast<std::size_t>(d), Int(-bound));
        for (;;) {
            bool ok = true;
            for (int i = 0; i < nprime.rank() && ok; ++i)
                if (dot(m, nprime.basis.row(i)) != 0) ok = false;
            if (ok) cands[ci].push_back(m);
            int pos = d - 1;
            while (pos >= 0 && m[static_cast<std::size_t>(pos)] == bound)
                m[static_cast<std::size_t>(pos--)] = -bound;
            if (pos < 0) break;
            m[static_cast<std::size_t>(pos)] += 1;
        }
    }

    std::vector<std::vector<std::vector<IntVec>>> overlap_rays(cones.size());
    for (std::size_t i = 0; i < cones.size(); ++i) {
        overlap_rays[i].resize(i);
        for (std::size_t j = 0; j < i; ++j)
            overlap_rays[i][j] =
                intersect(f.cones[static_cast<std::size_t>(cones[i])],
                          f.cones[static_cast<std::size_t>(cones[j])])
                    .rays();
    }

    std::vector<AdmissibleCollection> out;
    std::vector<IntVec> chosen;
    auto emit = [&]() {
        std::map<int, TorusHom> rho;
        std::map<std::pair<int, int>, RatMat> p;
        for (std::size_t i = 0; i < cones.size(); ++i)
            rho.emplace(cones[i], TorusHom(RatMat::identity(1), {chosen[i]}));
        for (int t : cones)
            for (int s : cones) p.emplace(std::make_pair(t, s), RatMat::identity(1));
        out.emplace_back(f, GroupTag{GroupKind::GeneralLinear, 1}, std::move(rho), std::move(p));
    };
    auto step = [&](auto&& self, std::size_t i) -> void {
        if (i == cones.size()) {
            emit();
            return;
        }
        for (const IntVec& m : cands[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                IntVec diff = add(m, negated(chosen[j]));
                for (const IntVec& r : overlap_rays[i][j])
                    if (dot(diff, r) != 0) {
                        ok = false;
                        break;
                    }
            }
            if (!ok) continue;
            chosen.push_back(m);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    step(step, 0);
    return out;
}

}  // namespace torbun
