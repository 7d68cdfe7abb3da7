#pragma once

// Rational polyhedral cones and fans. Cones are stored by generators
// (V-representation, authoritative) with a cached irredundant H-representation
// computed by exact double description. Generator lists are canonical:
// primitive, lexicographically sorted, extreme rays only, with any lineality
// emitted as +/- pairs of a canonical lattice basis.

#include "torbun/lattice.hpp"
#include "torbun/numeric.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace torbun {

namespace detail {

struct DDState {
    std::vector<IntVec> lin;   // basis of the lineality space so far
    std::vector<IntVec> rays;  // extreme rays modulo lineality
};

// Keep exactly the extreme rays: tight constraints must span a space of
// dimension rank - dim(lineality) - 1.
inline void dd_prune(std::vector<IntVec>& rays, const std::vector<IntVec>& constraints,
                     int nlin, int rank) {
    int want = rank - nlin - 1;
    std::vector<IntVec> keep;
    for (const auto& r : rays) {
        std::vector<IntVec> tight;
        for (const auto& a : constraints)
            if (dot(a, r) == 0) tight.push_back(a);
        RatMat t(static_cast<int>(tight.size()), rank);
        for (std::size_t i = 0; i < tight.size(); ++i)
            for (int j = 0; j < rank; ++j) t(static_cast<int>(i), j) = Rat(tight[i][j]);
        if (torbun::rank(t) == want) keep.push_back(r);
    }
    rays = std::move(keep);
}

inline std::vector<IntVec> dd_dedupe(const std::vector<IntVec>& v) {
    std::set<IntVec, LexLess> s(v.begin(), v.end());
    return {s.begin(), s.end()};
}

}  // namespace detail

// Minimal generator list of {u : <u, g> >= 0 for every g in gens}, computed
// by double description over exact integers.
inline std::vector<IntVec> dualize(int rank, const std::vector<IntVec>& gens) {
    detail::DDState st;
    for (int i = 0; i < rank; ++i) {
        IntVec e(rank, Int(0));
        e[i] = 1;
        st.lin.push_back(e);
    }
    std::vector<IntVec> processed;
    for (const auto& raw : gens) {
        if (static_cast<int>(raw.size()) != rank) throw Error("dualize: bad generator size");
        IntVec a = primitive(raw);
        if (is_zero(a)) continue;

        int split = -1;
        for (std::size_t i = 0; i < st.lin.size(); ++i)
            if (dot(st.lin[i], a) != 0) {
                split = static_cast<int>(i);
                break;
            }
        if (split >= 0) {
            IntVec l0 = st.lin[split];
            Int d0 = dot(l0, a);
            std::vector<IntVec> nlin;
            for (std::size_t i = 0; i < st.lin.size(); ++i) {
                if (static_cast<int>(i) == split) continue;
                Int di = dot(st.lin[i], a);
                nlin.push_back(primitive(add(scaled(st.lin[i], d0), scaled(l0, -di))));
            }
            Int ad0 = boost::multiprecision::abs(d0);
            Int sgn = d0 > 0 ? 1 : -1;
            std::vector<IntVec> nrays;
            for (const auto& r : st.rays) {
                Int dr = dot(r, a);
                nrays.push_back(primitive(add(scaled(r, ad0), scaled(l0, -sgn * dr))));
            }
            nrays.push_back(d0 > 0 ? l0 : negated(l0));
            st.lin = std::move(nlin);
            st.rays = detail::dd_dedupe(nrays);
        } else {
            std::vector<IntVec> pos, neg, nrays;
            for (const auto& r : st.rays) {
                Int dr = dot(r, a);
                if (dr > 0) pos.push_back(r);
                else if (dr < 0) neg.push_back(r);
                if (dr >= 0) nrays.push_back(r);
            }
            for (const auto& rp : pos)
                for (const auto& rn : neg) {
                    IntVec w = primitive(add(scaled(rn, dot(rp, a)), scaled(rp, -dot(rn, a))));
                    if (!is_zero(w)) nrays.push_back(w);
                }
            st.rays = detail::dd_dedupe(nrays);
        }
        processed.push_back(a);
        detail::dd_prune(st.rays, processed, static_cast<int>(st.lin.size()), rank);
    }

    std::vector<IntVec> out = st.rays;
    if (!st.lin.empty()) {
        IntMat lm(static_cast<int>(st.lin.size()), rank);
        for (std::size_t i = 0; i < st.lin.size(); ++i) lm.set_row(static_cast<int>(i), st.lin[i]);
        IntMat canon = saturate(Sublattice(rank, lm)).basis;  // canonical for the span
        for (int i = 0; i < canon.rows(); ++i) {
            IntVec l = primitive(canon.row(i));
            out.push_back(l);
            out.push_back(negated(l));
        }
    }
    return detail::dd_dedupe(out);
}

class Cone {
public:
    Cone() = default;

    static Cone from_rays(int rank, const std::vector<IntVec>& gens) {
        Cone c;
        c.rank_ = rank;
        c.facets_ = dualize(rank, gens);
        c.rays_ = dualize(rank, c.facets_);
        return c;
    }

    static Cone from_facets(int rank, const std::vector<IntVec>& covectors) {
        Cone c;
        c.rank_ = rank;
        c.rays_ = dualize(rank, covectors);
        c.facets_ = dualize(rank, c.rays_);
        return c;
    }

    static Cone zero(int rank) { return from_rays(rank, {}); }

    int rank() const { return rank_; }
    const std::vector<IntVec>& rays() const { return rays_; }
    const std::vector<IntVec>& facets() const { return facets_; }
    bool is_zero_cone() const { return rays_.empty(); }

    // Representation equality; canonical generators make this reliable.
    friend bool operator==(const Cone& a, const Cone& b) {
        return a.rank_ == b.rank_ && a.rays_ == b.rays_;
    }

private:
    int rank_ = 0;
    std::vector<IntVec> rays_;
    std::vector<IntVec> facets_;
};

inline Cone dual_cone(const Cone& c) {
    // sigma^vee swaps the two descriptions.
    Cone d = Cone::from_facets(c.rank(), c.rays());
    return d;
}

inline bool contains(const Cone& c, const IntVec& v) {
    if (static_cast<int>(v.size()) != c.rank()) throw Error("contains: dimension mismatch");
    for (const auto& m : c.facets())
        if (dot(m, v) < 0) return false;
    return true;
}

inline Cone intersect(const Cone& a, const Cone& b) {
    if (a.rank() != b.rank()) throw Error("intersect: ambient ranks differ");
    std::vector<IntVec> covs = a.facets();
    covs.insert(covs.end(), b.facets().begin(), b.facets().end());
    return Cone::from_facets(a.rank(), covs);
}

inline bool is_strongly_convex(const Cone& c) {
    for (const auto& r : c.rays())
        if (contains(c, negated(r))) return false;
    return true;
}

// Point-set equality via mutual generator membership (works for non-pointed
// cones where representation equality may not).
inline bool same_cone(const Cone& a, const Cone& b) {
    for (const auto& r : a.rays())
        if (!contains(b, r)) return false;
    for (const auto& r : b.rays())
        if (!contains(a, r)) return false;
    return true;
}

// All faces of c, including c itself and (for strongly convex c) the zero
// cone. Deterministic order: sorted by canonical ray list.
inline std::vector<Cone> faces(const Cone& c) {
    struct RaysLess {
        bool operator()(const std::vector<IntVec>& a, const std::vector<IntVec>& b) const {
            if (a.size() != b.size()) return a.size() < b.size();
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] != b[i]) return lex_less(a[i], b[i]);
            }
            return false;
        }
    };
    std::map<std::vector<IntVec>, Cone, RaysLess> seen;
    std::vector<Cone> stack{c};
    while (!stack.empty()) {
        Cone cur = stack.back();
        stack.pop_back();
        if (seen.count(cur.rays())) continue;
        seen.emplace(cur.rays(), cur);
        for (const auto& m : cur.facets()) {
            std::vector<IntVec> tight;
            for (const auto& r : cur.rays())
                if (dot(m, r) == 0) tight.push_back(r);
            if (tight.size() == cur.rays().size()) continue;  // m vanishes on all of cur
            stack.push_back(Cone::from_rays(c.rank(), tight));
        }
    }
    std::vector<Cone> out;
    for (auto& [k, v] : seen) out.push_back(v);
    return out;
}

inline bool is_face(const Cone& f, const Cone& of) {
    for (const auto& fc : faces(of))
        if (fc == f) return true;
    return false;
}

struct Fan {
    int rank = 0;
    std::vector<Cone> cones;
    std::vector<int> maximal;
};

inline bool cone_subset(const Cone& a, const Cone& b) {
    if (a.is_zero_cone()) return true;
    for (const auto& r : a.rays())
        if (!contains(b, r)) return false;
    return true;
}

struct FanViolation {
    std::string kind;  // "not-strongly-convex", "duplicate-cone", "missing-face",
                       // "bad-intersection", "bad-maximal-set", "bad-index"
    std::vector<int> cones;
    std::string detail;
};

struct FanReport {
    bool ok = true;
    std::vector<FanViolation> violations;

    void flag(std::string kind, std::vector<int> idx, std::string detail) {
        ok = false;
        violations.push_back({std::move(kind), std::move(idx), std::move(detail)});
    }
};

inline FanReport validate_fan(const Fan& f) {
    FanReport rep;
    const int n = static_cast<int>(f.cones.size());
    for (int i = 0; i < n; ++i) {
        if (f.cones[i].rank() != f.rank)
            rep.flag("bad-index", {i}, "cone ambient rank differs from fan rank");
        if (!is_strongly_convex(f.cones[i]))
            rep.flag("not-strongly-convex", {i}, "cone contains a line");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (f.cones[i] == f.cones[j])
                rep.flag("duplicate-cone", {i, j}, "cones " + std::to_string(i) + " and " +
                                                       std::to_string(j) + " coincide");
    if (!rep.ok) return rep;  // face analysis assumes sane cones

    auto find = [&](const Cone& c) {
        for (int i = 0; i < n; ++i)
            if (f.cones[i] == c) return i;
        return -1;
    };
    for (int i = 0; i < n; ++i) {
        for (const auto& face : faces(f.cones[i])) {
            if (find(face) < 0)
                rep.flag("missing-face", {i},
                         "face with rays " + std::to_string(face.rays().size()) +
                             " of cone " + std::to_string(i) + " is not listed");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Cone w = intersect(f.cones[i], f.cones[j]);
            if (!is_face(w, f.cones[i]) || !is_face(w, f.cones[j]))
                rep.flag("bad-intersection", {i, j},
                         "intersection of cones " + std::to_string(i) + " and " +
                             std::to_string(j) + " is not a common face");
        }

    std::vector<int> computed;
    for (int i = 0; i < n; ++i) {
        bool maximal = true;
        for (int j = 0; j < n && maximal; ++j)
            if (j != i && !(f.cones[i] == f.cones[j]) && cone_subset(f.cones[i], f.cones[j]))
                maximal = false;
        if (maximal) computed.push_back(i);
    }
    std::vector<int> declared = f.maximal;
    std::sort(declared.begin(), declared.end());
    for (int i : declared)
        if (i < 0 || i >= n) {
            rep.flag("bad-index", {i}, "maximal index out of range");
            return rep;
        }
    if (declared != computed)
        rep.flag("bad-maximal-set", declared,
                 "declared maximal cones do not match the inclusion-maximal ones");
    return rep;
}

// Splitting data for the stabilizer subtorus of a cone: N_sigma, its canonical
// complement, and the induced projection (acting on column vectors).
struct ConeSplit {
    Sublattice n_sigma;
    Sublattice n_prime;
    IntMat projection;
};

inline Sublattice span_sublattice(int rank, const std::vector<IntVec>& vectors) {
    IntMat m(static_cast<int>(vectors.size()), rank);
    for (std::size_t i = 0; i < vectors.size(); ++i) m.set_row(static_cast<int>(i), vectors[i]);
    return Sublattice(rank, int_kernel(int_kernel(m)));
}

inline ConeSplit cone_split(const Fan& f, int sigma) {
    if (sigma < 0 || sigma >= static_cast<int>(f.cones.size()))
        throw Error("cone_split: cone index out of range");
    const Cone& c = f.cones[sigma];
    Sublattice n_sigma = span_sublattice(f.rank, c.rays());
    Sublattice n_prime = complement(n_sigma);
    const int n = f.rank, k = n_sigma.rank();
    IntMat s(n, n);
    for (int i = 0; i < k; ++i) s.set_row(i, n_sigma.basis.row(i));
    for (int i = k; i < n; ++i) s.set_row(i, n_prime.basis.row(i - k));
    IntMat sinv = int_inverse(s);
    IntMat ek(n, n);
    for (int i = 0; i < k; ++i) ek(i, i) = 1;
    IntMat proj = s.transposed() * ek * sinv.transposed();
    return ConeSplit{std::move(n_sigma), std::move(n_prime), std::move(proj)};
}

}  // namespace torbun
