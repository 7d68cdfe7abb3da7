#pragma once

// Shared fan and collection builders for the test suite.

#include "torbun/classify.hpp"

#include <initializer_list>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace fixtures {

using namespace torbun;

inline IntVec v1(int a) { return {Int(a)}; }
inline IntVec v2(int a, int b) { return {Int(a), Int(b)}; }

inline Cone cone2(std::initializer_list<std::pair<int, int>> rays) {
    std::vector<IntVec> r;
    for (auto [a, b] : rays) r.push_back(v2(a, b));
    return Cone::from_rays(2, r);
}

// P^1: cones [zero, <1>, <-1>], maximal cones at indices 1 and 2.
inline Fan p1_fan() {
    Fan f;
    f.rank = 1;
    f.cones = {Cone::zero(1), Cone::from_rays(1, {v1(1)}), Cone::from_rays(1, {v1(-1)})};
    f.maximal = {1, 2};
    return f;
}

// P^2 with all faces listed; maximal cones first.
inline Fan p2_fan() {
    Fan f;
    f.rank = 2;
    f.cones = {
        cone2({{1, 0}, {0, 1}}), cone2({{0, 1}, {-1, -1}}), cone2({{1, 0}, {-1, -1}}),
        cone2({{1, 0}}),         cone2({{0, 1}}),           cone2({{-1, -1}}),
        Cone::zero(2),
    };
    f.maximal = {0, 1, 2};
    return f;
}

// P^1 x P^1: four quadrant cones, four rays, the origin.
inline Fan p1xp1_fan() {
    Fan f;
    f.rank = 2;
    f.cones = {
        cone2({{1, 0}, {0, 1}}),  cone2({{0, 1}, {-1, 0}}),
        cone2({{-1, 0}, {0, -1}}), cone2({{0, -1}, {1, 0}}),
        cone2({{1, 0}}), cone2({{0, 1}}), cone2({{-1, 0}}), cone2({{0, -1}}),
        Cone::zero(2),
    };
    f.maximal = {0, 1, 2, 3};
    return f;
}

// P^1 x C^*: rank-2 lattice, maximal cones are the two rays along +-e1.
inline Fan p1xcstar_fan() {
    Fan f;
    f.rank = 2;
    f.cones = {Cone::zero(2), cone2({{1, 0}}), cone2({{-1, 0}})};
    f.maximal = {1, 2};
    return f;
}

// Two half-plane-ish cones glued along the ray e1.
inline Fan glued_halves_fan() {
    Fan f;
    f.rank = 2;
    f.cones = {
        cone2({{1, 0}, {0, 1}}), cone2({{1, 0}, {0, -1}}),
        cone2({{1, 0}}), cone2({{0, 1}}), cone2({{0, -1}}),
        Cone::zero(2),
    };
    f.maximal = {0, 1};
    return f;
}

// A single strongly convex cone together with all of its faces.
inline Fan affine_fan(int rank, const std::vector<IntVec>& rays) {
    Cone sigma = Cone::from_rays(rank, rays);
    Fan f;
    f.rank = rank;
    f.cones = faces(sigma);
    for (std::size_t i = 0; i < f.cones.size(); ++i)
        if (f.cones[i] == sigma) f.maximal = {static_cast<int>(i)};
    return f;
}

inline RatMat scalar1(int num, int den = 1) {
    RatMat m(1, 1);
    m(0, 0) = Rat(num, den);
    return m;
}

// GL(1) collection: one weight vector per maximal cone, P(tau,sigma) given by
// scalars (identity when omitted).
inline AdmissibleCollection gl1_collection(const Fan& f, const std::map<int, IntVec>& weights,
                                           std::map<std::pair<int, int>, Rat> scalars = {}) {
    std::map<int, TorusHom> rho;
    std::map<std::pair<int, int>, RatMat> p;
    for (int s : f.maximal) rho.emplace(s, TorusHom(RatMat::identity(1), {weights.at(s)}));
    for (int t : f.maximal)
        for (int s : f.maximal) {
            auto it = scalars.find({t, s});
            RatMat m = RatMat::identity(1);
            if (it != scalars.end()) m(0, 0) = it->second;
            p.emplace(std::make_pair(t, s), m);
        }
    return AdmissibleCollection(f, GroupTag{GroupKind::GeneralLinear, 1}, std::move(rho),
                                std::move(p));
}

inline int roll(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random invertible constant matrix of the tagged shape, with small integer
// entries.
inline RatMat random_group_matrix(std::mt19937_64& rng, const GroupTag& g) {
    const int n = g.n;
    for (;;) {
        RatMat m(n, n);
        switch (g.kind) {
            case GroupKind::GeneralLinear:
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) m(i, j) = roll(rng, -3, 3);
                break;
            case GroupKind::DiagonalTorus:
                for (int i = 0; i < n; ++i) m(i, i) = roll(rng, -3, 3);
                break;
            case GroupKind::UpperTriangular:
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j) m(i, j) = roll(rng, -3, 3);
                break;
            case GroupKind::Unipotent:
                for (int i = 0; i < n; ++i) {
                    m(i, i) = 1;
                    for (int j = i + 1; j < n; ++j) m(i, j) = roll(rng, -3, 3);
                }
                break;
        }
        if (det(m) != 0) return m;
    }
}

inline GaugeWitness random_gauge(std::mt19937_64& rng, const AdmissibleCollection& c) {
    GaugeWitness w;
    for (int s : c.fan.maximal) w.g.emplace(s, random_group_matrix(rng, c.group));
    return w;
}

// Split GL(n) collection on P^2: factor j carries the line bundle with
// support weights d_j * {(0,0), (1,0), (0,1)}.
inline AdmissibleCollection split_bundle_p2(const std::vector<int>& degrees) {
    Fan f = p2_fan();
    const int n = static_cast<int>(degrees.size());
    std::map<int, TorusHom> rho;
    std::map<std::pair<int, int>, RatMat> p;
    std::map<int, IntVec> support = {{0, v2(0, 0)}, {1, v2(1, 0)}, {2, v2(0, 1)}};
    for (int s : f.maximal) {
        std::vector<IntVec> w;
        for (int j = 0; j < n; ++j)
            w.push_back(scaled(support.at(s), Int(degrees[static_cast<std::size_t>(j)])));
        rho.emplace(s, TorusHom(RatMat::identity(n), std::move(w)));
    }
    for (int t : f.maximal)
        for (int s : f.maximal) p.emplace(std::make_pair(t, s), RatMat::identity(n));
    return AdmissibleCollection(f, GroupTag{GroupKind::GeneralLinear, n}, std::move(rho),
                                std::move(p));
}

// GL(n) collection on P^1 with arbitrary weights (every overlap is the
// origin, so any weight pair glues).
inline AdmissibleCollection free_bundle_p1(const std::vector<int>& plus,
                                           const std::vector<int>& minus) {
    Fan f = p1_fan();
    const int n = static_cast<int>(plus.size());
    std::map<int, TorusHom> rho;
    std::map<std::pair<int, int>, RatMat> p;
    std::vector<IntVec> wp, wm;
    for (int a : plus) wp.push_back(v1(a));
    for (int a : minus) wm.push_back(v1(a));
    rho.emplace(1, TorusHom(RatMat::identity(n), std::move(wp)));
    rho.emplace(2, TorusHom(RatMat::identity(n), std::move(wm)));
    for (int t : f.maximal)
        for (int s : f.maximal) p.emplace(std::make_pair(t, s), RatMat::identity(n));
    return AdmissibleCollection(f, GroupTag{GroupKind::GeneralLinear, n}, std::move(rho),
                                std::move(p));
}

// Unipotent collection with transitions telescoped from random unipotent
// chart matrices h_sigma: P(tau,sigma) = h_tau^{-1} h_sigma.
inline AdmissibleCollection random_unipotent_collection(std::mt19937_64& rng, const Fan& f,
                                                        int n) {
    GroupTag g{GroupKind::Unipotent, n};
    std::map<int, RatMat> h;
    for (int s : f.maximal) h.emplace(s, random_group_matrix(rng, g));
    std::map<int, TorusHom> rho;
    std::map<std::pair<int, int>, RatMat> p;
    for (int s : f.maximal) rho.emplace(s, trivial_hom(n, f.rank));
    for (int t : f.maximal)
        for (int s : f.maximal)
            p.emplace(std::make_pair(t, s), inverse_or_throw(h.at(t)) * h.at(s));
    return AdmissibleCollection(f, g, std::move(rho), std::move(p));
}

}  // namespace fixtures
