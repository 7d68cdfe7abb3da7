#pragma once

// Admissible collections {rho_sigma, P(tau,sigma)} over a fan: structural
// construction checks, validation of the four defining conditions, and the
// symbolic transition cocycles they induce.

#include "torbun/charmat.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace torbun {

inline LaurentMatrix constant_matrix(const RatMat& m, int dim) {
    if (m.rows() != m.cols()) throw Error("constant_matrix: not square");
    LaurentMatrix r(m.rows(), dim);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) r.at(i, j) = LaurentPoly::constant(dim, m(i, j));
    return r;
}

// The collection data. Construction enforces the structural invariants (a
// valid fan, totality over maximal cones, G-valued rho and P); the four
// admissibility conditions are checked by validate() below.
struct AdmissibleCollection {
    Fan fan;
    GroupTag group;
    std::map<int, TorusHom> rho;               // maximal cone index -> rho_sigma
    std::map<std::pair<int, int>, RatMat> p;   // (tau, sigma) -> P(tau, sigma)

    AdmissibleCollection(Fan f, GroupTag g, std::map<int, TorusHom> rho_,
                         std::map<std::pair<int, int>, RatMat> p_)
        : fan(std::move(f)), group(g), rho(std::move(rho_)), p(std::move(p_)) {
        if (!validate_fan(fan).ok) throw Error("collection: fan is not valid");
        std::sort(fan.maximal.begin(), fan.maximal.end());
        for (int s : fan.maximal) {
            auto it = rho.find(s);
            if (it == rho.end())
                throw Error("collection: rho missing at maximal cone " + std::to_string(s));
            const TorusHom& h = it->second;
            if (h.n != group.n) throw Error("collection: rho size differs from group size");
            if (h.torus_rank != fan.rank)
                throw Error("collection: rho weight length differs from fan rank");
            if (!hom_in_group(h, group))
                throw Error("collection: rho at cone " + std::to_string(s) +
                            " does not land in the group");
        }
        if (rho.size() != fan.maximal.size())
            throw Error("collection: rho keyed off a non-maximal cone");
        for (int t : fan.maximal)
            for (int s : fan.maximal) {
                auto it = p.find({t, s});
                if (it == p.end())
                    throw Error("collection: P missing at pair (" + std::to_string(t) + "," +
                                std::to_string(s) + ")");
                if (!group_member(it->second, group))
                    throw Error("collection: P(" + std::to_string(t) + "," + std::to_string(s) +
                                ") is not a group element");
            }
        if (p.size() != fan.maximal.size() * fan.maximal.size())
            throw Error("collection: P keyed off a non-maximal pair");
    }

    const TorusHom& rho_at(int sigma) const { return rho.at(sigma); }
    const RatMat& p_at(int tau, int sigma) const { return p.at({tau, sigma}); }
    const Cone& cone_at(int sigma) const { return fan.cones.at(sigma); }
};

inline AdmissibleCollection trivial_collection(const Fan& f, const GroupTag& g) {
    std::map<int, TorusHom> rho;
    std::map<std::pair<int, int>, RatMat> p;
    for (int s : f.maximal) rho.emplace(s, trivial_hom(g.n, f.rank));
    for (int t : f.maximal)
        for (int s : f.maximal) p.emplace(std::make_pair(t, s), RatMat::identity(g.n));
    return AdmissibleCollection(f, g, std::move(rho), std::move(p));
}

struct Violation {
    int condition = 0;       // 1..4
    std::vector<int> cones;  // the cone / pair / triple involved
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void flag(int condition, std::vector<int> cones, std::string detail) {
        ok = false;
        violations.push_back({condition, std::move(cones), std::move(detail)});
    }
};

// Optional override of the canonical complement N' per maximal cone (the
// projection pi_sigma depends on this choice; see validate's warning surface).
using SplitOverride = std::map<int, Sublattice>;

namespace detail {

inline Sublattice nprime_for(const AdmissibleCollection& c, int sigma, const SplitOverride* ov) {
    Sublattice canonical = cone_split(c.fan, sigma).n_prime;
    if (!ov) return canonical;
    auto it = ov->find(sigma);
    if (it == ov->end()) return canonical;
    const Sublattice& s = it->second;
    if (s.ambient_rank != c.fan.rank) throw Error("splitting override: wrong ambient rank");
    Sublattice nsig = cone_split(c.fan, sigma).n_sigma;
    if (s.rank() + nsig.rank() != c.fan.rank)
        throw Error("splitting override: rank does not complement N_sigma");
    IntMat stacked(c.fan.rank, c.fan.rank);
    for (int i = 0; i < nsig.rank(); ++i) stacked.set_row(i, nsig.basis.row(i));
    for (int i = 0; i < s.rank(); ++i) stacked.set_row(nsig.rank() + i, s.basis.row(i));
    Rat d = det(to_rational(stacked));
    if (d != 1 && d != -1) throw Error("splitting override: not a complement of N_sigma");
    return s;
}

}  // namespace detail

// Condition (1): rho_sigma factors through pi_sigma, i.e. every weight kills
// the complement N'.
inline bool check_factors(const AdmissibleCollection& c, int sigma,
                          const SplitOverride* ov = nullptr) {
    Sublattice nprime = detail::nprime_for(c, sigma, ov);
    for (const auto& u : c.rho_at(sigma).weights)
        for (int i = 0; i < nprime.rank(); ++i)
            if (dot(u, nprime.basis.row(i)) != 0) return false;
    return true;
}

// Condition (2): rho_tau(t) P(tau,sigma) rho_sigma(t)^{-1} is G-valued regular
// over the chart of the overlap cone.
inline bool check_regular_pair(const AdmissibleCollection& c, int tau, int sigma) {
    LaurentMatrix m = hom_to_matrix(c.rho_at(tau)) *
                      constant_matrix(c.p_at(tau, sigma), c.fan.rank) *
                      hom_to_matrix_inverse(c.rho_at(sigma));
    Cone overlap = intersect(c.cone_at(tau), c.cone_at(sigma));
    return group_member(m, c.group, overlap);
}

// Condition (3): P(sigma, sigma) = 1.
inline void check_units(const AdmissibleCollection& c, ValidationReport& rep) {
    for (int s : c.fan.maximal)
        if (!(c.p_at(s, s) == RatMat::identity(c.group.n)))
            rep.flag(3, {s}, "P(" + std::to_string(s) + "," + std::to_string(s) +
                                 ") is not the identity");
}

// Condition (4): P(tau,sigma) P(sigma,delta) P(delta,tau) = 1.
inline bool check_cocycle(const AdmissibleCollection& c, int tau, int sigma, int delta) {
    RatMat prod = c.p_at(tau, sigma) * c.p_at(sigma, delta) * c.p_at(delta, tau);
    return prod == RatMat::identity(c.group.n);
}

inline ValidationReport validate(const AdmissibleCollection& c,
                                 const SplitOverride* ov = nullptr) {
    ValidationReport rep;
    for (int s : c.fan.maximal)
        if (!check_factors(c, s, ov))
            rep.flag(1, {s}, "rho at cone " + std::to_string(s) +
                                 " does not factor through pi_sigma");
    for (int t : c.fan.maximal)
        for (int s : c.fan.maximal)
            if (!check_regular_pair(c, t, s))
                rep.flag(2, {t, s}, "rho_tau P rho_sigma^{-1} for (" + std::to_string(t) + "," +
                                        std::to_string(s) +
                                        ") is not G-regular on the overlap");
    check_units(c, rep);
    for (int t : c.fan.maximal)
        for (int s : c.fan.maximal)
            for (int d : c.fan.maximal)
                if (!check_cocycle(c, t, s, d))
                    rep.flag(4, {t, s, d},
                             "cocycle fails on (" + std::to_string(t) + "," + std::to_string(s) +
                                 "," + std::to_string(d) + ")");
    return rep;
}

// phi_{tau sigma}(t) = rho_tau(t) P(tau,sigma) rho_sigma(t)^{-1}, the
// transition function of the glued bundle. Input must validate.
inline LaurentMatrix transition_cocycle(const AdmissibleCollection& c, int tau, int sigma) {
    if (!validate(c).ok) throw Error("transition_cocycle: collection does not validate");
    return hom_to_matrix(c.rho_at(tau)) * constant_matrix(c.p_at(tau, sigma), c.fan.rank) *
           hom_to_matrix_inverse(c.rho_at(sigma));
}

}  // namespace torbun
