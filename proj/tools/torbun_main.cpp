// torbun: command line front end.
//
// Exit codes: 0 success / equivalent, 1 semantic failure / not equivalent,
// 2 parse error, 3 no decision within the reduced family.

#include "torbun/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace torbun;

std::vector<std::string> pick_names(const Document& d, const std::string& flag) {
    if (!flag.empty()) return {flag};
    if (d.collections.empty()) throw Error("document contains no collections");
    std::vector<std::string> names;
    for (const auto& [name, cd] : d.collections) names.push_back(name);
    return names;
}

std::string pick_one(const Document& d, const std::string& flag) {
    if (!flag.empty()) return flag;
    if (d.collections.size() == 1) return d.collections.begin()->first;
    throw Error("document has " + std::to_string(d.collections.size()) +
                " collections; select one with --collection");
}

void require_maximal(const Fan& f, int s, const char* what) {
    if (std::find(f.maximal.begin(), f.maximal.end(), s) == f.maximal.end())
        throw Error(std::string(what) + ": cone " + std::to_string(s) + " is not maximal");
}

std::string cone_list(const std::vector<int>& cones) {
    std::string out = "(";
    for (std::size_t i = 0; i < cones.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(cones[i]);
    }
    return out + ")";
}

void print_witness(const GaugeWitness& w) {
    for (const auto& [s, g] : w.g)
        std::cout << "g(" << s << ") = " << to_string(g) << "\n";
}

std::string weight_list(const TorusHom& h) {
    std::string out;
    for (std::size_t i = 0; i < h.weights.size(); ++i) {
        if (i) out += ", ";
        out += to_string(h.weights[i]);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_validate(const std::string& file, const std::string& name,
                 const std::string& splitting) {
    Document d = load_document(file);
    SplitOverride ov;
    const SplitOverride* ovp = nullptr;
    if (!splitting.empty()) {
        ov = parse_split_override(read_file(splitting), d.rank);
        ovp = &ov;
        std::cerr << "warning: overriding the canonical complement changes which projections "
                     "pi_sigma are tested; whether inequivalent choices can change the "
                     "classification is an open question\n";
    }
    bool all_ok = true;
    for (const std::string& nm : pick_names(d, name)) {
        AdmissibleCollection c = build_collection(d, nm);
        ValidationReport rep = validate(c, ovp);
        if (rep.ok) {
            std::cout << "collection \"" << nm << "\": OK\n";
        } else {
            all_ok = false;
            std::cout << "collection \"" << nm << "\": INVALID\n";
            for (const Violation& v : rep.violations)
                std::cout << "  condition " << v.condition << " at cones " << cone_list(v.cones)
                          << ": " << v.detail << "\n";
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_equiv(const std::string& file, const std::string& n1, const std::string& n2,
              std::optional<int> base) {
    Document d = load_document(file);
    AdmissibleCollection c1 = build_collection(d, n1);
    AdmissibleCollection c2 = build_collection(d, n2);
    EquivResult r = equivalent(c1, c2, base);
    switch (r.status) {
        case EquivStatus::Equivalent:
            std::cout << "EQUIVALENT\n";
            print_witness(*r.witness);
            return 0;
        case EquivStatus::NotEquivalent:
            std::cout << "NOT EQUIVALENT (weight invariants differ)\n";
            return 1;
        case EquivStatus::NoWitnessInFamily:
            std::cout << "NO WITNESS IN REDUCED FAMILY\n";
            return 3;
    }
    throw InternalError("equiv: unreachable");
}

int cmd_cocycle(const std::string& file, int tau, int sigma, const std::string& name) {
    Document d = load_document(file);
    AdmissibleCollection c = build_collection(d, pick_one(d, name));
    require_maximal(c.fan, tau, "cocycle");
    require_maximal(c.fan, sigma, "cocycle");
    LaurentMatrix phi = transition_cocycle(c, tau, sigma);
    std::cout << "phi(" << tau << ", " << sigma << "):\n";
    for (int i = 0; i < phi.n; ++i)
        for (int j = 0; j < phi.n; ++j)
            std::cout << "  [" << i << "][" << j << "] = " << to_string(phi.at(i, j)) << "\n";
    return 0;
}

int cmd_trivialize(const std::string& file, const std::string& name) {
    Document d = load_document(file);
    AdmissibleCollection c = build_collection(d, pick_one(d, name));
    ProductStructure ps = trivialize_affine(c);
    int sigma = c.fan.maximal.front();
    ConeSplit cs = cone_split(c.fan, sigma);
    if (cs.n_sigma.rank() < c.fan.rank)
        std::cerr << "warning: cone " << sigma << " is not full-dimensional (the chart has no "
                     "torus-fixed point); this case rests on unverified hypotheses\n";
    std::cout << "PRODUCT STRUCTURE\n";
    std::cout << "weights: " << weight_list(ps.rho) << "\n";
    std::cout << "A = " << to_string(ps.rho.base_change) << "\n";
    std::cout << "base gauge = " << to_string(ps.base_gauge) << "\n";
    return 0;
}

int cmd_split(const std::string& file, const std::string& name) {
    Document d = load_document(file);
    Fan f = build_fan(d);
    ToricSplit sp = split_affine_toric(f);
    std::cout << "X = Y x (C*)^" << sp.orbit_rank << "\n";
    std::cout << "Y rank: " << sp.y_fan.rank << "\n";
    std::cout << "Y maximal cone rays:";
    for (int m : sp.y_fan.maximal)
        for (const IntVec& r : sp.y_fan.cones[static_cast<std::size_t>(m)].rays())
            std::cout << " " << to_string(r);
    std::cout << "\n";
    std::cout << "basis (rows: Y lattice, then torus directions) = " << to_string(sp.basis)
              << "\n";
    if (!name.empty() || d.collections.size() == 1) {
        AdmissibleCollection c = build_collection(d, pick_one(d, name));
        AdmissibleCollection r = restrict_collection(c, sp);
        for (int m : r.fan.maximal) {
            std::cout << "restricted rho(" << m << "): weights " << weight_list(r.rho_at(m))
                      << "\n";
            std::cout << "restricted A(" << m << ") = " << to_string(r.rho_at(m).base_change)
                      << "\n";
        }
    }
    return 0;
}

int cmd_reduce(const std::string& file, const std::string& name, std::optional<int> base) {
    Document d = load_document(file);
    AdmissibleCollection c = build_collection(d, pick_one(d, name));
    if (c.group.kind == GroupKind::Unipotent) {
        UnipotentTrivialization tr = check_unipotent_trivial(c, base);
        std::cout << "TRIVIAL (unipotent structure group)\n";
        print_witness(tr.witness);
        return 0;
    }
    std::optional<TorusReduction> red = reduce_to_torus(c, base);
    if (!red) {
        std::cout << "NO WITNESS IN REDUCED FAMILY\n";
        return 3;
    }
    std::cout << "REDUCED TO DIAGONAL TORUS\n";
    print_witness(red->witness);
    for (int s : red->reduced.fan.maximal)
        std::cout << "reduced rho(" << s << "): weights " << weight_list(red->reduced.rho_at(s))
                  << "\n";
    for (int t : red->reduced.fan.maximal)
        for (int s : red->reduced.fan.maximal)
            if (t != s)
                std::cout << "reduced P(" << t << ", " << s
                          << ") = " << to_string(red->reduced.p_at(t, s)) << "\n";
    return 0;
}

int cmd_enumerate(const std::string& file, int bound) {
    Document d = load_document(file);
    if (!(d.group.kind == GroupKind::GeneralLinear && d.group.n == 1))
        throw Error("enumerate: document group must be GL(1)");
    std::vector<AdmissibleCollection> classes = enumerate_gl1(build_fan(d), bound);
    std::cout << classes.size() << " classes\n";
    for (const AdmissibleCollection& c : classes) {
        std::string line;
        for (int s : c.fan.maximal) {
            if (!line.empty()) line += ", ";
            line += "m(" + std::to_string(s) + ") = " + to_string(c.rho_at(s).weights[0]);
        }
        std::cout << line << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equivariant principal bundles over toric varieties"};
    app.require_subcommand(1);

    std::string file, name, splitting, n1, n2;
    int tau = 0, sigma = 0, bound = 0, base_cone = 0;

    auto* v = app.add_subcommand("validate", "check the admissibility conditions");
    v->add_option("file", file, "document")->required();
    v->add_option("--collection", name, "collection name (default: all in the document)");
    v->add_option("--splitting", splitting, "JSON file overriding the complement N' per cone");

    auto* e = app.add_subcommand("equiv", "decide equivalence of two collections");
    e->add_option("file", file, "document")->required();
    e->add_option("first", n1, "collection name")->required();
    e->add_option("second", n2, "collection name")->required();
    auto* ebase = e->add_option("--base-cone", base_cone, "reduce the witness to this cone");

    auto* co = app.add_subcommand("cocycle", "print the transition cocycle for a cone pair");
    co->add_option("file", file, "document")->required();
    co->add_option("tau", tau, "target cone index")->required();
    co->add_option("sigma", sigma, "source cone index")->required();
    co->add_option("--collection", name, "collection name");

    auto* t = app.add_subcommand("trivialize", "product structure over a single affine chart");
    t->add_option("file", file, "document")->required();
    t->add_option("--collection", name, "collection name");

    auto* sp = app.add_subcommand("split", "factor an affine chart as Y x torus");
    sp->add_option("file", file, "document")->required();
    sp->add_option("--collection", name, "also restrict this collection to Y");

    auto* r = app.add_subcommand("reduce", "reduce a triangular collection to its torus part");
    r->add_option("file", file, "document")->required();
    r->add_option("--collection", name, "collection name");
    auto* rbase = r->add_option("--base-cone", base_cone, "base cone for the witness family");

    auto* en = app.add_subcommand("enumerate", "list GL(1) classes with bounded weights");
    en->add_option("file", file, "document (supplies the fan)")->required();
    en->add_option("--bound", bound, "max |weight entry|")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        int code = app.exit(ex);
        return code == 0 ? 0 : 2;
    }

    try {
        if (v->parsed()) return cmd_validate(file, name, splitting);
        if (e->parsed())
            return cmd_equiv(file, n1, n2,
                             ebase->count() ? std::optional<int>(base_cone) : std::nullopt);
        if (co->parsed()) return cmd_cocycle(file, tau, sigma, name);
        if (t->parsed()) return cmd_trivialize(file, name);
        if (sp->parsed()) return cmd_split(file, name);
        if (r->parsed())
            return cmd_reduce(file, name,
                              rbase->count() ? std::optional<int>(base_cone) : std::nullopt);
        if (en->parsed()) return cmd_enumerate(file, bound);
    } catch (const torbun::ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return 2;
    } catch (const torbun::InternalError& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 1;
    } catch (const torbun::Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
