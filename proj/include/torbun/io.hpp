#pragma once

// Document I/O. A document is a JSON file carrying one fan, one structure
// group, and a named set of collections. Parsing validates structure only
// (shapes, ranks, well-formed rationals); admissibility stays with
// validate(). Emission is canonical: sorted keys, two-space indent, reduced
// "p/q" rationals, trailing newline.

#include "torbun/classify.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace torbun {

struct ParseError : Error {
    using Error::Error;
};

struct HomData {
    RatMat a;
    std::vector<IntVec> weights;
};

struct CollectionData {
    std::map<int, HomData> rho;
    std::map<std::pair<int, int>, RatMat> p;
};

struct Document {
    std::string schema_version = "1";
    int rank = 0;
    std::vector<std::vector<IntVec>> cones;  // generator lists, one per cone
    std::vector<int> maximal;
    GroupTag group{GroupKind::GeneralLinear, 1};
    std::map<std::string, CollectionData> collections;
};

namespace detail {

using nlohmann::json;

inline const json& field(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object()) throw ParseError(ctx + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(ctx + ": missing field \"" + key + "\"");
    return *it;
}

inline void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                        const std::string& ctx) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ParseError(ctx + ": unknown field \"" + it.key() + "\"");
    }
}

inline long long as_integer(const json& j, const std::string& ctx) {
    if (!j.is_number_integer()) throw ParseError(ctx + ": expected an integer");
    return j.get<long long>();
}

inline int as_index(const json& j, const std::string& ctx) {
    long long v = as_integer(j, ctx);
    if (v < -(1ll << 30) || v > (1ll << 30)) throw ParseError(ctx + ": integer out of range");
    return static_cast<int>(v);
}

inline std::string as_string(const json& j, const std::string& ctx) {
    if (!j.is_string()) throw ParseError(ctx + ": expected a string");
    return j.get<std::string>();
}

inline Rat as_rational(const json& j, const std::string& ctx) {
    if (!j.is_string()) throw ParseError(ctx + ": expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        throw ParseError(ctx + ": " + e.what());
    }
}

inline IntVec as_int_vector(const json& j, int length, const std::string& ctx) {
    if (!j.is_array()) throw ParseError(ctx + ": expected an array of integers");
    if (static_cast<int>(j.size()) != length)
        throw ParseError(ctx + ": has " + std::to_string(j.size()) + " entries, expected " +
                         std::to_string(length));
    IntVec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(Int(as_integer(j[i], ctx + "[" + std::to_string(i) + "]")));
    return v;
}

inline RatMat as_rat_matrix(const json& j, int n, const std::string& ctx) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw ParseError(ctx + ": expected " + std::to_string(n) + " rows");
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        std::string rc = ctx + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError(rc + ": expected " + std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k)
            m(i, k) = as_rational(row[static_cast<std::size_t>(k)],
                                  rc + "[" + std::to_string(k) + "]");
    }
    return m;
}

inline int parse_key_int(const std::string& s, const std::string& ctx) {
    if (s.empty()) throw ParseError(ctx + ": empty cone index");
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw ParseError(ctx + ": malformed cone index \"" + s + "\"");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw ParseError(ctx + ": malformed cone index \"" + s + "\"");
    return std::stoi(s);
}

inline GroupKind parse_kind(const std::string& s, const std::string& ctx) {
    if (s == "GL") return GroupKind::GeneralLinear;
    if (s == "T") return GroupKind::DiagonalTorus;
    if (s == "B") return GroupKind::UpperTriangular;
    if (s == "U") return GroupKind::Unipotent;
    throw ParseError(ctx + ": unknown group kind \"" + s + "\" (expected GL, T, B, or U)");
}

// Canonical layout: object members one per line (keys sorted), arrays
// inline, scalars serialized by the JSON library.
inline void write_canonical(const json& j, std::string& out, int indent) {
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + json(it.key()).dump() + ": ";
            write_canonical(it.value(), out, indent + 2);
        }
        out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
    } else if (j.is_array()) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ", ";
            write_canonical(j[i], out, indent);
        }
        out += "]";
    } else {
        out += j.dump();
    }
}

inline json rat_matrix_json(const RatMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json int_vector_json(const IntVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(x.convert_to<long long>());
    return a;
}

}  // namespace detail

inline Document parse_document(const std::string& text) {
    using detail::field;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    detail::expect_keys(j, {"schema_version", "fan", "group", "collections"}, "document");

    Document d;
    d.schema_version = detail::as_string(field(j, "schema_version", "document"), "schema_version");
    if (d.schema_version != "1")
        throw ParseError("schema_version: unsupported version \"" + d.schema_version + "\"");

    const auto& jf = field(j, "fan", "document");
    detail::expect_keys(jf, {"rank", "cones", "maximal"}, "fan");
    d.rank = detail::as_index(field(jf, "rank", "fan"), "fan.rank");
    if (d.rank < 0) throw ParseError("fan.rank: must be nonnegative");
    const auto& jc = field(jf, "cones", "fan");
    if (!jc.is_array()) throw ParseError("fan.cones: expected an array");
    for (std::size_t ci = 0; ci < jc.size(); ++ci) {
        std::string ctx = "fan.cones[" + std::to_string(ci) + "]";
        const auto& cone = jc[ci];
        if (!cone.is_array()) throw ParseError(ctx + ": expected an array of rays");
        std::vector<IntVec> rays;
        for (std::size_t ri = 0; ri < cone.size(); ++ri)
            rays.push_back(detail::as_int_vector(cone[ri], d.rank,
                                                 ctx + ": ray " + std::to_string(ri)));
        d.cones.push_back(std::move(rays));
    }
    const auto& jm = field(jf, "maximal", "fan");
    if (!jm.is_array()) throw ParseError("fan.maximal: expected an array");
    for (std::size_t i = 0; i < jm.size(); ++i)
        d.maximal.push_back(
            detail::as_index(jm[i], "fan.maximal[" + std::to_string(i) + "]"));

    const auto& jg = field(j, "group", "document");
    detail::expect_keys(jg, {"kind", "n"}, "group");
    d.group.kind = detail::parse_kind(detail::as_string(field(jg, "kind", "group"), "group.kind"),
                                      "group.kind");
    d.group.n = detail::as_index(field(jg, "n", "group"), "group.n");
    if (d.group.n < 1) throw ParseError("group.n: must be positive");

    const auto& jcols = field(j, "collections", "document");
    if (!jcols.is_object()) throw ParseError("collections: expected an object");
    for (auto it = jcols.begin(); it != jcols.end(); ++it) {
        std::string ctx = "collections[\"" + it.key() + "\"]";
        const auto& jcol = it.value();
        detail::expect_keys(jcol, {"rho", "p"}, ctx);
        CollectionData cd;
        const auto& jrho = field(jcol, "rho", ctx);
        if (!jrho.is_object()) throw ParseError(ctx + ".rho: expected an object");
        for (auto rit = jrho.begin(); rit != jrho.end(); ++rit) {
            std::string rctx = ctx + ".rho[\"" + rit.key() + "\"]";
            int cone = detail::parse_key_int(rit.key(), rctx);
            detail::expect_keys(rit.value(), {"A", "weights"}, rctx);
            HomData h;
            h.a = detail::as_rat_matrix(field(rit.value(), "A", rctx), d.group.n, rctx + ".A");
            const auto& jw = field(rit.value(), "weights", rctx);
            if (!jw.is_array() || static_cast<int>(jw.size()) != d.group.n)
                throw ParseError(rctx + ".weights: expected " + std::to_string(d.group.n) +
                                 " rows");
            for (std::size_t wi = 0; wi < jw.size(); ++wi)
                h.weights.push_back(detail::as_int_vector(
                    jw[wi], d.rank, rctx + ".weights[" + std::to_string(wi) + "]"));
            cd.rho.emplace(cone, std::move(h));
        }
        const auto& jp = field(jcol, "p", ctx);
        if (!jp.is_object()) throw ParseError(ctx + ".p: expected an object");
        for (auto pit = jp.begin(); pit != jp.end(); ++pit) {
            std::string pctx = ctx + ".p[\"" + pit.key() + "\"]";
            const std::string& key = pit.key();
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw ParseError(pctx + ": key must be \"tau,sigma\"");
            int tau = detail::parse_key_int(key.substr(0, comma), pctx);
            int sigma = detail::parse_key_int(key.substr(comma + 1), pctx);
            cd.p.emplace(std::make_pair(tau, sigma),
                         detail::as_rat_matrix(pit.value(), d.group.n, pctx));
        }
        d.collections.emplace(it.key(), std::move(cd));
    }
    return d;
}

inline Document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

inline std::string emit_document(const Document& d) {
    using nlohmann::json;
    json j;
    j["schema_version"] = d.schema_version;
    json jf;
    jf["rank"] = d.rank;
    json jc = json::array();
    for (const auto& cone : d.cones) {
        json rays = json::array();
        for (const IntVec& r : cone) rays.push_back(detail::int_vector_json(r));
        jc.push_back(std::move(rays));
    }
    jf["cones"] = std::move(jc);
    jf["maximal"] = d.maximal;
    j["fan"] = std::move(jf);
    j["group"] = json{{"kind", to_string(d.group.kind)}, {"n", d.group.n}};
    json jcols = json::object();
    for (const auto& [name, cd] : d.collections) {
        json jrho = json::object();
        for (const auto& [cone, h] : cd.rho) {
            json weights = json::array();
            for (const IntVec& w : h.weights) weights.push_back(detail::int_vector_json(w));
            jrho[std::to_string(cone)] =
                json{{"A", detail::rat_matrix_json(h.a)}, {"weights", std::move(weights)}};
        }
        json jp = json::object();
        for (const auto& [key, m] : cd.p)
            jp[std::to_string(key.first) + "," + std::to_string(key.second)] =
                detail::rat_matrix_json(m);
        jcols[name] = json{{"rho", std::move(jrho)}, {"p", std::move(jp)}};
    }
    j["collections"] = std::move(jcols);
    std::string out;
    detail::write_canonical(j, out, 0);
    return out + "\n";
}

inline Fan build_fan(const Document& d) {
    Fan f;
    f.rank = d.rank;
    for (const auto& rays : d.cones) f.cones.push_back(Cone::from_rays(d.rank, rays));
    f.maximal = d.maximal;
    return f;
}

inline AdmissibleCollection build_collection(const Document& d, const std::string& name) {
    auto it = d.collections.find(name);
    if (it == d.collections.end()) throw Error("unknown collection \"" + name + "\"");
    std::map<int, TorusHom> rho;
    for (const auto& [cone, h] : it->second.rho) rho.emplace(cone, TorusHom(h.a, h.weights));
    return AdmissibleCollection(build_fan(d), d.group, std::move(rho), it->second.p);
}

// Pack live objects back into a document (cones serialized by their
// canonical generators).
inline Document make_document(const Fan& f, const GroupTag& g,
                              const std::map<std::string, AdmissibleCollection>& named) {
    Document d;
    d.rank = f.rank;
    for (const Cone& c : f.cones) d.cones.push_back(c.rays());
    d.maximal = f.maximal;
    d.group = g;
    for (const auto& [name, c] : named) {
        CollectionData cd;
        for (int s : c.fan.maximal)
            cd.rho.emplace(s, HomData{c.rho_at(s).base_change, c.rho_at(s).weights});
        for (int t : c.fan.maximal)
            for (int s : c.fan.maximal) cd.p.emplace(std::make_pair(t, s), c.p_at(t, s));
        d.collections.emplace(name, std::move(cd));
    }
    return d;
}

// Splitting override file: an object mapping maximal cone indices to basis
// rows of the replacement complement N'.
inline SplitOverride parse_split_override(const std::string& text, int rank) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("splitting override: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("splitting override: expected an object");
    SplitOverride ov;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string ctx = "splitting override[\"" + it.key() + "\"]";
        int cone = detail::parse_key_int(it.key(), ctx);
        const auto& rows = it.value();
        if (!rows.is_array()) throw ParseError(ctx + ": expected an array of basis rows");
        IntMat b(static_cast<int>(rows.size()), rank);
        for (std::size_t i = 0; i < rows.size(); ++i)
            b.set_row(static_cast<int>(i),
                      detail::as_int_vector(rows[i], rank, ctx + "[" + std::to_string(i) + "]"));
        ov.emplace(cone, Sublattice(rank, b));
    }
    return ov;
}

}  // namespace torbun
