#pragma once

/**
 * @file catalog.hpp
 * @brief Curated symmetric spaces and the catalog file loader.
 *
 * A catalog document is JSON with schema tag "rmt-catalog/1" and a list of
 * spaces {name, family, rank, multiplicities, note}. Unknown keys are
 * rejected. Derived data is recomputed and validated on load.
 */

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmt/root_system.hpp"

namespace rmt {

struct CatalogEntry {
    std::string name;
    std::string family;
    int rank = 0;
    std::map<std::string, int> multiplicities;
    std::string note;
};

inline constexpr const char* catalog_schema = "rmt-catalog/1";

/// Built-in catalog; identical in content to data/catalog.json.
inline const char* builtin_catalog_text() {
    return R"json({
  "schema": "rmt-catalog/1",
  "spaces": [
    {"name": "H2",  "family": "A",  "rank": 1, "multiplicities": {"m": 1},
     "note": "SL(2,R)/SO(2), real hyperbolic plane; case (b)"},
    {"name": "H3",  "family": "A",  "rank": 1, "multiplicities": {"m": 2},
     "note": "SL(2,C)/SU(2), real hyperbolic 3-space; complex rank one; case (a)"},
    {"name": "H4",  "family": "A",  "rank": 1, "multiplicities": {"m": 3},
     "note": "SO_0(4,1)/SO(4), real hyperbolic 4-space; case (b)"},
    {"name": "CH2", "family": "BC", "rank": 1, "multiplicities": {"short": 2, "long": 1},
     "note": "SU(2,1)/S(U(2)xU(1)), complex hyperbolic plane; case (d)"},
    {"name": "CH3", "family": "BC", "rank": 1, "multiplicities": {"short": 4, "long": 1},
     "note": "SU(3,1)/S(U(3)xU(1)), complex hyperbolic 3-space; case (c)"},
    {"name": "HH2", "family": "BC", "rank": 1, "multiplicities": {"short": 4, "long": 3},
     "note": "Sp(2,1)/Sp(2)xSp(1), quaternionic hyperbolic plane; case (c)"},
    {"name": "A2R", "family": "A",  "rank": 2, "multiplicities": {"m": 1},
     "note": "SL(3,R)/SO(3); case (b)"},
    {"name": "A2C", "family": "A",  "rank": 2, "multiplicities": {"m": 2},
     "note": "SL(3,C)/SU(3); complex case"},
    {"name": "B2C", "family": "B",  "rank": 2, "multiplicities": {"short": 2, "long": 2},
     "note": "SO(5,C)/SO(5); complex case"},
    {"name": "BC2", "family": "BC", "rank": 2, "multiplicities": {"short": 2, "medium": 2, "long": 1},
     "note": "SU(2,3)/S(U(2)xU(3)); cases (a) and (d)"},
    {"name": "A3C", "family": "A",  "rank": 3, "multiplicities": {"m": 2},
     "note": "SL(4,C)/SU(4); complex case"}
  ]
})json";
}

/**
 * @brief Parses a catalog document.
 * @throws DomainError on schema mismatch, unknown keys or invalid spaces.
 */
inline std::vector<CatalogEntry> parse_catalog(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("catalog: ") + e.what());
    }
    if (!doc.is_object()) throw DomainError("catalog: top level must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "schema" && it.key() != "spaces") throw DomainError("catalog: unknown key '" + it.key() + "'");
    if (doc.value("schema", "") != catalog_schema) throw DomainError("catalog: unsupported schema");
    if (!doc.contains("spaces") || !doc["spaces"].is_array()) throw DomainError("catalog: 'spaces' must be a list");
    std::vector<CatalogEntry> out;
    for (const auto& s : doc["spaces"]) {
        if (!s.is_object()) throw DomainError("catalog: space entry must be an object");
        for (auto it = s.begin(); it != s.end(); ++it) {
            const auto& k = it.key();
            if (k != "name" && k != "family" && k != "rank" && k != "multiplicities" && k != "note")
                throw DomainError("catalog: unknown key '" + k + "'");
        }
        CatalogEntry e;
        try {
            e.name = s.at("name").get<std::string>();
            e.family = s.at("family").get<std::string>();
            e.rank = s.at("rank").get<int>();
            for (auto it = s.at("multiplicities").begin(); it != s.at("multiplicities").end(); ++it)
                e.multiplicities[it.key()] = it.value().get<int>();
            e.note = s.value("note", "");
        } catch (const nlohmann::json::exception& ex) {
            throw DomainError(std::string("catalog: ") + ex.what());
        }
        for (const auto& o : out)
            if (o.name == e.name) throw DomainError("catalog: duplicate name '" + e.name + "'");
        (void)build_root_system(e.family, e.rank, e.multiplicities, e.name);
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("catalog: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str());
}

inline const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> c = parse_catalog(builtin_catalog_text());
    return c;
}

/**
 * @brief Root datum of a catalog space.
 * @throws DomainError for an unknown name.
 */
inline RootDatum build_catalog_space(const std::string& name, const std::vector<CatalogEntry>& cat = builtin_catalog()) {
    for (const auto& e : cat)
        if (e.name == name) return build_root_system(e.family, e.rank, e.multiplicities, e.name);
    throw DomainError("unknown space: " + name);
}

inline std::vector<std::string> catalog_names(const std::vector<CatalogEntry>& cat = builtin_catalog()) {
    std::vector<std::string> n;
    for (const auto& e : cat) n.push_back(e.name);
    return n;
}

}  // namespace rmt
