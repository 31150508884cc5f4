#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "indexlab/extensions.hpp"
#include "indexlab/graph.hpp"
#include "indexlab/matrix.hpp"

namespace indexlab {

using json = nlohmann::json;

// Graph JSON: {"n": N, "edges": [[u,v],...]} with 0-based directed pairs;
// undirected inputs list both directions.
inline json graph_to_json(const Graph& g) {
    json j;
    j["n"] = g.n();
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

inline Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph JSON must contain n and edges");
    Graph g(j.at("n").get<std::size_t>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graph edge must be a [u,v] pair");
        g.add_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return g;
}

// Matrix JSON: {"field":"P^K","rows":R,"cols":C,"entries":[[int,...],...]}
// with entries encoded as FieldElement integers.
inline json matrix_to_json(const FFMatrix& m) {
    json j;
    j["field"] = m.field().to_string();
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline FFMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON must contain field, rows, cols, entries");
    FieldSpec f = parse_field_spec(j.at("field").get<std::string>());
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows) throw std::invalid_argument("matrix entries row count mismatch");
    FFMatrix m(f, rows, cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        if (entries[i].size() != cols) throw std::invalid_argument("matrix entries column count mismatch");
        for (std::size_t c = 0; c < cols; ++c) m.set(i, c, entries[i][c].get<FieldElement>());
    }
    return m;
}

// P4 JSON: {"m":M,"n":N,"wants":[j0,...],"knows":[[bool,...],...]}
inline json p4_to_json(const P4Instance& inst) {
    json j;
    j["m"] = inst.m;
    j["n"] = inst.n;
    j["wants"] = inst.wants;
    json rows = json::array();
    for (const auto& row : inst.knows) rows.push_back(row);
    j["knows"] = std::move(rows);
    return j;
}

inline P4Instance p4_from_json(const json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("wants") || !j.contains("knows"))
        throw std::invalid_argument("P4 JSON must contain m, n, wants, knows");
    P4Instance inst;
    inst.m = j.at("m").get<std::size_t>();
    inst.n = j.at("n").get<std::size_t>();
    inst.wants = j.at("wants").get<std::vector<std::size_t>>();
    for (const auto& row : j.at("knows")) inst.knows.push_back(row.get<std::vector<bool>>());
    validate(inst);
    return inst;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

inline json load_json(const std::string& path) {
    return json::parse(read_file(path));
}

/// FNV-1a 64-bit of the raw bytes, hex encoded; the input digest in reports.
inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace indexlab
