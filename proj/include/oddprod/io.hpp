#ifndef ODDPROD_IO_HPP
#define ODDPROD_IO_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "colouring.hpp"
#include "host.hpp"
#include "product.hpp"
#include "report.hpp"
#include "verify.hpp"

namespace oddprod {

inline constexpr int format_version = 1;

namespace detail {

using json = nlohmann::json;

inline json parse_document(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw format_error("format.syntax", "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline void require_version(const json &doc) {
    if (!doc.is_object()) {
        throw format_error("format.syntax", "document must be a JSON object");
    }
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
        throw format_error("format.version", "missing integer format_version");
    }
    if (doc["format_version"].get<std::int64_t>() != format_version) {
        throw format_error("format.version", "unsupported format_version " + doc["format_version"].dump() +
                                                 " (expected " + std::to_string(format_version) + ")");
    }
}

inline const json &field(const json &obj, const char *name, const char *rule) {
    if (!obj.is_object() || !obj.contains(name)) {
        throw format_error(rule, std::string("missing field \"") + name + "\"");
    }
    return obj[name];
}

/// Non-negative integer fitting index_t.
inline index_t to_index(const json &value, const char *rule, const std::string &what) {
    if (!value.is_number_integer()) {
        throw format_error(rule, what + " must be an integer");
    }
    const auto v = value.get<std::int64_t>();
    if (v < 0 || v > static_cast<std::int64_t>(no_vertex - 1)) {
        throw format_error(rule, what + " = " + std::to_string(v) + " is out of range");
    }
    return static_cast<index_t>(v);
}

inline std::vector<std::vector<index_t>> to_lists(const json &value, const char *rule, const std::string &what) {
    if (!value.is_array()) {
        throw format_error(rule, what + " must be a list of lists");
    }
    std::vector<std::vector<index_t>> out;
    out.reserve(value.size());
    for (const auto &row : value) {
        if (!row.is_array()) {
            throw format_error(rule, what + " must be a list of lists");
        }
        auto &dst = out.emplace_back();
        for (const auto &x : row) {
            dst.push_back(to_index(x, rule, what + " entry"));
        }
    }
    return out;
}

inline void throw_report(const validation_report &report, const std::string &context) {
    if (report.ok()) {
        return;
    }
    std::string message = context + ":";
    for (const auto &v : report.violations) {
        message += " [" + v.rule + "] " + v.message + ";";
    }
    throw format_error(report.violations.front().rule, message);
}

inline std::string join_list(const std::vector<index_t> &xs) {
    std::string s = "[";
    for (std::size_t n = 0; n < xs.size(); ++n) {
        s += (n ? ", " : "") + std::to_string(xs[n]);
    }
    return s + "]";
}

} // namespace detail

/// Decodes an instance document and validates host and subgraph fully.
/// Every failure is a format_error whose rule() names the violated rule.
inline product_subgraph load_instance(const std::string &text) {
    const auto doc = detail::parse_document(text);
    detail::require_version(doc);

    const auto &host_doc = detail::field(doc, "host", "host.missing");
    const index_t t = detail::to_index(detail::field(host_doc, "t", "host.t"), "host.t", "host.t");
    const index_t r = detail::to_index(detail::field(host_doc, "r", "host.r"), "host.r", "host.r");
    auto back = detail::to_lists(detail::field(host_doc, "back_cliques", "host.back_cliques"), "host.index",
                                 "host.back_cliques");
    if (back.size() != r) {
        throw format_error("host.r", "host.r = " + std::to_string(r) + " but back_cliques has " +
                                         std::to_string(back.size()) + " entries");
    }
    elim_ordered_host host(t, std::move(back));
    detail::throw_report(validate_host(host), "invalid host");

    const auto &sec_doc = detail::field(doc, "secondary", "secondary.missing");
    const auto &kind_doc = detail::field(sec_doc, "kind", "secondary.kind");
    const std::string kind = kind_doc.is_string() ? kind_doc.get<std::string>() : kind_doc.dump();
    secondary_factor sec;
    try {
        if (kind == "path") {
            sec = secondary_factor::path(detail::to_index(detail::field(sec_doc, "h", "secondary.h"), "secondary.h", "h"));
        } else if (kind == "path_clique") {
            const index_t h = detail::to_index(detail::field(sec_doc, "h", "secondary.h"), "secondary.h", "h");
            const index_t ell =
                detail::to_index(detail::field(sec_doc, "ell", "secondary.ell"), "secondary.ell", "ell");
            sec = secondary_factor::path_clique(h, ell);
        } else if (kind == "general") {
            auto adj = detail::to_lists(detail::field(sec_doc, "adjacency", "secondary.adjacency"),
                                        "secondary.adjacency", "adjacency");
            if (sec_doc.contains("h") &&
                detail::to_index(sec_doc["h"], "secondary.h", "h") != static_cast<index_t>(adj.size())) {
                throw format_error("secondary.h", "h does not match the adjacency list length");
            }
            sec = secondary_factor::general(std::move(adj));
        } else {
            throw format_error("secondary.kind", "unknown secondary kind " + kind);
        }
    } catch (const invalid_parameter &e) {
        throw format_error(e.rule(), e.what());
    }

    const std::size_t arity = sec.has_clique() ? 3 : 2;
    const auto &vertices_doc = detail::field(doc, "vertices", "format.vertices");
    if (!vertices_doc.is_array()) {
        throw format_error("format.vertices", "vertices must be a list");
    }
    std::vector<product_vertex> vertices;
    vertices.reserve(vertices_doc.size());
    for (const auto &v : vertices_doc) {
        if (!v.is_array() || v.size() != arity) {
            throw format_error("format.vertex", "vertex " + v.dump() + " must have " + std::to_string(arity) +
                                                    " coordinates for kind " + kind);
        }
        vertices.push_back({detail::to_index(v[0], "format.vertex", "i"), detail::to_index(v[1], "format.vertex", "j"),
                            arity == 3 ? detail::to_index(v[2], "format.vertex", "k") : 0});
    }
    const auto &edges_doc = detail::field(doc, "edges", "format.edges");
    if (!edges_doc.is_array()) {
        throw format_error("format.edges", "edges must be a list");
    }
    std::vector<edge_t> edges;
    edges.reserve(edges_doc.size());
    for (const auto &e : edges_doc) {
        if (!e.is_array() || e.size() != 2) {
            throw format_error("format.edge", "edge " + e.dump() + " must be a pair of vertex positions");
        }
        const index_t a = detail::to_index(e[0], "format.edge", "edge endpoint");
        const index_t b = detail::to_index(e[1], "format.edge", "edge endpoint");
        // 1-based positions; 0 or past-the-end become dangling endpoints.
        edges.emplace_back(a == 0 ? no_vertex : a - 1, b == 0 ? no_vertex : b - 1);
    }
    product_subgraph g(std::move(host), std::move(sec), std::move(vertices), std::move(edges));
    detail::throw_report(validate_subgraph(g), "invalid subgraph");
    return g;
}

/// Canonical text of an instance: vertices lex-sorted, edges sorted,
/// 1-based indices, one list element per line. Byte-stable.
inline std::string save_instance(const product_subgraph &g) {
    std::ostringstream out;
    const auto &host = g.host();
    const auto &sec = g.secondary();
    out << "{\n  \"format_version\": " << format_version << ",\n";
    out << "  \"host\": {\n    \"t\": " << host.t() << ",\n    \"r\": " << host.r() << ",\n    \"back_cliques\": [";
    for (index_t i = 1; i <= host.r(); ++i) {
        const auto c = host.back_clique(i);
        out << (i > 1 ? ",\n      " : "\n      ") << detail::join_list({c.begin(), c.end()});
    }
    out << (host.r() ? "\n    ]\n  },\n" : "]\n  },\n");
    out << "  \"secondary\": {\n    \"kind\": \"" << to_string(sec.kind()) << "\",\n    \"h\": " << sec.h();
    if (sec.kind() == factor_kind::path_clique) {
        out << ",\n    \"ell\": " << sec.ell();
    }
    if (sec.kind() == factor_kind::general) {
        out << ",\n    \"adjacency\": [";
        for (index_t j = 1; j <= sec.h(); ++j) {
            const auto row = sec.neighbours(j);
            out << (j > 1 ? ",\n      " : "\n      ") << detail::join_list({row.begin(), row.end()});
        }
        out << (sec.h() ? "\n    ]" : "]");
    }
    out << "\n  },\n  \"vertices\": [";
    for (std::size_t x = 0; x < g.n(); ++x) {
        const auto &v = g.vertex(static_cast<index_t>(x));
        out << (x ? ",\n    " : "\n    ") << "[" << v.i << ", " << v.j;
        if (sec.has_clique()) {
            out << ", " << v.k;
        }
        out << "]";
    }
    out << (g.n() ? "\n  ],\n" : "],\n");
    out << "  \"edges\": [";
    for (std::size_t e = 0; e < g.m(); ++e) {
        const auto [a, b] = g.edges()[e];
        out << (e ? ",\n    " : "\n    ") << "[" << a + 1 << ", " << b + 1 << "]";
    }
    out << (g.m() ? "\n  ]\n}\n" : "]\n}\n");
    return out.str();
}

inline colouring load_colouring(const std::string &text) {
    const auto doc = detail::parse_document(text);
    detail::require_version(doc);
    colouring phi;
    phi.palette = detail::to_index(detail::field(doc, "palette", "colouring.palette"), "colouring.palette", "palette");
    const auto &list = detail::field(doc, "colours", "colouring.colours");
    if (!list.is_array()) {
        throw format_error("colouring.colours", "colours must be a list");
    }
    for (const auto &c : list) {
        const index_t value = detail::to_index(c, "colouring.range", "colour");
        if (value < 1 || value > phi.palette) {
            throw format_error("colouring.range", "colour " + std::to_string(value) + " outside 1.." +
                                                      std::to_string(phi.palette));
        }
        phi.colours.push_back(value);
    }
    return phi;
}

/// Throws format_error unless phi assigns one colour per vertex of g.
inline void require_matching(const product_subgraph &g, const colouring &phi) {
    if (phi.colours.size() != g.n()) {
        throw format_error("colouring.length", "colouring has " + std::to_string(phi.colours.size()) +
                                                   " entries but the instance has " + std::to_string(g.n()) +
                                                   " vertices");
    }
}

inline std::string save_colouring(const colouring &phi) {
    std::ostringstream out;
    out << "{\n  \"format_version\": " << format_version << ",\n  \"palette\": " << phi.palette
        << ",\n  \"colours\": [";
    for (std::size_t x = 0; x < phi.colours.size(); ++x) {
        out << (x ? ", " : "") << phi.colours[x];
    }
    out << "]\n}\n";
    return out.str();
}

/// A plain graph document {"n": N, "edges": [[a, b], ...]} with 1-based vertices.
inline generic_graph load_generic_graph(const std::string &text) {
    const auto doc = detail::parse_document(text);
    generic_graph g;
    g.n = detail::to_index(detail::field(doc, "n", "graph.n"), "graph.n", "n");
    const auto &edges = detail::field(doc, "edges", "graph.edges");
    if (!edges.is_array()) {
        throw format_error("graph.edges", "edges must be a list");
    }
    for (const auto &e : edges) {
        if (!e.is_array() || e.size() != 2) {
            throw format_error("graph.edges", "edge " + e.dump() + " must be a pair");
        }
        g.edges.emplace_back(detail::to_index(e[0], "graph.index", "endpoint"),
                             detail::to_index(e[1], "graph.index", "endpoint"));
    }
    detail::throw_report(validate_generic(g), "invalid graph");
    return g;
}

/// Graphviz text with one node per vertex labelled by its coordinates and,
/// when a colouring is given, its colour index as a node attribute.
inline std::string export_dot(const product_subgraph &g, const colouring *phi = nullptr) {
    std::ostringstream out;
    out << "graph G {\n";
    for (index_t x = 0; x < g.n(); ++x) {
        out << "  n" << x + 1 << " [label=\"" << to_string(g.vertex(x)) << "\"";
        if (phi != nullptr && x < phi->colours.size()) {
            out << ", colour=" << phi->colours[x];
        }
        out << "];\n";
    }
    for (const auto &[a, b] : g.edges()) {
        out << "  n" << a + 1 << " -- n" << b + 1 << ";\n";
    }
    out << "}\n";
    return out.str();
}

struct run_metadata {
    std::string variant;
    index_t t = 0;
    index_t h = 0;
    index_t ell = 1;
    index_t delta = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    colour_t palette = 0;
    double millis = 0.0;
};

inline const char *stats_csv_header() {
    return "variant,t,h,ell,delta,n,m,seed,palette,colours_used,max_X,max_Y,max_XY,millis";
}

inline run_metadata describe_run(const product_subgraph &g, std::string variant, std::uint64_t seed, colour_t palette,
                                 double millis) {
    return {std::move(variant), g.host().t(), g.secondary().h(), g.secondary().ell(), g.secondary().delta(),
            g.n(),              g.m(),        seed,              palette,             millis};
}

inline std::string stats_csv_row(const run_metadata &meta, const run_stats &stats) {
    std::ostringstream out;
    out << meta.variant << ',' << meta.t << ',' << meta.h << ',' << meta.ell << ',' << meta.delta << ',' << meta.n
        << ',' << meta.m << ',' << meta.seed << ',' << meta.palette << ',' << stats.colours_used << ','
        << stats.max_x << ',' << stats.max_y << ',' << stats.max_xy << ',';
    out.setf(std::ios::fixed);
    out.precision(3);
    out << meta.millis;
    return out.str();
}

/// Appends one newline-terminated row, writing the header first when the
/// file is new or empty. Callers serialise concurrent appends.
inline void append_stats_csv(const std::filesystem::path &path, const run_metadata &meta, const run_stats &stats) {
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw invalid_parameter("io.open", "cannot open " + path.string() + " for appending");
    }
    if (fresh) {
        out << stats_csv_header() << '\n';
    }
    out << stats_csv_row(meta, stats) << '\n';
}

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw invalid_parameter("io.open", "cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw invalid_parameter("io.open", "cannot write " + path.string());
    }
    out << text;
}

} // namespace oddprod

#endif
