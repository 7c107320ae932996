#ifndef ODDPROD_VERIFY_HPP
#define ODDPROD_VERIFY_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "colouring.hpp"
#include "product.hpp"
#include "report.hpp"

namespace oddprod {

namespace detail {

inline void require_total(const product_subgraph &g, const colouring &phi) {
    if (phi.colours.size() != g.n()) {
        throw contract_error("contract.colouring", "colouring has " + std::to_string(phi.colours.size()) +
                                                       " entries for " + std::to_string(g.n()) + " vertices");
    }
    for (std::size_t x = 0; x < phi.colours.size(); ++x) {
        const colour_t c = phi.colours[x];
        if (c < 1 || c > phi.palette) {
            throw contract_error("contract.colouring", "vertex " + to_string(g.vertex(static_cast<index_t>(x))) +
                                                           " has colour " + std::to_string(c) +
                                                           " outside 1.." + std::to_string(phi.palette));
        }
    }
}

} // namespace detail

inline validation_report verify_proper(const product_subgraph &g, const colouring &phi) {
    detail::require_total(g, phi);
    validation_report report;
    for (const auto &[a, b] : g.edges()) {
        if (b == no_vertex || a == b) {
            continue;
        }
        if (phi.colours[a] == phi.colours[b]) {
            report.add("proper.monochromatic", {a + 1, b + 1},
                       "edge " + to_string(g.vertex(a)) + "-" + to_string(g.vertex(b)) + " has both ends coloured " +
                           std::to_string(phi.colours[a]));
        }
    }
    return report;
}

/// For each vertex, a colour of odd multiplicity in its neighbourhood;
/// 0 for isolated vertices, which need none.
using odd_witness = std::vector<colour_t>;

struct odd_result {
    validation_report report;
    odd_witness witness;
};

inline odd_result verify_odd(const product_subgraph &g, const colouring &phi) {
    detail::require_total(g, phi);
    odd_result out;
    out.witness.assign(g.n(), 0);
    std::vector<std::size_t> count(static_cast<std::size_t>(phi.palette) + 1, 0);
    for (index_t v = 0; v < g.n(); ++v) {
        const auto nbrs = g.neighbours(v);
        if (nbrs.empty()) {
            continue;
        }
        for (index_t w : nbrs) {
            ++count[phi.colours[w]];
        }
        for (index_t w : nbrs) {
            if (count[phi.colours[w]] % 2 == 1) {
                out.witness[v] = phi.colours[w];
                break;
            }
        }
        if (out.witness[v] == 0) {
            std::string hist;
            for (index_t w : nbrs) {
                const colour_t c = phi.colours[w];
                if (count[c] != 0) {
                    hist += (hist.empty() ? "" : ", ") + std::to_string(c) + ":" + std::to_string(count[c]);
                    count[c] = 0;
                }
            }
            out.report.add("odd.no_odd_colour", {v + 1},
                           "no colour occurs an odd number of times around " + to_string(g.vertex(v)) +
                               " (histogram " + hist + ")");
        }
        for (index_t w : nbrs) {
            count[phi.colours[w]] = 0;
        }
    }
    return out;
}

/// Checks that every support set C_u meeting V(G) is rainbow under phi.
/// Candidate u are found by inverting the support-set shape around each
/// G-vertex, so the work is proportional to G rather than the product.
inline validation_report verify_support_distinct(const product_subgraph &g, const colouring &phi) {
    detail::require_total(g, phi);
    validation_report report;
    const auto &sec = g.secondary();
    std::vector<std::uint64_t> keys;
    std::vector<product_vertex> owners;
    for (index_t x = 0; x < g.n(); ++x) {
        const auto &w = g.vertex(x);
        if (x > 0 && g.vertex(x - 1).i == w.i && g.vertex(x - 1).j == w.j) {
            continue;
        }
        visit_support_owners(g.host(), sec, w.i, w.j, [&](const product_vertex &u) { owners.push_back(u); });
    }
    std::sort(owners.begin(), owners.end());
    owners.erase(std::unique(owners.begin(), owners.end()), owners.end());

    std::vector<std::pair<colour_t, index_t>> members;
    for (const auto &u : owners) {
        members.clear();
        visit_support(g, u, [&](index_t w) { members.emplace_back(phi.colours[w], w); });
        if (members.size() < 2) {
            continue;
        }
        std::sort(members.begin(), members.end());
        for (std::size_t a = 1; a < members.size(); ++a) {
            if (members[a].first == members[a - 1].first) {
                const index_t p = members[a - 1].second;
                const index_t q = members[a].second;
                report.add("support.collision", {u.i, u.j, p + 1, q + 1},
                           "support set of " + to_string(u) + " repeats colour " + std::to_string(members[a].first) +
                               " on " + to_string(g.vertex(p)) + " and " + to_string(g.vertex(q)));
            }
        }
    }
    return report;
}

/// A plain simple graph on vertices 1..n, independent of any product
/// structure. Input to the exact oracle.
struct generic_graph {
    index_t n = 0;
    std::vector<edge_t> edges;
};

inline validation_report validate_generic(const generic_graph &g) {
    validation_report report;
    std::vector<edge_t> seen;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.edges[e];
        const auto idx = static_cast<std::int64_t>(e + 1);
        if (a < 1 || a > g.n || b < 1 || b > g.n) {
            report.add("graph.index", {idx}, "edge endpoint out of range");
            continue;
        }
        if (a == b) {
            report.add("graph.loop", {idx}, "loop at " + std::to_string(a));
            continue;
        }
        seen.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        report.add("graph.duplicate", {}, "duplicate edge");
    }
    return report;
}

/// G with its product structure forgotten; index x becomes vertex x+1.
inline generic_graph to_generic(const product_subgraph &g) {
    generic_graph out;
    out.n = static_cast<index_t>(g.n());
    for (const auto &[a, b] : g.edges()) {
        out.edges.emplace_back(a + 1, b + 1);
    }
    return out;
}

namespace detail {

class odd_search {
public:
    odd_search(const generic_graph &g, colour_t colours) : n_(g.n), colours_(colours), adj_(g.n) {
        for (const auto &[a, b] : g.edges) {
            adj_[a - 1].push_back(b - 1);
            adj_[b - 1].push_back(a - 1);
        }
    }

    [[nodiscard]] index_t n() const noexcept { return n_; }

    /// Canonical partial assignments of the first `depth` vertices.
    void prefixes(index_t depth, std::vector<std::vector<colour_t>> &out) {
        std::vector<colour_t> col(n_, 0);
        collect(0, 0, depth, col, out);
    }

    /// Completes `prefix` (canonical, proper) to a proper odd colouring.
    bool solve(const std::vector<colour_t> &prefix, const std::atomic<bool> &stop) {
        std::vector<colour_t> col(n_, 0);
        colour_t top = 0;
        for (std::size_t v = 0; v < prefix.size(); ++v) {
            col[v] = prefix[v];
            top = std::max(top, prefix[v]);
        }
        std::vector<std::size_t> count(static_cast<std::size_t>(colours_) + 1, 0);
        return extend(static_cast<index_t>(prefix.size()), top, col, count, stop);
    }

private:
    [[nodiscard]] bool fits(index_t v, colour_t c, const std::vector<colour_t> &col) const {
        for (index_t w : adj_[v]) {
            if (w < v && col[w] == c) {
                return false;
            }
        }
        return true;
    }

    void collect(index_t v, colour_t top, index_t depth, std::vector<colour_t> &col,
                 std::vector<std::vector<colour_t>> &out) {
        if (v == depth || v == n_) {
            out.emplace_back(col.begin(), col.begin() + v);
            return;
        }
        const colour_t limit = std::min<colour_t>(colours_, top + 1);
        for (colour_t c = 1; c <= limit; ++c) {
            if (fits(v, c, col)) {
                col[v] = c;
                collect(v + 1, std::max(top, c), depth, col, out);
                col[v] = 0;
            }
        }
    }

    bool odd_everywhere(const std::vector<colour_t> &col, std::vector<std::size_t> &count) const {
        for (index_t v = 0; v < n_; ++v) {
            if (adj_[v].empty()) {
                continue;
            }
            for (index_t w : adj_[v]) {
                ++count[col[w]];
            }
            bool odd = false;
            for (index_t w : adj_[v]) {
                odd = odd || count[col[w]] % 2 == 1;
                count[col[w]] = 0;
            }
            if (!odd) {
                return false;
            }
        }
        return true;
    }

    bool extend(index_t v, colour_t top, std::vector<colour_t> &col, std::vector<std::size_t> &count,
                const std::atomic<bool> &stop) {
        if (stop.load(std::memory_order_relaxed)) {
            return false;
        }
        if (v == n_) {
            return odd_everywhere(col, count);
        }
        const colour_t limit = std::min<colour_t>(colours_, top + 1);
        for (colour_t c = 1; c <= limit; ++c) {
            if (fits(v, c, col)) {
                col[v] = c;
                if (extend(v + 1, std::max(top, c), col, count, stop)) {
                    return true;
                }
            }
        }
        col[v] = 0;
        return false;
    }

    index_t n_;
    colour_t colours_;
    std::vector<std::vector<index_t>> adj_;
};

inline bool odd_colourable(const generic_graph &g, colour_t colours, unsigned workers) {
    odd_search search(g, colours);
    std::atomic<bool> found{false};
    if (workers <= 1 || g.n < 4) {
        return search.solve({}, found);
    }
    std::vector<std::vector<colour_t>> prefixes;
    search.prefixes(std::min<index_t>(g.n, 4), prefixes);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        odd_search local(g, colours);
        for (std::size_t p = next++; p < prefixes.size() && !found; p = next++) {
            if (local.solve(prefixes[p], found)) {
                found = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned n = 0; n < workers; ++n) {
        pool.emplace_back(work);
    }
    for (auto &t : pool) {
        t.join();
    }
    return found;
}

} // namespace detail

/// Smallest c <= max_colours admitting a proper odd colouring of g, by
/// exhaustive backtracking. Properness and canonical colour order prune the
/// search; oddness is only decidable once every vertex is coloured, so it is
/// checked at the leaves. Refuses graphs with more than vertex_cap vertices.
inline std::optional<colour_t> exact_odd_chromatic(const generic_graph &g, colour_t max_colours,
                                                   index_t vertex_cap = 12, unsigned workers = 1) {
    if (g.n > vertex_cap) {
        throw invalid_parameter("oracle.cap", "oracle refuses " + std::to_string(g.n) +
                                                  " vertices (cap " + std::to_string(vertex_cap) + ")");
    }
    if (const auto report = validate_generic(g); !report.ok()) {
        throw invalid_parameter(report.violations.front().rule, report.violations.front().message);
    }
    if (g.n == 0) {
        return colour_t{0};
    }
    for (colour_t c = 1; c <= max_colours; ++c) {
        if (detail::odd_colourable(g, c, workers)) {
            return c;
        }
    }
    return std::nullopt;
}

} // namespace oddprod

#endif
