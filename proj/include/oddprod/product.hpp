#ifndef ODDPROD_PRODUCT_HPP
#define ODDPROD_PRODUCT_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "host.hpp"
#include "report.hpp"

namespace oddprod {

enum class factor_kind { path, path_clique, general };

inline const char *to_string(factor_kind kind) {
    switch (kind) {
    case factor_kind::path: return "path";
    case factor_kind::path_clique: return "path_clique";
    case factor_kind::general: return "general";
    }
    return "?";
}

/// Adjacency lists over vertices 1..h; entry j-1 holds the neighbours of j.
using adjacency_list = std::vector<std::vector<index_t>>;

/// The second product factor: a path P on h vertices, P with a clique
/// K_ell attached coordinate-wise, or an arbitrary bounded-degree graph I.
///
/// Path indices 0 and h+1 play the role of sentinel vertices. They are never
/// materialised; any coordinate outside 1..h simply contributes nothing.
class secondary_factor {
public:
    secondary_factor() = default;

    static secondary_factor path(index_t h) {
        secondary_factor f;
        f.kind_ = factor_kind::path;
        f.h_ = h;
        f.adj_.resize(h);
        for (index_t j = 1; j <= h; ++j) {
            if (j > 1) {
                f.adj_[j - 1].push_back(j - 1);
            }
            if (j < h) {
                f.adj_[j - 1].push_back(j + 1);
            }
        }
        f.finish();
        return f;
    }

    static secondary_factor path_clique(index_t h, index_t ell) {
        if (ell < 1) {
            throw invalid_parameter("secondary.ell", "clique factor needs ell >= 1");
        }
        secondary_factor f = path(h);
        f.kind_ = factor_kind::path_clique;
        f.ell_ = ell;
        return f;
    }

    /// Throws invalid_parameter unless the lists are symmetric, loop-free,
    /// in range and free of duplicates.
    static secondary_factor general(adjacency_list adjacency) {
        secondary_factor f;
        f.kind_ = factor_kind::general;
        f.h_ = static_cast<index_t>(adjacency.size());
        for (auto &row : adjacency) {
            std::sort(row.begin(), row.end());
        }
        for (index_t j = 1; j <= f.h_; ++j) {
            const auto &row = adjacency[j - 1];
            for (std::size_t n = 0; n < row.size(); ++n) {
                const index_t b = row[n];
                if (b < 1 || b > f.h_) {
                    throw invalid_parameter("secondary.adjacency",
                                            "neighbour " + std::to_string(b) + " of " + std::to_string(j) +
                                                " is out of range");
                }
                if (b == j) {
                    throw invalid_parameter("secondary.adjacency", "loop at vertex " + std::to_string(j));
                }
                if (n > 0 && row[n - 1] == b) {
                    throw invalid_parameter("secondary.adjacency",
                                            "duplicate neighbour " + std::to_string(b) + " of " + std::to_string(j));
                }
                const auto &back = adjacency[b - 1];
                if (!std::binary_search(back.begin(), back.end(), j)) {
                    throw invalid_parameter("secondary.adjacency",
                                            "edge " + std::to_string(j) + "-" + std::to_string(b) +
                                                " is not symmetric");
                }
            }
        }
        f.adj_ = std::move(adjacency);
        f.finish();
        return f;
    }

    [[nodiscard]] factor_kind kind() const noexcept { return kind_; }
    [[nodiscard]] index_t h() const noexcept { return h_; }
    /// Clique order; 1 for factors without a clique coordinate.
    [[nodiscard]] index_t ell() const noexcept { return ell_; }
    [[nodiscard]] index_t delta() const noexcept { return delta_; }
    [[nodiscard]] bool has_clique() const noexcept { return kind_ == factor_kind::path_clique; }

    [[nodiscard]] bool contains(index_t j) const noexcept { return j >= 1 && j <= h_; }

    [[nodiscard]] std::span<const index_t> neighbours(index_t j) const { return adj_[j - 1]; }

    /// Closed radius-2 ball around j, sorted, j included.
    [[nodiscard]] std::span<const index_t> ball2(index_t j) const {
        return {ball_.data() + ball_offset_[j - 1], ball_.data() + ball_offset_[j]};
    }

    [[nodiscard]] bool adjacent(index_t a, index_t b) const {
        if (!contains(a) || !contains(b) || a == b) {
            return false;
        }
        const auto &row = adj_[a - 1];
        return std::binary_search(row.begin(), row.end(), b);
    }

    [[nodiscard]] const adjacency_list &adjacency() const noexcept { return adj_; }

    friend bool operator==(const secondary_factor &a, const secondary_factor &b) {
        return a.kind_ == b.kind_ && a.h_ == b.h_ && a.ell_ == b.ell_ && a.adj_ == b.adj_;
    }

private:
    void finish() {
        delta_ = 0;
        for (const auto &row : adj_) {
            delta_ = std::max<index_t>(delta_, static_cast<index_t>(row.size()));
        }
        ball_offset_.assign(1, 0);
        std::vector<index_t> scratch;
        for (index_t j = 1; j <= h_; ++j) {
            scratch.assign(1, j);
            for (index_t b : adj_[j - 1]) {
                scratch.push_back(b);
                scratch.insert(scratch.end(), adj_[b - 1].begin(), adj_[b - 1].end());
            }
            std::sort(scratch.begin(), scratch.end());
            scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
            ball_.insert(ball_.end(), scratch.begin(), scratch.end());
            ball_offset_.push_back(ball_.size());
        }
    }

    factor_kind kind_ = factor_kind::path;
    index_t h_ = 0;
    index_t ell_ = 1;
    index_t delta_ = 0;
    adjacency_list adj_;
    std::vector<index_t> ball_;
    std::vector<std::size_t> ball_offset_{0};
};

/// A vertex (x_i, y_j) or (x_i, y_j, z_k) of the product. k is 0 for
/// factors without a clique coordinate. Ordering is lexicographic in (i, j, k).
struct product_vertex {
    index_t i = 0;
    index_t j = 0;
    index_t k = 0;

    friend auto operator<=>(const product_vertex &, const product_vertex &) = default;
};

inline std::string to_string(const product_vertex &v) {
    std::string s = "(" + std::to_string(v.i) + "," + std::to_string(v.j);
    if (v.k != 0) {
        s += "," + std::to_string(v.k);
    }
    return s + ")";
}

inline bool in_product(const elim_ordered_host &host, const secondary_factor &sec, const product_vertex &v) {
    if (!host.contains(v.i) || !sec.contains(v.j)) {
        return false;
    }
    return sec.has_clique() ? (v.k >= 1 && v.k <= sec.ell()) : v.k == 0;
}

inline void require_in_product(const elim_ordered_host &host, const secondary_factor &sec, const product_vertex &v) {
    if (!in_product(host, sec, v)) {
        throw invalid_vertex("product.vertex", "product vertex " + to_string(v) + " is outside the factors");
    }
}

/// Strong-product adjacency: distinct, and in every coordinate equal or
/// adjacent in that factor. The clique coordinate is always equal or adjacent.
inline bool product_adjacent(const elim_ordered_host &host, const secondary_factor &sec, const product_vertex &u,
                             const product_vertex &v) {
    require_in_product(host, sec, u);
    require_in_product(host, sec, v);
    if (u == v) {
        return false;
    }
    const bool host_ok = u.i == v.i || host.adjacent(u.i, v.i);
    const bool sec_ok = u.j == v.j || sec.adjacent(u.j, v.j);
    return host_ok && sec_ok;
}

/// Lex-order-preserving linear key of a product vertex.
inline std::uint64_t product_key(const secondary_factor &sec, index_t i, index_t j, index_t k) {
    const std::uint64_t kk = sec.has_clique() ? k : 1;
    return ((static_cast<std::uint64_t>(i) - 1) * sec.h() + (j - 1)) * sec.ell() + (kk - 1);
}

inline std::uint64_t product_key(const secondary_factor &sec, const product_vertex &v) {
    return product_key(sec, v.i, v.j, v.k);
}

inline std::uint64_t product_space_size(const elim_ordered_host &host, const secondary_factor &sec) {
    return static_cast<std::uint64_t>(host.r()) * sec.h() * sec.ell();
}

inline constexpr index_t no_vertex = std::numeric_limits<index_t>::max();

using edge_t = std::pair<index_t, index_t>;

/// The input graph G: an explicit (not necessarily induced) subgraph of the
/// strong product of `host` and `secondary`.
///
/// Vertices are kept in lexicographic order, so vertex indices (0-based,
/// positions in `vertices()`) follow lex order. Edges are stored as index
/// pairs (a < b), sorted. Endpoints that do not name a vertex are stored as
/// `no_vertex` and reported by validate_subgraph.
class product_subgraph {
public:
    product_subgraph() = default;

    product_subgraph(elim_ordered_host host, secondary_factor secondary, std::vector<product_vertex> vertices,
                     std::vector<edge_t> edges)
        : host_(std::move(host)), sec_(std::move(secondary)), vertices_(std::move(vertices)),
          edges_(std::move(edges)) {
        const std::size_t n = vertices_.size();
        if (!std::is_sorted(vertices_.begin(), vertices_.end())) {
            std::vector<index_t> order(n);
            for (index_t x = 0; x < n; ++x) {
                order[x] = x;
            }
            std::stable_sort(order.begin(), order.end(),
                             [&](index_t a, index_t b) { return vertices_[a] < vertices_[b]; });
            std::vector<index_t> where(n);
            std::vector<product_vertex> sorted(n);
            for (index_t x = 0; x < n; ++x) {
                where[order[x]] = x;
                sorted[x] = vertices_[order[x]];
            }
            vertices_ = std::move(sorted);
            for (auto &[a, b] : edges_) {
                a = a < n ? where[a] : no_vertex;
                b = b < n ? where[b] : no_vertex;
            }
        }
        for (auto &[a, b] : edges_) {
            if (a >= n) {
                a = no_vertex;
            }
            if (b >= n) {
                b = no_vertex;
            }
            if (a > b) {
                std::swap(a, b);
            }
        }
        std::sort(edges_.begin(), edges_.end());
        build_index();
        build_adjacency();
    }

    [[nodiscard]] const elim_ordered_host &host() const noexcept { return host_; }
    [[nodiscard]] const secondary_factor &secondary() const noexcept { return sec_; }
    [[nodiscard]] factor_kind kind() const noexcept { return sec_.kind(); }

    [[nodiscard]] std::size_t n() const noexcept { return vertices_.size(); }
    [[nodiscard]] std::size_t m() const noexcept { return edges_.size(); }
    [[nodiscard]] const std::vector<product_vertex> &vertices() const noexcept { return vertices_; }
    [[nodiscard]] const product_vertex &vertex(index_t x) const { return vertices_[x]; }
    [[nodiscard]] const std::vector<edge_t> &edges() const noexcept { return edges_; }

    [[nodiscard]] std::span<const index_t> neighbours(index_t x) const {
        return {adj_.data() + offset_[x], adj_.data() + offset_[x + 1]};
    }
    [[nodiscard]] std::size_t degree(index_t x) const { return offset_[x + 1] - offset_[x]; }

    /// Index of the G-vertex with the given coordinates, or no_vertex.
    /// Coordinates outside 1..h (sentinels) are never present.
    [[nodiscard]] index_t find(index_t i, index_t j, index_t k) const {
        if (i < 1 || i > host_.r() || j < 1 || j > sec_.h()) {
            return no_vertex;
        }
        if (sec_.has_clique() && (k < 1 || k > sec_.ell())) {
            return no_vertex;
        }
        return find_key(product_key(sec_, i, j, k));
    }

    [[nodiscard]] index_t find(const product_vertex &v) const {
        if (!sec_.has_clique() && v.k != 0) {
            return no_vertex;
        }
        return find(v.i, v.j, v.k);
    }

    [[nodiscard]] bool contains(const product_vertex &v) const { return find(v) != no_vertex; }

    /// Makes a product vertex with the clique coordinate filled when present.
    [[nodiscard]] product_vertex make_vertex(index_t i, index_t j, index_t k) const {
        return {i, j, sec_.has_clique() ? k : 0};
    }

private:
    [[nodiscard]] index_t find_key(std::uint64_t key) const {
        if (dense_) {
            return key < dense_index_.size() ? dense_index_[key] : no_vertex;
        }
        const auto it = sparse_index_.find(key);
        return it == sparse_index_.end() ? no_vertex : it->second;
    }

    void build_index() {
        const std::uint64_t space = product_space_size(host_, sec_);
        dense_ = space <= std::max<std::uint64_t>(std::uint64_t{1} << 22, 8 * vertices_.size());
        if (dense_) {
            dense_index_.assign(space, no_vertex);
        } else {
            sparse_index_.reserve(vertices_.size());
        }
        for (index_t x = 0; x < vertices_.size(); ++x) {
            const auto &v = vertices_[x];
            if (!in_product(host_, sec_, v)) {
                continue;
            }
            const auto key = product_key(sec_, v);
            if (dense_) {
                if (dense_index_[key] == no_vertex) {
                    dense_index_[key] = x;
                }
            } else {
                sparse_index_.try_emplace(key, x);
            }
        }
    }

    void build_adjacency() {
        const std::size_t n = vertices_.size();
        offset_.assign(n + 1, 0);
        auto usable = [&](std::size_t e) {
            const auto [a, b] = edges_[e];
            return b != no_vertex && a != b && (e == 0 || edges_[e - 1] != edges_[e]);
        };
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (usable(e)) {
                ++offset_[edges_[e].first + 1];
                ++offset_[edges_[e].second + 1];
            }
        }
        for (std::size_t x = 0; x < n; ++x) {
            offset_[x + 1] += offset_[x];
        }
        adj_.resize(offset_[n]);
        std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (usable(e)) {
                const auto [a, b] = edges_[e];
                adj_[fill[a]++] = b;
                adj_[fill[b]++] = a;
            }
        }
    }

    elim_ordered_host host_;
    secondary_factor sec_;
    std::vector<product_vertex> vertices_;
    std::vector<edge_t> edges_;
    std::vector<std::size_t> offset_{0};
    std::vector<index_t> adj_;
    bool dense_ = true;
    std::vector<index_t> dense_index_;
    std::unordered_map<std::uint64_t, index_t> sparse_index_;
};

/// Checks that G is a simple subgraph of the product: coordinates in range,
/// no duplicate vertices, edge endpoints present, no loops or duplicate
/// edges, every edge product-adjacent.
inline validation_report validate_subgraph(const product_subgraph &g) {
    validation_report report;
    const auto &host = g.host();
    const auto &sec = g.secondary();
    for (index_t x = 0; x < g.n(); ++x) {
        const auto &v = g.vertex(x);
        if (!in_product(host, sec, v)) {
            report.add("subgraph.vertex_range", {x + 1}, "vertex " + to_string(v) + " is outside the product");
        }
        if (x > 0 && g.vertex(x - 1) == v) {
            report.add("subgraph.duplicate_vertex", {x + 1}, "vertex " + to_string(v) + " listed twice");
        }
    }
    const auto &edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [a, b] = edges[e];
        const auto idx = static_cast<std::int64_t>(e + 1);
        if (a == no_vertex || b == no_vertex) {
            report.add("subgraph.endpoint", {idx}, "edge endpoint is not a vertex of G");
            continue;
        }
        const auto &u = g.vertex(a);
        const auto &v = g.vertex(b);
        if (a == b) {
            report.add("subgraph.loop", {idx}, "loop at " + to_string(u));
            continue;
        }
        if (e > 0 && edges[e - 1] == edges[e]) {
            report.add("subgraph.duplicate_edge", {idx}, "duplicate edge " + to_string(u) + "-" + to_string(v));
            continue;
        }
        if (!in_product(host, sec, u) || !in_product(host, sec, v)) {
            continue;
        }
        if (!product_adjacent(host, sec, u, v)) {
            report.add("subgraph.not_adjacent", {idx},
                       "edge " + to_string(u) + "-" + to_string(v) + " is not a strong-product edge");
        }
    }
    return report;
}

namespace detail {

// Calls f(a, jj) for every host index a in `hosts` and every secondary
// index jj in [lo, hi] that falls inside 1..h.
template <typename F>
void for_each_path_window(const secondary_factor &sec, std::span<const index_t> hosts, std::int64_t lo,
                          std::int64_t hi, F &&f) {
    lo = std::max<std::int64_t>(lo, 1);
    hi = std::min<std::int64_t>(hi, sec.h());
    for (index_t a : hosts) {
        for (std::int64_t jj = lo; jj <= hi; ++jj) {
            f(a, static_cast<index_t>(jj));
        }
    }
}

template <typename F>
void emit_layer(const product_subgraph &g, index_t a, index_t jj, F &&f) {
    if (g.secondary().has_clique()) {
        for (index_t k = 1; k <= g.secondary().ell(); ++k) {
            if (const index_t w = g.find(a, jj, k); w != no_vertex) {
                f(w);
            }
        }
    } else if (const index_t w = g.find(a, jj, 0); w != no_vertex) {
        f(w);
    }
}

} // namespace detail

/// Calls f(w) for every G-vertex index w in the support set C_v. Each member
/// is visited exactly once; v itself need not be a vertex of G.
template <typename F>
void visit_support(const product_subgraph &g, const product_vertex &v, F &&f) {
    const auto &host = g.host();
    const auto &sec = g.secondary();
    const auto back = host.back_clique(v.i);
    const std::int64_t j = v.j;
    auto emit = [&](index_t a, index_t jj) { detail::emit_layer(g, a, jj, f); };
    const index_t self[] = {v.i};
    switch (sec.kind()) {
    case factor_kind::path:
    case factor_kind::path_clique:
        detail::for_each_path_window(sec, back, j - 1, j + 1, emit);
        detail::for_each_path_window(sec, self, j - 1, j, emit);
        break;
    case factor_kind::general: {
        auto closed_neighbourhood = [&](index_t a) {
            emit(a, v.j);
            for (index_t b : sec.neighbours(v.j)) {
                emit(a, b);
            }
        };
        closed_neighbourhood(v.i);
        for (index_t a : back) {
            closed_neighbourhood(a);
        }
        break;
    }
    }
}

/// Calls f(w) for every G-vertex index w in the risk set R(v), v excluded.
template <typename F>
void visit_risk(const product_subgraph &g, const product_vertex &v, F &&f) {
    const auto &host = g.host();
    const auto &sec = g.secondary();
    const auto back = host.back_clique(v.i);
    const std::int64_t j = v.j;
    const index_t self_index = g.find(v);
    auto filtered = [&](index_t w) {
        if (w != self_index) {
            f(w);
        }
    };
    auto emit = [&](index_t a, index_t jj) { detail::emit_layer(g, a, jj, filtered); };
    const index_t self[] = {v.i};
    switch (sec.kind()) {
    case factor_kind::path:
        detail::for_each_path_window(sec, back, j - 2, j + 2, emit);
        detail::for_each_path_window(sec, self, j - 2, j - 1, emit);
        break;
    case factor_kind::path_clique:
        detail::for_each_path_window(sec, back, j - 2, j + 2, emit);
        detail::for_each_path_window(sec, self, j - 2, j, emit);
        break;
    case factor_kind::general:
        for (index_t b : sec.ball2(v.j)) {
            emit(v.i, b);
        }
        for (index_t a : back) {
            for (index_t b : sec.ball2(v.j)) {
                emit(a, b);
            }
        }
        break;
    }
}

namespace detail {

template <typename Visit>
std::vector<product_vertex> collect(const product_subgraph &g, Visit visit) {
    std::vector<index_t> idx;
    visit([&](index_t w) { idx.push_back(w); });
    std::sort(idx.begin(), idx.end());
    std::vector<product_vertex> out;
    out.reserve(idx.size());
    for (index_t w : idx) {
        out.push_back(g.vertex(w));
    }
    return out;
}

} // namespace detail

/// The support set C_v intersected with V(G), lexicographically sorted.
/// Throws invalid_vertex if v lies outside the product.
inline std::vector<product_vertex> support_set(const product_subgraph &g, const product_vertex &v) {
    require_in_product(g.host(), g.secondary(), v);
    return detail::collect(g, [&](auto &&f) { visit_support(g, v, f); });
}

/// The risk set R(v) intersected with V(G), v excluded, lexicographically
/// sorted. Throws invalid_vertex if v lies outside the product.
inline std::vector<product_vertex> risk_set(const product_subgraph &g, const product_vertex &v) {
    require_in_product(g.host(), g.secondary(), v);
    return detail::collect(g, [&](auto &&f) { visit_risk(g, v, f); });
}

/// Every product vertex u whose support set could contain the vertex at
/// coordinates (i, j). For the clique factor C_u does not depend on the
/// clique coordinate of u, so only k = 1 representatives are emitted.
template <typename F>
void visit_support_owners(const elim_ordered_host &host, const secondary_factor &sec, index_t i, index_t j, F &&f) {
    const index_t k = sec.has_clique() ? 1 : 0;
    auto owners_of_host = [&](auto &&emit_j) {
        emit_j(i);
        for (index_t m : host.forward(i)) {
            emit_j(m);
        }
    };
    switch (sec.kind()) {
    case factor_kind::path:
    case factor_kind::path_clique:
        owners_of_host([&](index_t a) {
            // Same host vertex: C_(a,j') holds (a,j') and (a,j'-1).
            // Later host vertex: C_(a,j') holds C_a x {j'-1, j', j'+1}.
            const std::int64_t lo = a == i ? j : std::int64_t{j} - 1;
            const std::int64_t hi = std::int64_t{j} + 1;
            for (std::int64_t jj = std::max<std::int64_t>(lo, 1); jj <= std::min<std::int64_t>(hi, sec.h()); ++jj) {
                f(product_vertex{a, static_cast<index_t>(jj), k});
            }
        });
        break;
    case factor_kind::general:
        owners_of_host([&](index_t a) {
            f(product_vertex{a, j, k});
            for (index_t b : sec.neighbours(j)) {
                f(product_vertex{a, b, k});
            }
        });
        break;
    }
}

/// Samples a subgraph of the product: each product vertex is kept with
/// probability q_vertex, then each product edge between kept vertices is
/// kept with probability p_edge. Deterministic for a given seed.
inline product_subgraph sample_subgraph(const elim_ordered_host &host, const secondary_factor &sec, double q_vertex,
                                        double p_edge, std::uint64_t seed) {
    if (!(q_vertex >= 0.0 && q_vertex <= 1.0) || !(p_edge >= 0.0 && p_edge <= 1.0)) {
        throw invalid_parameter("param.probability", "probabilities must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep_vertex(q_vertex);
    std::bernoulli_distribution keep_edge(p_edge);
    const index_t ell = sec.ell();
    const index_t kmin = sec.has_clique() ? 1 : 0;
    const index_t kmax = sec.has_clique() ? ell : 0;

    std::vector<product_vertex> vertices;
    for (index_t i = 1; i <= host.r(); ++i) {
        for (index_t j = 1; j <= sec.h(); ++j) {
            for (index_t k = kmin; k <= kmax; ++k) {
                if (keep_vertex(rng)) {
                    vertices.push_back({i, j, k});
                }
            }
        }
    }
    // Index of kept vertices for edge drawing.
    product_subgraph skeleton(host, sec, vertices, {});

    std::vector<edge_t> edges;
    std::vector<index_t> candidates;
    for (index_t x = 0; x < vertices.size(); ++x) {
        const auto &v = vertices[x];
        candidates.clear();
        auto add_layer = [&](index_t a, index_t b) {
            for (index_t k = kmin; k <= kmax; ++k) {
                const index_t w = skeleton.find(a, b, k);
                if (w != no_vertex && w > x) {
                    candidates.push_back(w);
                }
            }
        };
        auto add_host = [&](index_t a) {
            add_layer(a, v.j);
            for (index_t b : sec.neighbours(v.j)) {
                add_layer(a, b);
            }
        };
        add_host(v.i);
        for (index_t a : host.forward(v.i)) {
            add_host(a);
        }
        std::sort(candidates.begin(), candidates.end());
        for (index_t w : candidates) {
            if (keep_edge(rng)) {
                edges.emplace_back(x, w);
            }
        }
    }
    return {host, sec, std::move(vertices), std::move(edges)};
}

inline product_subgraph full_product(const elim_ordered_host &host, const secondary_factor &sec) {
    return sample_subgraph(host, sec, 1.0, 1.0, 0);
}

/// G[S] for S the first `count` vertices in lex order.
inline product_subgraph induced_prefix(const product_subgraph &g, std::size_t count) {
    count = std::min(count, g.n());
    std::vector<product_vertex> vertices(g.vertices().begin(), g.vertices().begin() + static_cast<std::ptrdiff_t>(count));
    std::vector<edge_t> edges;
    for (const auto &[a, b] : g.edges()) {
        if (b < count) {
            edges.emplace_back(a, b);
        }
    }
    return {g.host(), g.secondary(), std::move(vertices), std::move(edges)};
}

// Builders for the General factor I.

inline adjacency_list path_graph(index_t h) {
    adjacency_list adj(h);
    for (index_t j = 1; j < h; ++j) {
        adj[j - 1].push_back(j + 1);
        adj[j].push_back(j);
    }
    return adj;
}

/// Cycle C_h for h >= 3; smaller h fall back to the path on h vertices.
inline adjacency_list cycle_graph(index_t h) {
    adjacency_list adj = path_graph(h);
    if (h >= 3) {
        adj[0].push_back(h);
        adj[h - 1].push_back(1);
    }
    return adj;
}

inline adjacency_list complete_graph(index_t h) {
    adjacency_list adj(h);
    for (index_t a = 1; a <= h; ++a) {
        for (index_t b = 1; b <= h; ++b) {
            if (a != b) {
                adj[a - 1].push_back(b);
            }
        }
    }
    return adj;
}

/// Random graph on h vertices with maximum degree at most max_degree.
inline adjacency_list random_bounded_degree_graph(index_t h, index_t max_degree, std::uint64_t seed) {
    adjacency_list adj(h);
    if (h < 2 || max_degree == 0) {
        return adj;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<index_t> pick(1, h);
    const std::size_t attempts = static_cast<std::size_t>(h) * max_degree;
    for (std::size_t n = 0; n < attempts; ++n) {
        const index_t a = pick(rng);
        const index_t b = pick(rng);
        if (a == b || adj[a - 1].size() >= max_degree || adj[b - 1].size() >= max_degree) {
            continue;
        }
        if (std::find(adj[a - 1].begin(), adj[a - 1].end(), b) != adj[a - 1].end()) {
            continue;
        }
        adj[a - 1].push_back(b);
        adj[b - 1].push_back(a);
    }
    for (auto &row : adj) {
        std::sort(row.begin(), row.end());
    }
    return adj;
}

} // namespace oddprod

#endif
