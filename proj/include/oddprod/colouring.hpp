#ifndef ODDPROD_COLOURING_HPP
#define ODDPROD_COLOURING_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "product.hpp"
#include "report.hpp"

namespace oddprod {

using colour_t = std::uint32_t;

/// A colouring of V(G): colours[x] is the colour of vertex index x, in
/// 1..palette. 0 marks an uncoloured vertex in partial colourings.
struct colouring {
    colour_t palette = 0;
    std::vector<colour_t> colours;

    [[nodiscard]] std::size_t colours_used() const {
        std::vector<colour_t> seen(colours.begin(), colours.end());
        std::sort(seen.begin(), seen.end());
        return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
    }

    friend bool operator==(const colouring &, const colouring &) = default;
};

struct run_stats {
    std::size_t colours_used = 0;
    std::size_t max_x = 0;
    std::size_t max_y = 0;
    std::size_t max_xy = 0;
    std::size_t steps = 0;

    friend bool operator==(const run_stats &, const run_stats &) = default;
};

struct colour_result {
    colouring colours;
    run_stats stats;
};

inline colour_t palette_ttree_path(index_t t) { return 8 * t + 4; }

inline colour_t palette_ttree_path_clique(index_t t, index_t ell) { return 8 * ell * t + 5 * ell - 1; }

inline colour_t palette_ttree_maxdeg(index_t t, index_t delta) {
    return (delta * delta + delta) * (t + 1) + 2 * t + 1;
}

/// The palette guaranteed sufficient for G's factor kind.
inline colour_t theorem_palette(const product_subgraph &g) {
    const index_t t = g.host().t();
    switch (g.kind()) {
    case factor_kind::path: return palette_ttree_path(t);
    case factor_kind::path_clique: return palette_ttree_path_clique(t, g.secondary().ell());
    case factor_kind::general: return palette_ttree_maxdeg(t, g.secondary().delta());
    }
    return 0;
}

struct forbidden_colours {
    std::vector<colour_t> x;
    std::vector<colour_t> y;
};

/// The colours v must avoid given the colouring of every vertex before it:
/// X holds the colours seen on the risk set of v; Y holds, for each coloured
/// neighbour w of v, the unique odd-multiplicity colour of N(w) if there is
/// exactly one. Computed straight from the definitions by rescanning
/// neighbourhoods, independent of the incremental bookkeeping in the greedy.
inline forbidden_colours forbidden_sets(const product_subgraph &g, index_t v, std::span<const colour_t> partial) {
    if (v >= g.n()) {
        throw contract_error("contract.vertex", "vertex index out of range");
    }
    if (partial.size() != g.n()) {
        throw contract_error("contract.partial", "partial colouring length does not match |V(G)|");
    }
    for (index_t w = 0; w < g.n(); ++w) {
        if ((partial[w] != 0) != (w < v)) {
            throw contract_error("contract.partial",
                                 "partial colouring must colour exactly the vertices before " + to_string(g.vertex(v)));
        }
    }
    forbidden_colours out;
    visit_risk(g, g.vertex(v), [&](index_t w) {
        if (partial[w] != 0) {
            out.x.push_back(partial[w]);
        }
    });
    std::vector<colour_t> hist;
    for (index_t w : g.neighbours(v)) {
        if (partial[w] == 0) {
            continue;
        }
        hist.clear();
        for (index_t u : g.neighbours(w)) {
            if (partial[u] != 0) {
                hist.push_back(partial[u]);
            }
        }
        std::sort(hist.begin(), hist.end());
        colour_t odd_colour = 0;
        std::size_t odd_count = 0;
        for (std::size_t a = 0; a < hist.size();) {
            std::size_t b = a;
            while (b < hist.size() && hist[b] == hist[a]) {
                ++b;
            }
            if ((b - a) % 2 == 1) {
                odd_colour = hist[a];
                ++odd_count;
            }
            a = b;
        }
        if (odd_count == 1) {
            out.y.push_back(odd_colour);
        }
    }
    for (auto *set : {&out.x, &out.y}) {
        std::sort(set->begin(), set->end());
        set->erase(std::unique(set->begin(), set->end()), set->end());
    }
    return out;
}

inline forbidden_colours forbidden_sets(const product_subgraph &g, const product_vertex &v,
                                        std::span<const colour_t> partial) {
    const index_t x = g.find(v);
    if (x == no_vertex) {
        throw contract_error("contract.vertex", "vertex " + to_string(v) + " is not in G");
    }
    return forbidden_sets(g, x, partial);
}

/// Forward greedy over V(G) in lex order. Each vertex takes the smallest
/// colour outside X and Y. Per-vertex parity bits over the colours of the
/// already-coloured neighbours give Y in O(1) per neighbour.
///
/// Throws palette_exhausted if some vertex finds no free colour.
inline colour_result colour_greedy(const product_subgraph &g, colour_t palette) {
    const std::size_t n = g.n();
    colour_result result;
    result.colours.palette = palette;
    auto &col = result.colours.colours;
    col.assign(n, 0);
    auto &stats = result.stats;

    const std::size_t words = (static_cast<std::size_t>(palette) + 1 + 63) / 64;
    std::vector<std::uint64_t> parity(n * words, 0);
    std::vector<index_t> odd_count(n, 0);
    std::vector<colour_t> odd_xor(n, 0);
    std::vector<index_t> in_x(static_cast<std::size_t>(palette) + 1, 0);
    std::vector<index_t> in_y(static_cast<std::size_t>(palette) + 1, 0);
    std::vector<bool> used(static_cast<std::size_t>(palette) + 1, false);

    for (index_t v = 0; v < n; ++v) {
        const index_t stamp = v + 1;
        std::size_t nx = 0;
        std::size_t ny = 0;
        std::size_t nxy = 0;
        visit_risk(g, g.vertex(v), [&](index_t w) {
            const colour_t c = col[w];
            if (c != 0 && in_x[c] != stamp) {
                in_x[c] = stamp;
                ++nx;
                if (in_y[c] != stamp) {
                    ++nxy;
                }
            }
        });
        const auto nbrs = g.neighbours(v);
        for (index_t w : nbrs) {
            if (col[w] == 0 || odd_count[w] != 1) {
                continue;
            }
            const colour_t c = odd_xor[w];
            if (in_y[c] != stamp) {
                in_y[c] = stamp;
                ++ny;
                if (in_x[c] != stamp) {
                    ++nxy;
                }
            }
        }
        stats.max_x = std::max(stats.max_x, nx);
        stats.max_y = std::max(stats.max_y, ny);
        stats.max_xy = std::max(stats.max_xy, nxy);

        colour_t chosen = 0;
        for (colour_t c = 1; c <= palette; ++c) {
            if (in_x[c] != stamp && in_y[c] != stamp) {
                chosen = c;
                break;
            }
        }
        if (chosen == 0) {
            throw palette_exhausted("palette.exhausted",
                                    "no free colour for " + to_string(g.vertex(v)) + " with palette " +
                                        std::to_string(palette) + " (|X| = " + std::to_string(nx) +
                                        ", |Y| = " + std::to_string(ny) + ")");
        }
        col[v] = chosen;
        if (!used[chosen]) {
            used[chosen] = true;
            ++stats.colours_used;
        }
        const std::size_t word = chosen / 64;
        const std::uint64_t bit = std::uint64_t{1} << (chosen % 64);
        for (index_t w : nbrs) {
            std::uint64_t &cell = parity[static_cast<std::size_t>(w) * words + word];
            cell ^= bit;
            if (cell & bit) {
                ++odd_count[w];
            } else {
                --odd_count[w];
            }
            odd_xor[w] ^= chosen;
        }
        ++stats.steps;
    }
    return result;
}

namespace detail {

inline void require_kind(const product_subgraph &g, factor_kind kind) {
    if (g.kind() != kind) {
        throw contract_error("variant.mismatch", std::string("instance has a ") + to_string(g.kind()) +
                                                     " factor, expected " + to_string(kind));
    }
}

} // namespace detail

/// Proper odd colouring of G in H x P with at most 8t+4 colours.
inline colour_result colour_ttree_path(const product_subgraph &g) {
    detail::require_kind(g, factor_kind::path);
    return colour_greedy(g, palette_ttree_path(g.host().t()));
}

/// Proper odd colouring of G in H x P x K_ell with at most 8 ell t + 5 ell - 1 colours.
inline colour_result colour_ttree_path_clique(const product_subgraph &g) {
    detail::require_kind(g, factor_kind::path_clique);
    return colour_greedy(g, palette_ttree_path_clique(g.host().t(), g.secondary().ell()));
}

/// Proper odd colouring of G in H x I with at most (D^2+D)(t+1)+2t+1 colours,
/// D the maximum degree of I.
inline colour_result colour_ttree_maxdeg(const product_subgraph &g) {
    detail::require_kind(g, factor_kind::general);
    return colour_greedy(g, palette_ttree_maxdeg(g.host().t(), g.secondary().delta()));
}

inline colour_result colour_by_theorem(const product_subgraph &g) {
    return colour_greedy(g, theorem_palette(g));
}

} // namespace oddprod

#endif
