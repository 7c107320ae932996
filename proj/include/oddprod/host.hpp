#ifndef ODDPROD_HOST_HPP
#define ODDPROD_HOST_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "report.hpp"

namespace oddprod {

using index_t = std::uint32_t;

/// The host graph H, stored through its elimination ordering. Vertex i
/// (1-based) records its back-clique C_i, the neighbours of i with a
/// smaller index; a host edge {a, b} with a < b exists iff a is in C_b.
///
/// Construction accepts malformed data so that validate_host can report it.
/// Queries other than validation assume a host that passed validate_host.
class elim_ordered_host {
public:
    elim_ordered_host() = default;

    elim_ordered_host(index_t width, std::vector<std::vector<index_t>> back_cliques)
        : t_(width), back_(std::move(back_cliques)) {
        for (auto &c : back_) {
            std::sort(c.begin(), c.end());
        }
        forward_.resize(back_.size());
        for (index_t i = 1; i <= r(); ++i) {
            for (index_t a : back_[i - 1]) {
                if (a >= 1 && a < i) {
                    forward_[a - 1].push_back(i);
                }
            }
        }
        for (auto &f : forward_) {
            f.erase(std::unique(f.begin(), f.end()), f.end());
        }
    }

    [[nodiscard]] index_t t() const noexcept { return t_; }
    [[nodiscard]] index_t r() const noexcept { return static_cast<index_t>(back_.size()); }

    /// C_i, sorted ascending.
    [[nodiscard]] std::span<const index_t> back_clique(index_t i) const { return back_[i - 1]; }

    /// {m : i in C_m}, sorted ascending.
    [[nodiscard]] std::span<const index_t> forward(index_t i) const { return forward_[i - 1]; }

    [[nodiscard]] bool contains(index_t i) const noexcept { return i >= 1 && i <= r(); }

    [[nodiscard]] bool adjacent(index_t a, index_t b) const {
        if (a == b || !contains(a) || !contains(b)) {
            return false;
        }
        if (a > b) {
            std::swap(a, b);
        }
        const auto &c = back_[b - 1];
        return std::binary_search(c.begin(), c.end(), a);
    }

    [[nodiscard]] std::size_t edge_count() const {
        std::size_t m = 0;
        for (const auto &f : forward_) {
            m += f.size();
        }
        return m;
    }

    [[nodiscard]] const std::vector<std::vector<index_t>> &back_cliques() const noexcept { return back_; }

    friend bool operator==(const elim_ordered_host &, const elim_ordered_host &) = default;

private:
    index_t t_ = 0;
    std::vector<std::vector<index_t>> back_;
    std::vector<std::vector<index_t>> forward_;
};

namespace detail {

inline bool host_indices_well_formed(const elim_ordered_host &host) {
    for (index_t i = 1; i <= host.r(); ++i) {
        for (index_t a : host.back_clique(i)) {
            if (a < 1 || a >= i) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

/// Checks the ancestor-closure property: whenever i is in C_j, every member
/// of C_j below i is in C_i. Violations carry (i, j, missing element).
inline validation_report check_star_property(const elim_ordered_host &host) {
    validation_report report;
    for (index_t j = 1; j <= host.r(); ++j) {
        const auto cj = host.back_clique(j);
        for (index_t i : cj) {
            if (i < 1 || i >= j) {
                report.add("host.index", {i, j}, "back-clique entry out of range");
                continue;
            }
            const auto ci = host.back_clique(i);
            for (index_t a : cj) {
                if (a >= i) {
                    break;
                }
                if (!std::binary_search(ci.begin(), ci.end(), a)) {
                    report.add("host.star", {i, j, a},
                               "element " + std::to_string(a) + " of C_" + std::to_string(j) +
                                   " is missing from C_" + std::to_string(i) + " + {" +
                                   std::to_string(i) + "}");
                }
            }
        }
    }
    return report;
}

/// Validates a width-t elimination-ordered host: structural well-formedness,
/// |C_i| <= t, every C_i a clique, and the ancestor-closure property. With
/// `require_full_t_tree` the sizes must be exactly min(i-1, t).
inline validation_report validate_host(const elim_ordered_host &host, bool require_full_t_tree = false) {
    validation_report report;
    for (index_t i = 1; i <= host.r(); ++i) {
        const auto c = host.back_clique(i);
        for (std::size_t n = 0; n < c.size(); ++n) {
            if (c[n] < 1 || c[n] >= i) {
                report.add("host.index", {i, c[n]},
                           "back-clique of vertex " + std::to_string(i) + " has entry " +
                               std::to_string(c[n]) + ": index >= owner or < 1");
            }
            if (n > 0 && c[n] == c[n - 1]) {
                report.add("host.duplicate", {i, c[n]}, "duplicate back-clique entry");
            }
        }
        const std::size_t expected = std::min<std::size_t>(i - 1, host.t());
        if (c.size() > host.t()) {
            report.add("host.size", {i},
                       "|C_" + std::to_string(i) + "| = " + std::to_string(c.size()) + " exceeds t = " +
                           std::to_string(host.t()));
        } else if (require_full_t_tree && c.size() != expected) {
            report.add("host.size", {i},
                       "|C_" + std::to_string(i) + "| = " + std::to_string(c.size()) +
                           " but a full t-tree needs " + std::to_string(expected));
        }
    }
    if (!report.ok()) {
        return report;
    }
    for (index_t i = 1; i <= host.r(); ++i) {
        const auto c = host.back_clique(i);
        for (std::size_t x = 0; x < c.size(); ++x) {
            for (std::size_t y = x + 1; y < c.size(); ++y) {
                if (!host.adjacent(c[x], c[y])) {
                    report.add("host.clique", {i, c[x], c[y]},
                               "C_" + std::to_string(i) + " is not a clique: " + std::to_string(c[x]) +
                                   " and " + std::to_string(c[y]) + " are not adjacent");
                }
            }
        }
    }
    report.merge(check_star_property(host));
    return report;
}

/// All host neighbours of i: C_i together with every later vertex whose
/// back-clique contains i.
inline std::vector<index_t> host_neighbours(const elim_ordered_host &host, index_t i) {
    if (!host.contains(i)) {
        throw invalid_vertex("host.vertex", "host vertex " + std::to_string(i) + " out of range");
    }
    const auto back = host.back_clique(i);
    const auto fwd = host.forward(i);
    std::vector<index_t> out;
    out.reserve(back.size() + fwd.size());
    std::set_union(back.begin(), back.end(), fwd.begin(), fwd.end(), std::back_inserter(out));
    return out;
}

/// A random full t-tree on r vertices. Vertices 1..t+1 form the base clique;
/// every later vertex attaches to a t-clique drawn uniformly from the
/// multiset of t-subsets of all (t+1)-cliques created so far.
inline elim_ordered_host random_t_tree(index_t t, index_t r, std::uint64_t seed) {
    if (r < t + 1) {
        throw invalid_parameter("param.r", "random_t_tree needs r >= t + 1 (t = " + std::to_string(t) +
                                               ", r = " + std::to_string(r) + ")");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::vector<index_t>> back(r);
    // Flattened multiset of t-cliques, t entries per clique.
    std::vector<index_t> pool;
    std::size_t pool_count = 0;

    auto add_subsets = [&](const std::vector<index_t> &big) {
        for (std::size_t skip = 0; skip < big.size(); ++skip) {
            for (std::size_t n = 0; n < big.size(); ++n) {
                if (n != skip) {
                    pool.push_back(big[n]);
                }
            }
            ++pool_count;
        }
    };

    std::vector<index_t> base;
    for (index_t i = 1; i <= t + 1; ++i) {
        back[i - 1] = base;
        base.push_back(i);
    }
    add_subsets(base);

    std::vector<index_t> clique(t);
    for (index_t v = t + 2; v <= r; ++v) {
        std::uniform_int_distribution<std::size_t> pick(0, pool_count - 1);
        const std::size_t c = pick(rng);
        std::copy_n(pool.begin() + static_cast<std::ptrdiff_t>(c * t), t, clique.begin());
        std::sort(clique.begin(), clique.end());
        back[v - 1] = clique;
        auto big = clique;
        big.push_back(v);
        add_subsets(big);
    }
    return {t, std::move(back)};
}

/// The path x_1 - x_2 - ... - x_r as a 1-tree.
inline elim_ordered_host path_host(index_t r) {
    std::vector<std::vector<index_t>> back(r);
    for (index_t i = 2; i <= r; ++i) {
        back[i - 1] = {i - 1};
    }
    return {1, std::move(back)};
}

} // namespace oddprod

#endif
