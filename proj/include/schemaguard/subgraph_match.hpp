// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Typed-edge subgraph monomorphism (VF2-style depth-first search with
// candidate pruning and a node-expansion budget).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace schemaguard {

/// Host graph on vertices 0..n-1. Each ordered vertex pair holds a bitmask of
/// edge types; undirected edges are stored in both orientations.
class TypedGraph
{
  public:
    explicit TypedGraph(std::size_t n = 0) : n_(n), adj_(n * n, 0) {}

    std::size_t size() const noexcept { return n_; }

    void add_edge(std::size_t u, std::size_t v, unsigned type, bool directed = false)
    {
        check(u);
        check(v);
        if (type >= 32)
            throw std::out_of_range("edge type out of range");
        adj_[u * n_ + v] |= (std::uint32_t{1} << type);
        if (!directed)
            adj_[v * n_ + u] |= (std::uint32_t{1} << type);
    }

    bool has_edge(std::size_t u, std::size_t v, unsigned type) const
    {
        return (adj_[u * n_ + v] >> type) & 1u;
    }

    std::uint32_t types(std::size_t u, std::size_t v) const { return adj_[u * n_ + v]; }

  private:
    void check(std::size_t v) const
    {
        if (v >= n_)
            throw std::out_of_range("vertex out of range");
    }

    std::size_t n_;
    std::vector<std::uint32_t> adj_;
};

struct PatternEdge
{
    std::size_t a = 0;
    std::size_t b = 0;
    unsigned type = 0;
};

/// Pattern graph. `candidates[v]`, when set, restricts the host vertices that
/// pattern vertex v may map to; unset means any host vertex.
struct Pattern
{
    std::size_t n = 0;
    std::vector<PatternEdge> edges;
    std::vector<std::optional<std::vector<std::size_t>>> candidates;
};

struct Embedding
{
    bool matched = false;
    bool budget_exceeded = false;
    std::vector<std::size_t> mapping; // pattern vertex -> host vertex, valid when matched
    std::uint64_t expansions = 0;
};

namespace detail {

class MonoSearch
{
  public:
    MonoSearch(const Pattern &p, const TypedGraph &h, std::uint64_t budget) : p_(p), h_(h), budget_(budget)
    {
        if (p.candidates.size() != p.n && !p.candidates.empty())
            throw std::invalid_argument("candidate list size does not match pattern size");
        for (const auto &e : p.edges)
            if (e.a >= p.n || e.b >= p.n)
                throw std::out_of_range("pattern edge endpoint out of range");

        cand_.resize(p.n);
        for (std::size_t v = 0; v < p.n; ++v) {
            if (!p.candidates.empty() && p.candidates[v]) {
                for (std::size_t w : *p.candidates[v])
                    if (w < h.size())
                        cand_[v].push_back(w);
                std::sort(cand_[v].begin(), cand_[v].end());
                cand_[v].erase(std::unique(cand_[v].begin(), cand_[v].end()), cand_[v].end());
            } else {
                for (std::size_t w = 0; w < h.size(); ++w)
                    cand_[v].push_back(w);
            }
            // Self-loop requirements can be filtered up front.
            std::erase_if(cand_[v], [&](std::size_t w) {
                for (const auto &e : p.edges)
                    if (e.a == v && e.b == v && !h.has_edge(w, w, e.type))
                        return true;
                return false;
            });
        }
        build_order();
    }

    Embedding run()
    {
        Embedding out;
        map_.assign(p_.n, kUnmapped);
        used_.assign(h_.size(), false);
        if (p_.n > h_.size()) {
            return out;
        }
        out.matched = extend(0);
        out.budget_exceeded = exceeded_;
        out.expansions = expansions_;
        if (out.matched)
            out.mapping = map_;
        return out;
    }

  private:
    static constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);

    void build_order()
    {
        std::vector<bool> placed(p_.n, false);
        std::vector<std::size_t> links(p_.n, 0);
        for (std::size_t step = 0; step < p_.n; ++step) {
            std::size_t best = kUnmapped;
            for (std::size_t v = 0; v < p_.n; ++v) {
                if (placed[v])
                    continue;
                if (best == kUnmapped || links[v] > links[best] ||
                    (links[v] == links[best] && cand_[v].size() < cand_[best].size()))
                    best = v;
            }
            placed[best] = true;
            order_.push_back(best);
            for (const auto &e : p_.edges) {
                if (e.a == best && e.b != best && !placed[e.b])
                    ++links[e.b];
                if (e.b == best && e.a != best && !placed[e.a])
                    ++links[e.a];
            }
        }
    }

    bool feasible(std::size_t v, std::size_t w) const
    {
        for (const auto &e : p_.edges) {
            if (e.a == v && e.b != v && map_[e.b] != kUnmapped && !h_.has_edge(w, map_[e.b], e.type))
                return false;
            if (e.b == v && e.a != v && map_[e.a] != kUnmapped && !h_.has_edge(map_[e.a], w, e.type))
                return false;
        }
        return true;
    }

    bool extend(std::size_t depth)
    {
        if (depth == order_.size())
            return true;
        const std::size_t v = order_[depth];
        for (std::size_t w : cand_[v]) {
            if (used_[w])
                continue;
            if (++expansions_ > budget_) {
                exceeded_ = true;
                return false;
            }
            if (!feasible(v, w))
                continue;
            map_[v] = w;
            used_[w] = true;
            if (extend(depth + 1))
                return true;
            map_[v] = kUnmapped;
            used_[w] = false;
            if (exceeded_)
                return false;
        }
        return false;
    }

    const Pattern &p_;
    const TypedGraph &h_;
    std::uint64_t budget_;
    std::vector<std::vector<std::size_t>> cand_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> map_;
    std::vector<bool> used_;
    std::uint64_t expansions_ = 0;
    bool exceeded_ = false;
};

} // namespace detail

inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

/// Finds an injective map of pattern vertices into host vertices such that
/// every pattern edge (a, b, t) has a host edge (map[a], map[b], t). Surplus
/// host vertices and edges are ignored. Candidates are tried in ascending
/// host index, so the first mapping found is deterministic.
inline Embedding find_monomorphism(const Pattern &p, const TypedGraph &host,
                                   std::uint64_t budget = kDefaultSearchBudget)
{
    return detail::MonoSearch(p, host, budget).run();
}

} // namespace schemaguard
