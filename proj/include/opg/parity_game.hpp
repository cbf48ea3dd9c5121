/*
 * Copyright 2026 The opg-solve Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Closed parity games with priorities on edges, the translation to
// node-priority games, and a recursive (Zielonka) solver.
//
// Player Exists wins a play iff the largest priority seen infinitely often
// is even.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opg/orders.hpp"

namespace opg {

enum class Player : std::uint8_t { Exists, Forall };

inline Player opponent(Player p) { return p == Player::Exists ? Player::Forall : Player::Exists; }
inline Player parity_winner(Priority p) { return p % 2 == 0 ? Player::Exists : Player::Forall; }

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct Edge {
    NodeId source = 0;
    NodeId target = 0;
    Priority priority = 0;

    auto operator<=>(const Edge&) const = default;
};

/// Edge-labelled parity game. Edges are kept sorted by (source, target).
class ParityGame {
public:
    ParityGame(PrioritySpace space, std::vector<Player> owners, std::vector<Edge> edges)
        : space_(space), owners_(std::move(owners)), edges_(std::move(edges))
    {
        const auto n = static_cast<NodeId>(owners_.size());
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            const Edge& e = edges_[k];
            if (e.source >= n || e.target >= n)
                throw std::invalid_argument("edge " + std::to_string(e.source) + "->" +
                                            std::to_string(e.target) + " refers to an unknown node");
            if (!space_.contains(e.priority))
                throw std::invalid_argument("edge priority " + std::to_string(e.priority) +
                                            " exceeds the maximum priority " + std::to_string(space_.max()));
            if (k > 0 && edges_[k - 1].source == e.source && edges_[k - 1].target == e.target)
                throw std::invalid_argument("duplicate edge " + std::to_string(e.source) + "->" +
                                            std::to_string(e.target));
        }
        offsets_.assign(n + 1, 0);
        for (const Edge& e : edges_)
            ++offsets_[e.source + 1];
        for (NodeId v = 0; v < n; ++v) {
            if (offsets_[v + 1] == 0)
                throw std::invalid_argument("node " + std::to_string(v) + " has no successor");
            offsets_[v + 1] += offsets_[v];
        }
    }

    PrioritySpace space() const { return space_; }
    NodeId node_count() const { return static_cast<NodeId>(owners_.size()); }
    Player owner(NodeId v) const { return owners_.at(v); }
    std::span<const Player> owners() const { return owners_; }
    std::span<const Edge> edges() const { return edges_; }

    std::span<const Edge> out_edges(NodeId v) const
    {
        return std::span<const Edge>(edges_).subspan(offsets_.at(v), offsets_[v + 1] - offsets_[v]);
    }

    std::optional<Priority> priority(NodeId source, NodeId target) const
    {
        auto out = out_edges(source);
        auto it = std::lower_bound(out.begin(), out.end(), target,
                                   [](const Edge& e, NodeId t) { return e.target < t; });
        if (it == out.end() || it->target != target)
            return std::nullopt;
        return it->priority;
    }

    /// Same game over a larger priority space.
    ParityGame with_space(PrioritySpace space) const { return ParityGame(space, owners_, edges_); }

private:
    PrioritySpace space_;
    std::vector<Player> owners_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
};

/// Game with priorities on nodes, in compressed adjacency form.
class NodeGame {
public:
    NodeGame(std::vector<Player> owners, std::vector<Priority> priorities,
             const std::vector<std::pair<NodeId, NodeId>>& edges)
        : owners_(std::move(owners)), priorities_(std::move(priorities))
    {
        const std::size_t n = owners_.size();
        if (priorities_.size() != n)
            throw std::invalid_argument("node game: owner and priority counts differ");
        succ_off_.assign(n + 1, 0);
        pred_off_.assign(n + 1, 0);
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw std::invalid_argument("node game: edge to unknown node");
            ++succ_off_[u + 1];
            ++pred_off_[v + 1];
        }
        for (std::size_t v = 0; v < n; ++v) {
            succ_off_[v + 1] += succ_off_[v];
            pred_off_[v + 1] += pred_off_[v];
        }
        succ_.resize(edges.size());
        pred_.resize(edges.size());
        auto sfill = succ_off_;
        auto pfill = pred_off_;
        for (auto [u, v] : edges) {
            succ_[sfill[u]++] = v;
            pred_[pfill[v]++] = u;
        }
        for (std::size_t v = 0; v < n; ++v)
            if (succ_off_[v] == succ_off_[v + 1])
                throw std::invalid_argument("node game: node " + std::to_string(v) + " has no successor");
    }

    NodeId node_count() const { return static_cast<NodeId>(owners_.size()); }
    Player owner(NodeId v) const { return owners_[v]; }
    Priority priority(NodeId v) const { return priorities_[v]; }
    std::span<const NodeId> successors(NodeId v) const
    {
        return std::span<const NodeId>(succ_).subspan(succ_off_[v], succ_off_[v + 1] - succ_off_[v]);
    }
    std::span<const NodeId> predecessors(NodeId v) const
    {
        return std::span<const NodeId>(pred_).subspan(pred_off_[v], pred_off_[v + 1] - pred_off_[v]);
    }

private:
    std::vector<Player> owners_;
    std::vector<Priority> priorities_;
    std::vector<std::size_t> succ_off_, pred_off_;
    std::vector<NodeId> succ_, pred_;
};

/// Edge-priority game rewritten with one fresh node per edge.
///
/// Edge k = (u, v)@p becomes u -> edge_node[k] -> v, the fresh node carrying
/// priority p; original nodes carry priority 0. Fresh nodes have a single
/// successor and are owned by Exists.
struct SplitGame {
    NodeGame game;
    std::vector<NodeId> edge_node;
};

/// Flat construction lists for a split game, so callers can append edges
/// before freezing (used to share one skeleton across many loop games).
struct SplitBuilder {
    std::vector<Player> owners;
    std::vector<Priority> priorities;
    std::vector<std::pair<NodeId, NodeId>> edges;

    explicit SplitBuilder(std::span<const Player> original_owners)
        : owners(original_owners.begin(), original_owners.end()), priorities(original_owners.size(), 0)
    {
    }

    NodeId add_edge(NodeId source, NodeId target, Priority p)
    {
        auto fresh = static_cast<NodeId>(owners.size());
        owners.push_back(Player::Exists);
        priorities.push_back(p);
        edges.emplace_back(source, fresh);
        edges.emplace_back(fresh, target);
        return fresh;
    }

    NodeGame build() const { return NodeGame(owners, priorities, edges); }
};

inline SplitGame split_edges(const ParityGame& g)
{
    SplitBuilder b(g.owners());
    std::vector<NodeId> edge_node;
    edge_node.reserve(g.edges().size());
    for (const Edge& e : g.edges())
        edge_node.push_back(b.add_edge(e.source, e.target, e.priority));
    return SplitGame{b.build(), std::move(edge_node)};
}

/// Winner per node plus a positional strategy: strategy[v] is the chosen
/// successor when v belongs to its owner's winning region, kNoNode otherwise.
struct NodeSolution {
    std::vector<Player> winner;
    std::vector<NodeId> strategy;
};

namespace detail {

class ZielonkaSolver {
public:
    explicit ZielonkaSolver(const NodeGame& g)
        : g_(g), strategy_(g.node_count(), kNoNode), winner_(g.node_count(), Player::Exists),
          in_sub_(g.node_count(), 0), in_attr_(g.node_count(), 0), count_(g.node_count(), -1)
    {
    }

    NodeSolution run()
    {
        std::vector<NodeId> all(g_.node_count());
        for (NodeId v = 0; v < g_.node_count(); ++v)
            all[v] = v;
        auto [w_exists, w_forall] = solve(all);
        for (NodeId v : w_exists)
            winner_[v] = Player::Exists;
        for (NodeId v : w_forall)
            winner_[v] = Player::Forall;
        for (NodeId v = 0; v < g_.node_count(); ++v)
            if (g_.owner(v) != winner_[v])
                strategy_[v] = kNoNode;
        return NodeSolution{std::move(winner_), std::move(strategy_)};
    }

private:
    using Regions = std::pair<std::vector<NodeId>, std::vector<NodeId>>;

    static std::vector<NodeId>& region(Regions& r, Player p) { return p == Player::Exists ? r.first : r.second; }

    // Attractor of `target` for `player` inside the subgame `sub`, recording
    // attracting moves in strategy_. `in_sub_` must mark exactly `sub`.
    std::vector<NodeId> attract(const std::vector<NodeId>& target, Player player)
    {
        std::vector<NodeId> attr;
        std::deque<NodeId> queue;
        for (NodeId v : target) {
            in_attr_[v] = 1;
            attr.push_back(v);
            queue.push_back(v);
        }
        while (!queue.empty()) {
            NodeId x = queue.front();
            queue.pop_front();
            for (NodeId u : g_.predecessors(x)) {
                if (!in_sub_[u] || in_attr_[u])
                    continue;
                bool take = false;
                if (g_.owner(u) == player) {
                    take = true;
                    strategy_[u] = x;
                } else {
                    if (count_[u] < 0) {
                        count_[u] = 0;
                        for (NodeId w : g_.successors(u))
                            count_[u] += in_sub_[w];
                    }
                    take = --count_[u] == 0;
                }
                if (take) {
                    in_attr_[u] = 1;
                    attr.push_back(u);
                    queue.push_back(u);
                }
            }
        }
        return attr;
    }

    void reset_scratch(const std::vector<NodeId>& sub)
    {
        for (NodeId v : sub) {
            in_attr_[v] = 0;
            count_[v] = -1;
        }
    }

    std::vector<NodeId> minus(const std::vector<NodeId>& sub, const std::vector<char>& removed) const
    {
        std::vector<NodeId> out;
        for (NodeId v : sub)
            if (!removed[v])
                out.push_back(v);
        return out;
    }

    void mark(const std::vector<NodeId>& sub, char value)
    {
        for (NodeId v : sub)
            in_sub_[v] = value;
    }

    Regions solve(const std::vector<NodeId>& sub)
    {
        Regions result;
        if (sub.empty())
            return result;

        Priority top = 0;
        for (NodeId v : sub)
            top = std::max(top, g_.priority(v));
        const Player player = parity_winner(top);
        const Player opp = opponent(player);

        std::vector<NodeId> heads;
        for (NodeId v : sub)
            if (g_.priority(v) == top)
                heads.push_back(v);

        mark(sub, 1);
        auto a = attract(heads, player);
        std::vector<char> removed(g_.node_count(), 0);
        for (NodeId v : a)
            removed[v] = 1;
        reset_scratch(sub);
        mark(sub, 0);

        auto rest = minus(sub, removed);
        Regions inner = solve(rest);

        if (region(inner, opp).empty()) {
            // player wins everywhere; heads only need some successor in sub.
            mark(sub, 1);
            for (NodeId v : heads)
                if (g_.owner(v) == player)
                    for (NodeId w : g_.successors(v))
                        if (in_sub_[w]) {
                            strategy_[v] = w;
                            break;
                        }
            mark(sub, 0);
            region(result, player) = sub;
            return result;
        }

        mark(sub, 1);
        auto b = attract(region(inner, opp), opp);
        std::fill(removed.begin(), removed.end(), 0);
        for (NodeId v : b)
            removed[v] = 1;
        reset_scratch(sub);
        mark(sub, 0);

        Regions outer = solve(minus(sub, removed));
        region(result, player) = std::move(region(outer, player));
        region(result, opp) = std::move(region(outer, opp));
        region(result, opp).insert(region(result, opp).end(), b.begin(), b.end());
        return result;
    }

    const NodeGame& g_;
    std::vector<NodeId> strategy_;
    std::vector<Player> winner_;
    std::vector<char> in_sub_;
    std::vector<char> in_attr_;
    std::vector<int> count_;
};

} // namespace detail

/// Recursive winning-region computation with positional witnesses.
inline NodeSolution solve_zielonka(const NodeGame& g) { return detail::ZielonkaSolver(g).run(); }

/// Choice map for one player. choice[v] is consulted only for nodes the
/// player owns.
struct PositionalStrategy {
    Player player = Player::Exists;
    std::vector<NodeId> choice;
};

struct WinningRegions {
    std::vector<Player> winner;
    /// Total strategies: winning on the player's own region, first successor elsewhere.
    PositionalStrategy exists_strategy;
    PositionalStrategy forall_strategy;

    bool exists_wins(NodeId v) const { return winner.at(v) == Player::Exists; }

    std::vector<NodeId> region(Player p) const
    {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < winner.size(); ++v)
            if (winner[v] == p)
                out.push_back(v);
        return out;
    }
};

/// Solves an edge-priority game through split_edges and solve_zielonka.
inline WinningRegions solve(const ParityGame& g)
{
    SplitGame split = split_edges(g);
    NodeSolution sol = solve_zielonka(split.game);
    const NodeId n = g.node_count();
    WinningRegions out;
    out.winner.assign(sol.winner.begin(), sol.winner.begin() + n);
    out.exists_strategy = {Player::Exists, std::vector<NodeId>(n, kNoNode)};
    out.forall_strategy = {Player::Forall, std::vector<NodeId>(n, kNoNode)};
    for (NodeId v = 0; v < n; ++v) {
        auto& strat = g.owner(v) == Player::Exists ? out.exists_strategy : out.forall_strategy;
        NodeId pick = g.out_edges(v).front().target;
        if (NodeId via = sol.strategy[v]; via != kNoNode)
            pick = split.game.successors(via).front();
        strat.choice[v] = pick;
    }
    return out;
}

inline bool is_winning(const ParityGame& g, NodeId v)
{
    if (v >= g.node_count())
        throw std::out_of_range("is_winning: unknown node " + std::to_string(v));
    return solve(g).exists_wins(v);
}

namespace detail {

// Follows the unique play induced by two positional strategies. The walk is
// deterministic, so the first revisited node closes the cycle.
template <typename ExitLookup>
DomainElement walk_play(const ParityGame& g, const PositionalStrategy& s_exists,
                        const PositionalStrategy& s_forall, NodeId start, ExitLookup&& exit_of)
{
    if (start >= g.node_count())
        throw std::out_of_range("evaluate_play: unknown start node " + std::to_string(start));
    std::vector<int> seen_at(g.node_count(), -1);
    std::vector<Priority> trace;
    NodeId v = start;
    for (;;) {
        if (std::optional<ExitRef> o = exit_of(v)) {
            Priority m = trace.empty() ? 0 : *std::max_element(trace.begin(), trace.end());
            return DomainElement::at(*o, m);
        }
        if (seen_at[v] >= 0) {
            Priority m = *std::max_element(trace.begin() + seen_at[v], trace.end());
            return m % 2 == 0 ? DomainElement::top() : DomainElement::bot();
        }
        seen_at[v] = static_cast<int>(trace.size());
        const PositionalStrategy& s = g.owner(v) == Player::Exists ? s_exists : s_forall;
        NodeId next = v < s.choice.size() ? s.choice[v] : kNoNode;
        if (next == kNoNode)
            throw std::invalid_argument("strategy incomplete at node " + std::to_string(v));
        auto p = g.priority(v, next);
        if (!p)
            throw std::invalid_argument("strategy moves along a non-edge " + std::to_string(v) + "->" +
                                        std::to_string(next));
        trace.push_back(*p);
        v = next;
    }
}

} // namespace detail

/// Denotation of the play induced by two positional strategies. In a closed
/// game only top and bot arise.
inline DomainElement evaluate_play(const ParityGame& g, const PositionalStrategy& s_exists,
                                   const PositionalStrategy& s_forall, NodeId start)
{
    return detail::walk_play(g, s_exists, s_forall, start, [](NodeId) { return std::optional<ExitRef>{}; });
}

} // namespace opg
