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

// Ground truth by exhaustive enumeration of positional strategies. Since
// positional strategies suffice for Pareto fronts, the best over positional
// Exists-strategies of the worst over positional Forall-strategies is the
// front itself.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "opg/open_game.hpp"
#include "opg/orders.hpp"
#include "opg/parity_game.hpp"

namespace opg {

class OracleBoundExceeded : public std::runtime_error {
public:
    explicit OracleBoundExceeded(std::uint64_t pairs, std::uint64_t bound)
        : std::runtime_error("oracle bound exceeded: " + std::to_string(pairs) + " strategy pairs > " +
                             std::to_string(bound))
    {
    }
};

inline constexpr std::uint64_t kDefaultOracleBound = 1'000'000;

/// Mixed-radix counter over the successor lists of one player's nodes.
/// Nodes advance in id order, first node fastest; successors in target order.
class StrategyEnumerator {
public:
    StrategyEnumerator(const ParityGame& g, Player player) : g_(g)
    {
        strategy_.player = player;
        strategy_.choice.assign(g.node_count(), kNoNode);
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (g.owner(v) == player) {
                strategy_.choice[v] = g.out_edges(v).front().target;
                if (g.out_edges(v).size() > 1)
                    free_.push_back(v);
            }
        digit_.assign(free_.size(), 0);
    }

    /// Number of strategies, saturating at UINT64_MAX.
    std::uint64_t count() const
    {
        std::uint64_t n = 1;
        for (NodeId v : free_) {
            std::uint64_t d = g_.out_edges(v).size();
            if (n > UINT64_MAX / d)
                return UINT64_MAX;
            n *= d;
        }
        return n;
    }

    const PositionalStrategy& current() const { return strategy_; }

    /// Advances to the next strategy; false once every strategy was visited.
    bool next()
    {
        for (std::size_t k = 0; k < free_.size(); ++k) {
            NodeId v = free_[k];
            auto out = g_.out_edges(v);
            if (++digit_[k] < out.size()) {
                strategy_.choice[v] = out[digit_[k]].target;
                return true;
            }
            digit_[k] = 0;
            strategy_.choice[v] = out.front().target;
        }
        return false;
    }

private:
    const ParityGame& g_;
    PositionalStrategy strategy_;
    std::vector<NodeId> free_;
    std::vector<std::size_t> digit_;
};

inline std::vector<PositionalStrategy> enumerate_positional_strategies(const OpenParityGame& a, Player player)
{
    StrategyEnumerator it(a.game(), player);
    std::vector<PositionalStrategy> out;
    do
        out.push_back(it.current());
    while (it.next());
    return out;
}

namespace detail {

inline void add_to_min_antichain(std::vector<DomainElement>& chain, const DomainElement& d)
{
    for (const auto& e : chain)
        if (leq_domain(e, d))
            return;
    std::erase_if(chain, [&](const DomainElement& e) { return leq_domain(d, e); });
    chain.push_back(d);
}

inline void add_to_max_antichain(std::vector<ResultSet>& chain, ResultSet r)
{
    for (const auto& e : chain)
        if (leq_upper(r, e))
            return;
    std::erase_if(chain, [&](const ResultSet& e) { return leq_upper(e, r); });
    chain.push_back(std::move(r));
}

inline void check_bound(std::uint64_t n_exists, std::uint64_t n_forall, std::uint64_t bound)
{
    std::uint64_t pairs = n_forall != 0 && n_exists > UINT64_MAX / n_forall ? UINT64_MAX : n_exists * n_forall;
    if (pairs > bound)
        throw OracleBoundExceeded(pairs, bound);
}

} // namespace detail

/// Best over positional Exists-strategies of the worst denotation over
/// positional Forall-strategies, from entrance `i`.
inline ParetoFront brute_force_pareto(const OpenParityGame& a, EntranceRef i,
                                      std::uint64_t bound = kDefaultOracleBound)
{
    require_valid(a, false);
    const NodeId start = a.node(i);
    StrategyEnumerator ex(a.game(), Player::Exists);
    detail::check_bound(ex.count(), StrategyEnumerator(a.game(), Player::Forall).count(), bound);

    std::vector<ResultSet> best;
    do {
        std::vector<DomainElement> worst;
        StrategyEnumerator fa(a.game(), Player::Forall);
        do
            detail::add_to_min_antichain(worst, evaluate_play(a, ex.current(), fa.current(), start));
        while (fa.next());
        detail::add_to_max_antichain(best, ResultSet::from_antichain(std::move(worst)));
    } while (ex.next());
    return ParetoFront{i, maximal_results(best)};
}

inline ParetoFronts brute_force_pareto_fronts(const OpenParityGame& a, std::uint64_t bound = kDefaultOracleBound)
{
    ParetoFronts out;
    for (EntranceRef i : a.entrances())
        out.emplace(i, brute_force_pareto(a, i, bound));
    return out;
}

/// Closed-game winner from `v` by enumeration: Exists wins iff some
/// positional Exists-strategy beats every positional Forall-strategy.
inline bool brute_force_winning(const ParityGame& g, NodeId v, std::uint64_t bound = kDefaultOracleBound)
{
    StrategyEnumerator ex(g, Player::Exists);
    detail::check_bound(ex.count(), StrategyEnumerator(g, Player::Forall).count(), bound);
    do {
        bool beats_all = true;
        StrategyEnumerator fa(g, Player::Forall);
        do
            beats_all = evaluate_play(g, ex.current(), fa.current(), v).is_top();
        while (beats_all && fa.next());
        if (beats_all)
            return true;
    } while (ex.next());
    return false;
}

} // namespace opg
