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

// Open parity games and their Pareto fronts.
//
// An open game has four ordered lists of interface nodes. Its type
// (m_r, m_l) -> (n_r, n_l) reads left side to right side: m_r rightward
// entrances and m_l leftward exits on the left, n_r rightward exits and
// n_l leftward entrances on the right. Sequential composition glues the
// right side of one game to the left side of the next.
//
// The front of an entrance is computed by closing the game once per query:
// every exit either loops back to the entrance with the queried priority or
// gets an odd self-loop. The duals of the queries whose closed game is won
// from the entrance, reduced to their maximal elements, form the front.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "opg/orders.hpp"
#include "opg/parity_game.hpp"

namespace opg {

struct InterfaceType {
    std::uint32_t dom_r = 0; ///< rightward entrances
    std::uint32_t dom_l = 0; ///< leftward exits
    std::uint32_t cod_r = 0; ///< rightward exits
    std::uint32_t cod_l = 0; ///< leftward entrances

    bool operator==(const InterfaceType&) const = default;
};

inline std::string to_string(const InterfaceType& t)
{
    return "(" + std::to_string(t.dom_r) + "," + std::to_string(t.dom_l) + ")->(" + std::to_string(t.cod_r) +
           "," + std::to_string(t.cod_l) + ")";
}

struct Interface {
    std::vector<NodeId> in_r, in_l, out_r, out_l;
};

class OpenParityGame {
public:
    /// Only checks that interface ids and names are in range; the oPG
    /// invariants are reported by validate_opg.
    OpenParityGame(ParityGame game, Interface io, std::vector<std::string> names = {})
        : game_(std::move(game)), io_(std::move(io)), names_(std::move(names))
    {
        const NodeId n = game_.node_count();
        if (names_.empty())
            for (NodeId v = 0; v < n; ++v)
                names_.push_back("v" + std::to_string(v));
        if (names_.size() != n)
            throw std::invalid_argument("open game: expected " + std::to_string(n) + " node names");
        exit_at_.assign(n, std::nullopt);
        entrance_at_.assign(n, std::nullopt);
        auto index = [&](const std::vector<NodeId>& list, Direction d, bool exit) {
            for (std::size_t k = 0; k < list.size(); ++k) {
                NodeId v = list[k];
                if (v >= n)
                    throw std::invalid_argument("open game: interface node " + std::to_string(v) + " out of range");
                auto idx = static_cast<std::uint32_t>(k + 1);
                if (exit)
                    exit_at_[v] = ExitRef{d, idx};
                else
                    entrance_at_[v] = EntranceRef{d, idx};
            }
        };
        index(io_.in_r, Direction::Rightward, false);
        index(io_.in_l, Direction::Leftward, false);
        index(io_.out_r, Direction::Rightward, true);
        index(io_.out_l, Direction::Leftward, true);
    }

    const ParityGame& game() const { return game_; }
    const Interface& interface() const { return io_; }
    PrioritySpace space() const { return game_.space(); }
    NodeId node_count() const { return game_.node_count(); }
    const std::string& name(NodeId v) const { return names_.at(v); }
    std::span<const std::string> names() const { return names_; }

    InterfaceType type() const
    {
        return InterfaceType{static_cast<std::uint32_t>(io_.in_r.size()), static_cast<std::uint32_t>(io_.out_l.size()),
                             static_cast<std::uint32_t>(io_.out_r.size()), static_cast<std::uint32_t>(io_.in_l.size())};
    }

    /// Rightward entrances first, then leftward.
    std::vector<EntranceRef> entrances() const
    {
        std::vector<EntranceRef> out;
        for (std::uint32_t k = 1; k <= io_.in_r.size(); ++k)
            out.push_back({Direction::Rightward, k});
        for (std::uint32_t k = 1; k <= io_.in_l.size(); ++k)
            out.push_back({Direction::Leftward, k});
        return out;
    }

    /// Rightward exits first, then leftward; this is the query coordinate order.
    std::vector<ExitRef> exits() const
    {
        std::vector<ExitRef> out;
        for (std::uint32_t k = 1; k <= io_.out_r.size(); ++k)
            out.push_back({Direction::Rightward, k});
        for (std::uint32_t k = 1; k <= io_.out_l.size(); ++k)
            out.push_back({Direction::Leftward, k});
        return out;
    }

    NodeId node(EntranceRef i) const
    {
        const auto& list = i.direction == Direction::Rightward ? io_.in_r : io_.in_l;
        if (i.index == 0 || i.index > list.size())
            throw std::out_of_range("no entrance " + to_string(i));
        return list[i.index - 1];
    }

    NodeId node(ExitRef o) const
    {
        const auto& list = o.direction == Direction::Rightward ? io_.out_r : io_.out_l;
        if (o.index == 0 || o.index > list.size())
            throw std::out_of_range("no exit " + to_string(o));
        return list[o.index - 1];
    }

    std::optional<ExitRef> exit_at(NodeId v) const { return exit_at_.at(v); }
    std::optional<EntranceRef> entrance_at(NodeId v) const { return entrance_at_.at(v); }

    OpenParityGame with_space(PrioritySpace space) const
    {
        return OpenParityGame(game_.with_space(space), io_, names_);
    }

private:
    ParityGame game_;
    Interface io_;
    std::vector<std::string> names_;
    std::vector<std::optional<ExitRef>> exit_at_;
    std::vector<std::optional<EntranceRef>> entrance_at_;
};

struct Violation {
    enum class Kind { InterfaceOwner, InterfaceOverlap, ExitNotSink, ExitLoopPriority, EntranceReachable };
    Kind kind;
    std::string message;
};

/// Reports every violated open-game invariant. With `atomic` set, entrances
/// must also have no incoming edges.
inline std::vector<Violation> validate_opg(const OpenParityGame& a, bool atomic)
{
    std::vector<Violation> out;
    const auto& g = a.game();
    const auto& io = a.interface();
    std::vector<int> uses(a.node_count(), 0);
    for (const auto* list : {&io.in_r, &io.in_l, &io.out_r, &io.out_l})
        for (NodeId v : *list) {
            if (++uses[v] == 2)
                out.push_back({Violation::Kind::InterfaceOverlap, "interface lists overlap at " + a.name(v)});
            if (g.owner(v) != Player::Exists && uses[v] == 1)
                out.push_back({Violation::Kind::InterfaceOwner, "interface node " + a.name(v) + " not owned by E"});
        }
    for (const Edge& e : g.edges()) {
        if (a.exit_at(e.source)) {
            if (e.target != e.source)
                out.push_back({Violation::Kind::ExitNotSink,
                               "exit not sink: " + a.name(e.source) + " -> " + a.name(e.target)});
            else if (e.priority != 0)
                out.push_back({Violation::Kind::ExitLoopPriority,
                               "exit self-loop on " + a.name(e.source) + " has priority " + std::to_string(e.priority)});
        }
        if (atomic && a.entrance_at(e.target))
            out.push_back({Violation::Kind::EntranceReachable,
                           "entrance reachable: " + a.name(e.source) + " -> " + a.name(e.target)});
    }
    return out;
}

inline void require_valid(const OpenParityGame& a, bool atomic)
{
    auto v = validate_opg(a, atomic);
    if (!v.empty())
        throw std::invalid_argument("invalid open parity game: " + v.front().message);
}

/// Denotation of the induced play on an open game; exits end the play.
inline DomainElement evaluate_play(const OpenParityGame& a, const PositionalStrategy& s_exists,
                                   const PositionalStrategy& s_forall, NodeId start)
{
    return detail::walk_play(a.game(), s_exists, s_forall, start, [&](NodeId v) { return a.exit_at(v); });
}

/// Closes `a` for entrance `i`: exits with a priority loop back to `i`,
/// exits mapped to bot get a self-loop of priority 1.
inline ParityGame loop_construction(const OpenParityGame& a, EntranceRef i, const Query& q)
{
    const auto exits = a.exits();
    if (!std::equal(exits.begin(), exits.end(), q.exits().begin(), q.exits().end()))
        throw std::invalid_argument("loop_construction: query does not range over the game's exits");
    const NodeId target = a.node(i);
    std::vector<Edge> edges;
    for (const Edge& e : a.game().edges())
        if (!a.exit_at(e.source))
            edges.push_back(e);
    for (std::size_t k = 0; k < exits.size(); ++k) {
        NodeId o = a.node(exits[k]);
        if (auto v = q.values()[k])
            edges.push_back({o, target, *v});
        else
            edges.push_back({o, o, 1});
    }
    return ParityGame(a.space(), std::vector<Player>(a.game().owners().begin(), a.game().owners().end()),
                      std::move(edges));
}

/// Per-exit query values in ascending extended order: bot, M-1, ..., 1, 0, 2, ..., M.
inline std::vector<QueryValue> query_value_order(PrioritySpace space)
{
    std::vector<QueryValue> out{std::nullopt};
    for (Priority m = space.max() - 1;; m -= 2) {
        out.emplace_back(m);
        if (m == 1)
            break;
    }
    for (Priority m = 0; m <= space.max(); m += 2)
        out.emplace_back(m);
    return out;
}

inline std::uint64_t query_count(std::size_t exit_count, PrioritySpace space)
{
    std::uint64_t n = 1;
    for (std::size_t k = 0; k < exit_count; ++k)
        n *= space.query_radix();
    return n;
}

/// Digits of the `index`-th query, first exit most significant.
inline std::vector<std::uint32_t> query_digits(std::uint64_t index, std::size_t exit_count, PrioritySpace space)
{
    std::vector<std::uint32_t> digits(exit_count);
    for (std::size_t k = exit_count; k-- > 0;) {
        digits[k] = static_cast<std::uint32_t>(index % space.query_radix());
        index /= space.query_radix();
    }
    return digits;
}

/// All (M+2)^N queries in lexicographic order (a linear extension of the query order).
inline std::vector<Query> enumerate_queries(const OpenParityGame& a)
{
    const auto exits = a.exits();
    const auto order = query_value_order(a.space());
    const std::uint64_t total = query_count(exits.size(), a.space());
    std::vector<Query> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        auto digits = query_digits(idx, exits.size(), a.space());
        std::vector<QueryValue> values;
        for (auto d : digits)
            values.push_back(order[d]);
        out.emplace_back(exits, std::move(values));
    }
    return out;
}

struct ParetoFront {
    EntranceRef entrance;
    std::vector<ResultSet> results; ///< canonical order

    bool operator==(const ParetoFront&) const = default;
};

using ParetoFronts = std::map<EntranceRef, ParetoFront>;

inline std::string to_string(const ParetoFront& f)
{
    std::string s = "{";
    for (std::size_t k = 0; k < f.results.size(); ++k)
        s += (k ? "," : "") + to_string(f.results[k]);
    return s + "}";
}

class Timeout : public std::runtime_error {
public:
    Timeout() : std::runtime_error("solve deadline exceeded") {}
};

struct SolveOptions {
    /// Skip queries above an already-winning one; never changes the output.
    bool pruning = false;
    /// Worker threads for the per-query loop (ignored with pruning).
    unsigned jobs = 1;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SolveStats {
    std::uint64_t queries_solved = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    std::uint64_t atom_occurrences = 0;
    std::uint64_t largest_front = 0;

    SolveStats& operator+=(const SolveStats& o)
    {
        queries_solved += o.queries_solved;
        cache_hits += o.cache_hits;
        cache_misses += o.cache_misses;
        atom_occurrences += o.atom_occurrences;
        largest_front = std::max(largest_front, o.largest_front);
        return *this;
    }
};

namespace detail {

// Split form of `a` without the exit self-loops; each query appends one
// edge per exit.
class LoopSkeleton {
public:
    explicit LoopSkeleton(const OpenParityGame& a)
        : base_(a.game().owners()), exits_(a.exits()), order_(query_value_order(a.space())), space_(a.space())
    {
        for (const Edge& e : a.game().edges())
            if (!a.exit_at(e.source))
                base_.add_edge(e.source, e.target, e.priority);
        for (ExitRef o : exits_)
            exit_nodes_.push_back(a.node(o));
    }

    std::size_t exit_count() const { return exits_.size(); }
    std::span<const ExitRef> exits() const { return exits_; }
    PrioritySpace space() const { return space_; }

    bool wins(NodeId entrance, std::span<const std::uint32_t> digits) const
    {
        SplitBuilder b = base_;
        for (std::size_t k = 0; k < digits.size(); ++k) {
            if (QueryValue v = order_[digits[k]])
                b.add_edge(exit_nodes_[k], entrance, *v);
            else
                b.add_edge(exit_nodes_[k], exit_nodes_[k], 1);
        }
        return solve_zielonka(b.build()).winner[entrance] == Player::Exists;
    }

    Query query(std::span<const std::uint32_t> digits) const
    {
        std::vector<QueryValue> values;
        for (auto d : digits)
            values.push_back(order_[d]);
        return Query(exits_, std::move(values));
    }

private:
    SplitBuilder base_;
    std::vector<ExitRef> exits_;
    std::vector<NodeId> exit_nodes_;
    std::vector<QueryValue> order_;
    PrioritySpace space_;
};

inline void check_deadline(const SolveOptions& opts)
{
    if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline)
        throw Timeout();
}

inline bool digits_leq(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b)
{
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k])
            return false;
    return true;
}

} // namespace detail

/// Pareto front of entrance `i` by one closed-game solve per query.
inline ParetoFront solve_pareto_front(const OpenParityGame& a, EntranceRef i, const SolveOptions& opts = {},
                                      SolveStats* stats = nullptr)
{
    require_valid(a, false);
    const NodeId entrance = a.node(i);
    const detail::LoopSkeleton skel(a);
    const std::size_t n_exits = skel.exit_count();
    const std::uint64_t total = query_count(n_exits, a.space());

    std::vector<ResultSet> found{ResultSet::bot()};
    std::uint64_t solved = 0;

    if (opts.pruning || opts.jobs <= 1) {
        std::vector<std::vector<std::uint32_t>> winners;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            auto digits = query_digits(idx, n_exits, a.space());
            if (opts.pruning && std::any_of(winners.begin(), winners.end(),
                                            [&](const auto& w) { return detail::digits_leq(w, digits); }))
                continue;
            detail::check_deadline(opts);
            ++solved;
            if (skel.wins(entrance, digits)) {
                found.push_back(dual_query(skel.query(digits)));
                if (opts.pruning)
                    winners.push_back(std::move(digits));
            }
        }
    } else {
        std::mutex mu;
        std::atomic<std::uint64_t> next{0};
        std::atomic<bool> timed_out{false};
        auto worker = [&] {
            std::vector<ResultSet> local;
            for (std::uint64_t idx; (idx = next.fetch_add(1)) < total && !timed_out;) {
                if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
                    timed_out = true;
                    break;
                }
                auto digits = query_digits(idx, n_exits, a.space());
                if (skel.wins(entrance, digits))
                    local.push_back(dual_query(skel.query(digits)));
            }
            std::lock_guard lock(mu);
            found.insert(found.end(), local.begin(), local.end());
        };
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < opts.jobs; ++t)
                pool.emplace_back(worker);
        }
        if (timed_out)
            throw Timeout();
        solved = total;
    }

    ParetoFront front{i, maximal_results(found)};
    if (stats) {
        stats->queries_solved += solved;
        stats->largest_front = std::max<std::uint64_t>(stats->largest_front, front.results.size());
    }
    return front;
}

inline ParetoFronts solve_pareto_fronts(const OpenParityGame& a, const SolveOptions& opts = {},
                                        SolveStats* stats = nullptr)
{
    ParetoFronts out;
    for (EntranceRef i : a.entrances())
        out.emplace(i, solve_pareto_front(a, i, opts, stats));
    return out;
}

enum class EntranceClass { Winning, Losing, Pending };

inline const char* to_string(EntranceClass c)
{
    switch (c) {
    case EntranceClass::Winning: return "winning";
    case EntranceClass::Losing: return "losing";
    case EntranceClass::Pending: return "pending";
    }
    return "?";
}

class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Winner classification of an entrance from its front.
inline EntranceClass classify_entrance(const ParetoFront& front)
{
    if (front.results.empty())
        throw InternalError("empty Pareto front at " + to_string(front.entrance));
    if (front.results.size() == 1 && front.results.front().is_top())
        return EntranceClass::Winning;
    if (front.results.size() == 1 && front.results.front().is_bot())
        return EntranceClass::Losing;
    for (const ResultSet& r : front.results) {
        for (const DomainElement& d : r)
            if (!d.is_exit())
                throw InternalError("pending front " + to_string(front) + " mentions top or bot");
        for (std::size_t k = 1; k < r.size(); ++k)
            if (r.elements()[k - 1].exit() == r.elements()[k].exit())
                throw InternalError("pending front " + to_string(front) + " repeats an exit");
    }
    return EntranceClass::Pending;
}

} // namespace opg
