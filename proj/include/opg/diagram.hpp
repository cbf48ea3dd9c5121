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

// String diagrams over open parity games: the sequential composition and
// the sum, the composite game a term denotes, and the compositional solver
// that replaces each solved subterm by its shortcut game.

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "opg/open_game.hpp"
#include "opg/orders.hpp"
#include "opg/parity_game.hpp"

namespace opg {

class TypeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DiagramTerm;
using DiagramPtr = std::shared_ptr<const DiagramTerm>;

class DiagramTerm {
public:
    struct Atom {
        std::string name;
        std::shared_ptr<const OpenParityGame> game;
    };
    struct Seq {
        DiagramPtr left, right;
    };
    struct Sum {
        DiagramPtr left, right;
    };

    static DiagramPtr atom(std::string name, OpenParityGame game)
    {
        return std::make_shared<const DiagramTerm>(
            Atom{std::move(name), std::make_shared<const OpenParityGame>(std::move(game))});
    }
    static DiagramPtr atom(std::string name, std::shared_ptr<const OpenParityGame> game)
    {
        return std::make_shared<const DiagramTerm>(Atom{std::move(name), std::move(game)});
    }
    static DiagramPtr seq(DiagramPtr l, DiagramPtr r) { return std::make_shared<const DiagramTerm>(Seq{l, r}); }
    static DiagramPtr sum(DiagramPtr l, DiagramPtr r) { return std::make_shared<const DiagramTerm>(Sum{l, r}); }

    template <typename T>
    explicit DiagramTerm(T node) : node_(std::move(node))
    {
    }

    const std::variant<Atom, Seq, Sum>& node() const { return node_; }

private:
    std::variant<Atom, Seq, Sum> node_;
};

inline InterfaceType type_of(const DiagramTerm& d)
{
    if (const auto* a = std::get_if<DiagramTerm::Atom>(&d.node()))
        return a->game->type();
    if (const auto* s = std::get_if<DiagramTerm::Seq>(&d.node())) {
        InterfaceType l = type_of(*s->left);
        InterfaceType r = type_of(*s->right);
        if (l.cod_r != r.dom_r || l.cod_l != r.dom_l)
            throw TypeError("sequential composition of " + to_string(l) + " and " + to_string(r) +
                            ": middle arities differ");
        return {l.dom_r, l.dom_l, r.cod_r, r.cod_l};
    }
    const auto& s = std::get<DiagramTerm::Sum>(d.node());
    InterfaceType l = type_of(*s.left);
    InterfaceType r = type_of(*s.right);
    return {l.dom_r + r.dom_r, l.dom_l + r.dom_l, l.cod_r + r.cod_r, l.cod_l + r.cod_l};
}

/// Human-readable term with full parenthesization.
inline std::string to_string(const DiagramTerm& d)
{
    if (const auto* a = std::get_if<DiagramTerm::Atom>(&d.node()))
        return a->name;
    if (const auto* s = std::get_if<DiagramTerm::Seq>(&d.node()))
        return "(" + to_string(*s->left) + " ; " + to_string(*s->right) + ")";
    const auto& s = std::get<DiagramTerm::Sum>(d.node());
    return "(" + to_string(*s.left) + " + " + to_string(*s.right) + ")";
}

namespace detail {

struct DisjointUnion {
    std::vector<Player> owners;
    std::vector<std::string> names;
    NodeId offset = 0; // first id of the right operand
};

inline DisjointUnion disjoint_union(const OpenParityGame& a, const OpenParityGame& b)
{
    DisjointUnion u;
    u.owners.assign(a.game().owners().begin(), a.game().owners().end());
    u.owners.insert(u.owners.end(), b.game().owners().begin(), b.game().owners().end());
    u.names.assign(a.names().begin(), a.names().end());
    u.names.insert(u.names.end(), b.names().begin(), b.names().end());
    u.offset = a.node_count();
    return u;
}

inline std::vector<NodeId> shifted(const std::vector<NodeId>& ids, NodeId by)
{
    std::vector<NodeId> out;
    for (NodeId v : ids)
        out.push_back(v + by);
    return out;
}

inline std::vector<NodeId> concat(std::vector<NodeId> a, const std::vector<NodeId>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline PrioritySpace joint_space(const OpenParityGame& a, const OpenParityGame& b)
{
    return PrioritySpace(std::max(a.space().max(), b.space().max()));
}

} // namespace detail

/// Sequential composition: a's rightward exits feed b's rightward entrances
/// and b's leftward exits feed a's leftward entrances, each by a 0 edge.
/// Wired ends stay in the game as internal nodes with one successor.
inline OpenParityGame seq_compose(const OpenParityGame& a, const OpenParityGame& b)
{
    InterfaceType ta = a.type();
    InterfaceType tb = b.type();
    if (ta.cod_r != tb.dom_r || ta.cod_l != tb.dom_l)
        throw TypeError("sequential composition of " + to_string(ta) + " and " + to_string(tb) +
                        ": middle arities differ");
    auto u = detail::disjoint_union(a, b);
    const auto& ia = a.interface();
    const auto& ib = b.interface();
    std::vector<Edge> edges;
    for (const Edge& e : a.game().edges()) {
        auto o = a.exit_at(e.source);
        if (!(o && o->direction == Direction::Rightward))
            edges.push_back(e);
    }
    for (const Edge& e : b.game().edges()) {
        auto o = b.exit_at(e.source);
        if (!(o && o->direction == Direction::Leftward))
            edges.push_back({e.source + u.offset, e.target + u.offset, e.priority});
    }
    for (std::size_t k = 0; k < ia.out_r.size(); ++k)
        edges.push_back({ia.out_r[k], ib.in_r[k] + u.offset, 0});
    for (std::size_t k = 0; k < ib.out_l.size(); ++k)
        edges.push_back({ib.out_l[k] + u.offset, ia.in_l[k], 0});

    Interface io{ia.in_r, detail::shifted(ib.in_l, u.offset), detail::shifted(ib.out_r, u.offset), ia.out_l};
    return OpenParityGame(ParityGame(detail::joint_space(a, b), std::move(u.owners), std::move(edges)), std::move(io),
                          std::move(u.names));
}

/// Side-by-side sum; b's interface positions follow a's in every list.
inline OpenParityGame sum_compose(const OpenParityGame& a, const OpenParityGame& b)
{
    auto u = detail::disjoint_union(a, b);
    std::vector<Edge> edges(a.game().edges().begin(), a.game().edges().end());
    for (const Edge& e : b.game().edges())
        edges.push_back({e.source + u.offset, e.target + u.offset, e.priority});
    const auto& ia = a.interface();
    const auto& ib = b.interface();
    Interface io{detail::concat(ia.in_r, detail::shifted(ib.in_r, u.offset)),
                 detail::concat(ia.in_l, detail::shifted(ib.in_l, u.offset)),
                 detail::concat(ia.out_r, detail::shifted(ib.out_r, u.offset)),
                 detail::concat(ia.out_l, detail::shifted(ib.out_l, u.offset))};
    return OpenParityGame(ParityGame(detail::joint_space(a, b), std::move(u.owners), std::move(edges)), std::move(io),
                          std::move(u.names));
}

namespace detail {

inline OpenParityGame instantiate(const DiagramTerm::Atom& atom, std::size_t occurrence)
{
    std::vector<std::string> names;
    for (const auto& n : atom.game->names())
        names.push_back(atom.name + "#" + std::to_string(occurrence) + "." + n);
    return OpenParityGame(atom.game->game(), atom.game->interface(), std::move(names));
}

inline OpenParityGame semantics(const DiagramTerm& d, std::unordered_map<std::string, std::size_t>& seen)
{
    if (const auto* a = std::get_if<DiagramTerm::Atom>(&d.node()))
        return instantiate(*a, ++seen[a->name]);
    if (const auto* s = std::get_if<DiagramTerm::Seq>(&d.node())) {
        auto l = semantics(*s->left, seen);
        return seq_compose(l, semantics(*s->right, seen));
    }
    const auto& s = std::get<DiagramTerm::Sum>(d.node());
    auto l = semantics(*s.left, seen);
    return sum_compose(l, semantics(*s.right, seen));
}

} // namespace detail

/// The composite game a term denotes. Each atom occurrence gets its own
/// nodes, named `<atom>#<occurrence>.<node>`.
inline OpenParityGame operational_semantics(const DiagramTerm& d)
{
    type_of(d);
    std::unordered_map<std::string, std::size_t> seen;
    return detail::semantics(d, seen);
}

/// Two-layer summary game: one Forall-node per (entrance, Pareto-optimal
/// result), reached from the entrance by a 0 edge and leading to the exits
/// the result names with the result's priorities.
inline OpenParityGame shortcut(const InterfaceType& type, const ParetoFronts& fronts, PrioritySpace space)
{
    std::vector<Player> owners;
    std::vector<std::string> names;
    Interface io;
    auto add_iface = [&](std::vector<NodeId>& list, std::uint32_t n, const std::string& prefix) {
        for (std::uint32_t k = 1; k <= n; ++k) {
            list.push_back(static_cast<NodeId>(owners.size()));
            owners.push_back(Player::Exists);
            names.push_back(prefix + std::to_string(k));
        }
    };
    add_iface(io.in_r, type.dom_r, "in.r");
    add_iface(io.in_l, type.cod_l, "in.l");
    add_iface(io.out_r, type.cod_r, "out.r");
    add_iface(io.out_l, type.dom_l, "out.l");

    auto exit_node = [&](ExitRef o) {
        const auto& list = o.direction == Direction::Rightward ? io.out_r : io.out_l;
        if (o.index == 0 || o.index > list.size())
            throw std::invalid_argument("shortcut: result names unknown exit " + to_string(o));
        return list[o.index - 1];
    };

    std::vector<Edge> edges;
    for (NodeId o : io.out_r)
        edges.push_back({o, o, 0});
    for (NodeId o : io.out_l)
        edges.push_back({o, o, 0});

    std::size_t expected = type.dom_r + type.cod_l;
    if (fronts.size() != expected)
        throw std::invalid_argument("shortcut: fronts cover " + std::to_string(fronts.size()) + " entrances, game has " +
                                    std::to_string(expected));
    for (const auto& [i, front] : fronts) {
        const auto& list = i.direction == Direction::Rightward ? io.in_r : io.in_l;
        if (i.index == 0 || i.index > list.size())
            throw std::invalid_argument("shortcut: front for unknown entrance " + to_string(i));
        NodeId entrance = list[i.index - 1];
        for (std::size_t k = 0; k < front.results.size(); ++k) {
            const ResultSet& r = front.results[k];
            auto node = static_cast<NodeId>(owners.size());
            owners.push_back(Player::Forall);
            names.push_back(to_string(i) + ".r" + std::to_string(k + 1));
            edges.push_back({entrance, node, 0});
            for (const DomainElement& d : r) {
                if (d.is_top())
                    edges.push_back({node, node, 0});
                else if (d.is_bot())
                    edges.push_back({node, node, 1});
                else
                    edges.push_back({node, exit_node(d.exit()), d.priority()});
            }
        }
    }
    return OpenParityGame(ParityGame(space, std::move(owners), std::move(edges)), std::move(io), std::move(names));
}

inline OpenParityGame shortcut(const OpenParityGame& a, const ParetoFronts& fronts)
{
    return shortcut(a.type(), fronts, a.space());
}

/// Canonical structural description of a game: priority space, owners,
/// interface and sorted edge triples. Two games with equal keys are equal
/// up to node names.
inline std::string structural_key(const OpenParityGame& a)
{
    std::string s = "M" + std::to_string(a.space().max()) + "|";
    for (Player p : a.game().owners())
        s += p == Player::Exists ? 'E' : 'A';
    const auto& io = a.interface();
    for (const auto* list : {&io.in_r, &io.in_l, &io.out_r, &io.out_l}) {
        s += "|";
        for (NodeId v : *list)
            s += std::to_string(v) + ",";
    }
    s += "|";
    for (const Edge& e : a.game().edges())
        s += std::to_string(e.source) + ">" + std::to_string(e.target) + "@" + std::to_string(e.priority) + ";";
    return s;
}

inline std::uint64_t structural_hash(const OpenParityGame& a)
{
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (unsigned char c : structural_key(a)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Memo of atom fronts keyed by atom name plus structural hash. The full
/// structural key is kept alongside, so a hash collision is a miss.
class FrontCache {
public:
    std::optional<ParetoFronts> find(const std::string& name, const OpenParityGame& a) const
    {
        std::lock_guard lock(mu_);
        auto it = map_.find(key(name, a));
        if (it == map_.end() || it->second.structure != structural_key(a))
            return std::nullopt;
        return it->second.fronts;
    }

    void insert(const std::string& name, const OpenParityGame& a, ParetoFronts fronts)
    {
        std::lock_guard lock(mu_);
        map_[key(name, a)] = Entry{structural_key(a), std::move(fronts)};
    }

    std::size_t size() const
    {
        std::lock_guard lock(mu_);
        return map_.size();
    }

private:
    struct Entry {
        std::string structure;
        ParetoFronts fronts;
    };

    static std::string key(const std::string& name, const OpenParityGame& a)
    {
        return name + "#" + std::to_string(structural_hash(a));
    }

    mutable std::mutex mu_;
    std::unordered_map<std::string, Entry> map_;
};

namespace detail {

struct SolvedTerm {
    InterfaceType type;
    PrioritySpace space;
    ParetoFronts fronts;
};

inline SolvedTerm solve_term(const DiagramTerm& d, FrontCache& cache, const SolveOptions& opts, SolveStats* stats)
{
    if (const auto* a = std::get_if<DiagramTerm::Atom>(&d.node())) {
        if (stats)
            ++stats->atom_occurrences;
        if (auto hit = cache.find(a->name, *a->game)) {
            if (stats)
                ++stats->cache_hits;
            return {a->game->type(), a->game->space(), std::move(*hit)};
        }
        if (stats)
            ++stats->cache_misses;
        require_valid(*a->game, true);
        auto fronts = solve_pareto_fronts(*a->game, opts, stats);
        cache.insert(a->name, *a->game, fronts);
        return {a->game->type(), a->game->space(), std::move(fronts)};
    }
    const bool is_seq = std::holds_alternative<DiagramTerm::Seq>(d.node());
    DiagramPtr left, right;
    if (is_seq) {
        left = std::get<DiagramTerm::Seq>(d.node()).left;
        right = std::get<DiagramTerm::Seq>(d.node()).right;
    } else {
        left = std::get<DiagramTerm::Sum>(d.node()).left;
        right = std::get<DiagramTerm::Sum>(d.node()).right;
    }
    SolvedTerm l = solve_term(*left, cache, opts, stats);
    SolvedTerm r = solve_term(*right, cache, opts, stats);
    PrioritySpace space(std::max(l.space.max(), r.space.max()));
    OpenParityGame sl = shortcut(l.type, l.fronts, space);
    OpenParityGame sr = shortcut(r.type, r.fronts, space);
    OpenParityGame composite = is_seq ? seq_compose(sl, sr) : sum_compose(sl, sr);
    return {composite.type(), space, solve_pareto_fronts(composite, opts, stats)};
}

} // namespace detail

/// Fronts of every entrance of the term's composite game, computed bottom-up
/// on shortcut games. Atoms are solved once per distinct (name, structure).
inline ParetoFronts solve_diagram(const DiagramTerm& d, FrontCache& cache, const SolveOptions& opts = {},
                                  SolveStats* stats = nullptr)
{
    type_of(d);
    return detail::solve_term(d, cache, opts, stats).fronts;
}

inline ParetoFronts solve_diagram(const DiagramTerm& d, const SolveOptions& opts = {}, SolveStats* stats = nullptr)
{
    FrontCache cache;
    return solve_diagram(d, cache, opts, stats);
}

} // namespace opg
