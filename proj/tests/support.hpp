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

// Fixtures shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "opg/opg.hpp"

namespace opg::testing {

inline const char* kRunningExample = R"(
opg C : (1,1) -> (1,0) {
  maxprio 4;
  node a E;
  node b A;
  node c E;
  node d A;
  in.r1 -> a @ 0;
  a -> c @ 1;
  c -> d @ 0;
  c -> out.r1 @ 0;
  d -> b @ 1;
  d -> out.r1 @ 2;
  b -> a @ 3;
  b -> out.l1 @ 0;
}
diagram c = C;
)";

inline const char* kToy = R"(
opg A : (1,0) -> (2,0) {
  maxprio 4;
  node a E;
  in.r1 -> a @ 0;
  a -> out.r1 @ 3;
  a -> out.r2 @ 2;
}
diagram a = A;
)";

// Two rightward entrances feeding one Exists-node with two exits.
inline const char* kTwoByTwo = R"(
opg A : (2,0) -> (2,0) {
  maxprio 4;
  node a E;
  in.r1 -> a @ 0;
  in.r2 -> a @ 1;
  a -> out.r1 @ 3;
  a -> out.r2 @ 2;
}
)";

inline OpenParityGame game_from(const char* text, const char* name = nullptr)
{
    SourceFile f = parse_source(text);
    return build_opg(name ? *f.find_opg(name) : f.opgs.front());
}

inline OpenParityGame running_example() { return game_from(kRunningExample); }

inline constexpr EntranceRef in_r(std::uint32_t k) { return {Direction::Rightward, k}; }
inline constexpr EntranceRef in_l(std::uint32_t k) { return {Direction::Leftward, k}; }
inline constexpr ExitRef out_r(std::uint32_t k) { return {Direction::Rightward, k}; }
inline constexpr ExitRef out_l(std::uint32_t k) { return {Direction::Leftward, k}; }

inline ResultSet result(std::vector<DomainElement> ds) { return ResultSet::from_antichain(std::move(ds)); }

/// Random valid atom with at most `max_nodes` nodes in total and at most
/// `max_exits` exits; at least one entrance.
inline OpenParityGame random_small_opg(Rng& rng, std::uint32_t max_nodes, std::uint32_t max_exits,
                                       std::uint32_t max_outdegree, Priority m)
{
    for (;;) {
        InterfaceType t;
        t.dom_r = uniform_in(rng, 0, 2);
        t.cod_l = uniform_in(rng, t.dom_r == 0 ? 1 : 0, 1);
        std::uint32_t exits = uniform_in(rng, 0, max_exits);
        t.cod_r = uniform_in(rng, 0, exits);
        t.dom_l = exits - t.cod_r;
        std::uint32_t iface = t.dom_r + t.dom_l + t.cod_r + t.cod_l;
        if (iface + 1 > max_nodes)
            continue;
        AtomSpec spec{uniform_in(rng, 1, max_nodes - iface), max_outdegree, m};
        return build_opg(random_atom(rng, spec, t, "R"));
    }
}

/// Random valid atom of a fixed type.
inline OpenParityGame random_typed_opg(Rng& rng, const InterfaceType& t, std::uint32_t nodes,
                                       std::uint32_t max_outdegree, Priority m)
{
    return build_opg(random_atom(rng, AtomSpec{nodes, max_outdegree, m}, t, "R"));
}

inline std::vector<ExitRef> exits_up_to(std::uint32_t n)
{
    std::vector<ExitRef> out;
    for (std::uint32_t k = 1; k <= n; ++k)
        out.push_back(out_r(k));
    return out;
}

/// Every query over out.r1..out.rn, in enumeration order.
inline std::vector<Query> all_queries(std::uint32_t n_exits, PrioritySpace space)
{
    auto exits = exits_up_to(n_exits);
    auto order = query_value_order(space);
    std::vector<Query> out;
    for (std::uint64_t idx = 0; idx < query_count(n_exits, space); ++idx) {
        std::vector<QueryValue> values;
        for (auto d : query_digits(idx, n_exits, space))
            values.push_back(order[d]);
        out.emplace_back(exits, values);
    }
    return out;
}

/// Random result over the given exits.
inline ResultSet random_result(Rng& rng, std::span<const ExitRef> exits, Priority m)
{
    std::uint64_t roll = uniform_below(rng, 10);
    if (roll == 0)
        return ResultSet::top();
    if (roll == 1 || exits.empty())
        return ResultSet::bot();
    std::vector<DomainElement> ds;
    for (ExitRef o : exits)
        if (uniform_below(rng, 2))
            ds.push_back(DomainElement::at(o, uniform_in(rng, 0, m)));
    if (ds.empty())
        ds.push_back(DomainElement::at(exits.front(), uniform_in(rng, 0, m)));
    return ResultSet::from_antichain(std::move(ds));
}

/// Largest exit count over all subterms; bounds the per-entrance query count
/// of both solve modes.
inline std::uint32_t max_subterm_exits(const DiagramTerm& d)
{
    InterfaceType t = type_of(d);
    std::uint32_t here = t.cod_r + t.dom_l;
    if (const auto* s = std::get_if<DiagramTerm::Seq>(&d.node()))
        return std::max({here, max_subterm_exits(*s->left), max_subterm_exits(*s->right)});
    if (const auto* s = std::get_if<DiagramTerm::Sum>(&d.node()))
        return std::max({here, max_subterm_exits(*s->left), max_subterm_exits(*s->right)});
    return here;
}

/// Random diagram from `spec`, resampling seeds until every subterm has at
/// most `exit_cap` exits and the whole term at most `node_cap` nodes.
inline std::pair<SourceFile, DiagramPtr> random_diagram(RandomSpec spec, std::uint32_t exit_cap,
                                                        std::uint32_t node_cap = 64)
{
    for (;; spec.seed = spec.seed * 6364136223846793005ULL + 1442695040888963407ULL) {
        SourceFile f = generate_random(spec);
        DiagramPtr d = build_diagram(f, spec.diagram_name);
        if (max_subterm_exits(*d) <= exit_cap && operational_semantics(*d).node_count() <= node_cap)
            return {std::move(f), std::move(d)};
    }
}

inline std::string describe(const ParetoFronts& fronts)
{
    std::string s;
    for (const auto& [i, f] : fronts)
        s += to_string(i) + "=" + to_string(f) + " ";
    return s;
}

} // namespace opg::testing
