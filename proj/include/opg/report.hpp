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

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "opg/diagram.hpp"
#include "opg/dsl.hpp"
#include "opg/open_game.hpp"
#include "opg/oracle.hpp"

namespace opg {

enum class SolveMode { Compositional, Monolithic, Oracle };

inline const char* to_string(SolveMode m)
{
    switch (m) {
    case SolveMode::Compositional: return "compositional";
    case SolveMode::Monolithic: return "monolithic";
    case SolveMode::Oracle: return "oracle";
    }
    return "?";
}

inline SolveMode parse_mode(std::string_view s)
{
    if (s == "compositional")
        return SolveMode::Compositional;
    if (s == "monolithic")
        return SolveMode::Monolithic;
    if (s == "oracle")
        return SolveMode::Oracle;
    throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

struct RunOptions {
    bool pruning = false;
    unsigned jobs = 1;
    std::uint64_t oracle_bound = kDefaultOracleBound;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct EntranceReport {
    EntranceRef id;
    EntranceClass cls;
    ParetoFront front;
};

struct SolveReport {
    std::string diagram;
    SolveMode mode = SolveMode::Compositional;
    std::vector<EntranceReport> entrances; // in entrance order
    SolveStats stats;
    std::vector<std::pair<std::string, double>> phase_ms;

    ParetoFronts fronts() const
    {
        ParetoFronts out;
        for (const auto& e : entrances)
            out.emplace(e.id, e.front);
        return out;
    }
};

inline SolveReport make_report(std::string diagram, SolveMode mode, const ParetoFronts& fronts)
{
    SolveReport r;
    r.diagram = std::move(diagram);
    r.mode = mode;
    for (const auto& [i, f] : fronts)
        r.entrances.push_back({i, classify_entrance(f), f});
    return r;
}

/// Solves a named diagram of `file` in the requested mode.
inline SolveReport run_solve(const SourceFile& file, std::string_view diagram, SolveMode mode,
                             const RunOptions& opts = {})
{
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t) {
        return std::chrono::duration<double, std::milli>(clock::now() - t).count();
    };

    auto t0 = clock::now();
    DiagramPtr d = build_diagram(file, diagram);
    std::vector<std::pair<std::string, double>> phases{{"build", ms_since(t0)}};

    SolveOptions so;
    so.pruning = opts.pruning;
    so.jobs = opts.jobs;
    so.deadline = opts.deadline;
    SolveStats stats;
    ParetoFronts fronts;

    auto t1 = clock::now();
    switch (mode) {
    case SolveMode::Compositional: fronts = solve_diagram(*d, so, &stats); break;
    case SolveMode::Monolithic: {
        OpenParityGame g = operational_semantics(*d);
        phases.emplace_back("compose", ms_since(t1));
        t1 = clock::now();
        fronts = solve_pareto_fronts(g, so, &stats);
        break;
    }
    case SolveMode::Oracle: {
        OpenParityGame g = operational_semantics(*d);
        phases.emplace_back("compose", ms_since(t1));
        t1 = clock::now();
        fronts = brute_force_pareto_fronts(g, opts.oracle_bound);
        for (const auto& [i, f] : fronts)
            stats.largest_front = std::max<std::uint64_t>(stats.largest_front, f.results.size());
        break;
    }
    }
    phases.emplace_back("solve", ms_since(t1));

    SolveReport r = make_report(std::string(diagram), mode, fronts);
    r.stats = stats;
    r.phase_ms = std::move(phases);
    return r;
}

inline nlohmann::json to_json(const DomainElement& d)
{
    if (d.is_top())
        return {{"top", true}};
    if (d.is_bot())
        return {{"bot", true}};
    return {{"exit", to_string(d.exit())}, {"priority", d.priority()}};
}

/// JSON report. Entrances and fronts follow the canonical orders; timings are
/// only included on request so that the default output is reproducible.
inline std::string emit_json(const SolveReport& r, bool with_timings = false)
{
    nlohmann::json entrances = nlohmann::json::array();
    for (const auto& e : r.entrances) {
        nlohmann::json front = nlohmann::json::array();
        for (const ResultSet& res : e.front.results) {
            nlohmann::json elems = nlohmann::json::array();
            for (const DomainElement& d : res)
                elems.push_back(to_json(d));
            front.push_back(std::move(elems));
        }
        entrances.push_back({{"id", to_string(e.id)}, {"class", to_string(e.cls)}, {"front", std::move(front)}});
    }
    nlohmann::json stats = {
        {"queries", r.stats.queries_solved},
        {"cache_hits", r.stats.cache_hits},
        {"cache_misses", r.stats.cache_misses},
        {"atom_occurrences", r.stats.atom_occurrences},
        {"largest_front", r.stats.largest_front},
    };
    if (with_timings) {
        nlohmann::json ms = nlohmann::json::object();
        for (const auto& [phase, t] : r.phase_ms)
            ms[phase] = t;
        stats["ms"] = std::move(ms);
    }
    nlohmann::json out = {
        {"diagram", r.diagram}, {"mode", to_string(r.mode)}, {"entrances", std::move(entrances)}, {"stats", stats}};
    return out.dump(2) + "\n";
}

namespace detail {

inline std::string dot_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace detail

/// Graphviz rendering: Exists-nodes are circles, Forall-nodes diamonds,
/// interface nodes boxes; edges are labelled with their priority.
inline std::string emit_dot(const OpenParityGame& a, std::string_view graph_name = "opg")
{
    std::string out = "digraph \"" + detail::dot_escape(graph_name) + "\" {\n  rankdir=LR;\n";
    for (NodeId v = 0; v < a.node_count(); ++v) {
        const char* shape = "circle";
        if (a.exit_at(v) || a.entrance_at(v))
            shape = "box";
        else if (a.game().owner(v) == Player::Forall)
            shape = "diamond";
        out += "  n" + std::to_string(v) + " [label=\"" + detail::dot_escape(a.name(v)) + "\", shape=" + shape + "];\n";
    }
    for (const Edge& e : a.game().edges())
        out += "  n" + std::to_string(e.source) + " -> n" + std::to_string(e.target) + " [label=\"" +
               std::to_string(e.priority) + "\"];\n";
    out += "}\n";
    return out;
}

} // namespace opg
