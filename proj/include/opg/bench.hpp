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

// Benchmark driver. A spec file is JSON:
//
//   {"instances": [
//      {"name": "dup", "random": {"nodes": 4, "outdegree": 2, "max_priority": 4,
//                                 "max_arity": 1, "depth": 2, "duplicate_rate": 0.8,
//                                 "exit_free": false, "seed": 7},
//       "modes": ["compositional", "monolithic"]},
//      {"name": "c", "file": "running.opg", "diagram": "c"}
//   ]}
//
// "modes" defaults to all three; "file" is relative to the spec file.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opg/dsl.hpp"
#include "opg/random.hpp"
#include "opg/report.hpp"

namespace opg {

struct BenchInstance {
    std::string name;
    SourceFile file;
    std::string diagram;
    std::vector<SolveMode> modes;
};

struct BenchRow {
    std::string instance;
    SolveMode mode;
    double ms = 0;
    std::uint64_t queries = 0;
    std::uint64_t cache_hits = 0;
    std::string match; // yes | no | timeout | skipped
};

struct BenchOptions {
    std::optional<std::chrono::milliseconds> timeout;
    unsigned jobs = 1;
    std::uint64_t oracle_bound = kDefaultOracleBound;
};

inline std::string read_text_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline RandomSpec random_spec_from_json(const nlohmann::json& j)
{
    RandomSpec s;
    s.atom.nodes = j.value("nodes", s.atom.nodes);
    s.atom.max_outdegree = j.value("outdegree", s.atom.max_outdegree);
    s.atom.max_priority = j.value("max_priority", s.atom.max_priority);
    s.max_arity = j.value("max_arity", s.max_arity);
    s.depth = j.value("depth", s.depth);
    s.duplicate_rate = j.value("duplicate_rate", s.duplicate_rate);
    s.exit_free = j.value("exit_free", s.exit_free);
    s.seed = j.value("seed", s.seed);
    return s;
}

inline std::vector<BenchInstance> load_bench_spec(const std::filesystem::path& path, std::uint64_t seed_offset = 0)
{
    nlohmann::json j = nlohmann::json::parse(read_text_file(path));
    std::vector<BenchInstance> out;
    for (const auto& e : j.at("instances")) {
        BenchInstance b;
        b.name = e.at("name").get<std::string>();
        if (e.contains("random")) {
            RandomSpec s = random_spec_from_json(e.at("random"));
            s.seed += seed_offset;
            b.file = generate_random(s);
            b.diagram = s.diagram_name;
        } else {
            b.file = parse_and_check(read_text_file(path.parent_path() / e.at("file").get<std::string>()));
            b.diagram = e.at("diagram").get<std::string>();
        }
        if (e.contains("modes"))
            for (const auto& m : e.at("modes"))
                b.modes.push_back(parse_mode(m.get<std::string>()));
        else
            b.modes = {SolveMode::Compositional, SolveMode::Monolithic, SolveMode::Oracle};
        out.push_back(std::move(b));
    }
    return out;
}

/// Runs every instance in every mode. The first mode to finish is the
/// reference; later modes are compared against it.
inline std::vector<BenchRow> run_bench(const std::vector<BenchInstance>& instances, const BenchOptions& opts = {})
{
    using clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    for (const auto& inst : instances) {
        std::optional<ParetoFronts> reference;
        for (SolveMode mode : inst.modes) {
            BenchRow row{inst.name, mode, 0, 0, 0, "yes"};
            RunOptions ro;
            ro.jobs = opts.jobs;
            ro.oracle_bound = opts.oracle_bound;
            auto start = clock::now();
            if (opts.timeout)
                ro.deadline = start + *opts.timeout;
            try {
                SolveReport r = run_solve(inst.file, inst.diagram, mode, ro);
                row.queries = r.stats.queries_solved;
                row.cache_hits = r.stats.cache_hits;
                ParetoFronts f = r.fronts();
                if (!reference)
                    reference = std::move(f);
                else if (f != *reference)
                    row.match = "no";
            } catch (const Timeout&) {
                row.match = "timeout";
            } catch (const OracleBoundExceeded&) {
                row.match = "skipped";
            }
            row.ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows)
{
    std::string out = "instance,mode,ms,queries,cache_hits,match\n";
    for (const auto& r : rows) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", r.ms);
        out += r.instance + "," + to_string(r.mode) + "," + ms + "," + std::to_string(r.queries) + "," +
               std::to_string(r.cache_hits) + "," + r.match + "\n";
    }
    return out;
}

inline bool bench_consistent(const std::vector<BenchRow>& rows)
{
    for (const auto& r : rows)
        if (r.match == "no")
            return false;
    return true;
}

} // namespace opg
