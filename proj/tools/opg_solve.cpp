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

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "opg/opg.hpp"

namespace {

void write_output(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

void print_report(const opg::SolveReport& r, bool stats)
{
    std::cout << "diagram " << r.diagram << " (" << opg::to_string(r.mode) << ")\n";
    for (const auto& e : r.entrances)
        std::cout << "  " << opg::to_string(e.id) << "  " << opg::to_string(e.cls) << "  " << opg::to_string(e.front)
                  << "\n";
    if (stats) {
        std::cout << "queries " << r.stats.queries_solved << ", cache hits " << r.stats.cache_hits
                  << ", cache misses " << r.stats.cache_misses << ", atom occurrences " << r.stats.atom_occurrences
                  << "\n";
        for (const auto& [phase, ms] : r.phase_ms)
            std::cout << phase << " " << ms << " ms\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pareto fronts of open parity games and their string diagrams"};
    app.require_subcommand(1);

    std::string file, diagram, mode = "compositional", json_out, dot_out;
    bool pruning = false, stats = false;
    std::uint64_t oracle_bound = opg::kDefaultOracleBound;
    unsigned jobs = 1;
    auto* solve = app.add_subcommand("solve", "solve a diagram of a source file");
    solve->add_option("file", file, "source file")->required()->check(CLI::ExistingFile);
    solve->add_option("--diagram", diagram, "diagram name")->required();
    solve->add_option("--mode", mode, "compositional, monolithic or oracle")
        ->check(CLI::IsMember({"compositional", "monolithic", "oracle"}));
    solve->add_flag("--pruning", pruning, "skip queries above winning ones");
    solve->add_option("--json", json_out, "write the JSON report to a file ('-' for stdout)");
    solve->add_option("--dot", dot_out, "write the composed game as DOT ('-' for stdout)");
    solve->add_flag("--stats", stats, "print counters and timings");
    solve->add_option("--oracle-bound", oracle_bound, "largest number of strategy pairs the oracle may enumerate");
    solve->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    std::string spec_file, csv_out;
    std::uint64_t seed = 0;
    std::int64_t timeout_ms = 0;
    auto* bench = app.add_subcommand("bench", "run a benchmark spec");
    bench->add_option("specfile", spec_file, "JSON spec")->required()->check(CLI::ExistingFile);
    bench->add_option("--csv", csv_out, "CSV output ('-' for stdout)")->required();
    bench->add_option("--seed", seed, "added to every random instance seed");
    bench->add_option("--timeout-ms", timeout_ms, "per instance and mode, 0 for none");
    bench->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    bench->add_option("--oracle-bound", oracle_bound, "largest number of strategy pairs the oracle may enumerate");

    auto* validate = app.add_subcommand("validate", "parse and check a source file");
    validate->add_option("file", file, "source file")->required()->check(CLI::ExistingFile);

    opg::RandomSpec gen_spec;
    std::string gen_out = "-";
    auto* generate = app.add_subcommand("generate", "write a random source file");
    generate->add_option("--nodes", gen_spec.atom.nodes, "non-interface nodes per atom");
    generate->add_option("--outdegree", gen_spec.atom.max_outdegree, "largest outdegree");
    generate->add_option("--max-priority", gen_spec.atom.max_priority, "M, even and at least 2");
    generate->add_option("--arity", gen_spec.max_arity, "largest interface list of a fresh atom");
    generate->add_option("--depth", gen_spec.depth, "term depth");
    generate->add_option("--duplicate-rate", gen_spec.duplicate_rate, "chance of reusing an atom")
        ->check(CLI::Range(0.0, 1.0));
    generate->add_flag("--exit-free", gen_spec.exit_free, "no exits, sums only");
    generate->add_option("--seed", gen_spec.seed, "random seed");
    generate->add_option("-o,--output", gen_out, "output file ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            opg::SourceFile src = opg::parse_and_check(opg::read_text_file(file));
            opg::RunOptions ro;
            ro.pruning = pruning;
            ro.jobs = jobs;
            ro.oracle_bound = oracle_bound;
            opg::SolveReport r = opg::run_solve(src, diagram, opg::parse_mode(mode), ro);
            if (!dot_out.empty())
                write_output(dot_out, opg::emit_dot(opg::operational_semantics(*opg::build_diagram(src, diagram)),
                                                    diagram));
            if (!json_out.empty())
                write_output(json_out, opg::emit_json(r, stats));
            if (json_out != "-" && dot_out != "-")
                print_report(r, stats);
            return 0;
        }
        if (*bench) {
            opg::BenchOptions bo;
            bo.jobs = jobs;
            bo.oracle_bound = oracle_bound;
            if (timeout_ms > 0)
                bo.timeout = std::chrono::milliseconds(timeout_ms);
            auto rows = opg::run_bench(opg::load_bench_spec(spec_file, seed), bo);
            write_output(csv_out, opg::bench_csv(rows));
            if (!opg::bench_consistent(rows)) {
                std::cerr << "error: modes disagree on some instance\n";
                return 2;
            }
            return 0;
        }
        if (*validate) {
            opg::SourceFile src = opg::parse_and_check(opg::read_text_file(file));
            bool ok = true;
            for (const auto& d : src.opgs)
                for (const auto& v : opg::validate_opg(opg::build_opg(d), true)) {
                    std::cerr << d.name << ": " << v.message << "\n";
                    ok = false;
                }
            if (!ok)
                return 1;
            std::cout << "ok: " << src.opgs.size() << " open games, " << src.diagrams.size() << " diagrams\n";
            return 0;
        }
        if (*generate) {
            write_output(gen_out, opg::print_source(opg::generate_random(gen_spec)));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
