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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any of them fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "support.hpp"

using namespace opg;
using namespace opg::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Failure{what};
}

struct Criterion {
    std::string name;
    double budget_ms;
    std::function<std::string()> run; // returns a short summary
};

// Edges of `a` that do not start at an exit.
std::set<Edge> base_edges(const OpenParityGame& a)
{
    std::set<Edge> out;
    for (const Edge& e : a.game().edges())
        if (!a.exit_at(e.source))
            out.insert(e);
    return out;
}

std::string check_running_example()
{
    SourceFile f = parse_and_check(kRunningExample);
    const ParetoFront want{in_r(1), {result({DomainElement::at(out_r(1), 1)})}};
    for (SolveMode m : {SolveMode::Compositional, SolveMode::Monolithic, SolveMode::Oracle}) {
        SolveReport r = run_solve(f, "c", m);
        require(r.entrances.size() == 1, std::string(to_string(m)) + ": expected one entrance");
        require(r.entrances[0].front == want, std::string(to_string(m)) + ": front " + to_string(r.entrances[0].front));
        require(r.entrances[0].cls == EntranceClass::Pending, std::string(to_string(m)) + ": not pending");
    }
    return "front {{(out.r1,1)}}, pending, 3 modes";
}

std::string check_loop_goldens()
{
    auto a = game_from(kTwoByTwo);
    const NodeId i1 = a.node(in_r(1)), o1 = a.node(out_r(1)), o2 = a.node(out_r(2));
    auto edges = [](const ParityGame& g) { return std::set<Edge>(g.edges().begin(), g.edges().end()); };

    std::set<Edge> want1 = base_edges(a);
    want1.insert({o1, i1, 3});
    want1.insert({o2, o2, 1});
    require(edges(loop_construction(a, in_r(1), Query(a.exits(), {3, std::nullopt}))) == want1, "q1 edges differ");

    std::set<Edge> want2 = base_edges(a);
    want2.insert({o1, i1, 0});
    want2.insert({o2, i1, 2});
    require(edges(loop_construction(a, in_r(1), Query(a.exits(), {0, 2}))) == want2, "q2 edges differ");
    return "2 loop games";
}

// Shared by the oracle and pruning criteria.
std::vector<OpenParityGame> oracle_corpus()
{
    Rng rng(20260101);
    std::vector<OpenParityGame> out;
    for (int n = 0; n < 320; ++n)
        out.push_back(random_small_opg(rng, 8, 3, 3, 4));
    return out;
}

std::string check_oracle_equivalence()
{
    std::size_t entrances = 0;
    auto corpus = oracle_corpus();
    for (std::size_t n = 0; n < corpus.size(); ++n) {
        const auto& a = corpus[n];
        require(a.node_count() <= 8 && a.exits().size() <= 3, "corpus game out of range");
        for (EntranceRef i : a.entrances()) {
            auto got = solve_pareto_front(a, i);
            auto want = brute_force_pareto(a, i);
            require(got == want, "game " + std::to_string(n) + " " + to_string(i) + ": " + to_string(got) +
                                     " vs oracle " + to_string(want));
            ++entrances;
        }
    }
    return std::to_string(corpus.size()) + " games, " + std::to_string(entrances) + " entrances";
}

std::string check_pruning_transparency()
{
    auto corpus = oracle_corpus();
    SolveOptions pruned;
    pruned.pruning = true;
    std::uint64_t saved = 0;
    for (std::size_t n = 0; n < corpus.size(); ++n) {
        SolveStats sp, sf;
        auto with = solve_pareto_fronts(corpus[n], pruned, &sp);
        auto without = solve_pareto_fronts(corpus[n], {}, &sf);
        require(with == without, "game " + std::to_string(n));
        saved += sf.queries_solved - sp.queries_solved;
    }
    return std::to_string(corpus.size()) + " games, " + std::to_string(saved) + " queries pruned";
}

InterfaceType random_type(Rng& rng)
{
    return {uniform_in(rng, 0, 2), uniform_in(rng, 0, 1), uniform_in(rng, 0, 2), uniform_in(rng, 0, 1)};
}

struct Pair {
    OpenParityGame a, b;
    bool seq;
};

std::vector<Pair> pair_corpus()
{
    Rng rng(31337);
    std::vector<Pair> out;
    while (out.size() < 200) {
        InterfaceType ta = random_type(rng);
        if (ta.dom_r + ta.cod_l == 0)
            continue;
        bool seq = uniform_below(rng, 2) == 0;
        InterfaceType tb = random_type(rng);
        if (seq) {
            tb.dom_r = ta.cod_r;
            tb.dom_l = ta.cod_l;
        }
        auto a = random_typed_opg(rng, ta, uniform_in(rng, 1, 3), 3, 4);
        auto b = random_typed_opg(rng, tb, uniform_in(rng, 1, 3), 3, 4);
        out.push_back({std::move(a), std::move(b), seq});
    }
    return out;
}

std::vector<std::pair<SourceFile, DiagramPtr>> diagram_corpus()
{
    std::vector<std::pair<SourceFile, DiagramPtr>> out;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        RandomSpec spec;
        spec.atom = AtomSpec{3, 2, 4};
        spec.max_arity = 1 + seed % 2;
        spec.depth = seed % 4;
        spec.duplicate_rate = (seed % 5) * 0.25;
        spec.seed = 1000 + seed;
        out.push_back(random_diagram(spec, 4));
    }
    return out;
}

std::string check_compositionality()
{
    auto pairs = pair_corpus();
    for (std::size_t n = 0; n < pairs.size(); ++n) {
        const auto& [a, b, seq] = pairs[n];
        auto sa = shortcut(a, solve_pareto_fronts(a));
        auto sb = shortcut(b, solve_pareto_fronts(b));
        auto whole = seq ? seq_compose(a, b) : sum_compose(a, b);
        auto cut = seq ? seq_compose(sa, sb) : sum_compose(sa, sb);
        auto fw = solve_pareto_fronts(whole);
        auto fc = solve_pareto_fronts(cut);
        require(fw == fc, "pair " + std::to_string(n) + (seq ? " (seq): " : " (sum): ") + describe(fw) + "vs " +
                              describe(fc));
    }
    auto diagrams = diagram_corpus();
    for (const auto& [f, d] : diagrams) {
        auto comp = solve_diagram(*d);
        auto mono = solve_pareto_fronts(operational_semantics(*d));
        require(comp == mono, "diagram " + to_string(*d) + ": " + describe(comp) + "vs " + describe(mono));
    }
    return std::to_string(pairs.size()) + " pairs, " + std::to_string(diagrams.size()) + " diagrams";
}

std::string check_shortcut_idempotence()
{
    std::size_t games = 0;
    auto check = [&](const OpenParityGame& g, const std::string& label) {
        auto fronts = solve_pareto_fronts(g);
        require(solve_pareto_fronts(shortcut(g, fronts)) == fronts, label);
        ++games;
    };
    auto pairs = pair_corpus();
    for (std::size_t n = 0; n < pairs.size(); ++n) {
        check(pairs[n].a, "pair " + std::to_string(n) + " left");
        check(pairs[n].b, "pair " + std::to_string(n) + " right");
    }
    for (const auto& [f, d] : diagram_corpus())
        check(operational_semantics(*d), "diagram " + to_string(*d));
    return std::to_string(games) + " games";
}

std::string check_winner_classification()
{
    std::size_t entrances = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        RandomSpec spec;
        spec.exit_free = true;
        spec.depth = seed % 4;
        spec.max_arity = 1 + seed % 3;
        spec.duplicate_rate = (seed % 3) * 0.5;
        spec.seed = 500 + seed;
        auto [f, d] = random_diagram(spec, 0);
        auto mono = operational_semantics(*d);
        for (const auto& [i, front] : solve_diagram(*d)) {
            auto cls = classify_entrance(front);
            require(cls != EntranceClass::Pending, to_string(*d) + " " + to_string(i) + " pending");
            require((cls == EntranceClass::Winning) == is_winning(mono.game(), mono.node(i)),
                    to_string(*d) + " " + to_string(i) + " misclassified");
            ++entrances;
        }
    }
    return "100 diagrams, " + std::to_string(entrances) + " entrances";
}

std::string check_query_count()
{
    Rng rng(2);
    std::size_t cases = 0;
    for (Priority m : {2u, 4u})
        for (std::uint32_t n = 0; n <= 3; ++n) {
            std::uint32_t right = uniform_in(rng, 0, n);
            InterfaceType t;
            t.dom_r = 1;
            t.cod_r = right;
            t.dom_l = n - right;
            auto a = random_typed_opg(rng, t, 3, 3, m);
            std::uint64_t want = 1;
            for (std::uint32_t k = 0; k < n; ++k)
                want *= m + 2;
            SolveStats stats;
            solve_pareto_front(a, in_r(1), {}, &stats);
            require(stats.queries_solved == want, "N=" + std::to_string(n) + " M=" + std::to_string(m) + ": " +
                                                      std::to_string(stats.queries_solved) + " queries, expected " +
                                                      std::to_string(want));
            ++cases;
        }
    return std::to_string(cases) + " (N,M) cases";
}

std::string check_order_laws()
{
    std::uint64_t checks = 0;
    for (Priority m = 2; m <= 10; m += 2) {
        for (Priority a = 0; a <= m; ++a)
            for (Priority b = 0; b <= m; ++b) {
                require((max_priority(a, b) % 2 == 0) == leq_subpriority(dual_priority(a), b),
                        "dual characterisation at " + std::to_string(a) + "," + std::to_string(b));
                for (Priority c = 0; c <= m; ++c, ++checks)
                    if (leq_subpriority(a, b))
                        require(leq_subpriority(max_priority(a, c), max_priority(b, c)),
                                "max monotonicity at " + std::to_string(a) + "," + std::to_string(b) + "," +
                                    std::to_string(c));
            }
        for (std::uint32_t n = 0; n <= 2; ++n) {
            auto qs = all_queries(n, PrioritySpace(m));
            for (const auto& q : qs) {
                require(query_from_result(dual_query(q), q.exits()) == q, "dual round trip " + to_string(q));
                for (const auto& p : qs) {
                    ++checks;
                    require(std::is_lteq(cmp_query(q, p)) == leq_upper(dual_query(p), dual_query(q)),
                            "query duality " + to_string(q) + " " + to_string(p));
                }
            }
        }
    }
    Rng rng(10000);
    auto exits = exits_up_to(3);
    for (int k = 0; k < 10000; ++k, ++checks) {
        auto a = random_result(rng, exits, 4);
        auto b = random_result(rng, exits, 4);
        if (leq_upper(a, b) && leq_upper(b, a))
            require(a == b, "antisymmetry " + to_string(a) + " " + to_string(b));
        require(leq_upper(a, a), "reflexivity " + to_string(a));
    }
    return std::to_string(checks) + " checks";
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"running-example-golden", 1000, check_running_example},
        {"loop-construction-goldens", 1000, check_loop_goldens},
        {"oracle-equivalence", 5 * 60 * 1000, check_oracle_equivalence},
        {"compositionality", 10 * 60 * 1000, check_compositionality},
        {"shortcut-idempotence", 10 * 60 * 1000, check_shortcut_idempotence},
        {"winner-classification", 10 * 60 * 1000, check_winner_classification},
        {"query-count", 60 * 1000, check_query_count},
        {"order-laws", 60 * 1000, check_order_laws},
        {"pruning-transparency", 5 * 60 * 1000, check_pruning_transparency},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = Clock::now();
        std::string summary;
        bool ok = true;
        try {
            summary = c.run();
        } catch (const Failure& f) {
            ok = false;
            summary = f.what;
        } catch (const std::exception& e) {
            ok = false;
            summary = std::string("exception: ") + e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        if (ok && ms > c.budget_ms) {
            ok = false;
            summary += "; over time budget";
        }
        failures += !ok;
        std::printf("%s %s (%.0f ms): %s\n", ok ? "PASS" : "FAIL", c.name.c_str(), ms, summary.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
