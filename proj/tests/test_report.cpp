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

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace opg;
using namespace opg::testing;
using nlohmann::json;

TEST(Json, RunningExampleSchema)
{
    SolveReport r = run_solve(parse_and_check(kRunningExample), "c", SolveMode::Compositional);
    json j = json::parse(emit_json(r));
    EXPECT_EQ(j["diagram"], "c");
    EXPECT_EQ(j["mode"], "compositional");
    ASSERT_EQ(j["entrances"].size(), 1u);
    const json& e = j["entrances"][0];
    EXPECT_EQ(e["id"], "in.r1");
    EXPECT_EQ(e["class"], "pending");
    EXPECT_EQ(e["front"], json::parse(R"([[{"exit":"out.r1","priority":1}]])"));
    EXPECT_EQ(j["stats"]["queries"], 36);
    EXPECT_FALSE(j["stats"].contains("ms"));
    EXPECT_TRUE(json::parse(emit_json(r, true))["stats"].contains("ms"));
}

TEST(Json, TopAndBot)
{
    ParetoFronts fronts{{in_r(1), ParetoFront{in_r(1), {ResultSet::top()}}},
                        {in_l(1), ParetoFront{in_l(1), {ResultSet::bot()}}}};
    json j = json::parse(emit_json(make_report("x", SolveMode::Oracle, fronts)));
    EXPECT_EQ(j["entrances"][0]["front"], json::parse(R"([[{"top":true}]])"));
    EXPECT_EQ(j["entrances"][0]["class"], "winning");
    EXPECT_EQ(j["entrances"][1]["front"], json::parse(R"([[{"bot":true}]])"));
    EXPECT_EQ(j["entrances"][1]["class"], "losing");
    EXPECT_EQ(j["mode"], "oracle");
}

TEST(Json, OutputIsReproducible)
{
    SourceFile f = parse_and_check(kToy);
    std::string a = emit_json(run_solve(f, "a", SolveMode::Compositional));
    std::string b = emit_json(run_solve(f, "a", SolveMode::Compositional));
    EXPECT_EQ(a, b);
    json j = json::parse(a);
    EXPECT_EQ(j["entrances"][0]["front"],
              json::parse(R"([[{"exit":"out.r1","priority":3}],[{"exit":"out.r2","priority":2}]])"));
}

TEST(Report, ModesAgreeAndCountQueries)
{
    SourceFile f = parse_and_check(kRunningExample);
    auto comp = run_solve(f, "c", SolveMode::Compositional);
    auto mono = run_solve(f, "c", SolveMode::Monolithic);
    auto orac = run_solve(f, "c", SolveMode::Oracle);
    EXPECT_EQ(comp.fronts(), mono.fronts());
    EXPECT_EQ(comp.fronts(), orac.fronts());
    EXPECT_EQ(mono.stats.queries_solved, 36u); // (4+2)^2
    EXPECT_EQ(comp.entrances.front().cls, EntranceClass::Pending);
    ASSERT_EQ(comp.phase_ms.size(), 2u);
    EXPECT_EQ(mono.phase_ms.size(), 3u);
    EXPECT_EQ(comp.phase_ms.back().first, "solve");
}

TEST(Report, PruningIsTransparent)
{
    SourceFile f = parse_and_check(kToy);
    RunOptions pruned;
    pruned.pruning = true;
    auto plain = run_solve(f, "a", SolveMode::Monolithic);
    auto fast = run_solve(f, "a", SolveMode::Monolithic, pruned);
    EXPECT_EQ(plain.fronts(), fast.fronts());
    EXPECT_LE(fast.stats.queries_solved, plain.stats.queries_solved);
}

TEST(Report, ModeNames)
{
    for (SolveMode m : {SolveMode::Compositional, SolveMode::Monolithic, SolveMode::Oracle})
        EXPECT_EQ(parse_mode(to_string(m)), m);
    EXPECT_THROW(parse_mode("fast"), std::invalid_argument);
}

TEST(Dot, RunningExampleShapes)
{
    std::string dot = emit_dot(running_example(), "C");
    auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (auto p = dot.find(needle); p != std::string::npos; p = dot.find(needle, p + 1))
            ++n;
        return n;
    };
    EXPECT_EQ(count("shape=diamond"), 2u);
    EXPECT_EQ(count("shape=circle"), 2u);
    EXPECT_EQ(count("shape=box"), 3u);
    EXPECT_EQ(count(" -> "), 10u);
    EXPECT_NE(dot.find("label=\"3\""), std::string::npos);
    EXPECT_EQ(dot.rfind("digraph \"C\"", 0), 0u);
}
