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

#include <gtest/gtest.h>

#include "support.hpp"

using namespace opg;
using namespace opg::testing;

namespace {

std::filesystem::path sample(const char* name) { return std::filesystem::path(OPG_SAMPLES_DIR) / name; }

} // namespace

TEST(Bench, LoadsSampleSpec)
{
    auto instances = load_bench_spec(sample("bench.json"));
    ASSERT_EQ(instances.size(), 4u);
    EXPECT_EQ(instances[0].name, "running");
    EXPECT_EQ(instances[0].diagram, "c");
    EXPECT_EQ(instances[0].modes.size(), 3u);
    EXPECT_EQ(instances[3].modes, (std::vector<SolveMode>{SolveMode::Compositional, SolveMode::Monolithic}));
    // A seed offset changes random instances only.
    auto shifted = load_bench_spec(sample("bench.json"), 7);
    EXPECT_EQ(shifted[0].file, instances[0].file);
    EXPECT_NE(print_source(shifted[2].file), print_source(instances[2].file));
}

TEST(Bench, ModesAgreeOnSamples)
{
    auto rows = run_bench(load_bench_spec(sample("bench.json")));
    EXPECT_EQ(rows.size(), 11u);
    EXPECT_TRUE(bench_consistent(rows));
    for (const auto& r : rows)
        EXPECT_TRUE(r.match == "yes" || r.match == "skipped") << r.instance << " " << to_string(r.mode);
    std::string csv = bench_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "instance,mode,ms,queries,cache_hits,match");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
    EXPECT_NE(csv.find("running,monolithic,"), std::string::npos);
}

TEST(Bench, TimeoutIsRecorded)
{
    BenchInstance inst{"c", parse_and_check(kRunningExample), "c", {SolveMode::Monolithic}};
    BenchOptions opts;
    opts.timeout = std::chrono::milliseconds(0);
    auto rows = run_bench({inst}, opts);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].match, "timeout");
    EXPECT_TRUE(bench_consistent(rows));
}

TEST(Bench, OracleBoundSkips)
{
    BenchInstance inst{"c", parse_and_check(kRunningExample), "c", {SolveMode::Monolithic, SolveMode::Oracle}};
    BenchOptions opts;
    opts.oracle_bound = 2;
    auto rows = run_bench({inst}, opts);
    EXPECT_EQ(rows[0].match, "yes");
    EXPECT_EQ(rows[1].match, "skipped");
}

TEST(Bench, RejectsMalformedSpec)
{
    auto tmp = std::filesystem::temp_directory_path() / "opg_bad_bench.json";
    std::ofstream(tmp) << R"({"instances":[{"name":"x"}]})";
    EXPECT_ANY_THROW(load_bench_spec(tmp));
    std::filesystem::remove(tmp);
}
