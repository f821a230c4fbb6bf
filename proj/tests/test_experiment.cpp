#include <filesystem>
#include <fstream>
#include <sstream>

#include "bmatrix/experiment.hpp"
#include "bmatrix/hebbian.hpp"
#include "bmatrix/oracle.hpp"
#include "doctest.h"

using namespace bmatrix;

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path test_dir() {
    const fs::path dir = fs::temp_directory_path() / "bmatrix_experiment_test";
    fs::create_directories(dir);
    return dir;
}

ExperimentSpec two_memory_spec() {
    const fs::path path = test_dir() / "two.mem";
    std::ofstream out(path);
    out << "1 1 -1 -1\n1 -1 1 -1\n";
    out.close();
    ExperimentSpec spec;
    spec.memories_file = path.string();
    return spec;
}

}  // namespace

TEST_CASE("generate_random_memories is seed-deterministic and always valid") {
    const MemorySet a = generate_random_memories(9, 4, 123);
    const MemorySet b = generate_random_memories(9, 4, 123);
    CHECK(a.memories == b.memories);
    CHECK(a.dimension == 9);
    CHECK(a.count() == 4);
    CHECK_NOTHROW(validate_memories(a.memories));

    const MemorySet c = generate_random_memories(9, 4, 124);
    CHECK(a.memories != c.memories);
}

TEST_CASE("generate_random_memories enforces the counting bound") {
    CHECK_THROWS_WITH_AS(generate_random_memories(3, 5, 1), doctest::Contains("impossible"),
                         Error);
    // exactly the 2^(n-1) capacity is reachable by resampling
    const MemorySet full = generate_random_memories(4, 8, 7);
    CHECK(full.count() == 8);
    CHECK_THROWS_AS(generate_random_memories(4, 9, 1), Error);
}

TEST_CASE("run_eval on a single stored memory reports full retrieval") {
    ExperimentSpec spec;
    spec.nodes = 10;
    spec.memories = 1;
    spec.seed = 42;
    const ExperimentReport report = run_eval(spec);
    CHECK(report.before.rate == 100.0);
    CHECK(report.after.rate == 100.0);
    CHECK(report.counters.evaluations == 1);
    CHECK(report.counters.teach_attempts == 0);
    for (bool active : report.before.active) CHECK(active);
}

TEST_CASE("run_eval agrees with the reference evaluation") {
    const ExperimentReport report = run_eval(two_memory_spec());
    const MemorySet set = validate_memories({{1, 1, -1, -1}, {1, -1, 1, -1}});
    const RetrievalReport ref = oracle::oracle_evaluate(build_t_matrix(set), set, linear_proximity(4));
    CHECK(report.before == ref);
    CHECK(report.before.rate == 50.0);
    CHECK(report.spec.nodes == 4);
    CHECK(report.spec.memories == 2);

    ExperimentSpec conflicting = two_memory_spec();
    conflicting.nodes = 7;
    CHECK_THROWS_WITH_AS(run_eval(conflicting), doctest::Contains("--nodes"), Error);
}

TEST_CASE("the m < n guard is enforced unless forced") {
    ExperimentSpec spec;
    spec.nodes = 4;
    spec.memories = 4;
    CHECK_THROWS_WITH_AS(run_eval(spec), doctest::Contains("--force"), Error);
    spec.allow_overcapacity = true;
    CHECK_NOTHROW(run_eval(spec));
}

TEST_CASE("step CSV format is pinned") {
    CHECK(format_step_csv(LearningLog{}) ==
          "step,node,target_memory,target_sign,outcome,rate_before,rate_after\n");

    ExperimentSpec spec = two_memory_spec();
    spec.mode = ExperimentSpec::Mode::learn;
    const ExperimentReport report = run_learn(spec);
    CHECK(format_step_csv(report.log) ==
          "step,node,target_memory,target_sign,outcome,rate_before,rate_after\n"
          "1,1,2,+1,accepted,50.0000,100.0000\n");
}

TEST_CASE("activity map format is pinned") {
    const ExperimentReport report = run_eval(two_memory_spec());
    CHECK(format_activity_map(report) ==
          "BEFORE\n"
          "1 m1+ m1-\n"
          "2 m1+ m1-\n"
          "3 m1- m1+\n"
          "4 m1- m1+\n"
          "AFTER\n"
          "1 m1+ m1-\n"
          "2 m1+ m1-\n"
          "3 m1- m1+\n"
          "4 m1- m1+\n");
}

TEST_CASE("learning the two-memory network fills the activity map and log") {
    ExperimentSpec spec = two_memory_spec();
    spec.mode = ExperimentSpec::Mode::learn;
    const ExperimentReport report = run_learn(spec);
    CHECK(report.before.rate == 50.0);
    CHECK(report.after.rate == 100.0);
    CHECK(report.log.termination == LearningLog::Termination::rate_100);
    CHECK(report.counters.teach_attempts == 1);
    CHECK(report.counters.weight_updates == 1);
    CHECK(report.counters.evaluations == 4);

    const std::string text = format_report(report);
    CHECK(text.find("SPEC\n") == 0);
    for (const char* section :
         {"\nRATES\n", "\nMEMORIES\n", "\nACTIVITY_BEFORE\n", "\nACTIVITY_AFTER\n", "\nLOG\n",
          "\nTIMING\n"}) {
        CHECK(text.find(section) != std::string::npos);
    }
    CHECK(text.find("rate_before 50.0000\n") != std::string::npos);
    CHECK(text.find("rate_after 100.0000\n") != std::string::npos);
    CHECK(text.find("m2 before=missing after=retrieved vector=1 -1 1 -1\n") != std::string::npos);
    CHECK(text.find("termination rate_100\n") != std::string::npos);
    CHECK(text.find("step=1 node=1 target=m2 sign=+1 outcome=accepted rate_before=50.0000 "
                    "rate_after=100.0000 rows_updated=2 inner_iterations=1\n") !=
          std::string::npos);
    // wall-clock time never reaches the file
    CHECK(text.find("wall") == std::string::npos);
}

TEST_CASE("emit_outputs writes byte-identical files for identical specs") {
    ExperimentSpec spec = two_memory_spec();
    spec.mode = ExperimentSpec::Mode::learn;
    const fs::path dir = test_dir() / "emit" / "nested";
    spec.report_path = (dir / "report.txt").string();
    spec.csv_path = (dir / "steps.csv").string();
    spec.activity_path = (dir / "map.txt").string();

    const ExperimentReport first = run_learn(spec);
    emit_outputs(first, spec);
    const std::string report1 = slurp(spec.report_path);
    const std::string csv1 = slurp(spec.csv_path);
    const std::string map1 = slurp(spec.activity_path);
    CHECK(report1 == format_report(first));
    CHECK(csv1 == format_step_csv(first.log));
    CHECK(map1 == format_activity_map(first));

    const ExperimentReport second = run_learn(spec);
    emit_outputs(second, spec);
    CHECK(slurp(spec.report_path) == report1);
    CHECK(slurp(spec.csv_path) == csv1);
    CHECK(slurp(spec.activity_path) == map1);
}

TEST_CASE("proximity file dimension mismatches are reported") {
    ExperimentSpec spec = two_memory_spec();
    const fs::path prox_path = test_dir() / "prox3.txt";
    std::ofstream out(prox_path);
    out << "0 1 2\n1 0 1\n2 1 0\n";
    out.close();
    spec.proximity = prox_path.string();
    CHECK_THROWS_WITH_AS(run_eval(spec), doctest::Contains("dimension"), Error);
}

TEST_CASE("batch runs use consecutive seeds and summarize faithfully") {
    ExperimentSpec spec;
    spec.mode = ExperimentSpec::Mode::learn;
    spec.nodes = 8;
    spec.memories = 2;
    spec.seed = 100;
    const auto runs = run_batch(spec, 6);
    REQUIRE(runs.size() == 6);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        CHECK(runs[i].spec.seed == 100 + i);
        CHECK(runs[i].after.rate >= runs[i].before.rate);
    }

    const BatchSummary summary = summarize_batch(runs);
    double before = 0.0, after = 0.0;
    int improved = 0;
    for (const auto& r : runs) {
        before += r.before.rate;
        after += r.after.rate;
        improved += r.after.rate > r.before.rate ? 1 : 0;
    }
    CHECK(summary.mean_rate_before == before / 6);
    CHECK(summary.mean_rate_after == after / 6);
    CHECK(summary.improved_runs == improved);
    CHECK(summary.improved_runs + summary.unchanged_runs + summary.regressed_runs == 6);
    CHECK(summary.regressed_runs == 0);

    const std::string csv = format_batch_csv(runs);
    CHECK(csv.find("run,seed,rate_before,rate_after,accepted_steps,attempts,termination\n") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);

    const std::string text = format_batch_report(spec, runs);
    CHECK(text.find("BATCH\n") == 0);
    CHECK(text.find("runs 6\n") != std::string::npos);
    CHECK(text.find("max_outer 160\n") != std::string::npos);  // resolved 10*n*m
}
