#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmatrix/learning.hpp"
#include "bmatrix/retrieval.hpp"
#include "bmatrix/types.hpp"

namespace bmatrix {

struct ExperimentSpec {
    enum class Mode { eval, learn };

    Mode mode = Mode::eval;
    int nodes = 0;
    int memories = 0;           // ignored when memories_file is set
    std::string memories_file;  // empty means generate from seed
    std::string proximity = "linear";  // "linear" or a file path
    std::uint64_t seed = 1;
    LearningConfig learning;
    bool allow_overcapacity = false;  // lifts the m < n guard for generated sets

    std::string report_path;
    std::string csv_path;
    std::string activity_path;
};

// Deterministic operation counts; these go into the report file in place of
// wall-clock time, which is printed to the console only so that identical
// spec + seed re-runs produce byte-identical files.
struct Counters {
    std::int64_t evaluations = 0;
    std::int64_t teach_attempts = 0;
    std::int64_t weight_updates = 0;
};

struct ExperimentReport {
    ExperimentSpec spec;  // echo with resolved nodes/memories/max_outer
    MemorySet memories;
    RetrievalReport before;
    RetrievalReport after;
    int edges_before = 0;
    int edges_after = 0;
    LearningLog log;  // empty for eval mode
    Counters counters;
    double wall_ms = 0.0;  // console only, never written to files
};

// m uniform bipolar vectors drawn from a seeded generator, resampling any
// duplicate or complement collision. Deterministic per seed. Errors when m
// exceeds the 2^(n-1) distinct-up-to-complement capacity.
MemorySet generate_random_memories(int n, int m, std::uint64_t seed);

// Evaluation only; the after state equals the before state.
ExperimentReport run_eval(const ExperimentSpec& spec);

// Evaluate, run the learning loop, re-evaluate.
ExperimentReport run_learn(const ExperimentSpec& spec);

// Writes whichever of report/csv/activity-map paths are set, creating parent
// directories. Identical report + spec give byte-identical files.
void emit_outputs(const ExperimentReport& report, const ExperimentSpec& spec);

std::string format_report(const ExperimentReport& report);
std::string format_step_csv(const LearningLog& log);
std::string format_activity_map(const ExperimentReport& report);

// Seeded ensemble: run r uses seed spec.seed + r.
std::vector<ExperimentReport> run_batch(const ExperimentSpec& spec, int runs);

struct BatchSummary {
    int runs = 0;
    double mean_rate_before = 0.0;
    double mean_rate_after = 0.0;
    int improved_runs = 0;
    int unchanged_runs = 0;
    int regressed_runs = 0;
    int rate_100_runs = 0;
};

BatchSummary summarize_batch(const std::vector<ExperimentReport>& runs);
std::string format_batch_csv(const std::vector<ExperimentReport>& runs);
std::string format_batch_report(const ExperimentSpec& spec, const std::vector<ExperimentReport>& runs);

// "%.4f" rendering used for every rate written to a file.
std::string format_rate(double rate);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace bmatrix
