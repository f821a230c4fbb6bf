#include "bmatrix/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "bmatrix/hebbian.hpp"

namespace bmatrix {
namespace {

bool collides(const MemoryVector& v, const std::vector<MemoryVector>& chosen) {
    for (const auto& c : chosen) {
        bool equal = true;
        bool complement = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != c[i]) equal = false;
            if (v[i] != -c[i]) complement = false;
        }
        if (equal || complement) return true;
    }
    return false;
}

MemorySet resolve_memories(const ExperimentSpec& spec) {
    if (!spec.memories_file.empty()) {
        MemorySet set = load_memories_file(spec.memories_file);
        if (spec.nodes > 0 && spec.nodes != set.dimension) {
            throw Error("memories file '" + spec.memories_file + "' has dimension " +
                        std::to_string(set.dimension) + " but --nodes is " +
                        std::to_string(spec.nodes));
        }
        return set;
    }
    if (spec.nodes < 2) throw Error("need --nodes >= 2");
    if (spec.memories < 1) throw Error("need --memories >= 1");
    if (!spec.allow_overcapacity && spec.memories >= spec.nodes) {
        throw Error("refusing to store " + std::to_string(spec.memories) + " memories in " +
                    std::to_string(spec.nodes) + " nodes (use --force to override)");
    }
    return generate_random_memories(spec.nodes, spec.memories, spec.seed);
}

ProximityMatrix resolve_proximity(const ExperimentSpec& spec, int n) {
    if (spec.proximity.empty() || spec.proximity == "linear") return linear_proximity(n);
    ProximityMatrix prox = load_proximity_file(spec.proximity);
    if (prox.size() != n) {
        throw Error("proximity file '" + spec.proximity + "' has dimension " +
                    std::to_string(prox.size()) + " but the network has " + std::to_string(n) +
                    " nodes");
    }
    return prox;
}

// Echo with everything resolved so the report file is self-describing.
ExperimentSpec resolved_spec(const ExperimentSpec& spec, const MemorySet& memories) {
    ExperimentSpec out = spec;
    out.nodes = memories.dimension;
    out.memories = memories.count();
    out.learning.max_outer = spec.learning.resolve_max_outer(out.nodes, out.memories);
    return out;
}

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, value);
    return buf;
}

std::string activity_cell(const std::optional<MemoryMatch>& match) {
    if (!match) return "-";
    return "m" + std::to_string(match->index + 1) + (match->sign > 0 ? "+" : "-");
}

void append_activity_lines(std::string& out, const RetrievalReport& report) {
    for (int i = 0; i < report.n; ++i) {
        out += std::to_string(i + 1);
        out += ' ';
        out += activity_cell(report.matches[i][0]);
        out += ' ';
        out += activity_cell(report.matches[i][1]);
        out += '\n';
    }
}

std::string int_list(const std::vector<int>& values, int offset = 0) {
    if (values.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i] + offset);
    }
    return out;
}

void append_spec_lines(std::string& out, const ExperimentSpec& spec) {
    out += "mode ";
    out += spec.mode == ExperimentSpec::Mode::learn ? "learn" : "eval";
    out += '\n';
    out += "nodes " + std::to_string(spec.nodes) + '\n';
    out += "memories " + std::to_string(spec.memories) + '\n';
    out += "memories_source ";
    out += spec.memories_file.empty() ? "generated" : ("file " + spec.memories_file);
    out += '\n';
    out += "proximity " + (spec.proximity.empty() ? std::string("linear") : spec.proximity) + '\n';
    out += "seed " + std::to_string(spec.seed) + '\n';
    out += "eta " + fmt("%.6f", spec.learning.eta) + '\n';
    out += "max_inner " + std::to_string(spec.learning.max_inner) + '\n';
    out += "max_outer " + std::to_string(spec.learning.max_outer) + '\n';
}

Counters count_operations(const ExperimentSpec::Mode mode, const LearningLog& log) {
    Counters c;
    if (mode == ExperimentSpec::Mode::eval) {
        c.evaluations = 1;
        return c;
    }
    // run_learn evaluates before and after, the loop evaluates once up front
    // and once per attempt that produced a teachable candidate.
    c.evaluations = 3;
    c.teach_attempts = static_cast<std::int64_t>(log.steps.size());
    for (const auto& step : log.steps) {
        if (step.outcome != StepOutcome::row_unteachable) ++c.evaluations;
        for (int iters : step.inner_iterations) c.weight_updates += iters;
    }
    return c;
}

}  // namespace

MemorySet generate_random_memories(int n, int m, std::uint64_t seed) {
    if (n < 2) throw Error("generate_random_memories: need n >= 2, got " + std::to_string(n));
    if (m < 1) throw Error("generate_random_memories: need m >= 1, got " + std::to_string(m));
    if (n <= 62 && static_cast<std::uint64_t>(m) > (1ull << (n - 1))) {
        throw Error("impossible request: " + std::to_string(m) +
                    " memories exceed the 2^(n-1) = " + std::to_string(1ull << (n - 1)) +
                    " distinct-up-to-complement patterns of " + std::to_string(n) + " nodes");
    }

    std::mt19937_64 rng(seed);
    std::vector<MemoryVector> chosen;
    chosen.reserve(m);
    // Engine bits are used directly so the draw sequence is pinned by the
    // mt19937_64 standard, not by distribution internals.
    long draws = 0;
    const long draw_limit = 1000000;
    while (static_cast<int>(chosen.size()) < m) {
        if (++draws > draw_limit) {
            throw Error("generate_random_memories: gave up after " + std::to_string(draw_limit) +
                        " draws (requested " + std::to_string(m) + " of " + std::to_string(n) +
                        " nodes)");
        }
        MemoryVector v(n);
        for (int i = 0; i < n; ++i) {
            v[i] = (rng() & 1ull) ? +1 : -1;
        }
        if (collides(v, chosen)) continue;
        chosen.push_back(std::move(v));
    }

    std::vector<std::vector<int>> raw(chosen.begin(), chosen.end());
    return validate_memories(raw);
}

ExperimentReport run_eval(const ExperimentSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.memories = resolve_memories(spec);
    report.spec = resolved_spec(spec, report.memories);
    report.spec.mode = ExperimentSpec::Mode::eval;

    const ProximityMatrix prox = resolve_proximity(spec, report.memories.dimension);
    const InterconnectionMatrix t = build_t_matrix(report.memories);
    report.before = evaluate_network(t, report.memories, prox);
    report.after = report.before;
    report.edges_before = edge_count(t);
    report.edges_after = report.edges_before;
    report.log.initial_rate = report.before.rate;
    report.log.final_rate = report.before.rate;
    report.counters = count_operations(ExperimentSpec::Mode::eval, report.log);
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

ExperimentReport run_learn(const ExperimentSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.memories = resolve_memories(spec);
    report.spec = resolved_spec(spec, report.memories);
    report.spec.mode = ExperimentSpec::Mode::learn;

    const ProximityMatrix prox = resolve_proximity(spec, report.memories.dimension);
    const InterconnectionMatrix t = build_t_matrix(report.memories);
    report.before = evaluate_network(t, report.memories, prox);
    report.edges_before = edge_count(t);

    LearningResult result = learning_loop(t, report.memories, prox, report.spec.learning);
    report.log = std::move(result.log);
    report.after = evaluate_network(result.weights, report.memories, prox);
    report.edges_after = edge_count(result.weights);
    report.counters = count_operations(ExperimentSpec::Mode::learn, report.log);
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string format_rate(double rate) { return fmt("%.4f", rate); }

std::string format_report(const ExperimentReport& report) {
    const bool learn = report.spec.mode == ExperimentSpec::Mode::learn;
    std::string out;
    out += "SPEC\n";
    append_spec_lines(out, report.spec);

    out += "RATES\n";
    out += "rate_before " + format_rate(report.before.rate) + '\n';
    out += "rate_after " + format_rate(report.after.rate) + '\n';
    out += "edges_before " + std::to_string(report.edges_before) + '\n';
    out += "edges_after " + std::to_string(report.edges_after) + '\n';

    out += "MEMORIES\n";
    for (int j = 0; j < report.memories.count(); ++j) {
        out += "m" + std::to_string(j + 1);
        out += std::string(" before=") + (report.before.retrieved[j] ? "retrieved" : "missing");
        out += std::string(" after=") + (report.after.retrieved[j] ? "retrieved" : "missing");
        out += " vector=";
        const auto& v = report.memories.memories[j];
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(v[i]);
        }
        out += '\n';
    }

    out += "ACTIVITY_BEFORE\n";
    append_activity_lines(out, report.before);
    out += "ACTIVITY_AFTER\n";
    append_activity_lines(out, report.after);

    out += "LOG\n";
    out += "initial_rate " + format_rate(report.log.initial_rate) + '\n';
    out += "final_rate " + format_rate(report.log.final_rate) + '\n';
    if (learn) {
        out += std::string("termination ") + to_string(report.log.termination) + '\n';
    }
    out += "steps " + std::to_string(report.log.steps.size()) + '\n';
    for (std::size_t i = 0; i < report.log.steps.size(); ++i) {
        const auto& s = report.log.steps[i];
        out += "step=" + std::to_string(i + 1);
        out += " node=" + std::to_string(s.node + 1);
        out += " target=m" + std::to_string(s.target_memory + 1);
        out += std::string(" sign=") + (s.target_sign > 0 ? "+1" : "-1");
        out += std::string(" outcome=") + to_string(s.outcome);
        out += " rate_before=" + format_rate(s.rate_before);
        out += " rate_after=" + format_rate(s.rate_after);
        out += " rows_updated=" + int_list(s.rows_updated, 1);
        out += " inner_iterations=" + int_list(s.inner_iterations);
        out += '\n';
    }

    out += "TIMING\n";
    out += "evaluations " + std::to_string(report.counters.evaluations) + '\n';
    out += "teach_attempts " + std::to_string(report.counters.teach_attempts) + '\n';
    out += "weight_updates " + std::to_string(report.counters.weight_updates) + '\n';
    return out;
}

std::string format_step_csv(const LearningLog& log) {
    std::string out = "step,node,target_memory,target_sign,outcome,rate_before,rate_after\n";
    for (std::size_t i = 0; i < log.steps.size(); ++i) {
        const auto& s = log.steps[i];
        out += std::to_string(i + 1);
        out += ',' + std::to_string(s.node + 1);
        out += ',' + std::to_string(s.target_memory + 1);
        out += std::string(",") + (s.target_sign > 0 ? "+1" : "-1");
        out += std::string(",") + to_string(s.outcome);
        out += ',' + format_rate(s.rate_before);
        out += ',' + format_rate(s.rate_after);
        out += '\n';
    }
    return out;
}

std::string format_activity_map(const ExperimentReport& report) {
    std::string out = "BEFORE\n";
    append_activity_lines(out, report.before);
    out += "AFTER\n";
    append_activity_lines(out, report.after);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw Error("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for '" + path + "'");
}

void emit_outputs(const ExperimentReport& report, const ExperimentSpec& spec) {
    if (!spec.report_path.empty()) write_text_file(spec.report_path, format_report(report));
    if (!spec.csv_path.empty()) write_text_file(spec.csv_path, format_step_csv(report.log));
    if (!spec.activity_path.empty()) {
        write_text_file(spec.activity_path, format_activity_map(report));
    }
}

std::vector<ExperimentReport> run_batch(const ExperimentSpec& spec, int runs) {
    if (runs < 1) throw Error("need --runs >= 1");
    std::vector<ExperimentReport> out;
    out.reserve(runs);
    for (int r = 0; r < runs; ++r) {
        ExperimentSpec run_spec = spec;
        run_spec.seed = spec.seed + static_cast<std::uint64_t>(r);
        run_spec.report_path.clear();
        run_spec.csv_path.clear();
        run_spec.activity_path.clear();
        out.push_back(spec.mode == ExperimentSpec::Mode::eval ? run_eval(run_spec)
                                                              : run_learn(run_spec));
    }
    return out;
}

BatchSummary summarize_batch(const std::vector<ExperimentReport>& runs) {
    BatchSummary s;
    s.runs = static_cast<int>(runs.size());
    for (const auto& r : runs) {
        s.mean_rate_before += r.before.rate;
        s.mean_rate_after += r.after.rate;
        if (r.after.rate > r.before.rate) ++s.improved_runs;
        else if (r.after.rate == r.before.rate) ++s.unchanged_runs;
        else ++s.regressed_runs;
        if (r.after.rate == 100.0) ++s.rate_100_runs;
    }
    if (s.runs > 0) {
        s.mean_rate_before /= s.runs;
        s.mean_rate_after /= s.runs;
    }
    return s;
}

std::string format_batch_csv(const std::vector<ExperimentReport>& runs) {
    std::string out = "run,seed,rate_before,rate_after,accepted_steps,attempts,termination\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i];
        out += std::to_string(i + 1);
        out += ',' + std::to_string(r.spec.seed);
        out += ',' + format_rate(r.before.rate);
        out += ',' + format_rate(r.after.rate);
        out += ',' + std::to_string(r.log.accepted_count());
        out += ',' + std::to_string(r.log.steps.size());
        out += std::string(",") + to_string(r.log.termination);
        out += '\n';
    }
    return out;
}

std::string format_batch_report(const ExperimentSpec& spec, const std::vector<ExperimentReport>& runs) {
    const BatchSummary s = summarize_batch(runs);
    std::string out = "BATCH\n";
    ExperimentSpec echo = spec;
    if (!runs.empty()) {
        echo.nodes = runs.front().spec.nodes;
        echo.memories = runs.front().spec.memories;
        echo.learning.max_outer = runs.front().spec.learning.max_outer;
    }
    append_spec_lines(out, echo);
    out += "runs " + std::to_string(s.runs) + '\n';
    out += "mean_rate_before " + format_rate(s.mean_rate_before) + '\n';
    out += "mean_rate_after " + format_rate(s.mean_rate_after) + '\n';
    out += "improved_runs " + std::to_string(s.improved_runs) + '\n';
    out += "unchanged_runs " + std::to_string(s.unchanged_runs) + '\n';
    out += "regressed_runs " + std::to_string(s.regressed_runs) + '\n';
    out += "rate_100_runs " + std::to_string(s.rate_100_runs) + '\n';
    return out;
}

}  // namespace bmatrix
