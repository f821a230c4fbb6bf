// Command-line harness: builds or loads a bipolar memory network, evaluates
// single-clamp retrieval, optionally runs the delta-learning loop, and emits
// reproducible report / CSV / activity-map files.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bmatrix/experiment.hpp"
#include "bmatrix/hebbian.hpp"

namespace {

struct CliOptions {
    bmatrix::ExperimentSpec spec;
    std::string out_path;  // gen-memories destination
    int runs = 50;
};

void add_network_flags(CLI::App* cmd, CliOptions& opt, bool with_memory_count) {
    cmd->add_option("--nodes", opt.spec.nodes, "network size n");
    if (with_memory_count) {
        auto* m = cmd->add_option("--memories", opt.spec.memories, "number of random memories");
        auto* f = cmd->add_option("--memories-file", opt.spec.memories_file,
                                  "load memories from file instead of generating");
        m->excludes(f);
        f->excludes(m);
    }
    cmd->add_option("--proximity", opt.spec.proximity, "'linear' or a proximity matrix file")
        ->capture_default_str();
    cmd->add_option("--seed", opt.spec.seed, "RNG seed")->capture_default_str();
    cmd->add_flag("--force", opt.spec.allow_overcapacity, "override the m < n sanity guard");
}

void add_learning_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--eta", opt.spec.learning.eta, "delta-rule step size")->capture_default_str();
    cmd->add_option("--max-inner", opt.spec.learning.max_inner, "per-row update cap")
        ->capture_default_str();
    cmd->add_option("--max-outer", opt.spec.learning.max_outer,
                    "teach-attempt budget (0 = 10*n*m)");
}

void add_output_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--report", opt.spec.report_path, "structured report file");
    cmd->add_option("--csv", opt.spec.csv_path, "step CSV file");
    cmd->add_option("--activity-map", opt.spec.activity_path, "per-neuron activity map file");
}

void print_run_summary(const bmatrix::ExperimentReport& report) {
    std::printf("rate_before %s\n", bmatrix::format_rate(report.before.rate).c_str());
    std::printf("rate_after %s\n", bmatrix::format_rate(report.after.rate).c_str());
    if (report.spec.mode == bmatrix::ExperimentSpec::Mode::learn) {
        std::printf("termination %s\n", bmatrix::to_string(report.log.termination));
        std::printf("steps %zu\n", report.log.steps.size());
    }
    std::printf("wall_ms %.1f\n", report.wall_ms);
}

void report_outputs(const bmatrix::ExperimentSpec& spec) {
    if (!spec.report_path.empty()) std::printf("report %s\n", spec.report_path.c_str());
    if (!spec.csv_path.empty()) std::printf("csv %s\n", spec.csv_path.c_str());
    if (!spec.activity_path.empty()) std::printf("activity_map %s\n", spec.activity_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bipolar associative memory with triangular-feedback retrieval "
                 "and delta-rule retraining"};
    app.require_subcommand(1);

    CliOptions opt;

    auto* eval = app.add_subcommand("eval", "evaluate retrieval without learning");
    add_network_flags(eval, opt, true);
    add_output_flags(eval, opt);

    auto* learn = app.add_subcommand("learn", "evaluate, retrain, re-evaluate");
    add_network_flags(learn, opt, true);
    add_learning_flags(learn, opt);
    add_output_flags(learn, opt);

    auto* gen = app.add_subcommand("gen-memories", "write a random memory file");
    add_network_flags(gen, opt, true);
    gen->add_option("--out", opt.out_path, "destination file (default: stdout)");

    auto* batch = app.add_subcommand("batch", "seeded ensemble of learn runs");
    add_network_flags(batch, opt, true);
    add_learning_flags(batch, opt);
    add_output_flags(batch, opt);
    batch->add_option("--runs", opt.runs, "number of seeded runs")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(eval) || app.got_subcommand(learn)) {
            opt.spec.mode = app.got_subcommand(learn) ? bmatrix::ExperimentSpec::Mode::learn
                                                      : bmatrix::ExperimentSpec::Mode::eval;
            const auto report = opt.spec.mode == bmatrix::ExperimentSpec::Mode::learn
                                    ? bmatrix::run_learn(opt.spec)
                                    : bmatrix::run_eval(opt.spec);
            bmatrix::emit_outputs(report, opt.spec);
            print_run_summary(report);
            report_outputs(opt.spec);
        } else if (app.got_subcommand(gen)) {
            if (!opt.spec.allow_overcapacity && opt.spec.memories >= opt.spec.nodes) {
                throw bmatrix::Error("refusing to store " + std::to_string(opt.spec.memories) +
                                     " memories in " + std::to_string(opt.spec.nodes) +
                                     " nodes (use --force to override)");
            }
            const auto set = bmatrix::generate_random_memories(opt.spec.nodes, opt.spec.memories,
                                                               opt.spec.seed);
            if (opt.out_path.empty()) {
                std::fputs(bmatrix::format_memories(set).c_str(), stdout);
            } else {
                bmatrix::write_text_file(opt.out_path, bmatrix::format_memories(set));
                std::printf("memories %s\n", opt.out_path.c_str());
            }
        } else if (app.got_subcommand(batch)) {
            opt.spec.mode = bmatrix::ExperimentSpec::Mode::learn;
            if (opt.spec.memories == 0 && opt.spec.memories_file.empty()) {
                opt.spec.memories = std::max(2, opt.spec.nodes / 4);
            }
            const auto runs = bmatrix::run_batch(opt.spec, opt.runs);
            if (!opt.spec.csv_path.empty()) {
                bmatrix::write_text_file(opt.spec.csv_path, bmatrix::format_batch_csv(runs));
            }
            if (!opt.spec.report_path.empty()) {
                bmatrix::write_text_file(opt.spec.report_path,
                                         bmatrix::format_batch_report(opt.spec, runs));
            }
            const auto summary = bmatrix::summarize_batch(runs);
            std::printf("runs %d\n", summary.runs);
            std::printf("mean_rate_before %s\n", bmatrix::format_rate(summary.mean_rate_before).c_str());
            std::printf("mean_rate_after %s\n", bmatrix::format_rate(summary.mean_rate_after).c_str());
            std::printf("improved_runs %d\n", summary.improved_runs);
            report_outputs(opt.spec);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
