#include "bmatrix/learning.hpp"

#include <algorithm>

namespace bmatrix {
namespace {

// Shared delta-rule loop. tie_polarity is the sign a zero activation counts
// as when checking convergence: the public widrow_hoff_row uses the desired
// sign, while teaching uses the +1 clamp so that the stopping test agrees
// with what regeneration will actually compute.
RowUpdate lms_row(std::vector<double> weights, const std::vector<int>& input, int desired,
                  double eta, int max_inner, int tie_polarity) {
    if (weights.size() != input.size() || weights.empty()) {
        throw Error("widrow_hoff_row: weight and input prefixes must be non-empty and equal length");
    }
    RowUpdate out{std::move(weights), 0, false};
    for (;;) {
        double activation = 0.0;
        for (std::size_t i = 0; i < out.weights.size(); ++i) {
            activation += out.weights[i] * input[i];
        }
        if (sgn(activation, tie_polarity) == desired) {
            out.converged = true;
            return out;
        }
        if (out.iterations >= max_inner) return out;
        const double error = desired - activation;
        for (std::size_t i = 0; i < out.weights.size(); ++i) {
            out.weights[i] += eta * error * input[i];
        }
        ++out.iterations;
    }
}

}  // namespace

void LearningConfig::validate() const {
    if (!(eta > 0.0)) throw Error("learning config: eta must be positive");
    if (max_inner < 1) throw Error("learning config: max_inner must be at least 1");
    if (max_outer < 0) throw Error("learning config: max_outer must be non-negative");
}

int LearningLog::accepted_count() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const LearningStep& s) {
        return s.outcome == StepOutcome::accepted;
    }));
}

std::vector<int> inactive_nodes(const RetrievalReport& report) {
    std::vector<int> out;
    for (int i = 0; i < report.n; ++i) {
        if (!report.active[i]) out.push_back(i);
    }
    return out;
}

int fallback_node(const RetrievalReport& report) {
    if (report.rate == 100.0) throw Error("fallback_node: retrieval rate is already 100");
    int best = -1;
    int best_freq = -1;
    for (int i = 0; i < report.n; ++i) {
        if (!report.active[i]) throw Error("fallback_node: inactive neurons exist");
        const auto& match = report.matches[i][0] ? report.matches[i][0] : report.matches[i][1];
        const int freq = report.frequency[match->index];
        if (freq > best_freq) {
            best_freq = freq;
            best = i;
        }
    }
    return best;
}

int hamming_distance(const MemoryVector& a, const MemoryVector& b) {
    if (a.size() != b.size()) throw Error("hamming_distance: dimension mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) ++d;
    }
    return d;
}

std::vector<int> rank_targets(int node, const RetrievalReport& report, const MemorySet& memories) {
    const MemoryVector& v = report.positive_finals.at(node);
    std::vector<std::pair<int, int>> ranked;  // (distance, memory index)
    for (int j = 0; j < memories.count(); ++j) {
        if (report.retrieved[j]) continue;
        const int h = hamming_distance(v, memories.memories[j]);
        ranked.emplace_back(std::min(h, memories.dimension - h), j);
    }
    if (ranked.empty()) throw Error("rank_targets: no unretrieved memories");
    std::sort(ranked.begin(), ranked.end());
    std::vector<int> out;
    out.reserve(ranked.size());
    for (const auto& [d, j] : ranked) out.push_back(j);
    return out;
}

RowUpdate widrow_hoff_row(std::vector<double> row_prefix, const std::vector<int>& input_prefix,
                          int desired, const LearningConfig& config) {
    config.validate();
    return lms_row(std::move(row_prefix), input_prefix, desired, config.eta, config.max_inner,
                   desired);
}

TeachResult teach_node(BMatrixView view, const MemoryVector& target, int target_sign,
                       const LearningConfig& config) {
    config.validate();
    const int n = view.b.size();
    if (static_cast<int>(target.size()) != n) {
        throw Error("teach_node: target dimension does not match the view");
    }
    if (target_sign * target[view.ordering.trigger] != 1) {
        throw Error("teach_node: target sign must make the clamped component +1");
    }

    // Desired pattern in proximity order; component 0 is the +1 clamp.
    std::vector<int> desired(n);
    for (int k = 0; k < n; ++k) {
        desired[k] = target_sign * target[view.ordering.order[k]];
    }

    TeachResult result{std::move(view), {}, {}, true};
    std::vector<int> prefix;
    prefix.reserve(n);
    prefix.push_back(+1);
    std::vector<double> row;
    for (int k = 1; k < n; ++k) {
        double activation = 0.0;
        for (int j = 0; j < k; ++j) {
            activation += result.view.b(k, j) * prefix[j];
        }
        if (sgn(activation, +1) != desired[k]) {
            row.assign(k, 0.0);
            for (int j = 0; j < k; ++j) row[j] = result.view.b(k, j);
            RowUpdate update =
                lms_row(std::move(row), prefix, desired[k], config.eta, config.max_inner, +1);
            result.rows_updated.push_back(k);
            result.inner_iterations.push_back(update.iterations);
            if (!update.converged) {
                result.converged = false;
                return result;
            }
            for (int j = 0; j < k; ++j) result.view.b(k, j) = update.weights[j];
        }
        prefix.push_back(desired[k]);
    }
    return result;
}

InterconnectionMatrix fold_back(const BMatrixView& view) {
    const int n = view.b.size();
    InterconnectionMatrix t(n);
    for (int a = 1; a < n; ++a) {
        for (int b = 0; b < a; ++b) {
            const double w = view.b(a, b);
            t(view.ordering.order[a], view.ordering.order[b]) = w;
            t(view.ordering.order[b], view.ordering.order[a]) = w;
        }
    }
    return t;
}

LearningResult learning_loop(InterconnectionMatrix t, const MemorySet& memories,
                             const ProximityMatrix& prox, const LearningConfig& config) {
    config.validate();
    const int n = t.size();
    const int budget = config.resolve_max_outer(n, memories.count());

    LearningLog log;
    RetrievalReport report = evaluate_network(t, memories, prox);
    log.initial_rate = report.rate;

    int attempts = 0;
    auto termination = LearningLog::Termination::options_exhausted;
    for (;;) {
        if (report.rate == 100.0) {
            termination = LearningLog::Termination::rate_100;
            break;
        }
        std::vector<int> candidates = inactive_nodes(report);
        if (candidates.empty()) candidates.push_back(fallback_node(report));

        bool committed = false;
        bool out_of_budget = false;
        for (int node : candidates) {
            for (int target_idx : rank_targets(node, report, memories)) {
                if (attempts >= budget) {
                    out_of_budget = true;
                    break;
                }
                ++attempts;

                const MemoryVector& target = memories.memories[target_idx];
                LearningStep step;
                step.node = node;
                step.target_memory = target_idx;
                step.target_sign = target[node];  // makes the clamp component +1
                step.rate_before = report.rate;

                // Teaching works on extracted copies; the committed matrix t
                // is only replaced on acceptance, so rollback is a no-op.
                const NeuronOrdering ord = ordering_for(node, prox);
                TeachResult taught = teach_node(extract_b(permute_matrix(t, ord), ord), target,
                                                step.target_sign, config);
                step.rows_updated = std::move(taught.rows_updated);
                step.inner_iterations = std::move(taught.inner_iterations);

                if (!taught.converged) {
                    step.rate_after = report.rate;
                    step.outcome = StepOutcome::row_unteachable;
                    log.steps.push_back(std::move(step));
                    continue;
                }

                InterconnectionMatrix candidate = fold_back(taught.view);
                RetrievalReport candidate_report = evaluate_network(candidate, memories, prox);
                step.rate_after = candidate_report.rate;
                if (candidate_report.rate > report.rate) {
                    step.outcome = StepOutcome::accepted;
                    t = std::move(candidate);
                    report = std::move(candidate_report);
                    committed = true;
                } else {
                    step.outcome = StepOutcome::rolled_back;
                }
                log.steps.push_back(std::move(step));
                if (committed) break;
            }
            if (committed || out_of_budget) break;
        }

        if (out_of_budget) {
            termination = LearningLog::Termination::budget_exhausted;
            break;
        }
        if (!committed) {
            termination = LearningLog::Termination::options_exhausted;
            break;
        }
    }

    log.final_rate = report.rate;
    log.termination = termination;
    return LearningResult{std::move(t), std::move(log)};
}

const char* to_string(StepOutcome outcome) {
    switch (outcome) {
        case StepOutcome::accepted: return "accepted";
        case StepOutcome::rolled_back: return "rolled_back";
        case StepOutcome::row_unteachable: return "row_unteachable";
    }
    return "unknown";
}

const char* to_string(LearningLog::Termination termination) {
    switch (termination) {
        case LearningLog::Termination::rate_100: return "rate_100";
        case LearningLog::Termination::budget_exhausted: return "budget_exhausted";
        case LearningLog::Termination::options_exhausted: return "options_exhausted";
    }
    return "unknown";
}

}  // namespace bmatrix
