#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bmatrix/retrieval.hpp"
#include "bmatrix/types.hpp"

namespace bmatrix {

struct LearningConfig {
    double eta = 0.1;        // delta-rule step size
    int max_inner = 100;     // per-row update cap
    int max_outer = 0;       // teach-attempt budget; 0 means auto (10 * n * m)
    std::uint64_t seed = 1;  // reserved for randomized tie policies; ranking
                             // ties are broken by ascending index, so the
                             // loop itself consumes no randomness

    int resolve_max_outer(int n, int m) const { return max_outer > 0 ? max_outer : 10 * n * m; }

    // eta > 0, max_inner >= 1, max_outer >= 0
    void validate() const;
};

enum class StepOutcome { accepted, rolled_back, row_unteachable };

// One teach attempt. For rejected or unteachable attempts the committed
// weights are untouched; rate_after then records the measured rate of the
// discarded candidate (unteachable attempts copy rate_before, nothing was
// evaluated).
struct LearningStep {
    int node = 0;
    int target_memory = 0;
    int target_sign = +1;
    std::vector<int> rows_updated;      // row positions in the taught triangular matrix
    std::vector<int> inner_iterations;  // aligned with rows_updated
    double rate_before = 0.0;
    double rate_after = 0.0;
    StepOutcome outcome = StepOutcome::rolled_back;
};

struct LearningLog {
    enum class Termination { rate_100, budget_exhausted, options_exhausted };

    std::vector<LearningStep> steps;
    double initial_rate = 0.0;
    double final_rate = 0.0;
    Termination termination = Termination::rate_100;

    int accepted_count() const;
};

// Neurons whose clamps reproduced no stored pattern, ascending.
std::vector<int> inactive_nodes(const RetrievalReport& report);

// Substitute teaching site when every neuron is active but the rate is still
// below 100: the lowest-index neuron whose matched memory has the highest
// retrieval frequency.
int fallback_node(const RetrievalReport& report);

// Count of differing positions.
int hamming_distance(const MemoryVector& a, const MemoryVector& b);

// Unretrieved memories ordered by ascending distance from the node's
// +1-clamp outcome, where distance is the Hamming distance minimised over
// the memory and its complement; ties by ascending memory index.
std::vector<int> rank_targets(int node, const RetrievalReport& report, const MemorySet& memories);

struct RowUpdate {
    std::vector<double> weights;
    int iterations = 0;
    bool converged = false;
};

// Delta-rule updates w <- w + eta * (desired - w.u) * u until the activation
// sign (zero counting as desired) agrees with desired, or max_inner updates
// have been spent. Each update scales the error by exactly 1 - eta * len.
RowUpdate widrow_hoff_row(std::vector<double> row_prefix, const std::vector<int>& input_prefix,
                          int desired, const LearningConfig& config);

struct TeachResult {
    BMatrixView view;
    std::vector<int> rows_updated;
    std::vector<int> inner_iterations;
    bool converged = false;
};

// Sweeps the rows of the view in proximity order, holding the already
// corrected prefix fixed, and retrains every row whose generated component
// disagrees with the target. target_sign must make the clamp component +1.
// On full convergence, regenerating from the returned view with a +1 clamp
// yields target_sign * target exactly.
TeachResult teach_node(BMatrixView view, const MemoryVector& target, int target_sign,
                       const LearningConfig& config);

// Undoes the proximity permutation: rebuilds the full symmetric weight matrix
// in original neuron order from b + b^t.
InterconnectionMatrix fold_back(const BMatrixView& view);

struct LearningResult {
    InterconnectionMatrix weights;
    LearningLog log;
};

// Full retraining loop: evaluate, pick an inactive node (or the fallback),
// try its unretrieved memories in rank order, teach a copy, fold back,
// re-evaluate, and commit only on a strict rate increase; otherwise the
// snapshot stays in place and the next target or node is tried. Stops at
// rate 100, an exhausted candidate space, or max_outer teach attempts.
LearningResult learning_loop(InterconnectionMatrix t, const MemorySet& memories,
                             const ProximityMatrix& prox, const LearningConfig& config);

const char* to_string(StepOutcome outcome);
const char* to_string(LearningLog::Termination termination);

}  // namespace bmatrix
