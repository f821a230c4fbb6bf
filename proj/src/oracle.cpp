#include "bmatrix/oracle.hpp"

namespace bmatrix::oracle {
namespace {

// Selection sort over (distance, index) keys with the trigger pinned first.
// Deliberately re-derived rather than calling ordering_for.
std::vector<int> reference_ordering(int trigger, const ProximityMatrix& prox) {
    const int n = prox.size();
    std::vector<int> order;
    order.push_back(trigger);
    std::vector<bool> used(n, false);
    used[trigger] = true;
    for (int pos = 1; pos < n; ++pos) {
        int pick = -1;
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            if (pick == -1) {
                pick = i;
                continue;
            }
            const double di = prox.distances(trigger, i);
            const double dp = prox.distances(trigger, pick);
            if (di < dp) pick = i;  // equal distances keep the lower index already held
        }
        used[pick] = true;
        order.push_back(pick);
    }
    return order;
}

int reference_sign(double activation, int tie) {
    if (activation > 0.0) return 1;
    if (activation < 0.0) return -1;
    return tie;
}

}  // namespace

InterconnectionMatrix oracle_t_matrix(const MemorySet& memories) {
    if (memories.count() == 0) throw Error("oracle_t_matrix: no memories given");
    const int n = memories.dimension;
    InterconnectionMatrix t(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            long long sum = 0;
            for (const auto& x : memories.memories) {
                sum += static_cast<long long>(x[i]) * x[j];
            }
            t(i, j) = static_cast<double>(sum);
        }
    }
    return t;
}

RetrievalReport oracle_evaluate(const InterconnectionMatrix& t, const MemorySet& memories,
                                const ProximityMatrix& prox) {
    const int n = t.size();
    if (n > 12) throw Error("oracle_evaluate: cost guard, n <= 12 required");
    if (n != memories.dimension || n != prox.size()) {
        throw Error("oracle_evaluate: dimension mismatch");
    }

    RetrievalReport report;
    report.n = n;
    report.m = memories.count();
    report.matches.resize(n);
    report.positive_finals.resize(n);
    report.active.assign(n, false);
    report.retrieved.assign(report.m, false);
    report.frequency.assign(report.m, 0);

    for (int neuron = 0; neuron < n; ++neuron) {
        const std::vector<int> order = reference_ordering(neuron, prox);
        for (int slot = 0; slot < 2; ++slot) {
            const int polarity = slot == 0 ? 1 : -1;

            // Expand the clamp one component at a time, reading the permuted
            // weight row directly out of t.
            std::vector<int> fragment{polarity};
            for (int k = 1; k < n; ++k) {
                double activation = 0.0;
                for (int j = 0; j < k; ++j) {
                    activation += t(order[k], order[j]) * fragment[j];
                }
                fragment.push_back(reference_sign(activation, polarity));
            }
            MemoryVector final_vector(n, 0);
            for (int k = 0; k < n; ++k) final_vector[order[k]] = fragment[k];
            if (slot == 0) report.positive_finals[neuron] = final_vector;

            // Direct comparison against each stored pattern and its negation.
            std::optional<MemoryMatch> match;
            for (int idx = 0; idx < report.m && !match; ++idx) {
                const auto& mem = memories.memories[idx];
                bool equal = true;
                bool complement = true;
                for (int i = 0; i < n; ++i) {
                    if (final_vector[i] != mem[i]) equal = false;
                    if (final_vector[i] != -mem[i]) complement = false;
                }
                if (equal) match = MemoryMatch{idx, 1};
                else if (complement) match = MemoryMatch{idx, -1};
            }
            report.matches[neuron][slot] = match;
            if (match) {
                report.active[neuron] = true;
                report.retrieved[match->index] = true;
                ++report.frequency[match->index];
            }
        }
    }

    int retrieved_count = 0;
    for (int j = 0; j < report.m; ++j) {
        if (report.retrieved[j]) ++retrieved_count;
    }
    report.rate = 100.0 * retrieved_count / report.m;
    return report;
}

}  // namespace bmatrix::oracle
