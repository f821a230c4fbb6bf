#include "bmatrix/retrieval.hpp"

#include <algorithm>

namespace bmatrix {

int sgn(double activation, int tie_polarity) {
    if (activation > 0.0) return +1;
    if (activation < 0.0) return -1;
    return tie_polarity;
}

BMatrixView extract_b(const InterconnectionMatrix& t_permuted, const NeuronOrdering& ord) {
    const int n = t_permuted.size();
    if (static_cast<int>(ord.order.size()) != n) {
        throw Error("extract_b: ordering size does not match matrix dimension");
    }
    for (int i = 0; i < n; ++i) {
        if (t_permuted(i, i) != 0.0) {
            throw Error("extract_b: nonzero diagonal at " + std::to_string(i + 1));
        }
        for (int j = i + 1; j < n; ++j) {
            if (t_permuted(i, j) != t_permuted(j, i)) {
                throw Error("extract_b: asymmetric input at (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");
            }
        }
    }
    BMatrixView view{SquareMatrix(n), ord};
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            view.b(i, j) = t_permuted(i, j);
        }
    }
    return view;
}

RetrievalTrace generate(const BMatrixView& view, int polarity) {
    const int n = view.b.size();
    RetrievalTrace trace;
    trace.trigger = view.ordering.trigger;
    trace.polarity = polarity;
    trace.fragments.reserve(n);

    std::vector<int> fragment;
    fragment.reserve(n);
    fragment.push_back(polarity);
    trace.fragments.push_back(fragment);
    for (int k = 1; k < n; ++k) {
        double activation = 0.0;
        for (int j = 0; j < k; ++j) {
            activation += view.b(k, j) * fragment[j];
        }
        fragment.push_back(sgn(activation, polarity));
        trace.fragments.push_back(fragment);
    }

    trace.final_vector.assign(n, 0);
    for (int k = 0; k < n; ++k) {
        trace.final_vector[view.ordering.order[k]] = fragment[k];
    }
    return trace;
}

std::optional<MemoryMatch> match_memory(const MemoryVector& vector, const MemorySet& memories) {
    if (static_cast<int>(vector.size()) != memories.dimension) {
        throw Error("match_memory: vector dimension " + std::to_string(vector.size()) +
                    " does not match memory dimension " + std::to_string(memories.dimension));
    }
    for (int idx = 0; idx < memories.count(); ++idx) {
        const auto& m = memories.memories[idx];
        bool equal = true;
        bool complement = true;
        for (std::size_t i = 0; i < vector.size(); ++i) {
            if (vector[i] != m[i]) equal = false;
            if (vector[i] != -m[i]) complement = false;
            if (!equal && !complement) break;
        }
        if (equal) return MemoryMatch{idx, +1};
        if (complement) return MemoryMatch{idx, -1};
    }
    return std::nullopt;
}

RetrievalTrace trace_for(const InterconnectionMatrix& t, const ProximityMatrix& prox,
                         int trigger, int polarity) {
    const NeuronOrdering ord = ordering_for(trigger, prox);
    return generate(extract_b(permute_matrix(t, ord), ord), polarity);
}

RetrievalReport evaluate_network(const InterconnectionMatrix& t, const MemorySet& memories,
                                 const ProximityMatrix& prox) {
    const int n = t.size();
    if (n != memories.dimension || n != prox.size()) {
        throw Error("evaluate_network: dimension mismatch (weights " + std::to_string(n) +
                    ", memories " + std::to_string(memories.dimension) + ", proximity " +
                    std::to_string(prox.size()) + ")");
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
        const NeuronOrdering ord = ordering_for(neuron, prox);
        const BMatrixView view = extract_b(permute_matrix(t, ord), ord);
        for (int slot = 0; slot < 2; ++slot) {
            const int polarity = slot == 0 ? +1 : -1;
            const RetrievalTrace trace = generate(view, polarity);
            if (slot == 0) report.positive_finals[neuron] = trace.final_vector;
            const auto match = match_memory(trace.final_vector, memories);
            report.matches[neuron][slot] = match;
            if (match) {
                report.active[neuron] = true;
                report.retrieved[match->index] = true;
                ++report.frequency[match->index];
            }
        }
    }

    const int retrieved_count =
        static_cast<int>(std::count(report.retrieved.begin(), report.retrieved.end(), true));
    report.rate = 100.0 * retrieved_count / report.m;
    return report;
}

}  // namespace bmatrix
