#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bmatrix/proximity.hpp"
#include "bmatrix/types.hpp"

namespace bmatrix {

// Strictly lower-triangular half of a trigger neuron's permuted weight
// matrix; b + b^t reproduces that matrix exactly.
struct BMatrixView {
    SquareMatrix b;
    NeuronOrdering ordering;
};

// One clamp-and-expand run. fragments[k] is the length-(k+1) prefix in
// proximity order and each fragment is a prefix of the next; final_vector is
// the completed pattern back in original neuron order.
struct RetrievalTrace {
    int trigger = 0;
    int polarity = +1;
    std::vector<std::vector<int>> fragments;
    MemoryVector final_vector;
};

// Outcome of clamping every neuron with both polarities. Slot 0 of a match
// pair is the +1 clamp, slot 1 the -1 clamp. A neuron is active when either
// clamp reproduced some stored pattern or its complement.
struct RetrievalReport {
    int n = 0;
    int m = 0;
    std::vector<std::array<std::optional<MemoryMatch>, 2>> matches;
    std::vector<MemoryVector> positive_finals;  // +1-clamp outcome per neuron
    std::vector<bool> active;                   // per neuron
    std::vector<bool> retrieved;                // per memory
    std::vector<int> frequency;                 // per memory, matched (neuron, polarity) events
    double rate = 0.0;                          // 100 * |retrieved| / m

    bool operator==(const RetrievalReport&) const = default;
};

// Threshold function with an explicit tie rule: +1 if activation > 0, -1 if
// activation < 0, tie_polarity when the activation is exactly zero.
int sgn(double activation, int tie_polarity);

// Strict lower triangle of the permuted interconnection matrix. Rejects
// asymmetric or nonzero-diagonal input.
BMatrixView extract_b(const InterconnectionMatrix& t_permuted, const NeuronOrdering& ord);

// Runs the feedback generator from a single clamped component. Row k of the
// triangular matrix only sees components before k, so previously generated
// components never change.
RetrievalTrace generate(const BMatrixView& view, int polarity);

// First stored pattern equal to the vector or its negation, with the
// matching sign.
std::optional<MemoryMatch> match_memory(const MemoryVector& vector, const MemorySet& memories);

// Ordering -> permutation -> extraction -> generation for one clamp.
RetrievalTrace trace_for(const InterconnectionMatrix& t, const ProximityMatrix& prox,
                         int trigger, int polarity);

// Runs all 2n (neuron, polarity) clamps and classifies the network.
RetrievalReport evaluate_network(const InterconnectionMatrix& t, const MemorySet& memories,
                                 const ProximityMatrix& prox);

}  // namespace bmatrix
