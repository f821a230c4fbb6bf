#pragma once

#include <string>
#include <vector>

#include "bmatrix/types.hpp"

namespace bmatrix {

// Pairwise neuron distances: symmetric, zero diagonal, entries >= 0.
struct ProximityMatrix {
    SquareMatrix distances;

    int size() const { return distances.size(); }
};

// Visit order for one trigger neuron: order[0] is the trigger itself, the
// remaining neurons follow by ascending distance from it, ties broken by
// ascending original index.
struct NeuronOrdering {
    int trigger = 0;
    std::vector<int> order;

    bool operator==(const NeuronOrdering&) const = default;
};

// Neurons on a line: distances[i][j] = |i - j|. Requires n >= 2.
ProximityMatrix linear_proximity(int n);

// Validates symmetry (tolerance 1e-9), zero diagonal and non-negativity;
// the diagonal is snapped to exact zero.
ProximityMatrix make_proximity(SquareMatrix distances);

// Plain text, n lines of n whitespace-separated non-negative reals,
// validated as in make_proximity.
ProximityMatrix load_proximity_file(const std::string& path);

NeuronOrdering ordering_for(int trigger, const ProximityMatrix& prox);

// Conjugates t by the ordering: result(a, b) = t(order[a], order[b]).
// Preserves symmetry, the zero diagonal and the entry multiset.
InterconnectionMatrix permute_matrix(const InterconnectionMatrix& t, const NeuronOrdering& ord);

}  // namespace bmatrix
