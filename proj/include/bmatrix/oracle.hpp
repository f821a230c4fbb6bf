#pragma once

#include "bmatrix/proximity.hpp"
#include "bmatrix/retrieval.hpp"
#include "bmatrix/types.hpp"

namespace bmatrix::oracle {

// Brute-force reference implementations for small instances. They share the
// domain types with the engine but none of its matrix, permutation or
// retrieval code, and agreement is exact: every quantity is a sum of
// products of small reals accumulated in the same per-entry order.

// Entrywise double loop over the stored patterns.
InterconnectionMatrix oracle_t_matrix(const MemorySet& memories);

// Recomputes every clamp by direct summation over the full permuted weight
// matrix restricted to preceding indices; never touches the triangular
// extraction path. Guarded to n <= 12.
RetrievalReport oracle_evaluate(const InterconnectionMatrix& t, const MemorySet& memories,
                                const ProximityMatrix& prox);

}  // namespace bmatrix::oracle
