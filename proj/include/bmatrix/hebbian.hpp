#pragma once

#include <string>
#include <vector>

#include "bmatrix/types.hpp"

namespace bmatrix {

// Checks dimensions, bipolarity and pairwise distinctness up to complement,
// preserving input order. Error messages carry 1-based indices.
MemorySet validate_memories(const std::vector<std::vector<int>>& raw_vectors);

// Interconnection matrix: sum of outer products of the stored patterns with
// the diagonal forced to zero, so the split into a strictly lower-triangular
// half and its transpose is exact.
InterconnectionMatrix build_t_matrix(const MemorySet& memories);

// Number of unordered neuron pairs {i, j} with a nonzero weight.
int edge_count(const InterconnectionMatrix& t);

// Pattern file: one memory per line, whitespace-separated entries from
// {1, +1, -1}; lines starting with '#' are ignored. The dimension is inferred
// from the first pattern line.
MemorySet load_memories_file(const std::string& path);
std::string format_memories(const MemorySet& memories);
void save_memories_file(const MemorySet& memories, const std::string& path);

}  // namespace bmatrix
