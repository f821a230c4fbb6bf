#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bmatrix {

// Thrown for every validation and I/O failure. Messages are a single line so
// the CLI can forward them verbatim.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bipolar pattern, entries are +1 or -1. Index 0 is neuron 0.
using MemoryVector = std::vector<int>;

// Validated collection of stored patterns: common dimension, no duplicates,
// no complement pairs (a pattern and its negation retrieve identically).
struct MemorySet {
    std::vector<MemoryVector> memories;
    int dimension = 0;

    int count() const { return static_cast<int>(memories.size()); }
};

// Dense row-major n x n matrix of doubles. Value semantics; equality is
// entrywise and exact, which is what snapshot/rollback checks rely on.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int n)
        : n_(n), v_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

    int size() const { return n_; }

    double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * n_ + j]; }

    bool operator==(const SquareMatrix&) const = default;

private:
    int n_ = 0;
    std::vector<double> v_;
};

// Symmetric zero-diagonal weight matrix. Integer-valued at construction,
// real-valued once delta learning has touched it.
using InterconnectionMatrix = SquareMatrix;

// A trace equal to sign * memories[index].
struct MemoryMatch {
    int index = 0;
    int sign = +1;

    bool operator==(const MemoryMatch&) const = default;
};

}  // namespace bmatrix
