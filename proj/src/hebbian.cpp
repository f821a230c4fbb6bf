#include "bmatrix/hebbian.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace bmatrix {
namespace {

bool is_complement(const MemoryVector& a, const MemoryVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != -b[i]) return false;
    }
    return true;
}

// Accepts "1", "+1", "-1". Returns 0 on anything else.
int parse_bipolar_token(const std::string& token) {
    std::string_view sv = token;
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec != std::errc{} || ptr != sv.data() + sv.size()) return 0;
    return (value == 1 || value == -1) ? value : 0;
}

}  // namespace

MemorySet validate_memories(const std::vector<std::vector<int>>& raw_vectors) {
    if (raw_vectors.empty()) throw Error("validate_memories: no memories given");

    const int n = static_cast<int>(raw_vectors.front().size());
    if (n == 0) throw Error("memory 1: empty vector");

    MemorySet set;
    set.dimension = n;
    for (std::size_t i = 0; i < raw_vectors.size(); ++i) {
        const auto& v = raw_vectors[i];
        if (static_cast<int>(v.size()) != n) {
            throw Error("memory " + std::to_string(i + 1) + ": dimension " +
                        std::to_string(v.size()) + " does not match dimension " +
                        std::to_string(n) + " of memory 1");
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] != 1 && v[j] != -1) {
                throw Error("memory " + std::to_string(i + 1) + ": entry " +
                            std::to_string(j + 1) + " is not bipolar (got " +
                            std::to_string(v[j]) + ")");
            }
        }
        set.memories.push_back(v);
    }

    for (std::size_t i = 0; i < set.memories.size(); ++i) {
        for (std::size_t j = i + 1; j < set.memories.size(); ++j) {
            if (set.memories[i] == set.memories[j]) {
                throw Error("memories " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " are duplicates");
            }
            if (is_complement(set.memories[i], set.memories[j])) {
                throw Error("memories " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " are complements");
            }
        }
    }
    return set;
}

InterconnectionMatrix build_t_matrix(const MemorySet& memories) {
    if (memories.count() == 0) throw Error("build_t_matrix: no memories given");
    const int n = memories.dimension;
    InterconnectionMatrix t(n);
    for (const auto& x : memories.memories) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double w = t(i, j) + x[i] * x[j];
                t(i, j) = w;
                t(j, i) = w;
            }
        }
    }
    return t;  // diagonal stays zero
}

int edge_count(const InterconnectionMatrix& t) {
    int count = 0;
    for (int i = 0; i < t.size(); ++i) {
        for (int j = i + 1; j < t.size(); ++j) {
            if (t(i, j) != 0.0) ++count;
        }
    }
    return count;
}

MemorySet load_memories_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open memories file '" + path + "'");

    std::vector<std::vector<int>> raw;
    std::vector<int> line_numbers;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string token;
        std::vector<int> entries;
        bool comment = false;
        while (ss >> token) {
            if (token.front() == '#') {
                comment = true;
                break;
            }
            const int value = parse_bipolar_token(token);
            if (value == 0) {
                throw Error(path + " line " + std::to_string(line_no) + ": entry " +
                            std::to_string(entries.size() + 1) + " is not a bipolar value (got '" +
                            token + "')");
            }
            entries.push_back(value);
        }
        if (comment || entries.empty()) continue;
        raw.push_back(std::move(entries));
        line_numbers.push_back(line_no);
    }
    if (raw.empty()) throw Error(path + ": no memory lines found");

    try {
        return validate_memories(raw);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

std::string format_memories(const MemorySet& memories) {
    std::string out;
    for (const auto& v : memories.memories) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(v[i]);
        }
        out += '\n';
    }
    return out;
}

void save_memories_file(const MemorySet& memories, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write memories file '" + path + "'");
    out << format_memories(memories);
    if (!out) throw Error("write failed for memories file '" + path + "'");
}

}  // namespace bmatrix
