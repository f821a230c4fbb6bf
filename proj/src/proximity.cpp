#include "bmatrix/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace bmatrix {

ProximityMatrix linear_proximity(int n) {
    if (n < 2) throw Error("linear_proximity: need at least 2 nodes, got " + std::to_string(n));
    SquareMatrix d(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            d(i, j) = std::abs(i - j);
        }
    }
    return ProximityMatrix{std::move(d)};
}

ProximityMatrix make_proximity(SquareMatrix distances) {
    const int n = distances.size();
    if (n < 2) throw Error("proximity matrix: need at least 2 nodes, got " + std::to_string(n));
    constexpr double kTol = 1e-9;
    for (int i = 0; i < n; ++i) {
        if (!(std::abs(distances(i, i)) <= kTol)) {
            throw Error("proximity matrix: diagonal entry " + std::to_string(i + 1) +
                        " is not zero");
        }
        distances(i, i) = 0.0;
        for (int j = 0; j < n; ++j) {
            if (!(distances(i, j) >= 0.0)) {
                throw Error("proximity matrix: entry (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ") is negative or not a number");
            }
            if (!(std::abs(distances(i, j) - distances(j, i)) <= kTol)) {
                throw Error("proximity matrix: asymmetric at (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");
            }
        }
    }
    return ProximityMatrix{std::move(distances)};
}

ProximityMatrix load_proximity_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open proximity file '" + path + "'");

    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string token;
        std::vector<double> row;
        while (ss >> token) {
            try {
                std::size_t used = 0;
                const double v = std::stod(token, &used);
                if (used != token.size()) throw std::invalid_argument(token);
                row.push_back(v);
            } catch (const std::exception&) {
                throw Error(path + " line " + std::to_string(line_no) + ": '" + token +
                            "' is not a number");
            }
        }
        if (row.empty()) continue;
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(path + ": no rows found");

    const int n = static_cast<int>(rows.size());
    SquareMatrix d(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) {
            throw Error(path + ": row " + std::to_string(i + 1) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
        }
        for (int j = 0; j < n; ++j) d(i, j) = rows[i][j];
    }
    try {
        return make_proximity(std::move(d));
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

NeuronOrdering ordering_for(int trigger, const ProximityMatrix& prox) {
    const int n = prox.size();
    if (trigger < 0 || trigger >= n) {
        throw Error("ordering_for: trigger " + std::to_string(trigger + 1) + " out of range 1.." +
                    std::to_string(n));
    }
    NeuronOrdering ord;
    ord.trigger = trigger;
    ord.order.reserve(n);
    ord.order.push_back(trigger);  // trigger first, regardless of other zero distances
    std::vector<int> rest;
    rest.reserve(n - 1);
    for (int i = 0; i < n; ++i) {
        if (i != trigger) rest.push_back(i);
    }
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
        const double da = prox.distances(trigger, a);
        const double db = prox.distances(trigger, b);
        if (da != db) return da < db;
        return a < b;
    });
    ord.order.insert(ord.order.end(), rest.begin(), rest.end());
    return ord;
}

InterconnectionMatrix permute_matrix(const InterconnectionMatrix& t, const NeuronOrdering& ord) {
    const int n = t.size();
    if (static_cast<int>(ord.order.size()) != n) {
        throw Error("permute_matrix: ordering size " + std::to_string(ord.order.size()) +
                    " does not match matrix dimension " + std::to_string(n));
    }
    InterconnectionMatrix out(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            out(a, b) = t(ord.order[a], ord.order[b]);
        }
    }
    return out;
}

}  // namespace bmatrix
