#include <random>
#include <vector>

#include "bmatrix/experiment.hpp"
#include "bmatrix/hebbian.hpp"
#include "bmatrix/oracle.hpp"
#include "bmatrix/retrieval.hpp"
#include "doctest.h"

using namespace bmatrix;

namespace {

// Random symmetric distances on a coarse grid so ties are frequent.
ProximityMatrix random_proximity(int n, std::mt19937_64& rng) {
    SquareMatrix d(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = static_cast<double>(rng() % 4);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return make_proximity(std::move(d));
}

MemorySet two_memory_set() { return validate_memories({{1, 1, -1, -1}, {1, -1, 1, -1}}); }

BMatrixView view_for(const InterconnectionMatrix& t, const ProximityMatrix& prox, int trigger) {
    const NeuronOrdering ord = ordering_for(trigger, prox);
    return extract_b(permute_matrix(t, ord), ord);
}

MemoryVector negated(MemoryVector v) {
    for (auto& e : v) e = -e;
    return v;
}

}  // namespace

TEST_CASE("sgn applies the tie polarity only at exactly zero") {
    CHECK(sgn(2.5, +1) == +1);
    CHECK(sgn(-0.1, +1) == -1);
    CHECK(sgn(0.0, -1) == -1);
    CHECK(sgn(0.0, +1) == +1);
    CHECK(sgn(1e-300, -1) == +1);
}

TEST_CASE("extract_b takes the strict lower triangle") {
    SquareMatrix t(2);
    t(0, 1) = 1;
    t(1, 0) = 1;
    NeuronOrdering ord{0, {0, 1}};
    const BMatrixView view = extract_b(t, ord);
    CHECK(view.b(0, 0) == 0.0);
    CHECK(view.b(0, 1) == 0.0);
    CHECK(view.b(1, 0) == 1.0);
    CHECK(view.b(1, 1) == 0.0);

    SUBCASE("zero matrix gives zero B") {
        const BMatrixView z = extract_b(SquareMatrix(2), ord);
        CHECK(z.b == SquareMatrix(2));
    }

    SUBCASE("asymmetric input is rejected") {
        SquareMatrix bad(2);
        bad(0, 1) = 1;
        CHECK_THROWS_AS(extract_b(bad, ord), Error);
    }

    SUBCASE("nonzero diagonal is rejected") {
        SquareMatrix bad(2);
        bad(0, 0) = 2;
        CHECK_THROWS_AS(extract_b(bad, ord), Error);
    }
}

TEST_CASE("b plus its transpose reconstructs the permuted matrix exactly") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const int n = 4 + static_cast<int>(seed % 5);
        const int m = 1 + static_cast<int>(seed % 3);
        const InterconnectionMatrix t = build_t_matrix(generate_random_memories(n, m, seed));
        const ProximityMatrix prox = linear_proximity(n);
        for (int trigger = 0; trigger < n; ++trigger) {
            const NeuronOrdering ord = ordering_for(trigger, prox);
            const InterconnectionMatrix p = permute_matrix(t, ord);
            const BMatrixView view = extract_b(p, ord);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    CHECK(view.b(i, j) + view.b(j, i) == p(i, j));
                }
            }
        }
    }
}

TEST_CASE("generate reproduces the worked 4-node trace") {
    const InterconnectionMatrix t = build_t_matrix(two_memory_set());
    const ProximityMatrix prox = linear_proximity(4);
    const RetrievalTrace trace = generate(view_for(t, prox, 0), +1);

    REQUIRE(trace.fragments.size() == 4);
    CHECK(trace.fragments[0] == std::vector<int>{1});
    CHECK(trace.fragments[1] == std::vector<int>{1, 1});  // zero activation resolves to the clamp
    CHECK(trace.fragments[2] == std::vector<int>{1, 1, -1});
    CHECK(trace.fragments[3] == std::vector<int>{1, 1, -1, -1});
    CHECK(trace.final_vector == MemoryVector{1, 1, -1, -1});
}

TEST_CASE("fragments grow by clamped prefixes") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int n = 4 + static_cast<int>(seed % 5);
        const InterconnectionMatrix t = build_t_matrix(generate_random_memories(n, 2, seed));
        const ProximityMatrix prox = linear_proximity(n);
        for (int trigger = 0; trigger < n; ++trigger) {
            const RetrievalTrace trace = trace_for(t, prox, trigger, +1);
            for (int k = 0; k + 1 < n; ++k) {
                REQUIRE(trace.fragments[k].size() == static_cast<std::size_t>(k) + 1);
                CHECK(std::equal(trace.fragments[k].begin(), trace.fragments[k].end(),
                                 trace.fragments[k + 1].begin()));
            }
        }
    }
}

TEST_CASE("a single stored memory is retrieved from every neuron up to clamp sign") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int n = 4 + static_cast<int>(seed % 5);
        const MemorySet set = generate_random_memories(n, 1, seed);
        const InterconnectionMatrix t = build_t_matrix(set);
        const ProximityMatrix prox = linear_proximity(n);
        for (int trigger = 0; trigger < n; ++trigger) {
            for (int polarity : {+1, -1}) {
                const RetrievalTrace trace = trace_for(t, prox, trigger, polarity);
                const int s = polarity * set.memories[0][trigger];
                MemoryVector expected = set.memories[0];
                for (auto& e : expected) e *= s;
                CHECK(trace.final_vector == expected);
            }
        }
    }
}

TEST_CASE("a single stored memory is retrieved under any proximity geometry") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 20; ++round) {
        const int n = 4 + round % 6;
        const ProximityMatrix prox = random_proximity(n, rng);
        const MemorySet set = generate_random_memories(n, 1, 1000 + round);
        const RetrievalReport report = evaluate_network(build_t_matrix(set), set, prox);
        CHECK(report.rate == 100.0);
        for (bool active : report.active) CHECK(active);
    }
}

TEST_CASE("engine and reference agree under tied proximity distances") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 40; ++round) {
        const int n = 4 + round % 5;
        const int m = 1 + round % 3;
        const ProximityMatrix prox = random_proximity(n, rng);
        const MemorySet set = generate_random_memories(n, m, 2000 + round);
        const InterconnectionMatrix t = build_t_matrix(set);
        REQUIRE(evaluate_network(t, set, prox) == oracle::oracle_evaluate(t, set, prox));
    }
}

TEST_CASE("opposite clamps generate exact negations") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const int n = 4 + static_cast<int>(seed % 6);
        const int m = 1 + static_cast<int>(seed % 3);
        const InterconnectionMatrix t = build_t_matrix(generate_random_memories(n, m, seed));
        const ProximityMatrix prox = linear_proximity(n);
        for (int trigger = 0; trigger < n; ++trigger) {
            const BMatrixView view = view_for(t, prox, trigger);
            CHECK(generate(view, -1).final_vector == negated(generate(view, +1).final_vector));
        }
    }
}

TEST_CASE("match_memory compares against each pattern and its complement") {
    const MemorySet set = two_memory_set();
    const auto direct = match_memory({1, 1, -1, -1}, set);
    REQUIRE(direct.has_value());
    CHECK(*direct == MemoryMatch{0, +1});

    const auto complement = match_memory({-1, 1, -1, 1}, set);
    REQUIRE(complement.has_value());
    CHECK(*complement == MemoryMatch{1, -1});

    CHECK(!match_memory({1, 1, 1, 1}, set).has_value());
    CHECK_THROWS_AS(match_memory({1, 1}, set), Error);
}

TEST_CASE("evaluate_network on the worked two-memory network") {
    const MemorySet set = two_memory_set();
    const InterconnectionMatrix t = build_t_matrix(set);
    const RetrievalReport report = evaluate_network(t, set, linear_proximity(4));

    CHECK(report.rate == 50.0);
    CHECK(report.retrieved == std::vector<bool>{true, false});
    CHECK(report.active == std::vector<bool>{true, true, true, true});
    CHECK(report.frequency == std::vector<int>{8, 0});

    // every +1 clamp lands on m1, the two far neurons on its complement
    REQUIRE(report.matches[0][0].has_value());
    CHECK(*report.matches[0][0] == MemoryMatch{0, +1});
    CHECK(*report.matches[1][0] == MemoryMatch{0, +1});
    CHECK(*report.matches[2][0] == MemoryMatch{0, -1});
    CHECK(*report.matches[3][0] == MemoryMatch{0, -1});
    CHECK(*report.matches[0][1] == MemoryMatch{0, -1});

    CHECK(report == oracle::oracle_evaluate(t, set, linear_proximity(4)));
}

TEST_CASE("a network that retrieves nothing reports rate zero, all inactive") {
    const MemorySet set = validate_memories({{1, -1, 1, -1}});
    const RetrievalReport report = evaluate_network(SquareMatrix(4), set, linear_proximity(4));
    CHECK(report.rate == 0.0);
    CHECK(report.retrieved == std::vector<bool>{false});
    CHECK(report.active == std::vector<bool>{false, false, false, false});
    CHECK(report.frequency == std::vector<int>{0});
}

TEST_CASE("evaluate_network agrees with the brute-force reference") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const int n = 4 + static_cast<int>(seed % 5);       // 4..8
        const int m = 1 + static_cast<int>(seed % 3);       // 1..3
        const MemorySet set = generate_random_memories(n, m, seed);
        const InterconnectionMatrix t = build_t_matrix(set);
        const ProximityMatrix prox = linear_proximity(n);
        REQUIRE(evaluate_network(t, set, prox) == oracle::oracle_evaluate(t, set, prox));
    }
}

TEST_CASE("the rate ignores which sign of a memory is stored") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int n = 5 + static_cast<int>(seed % 4);
        const MemorySet set = generate_random_memories(n, 2, seed);
        MemorySet flipped = set;
        flipped.memories[seed % 2] = negated(flipped.memories[seed % 2]);
        const ProximityMatrix prox = linear_proximity(n);
        const double rate = evaluate_network(build_t_matrix(set), set, prox).rate;
        const double rate_flipped =
            evaluate_network(build_t_matrix(flipped), flipped, prox).rate;
        CHECK(rate == rate_flipped);
    }
}

TEST_CASE("evaluate_network rejects mismatched dimensions") {
    const MemorySet set = two_memory_set();
    CHECK_THROWS_AS(evaluate_network(SquareMatrix(5), set, linear_proximity(5)), Error);
    CHECK_THROWS_AS(evaluate_network(SquareMatrix(4), set, linear_proximity(5)), Error);
}
