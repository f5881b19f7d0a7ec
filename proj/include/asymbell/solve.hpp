#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "asymbell/game.hpp"
#include "asymbell/kv.hpp"
#include "asymbell/rng.hpp"
#include "asymbell/strategy.hpp"

namespace asymbell::solve {

struct SearchConfig {
    int restarts = 8;
    int iterations = 200;
    std::uint64_t seed = 1;
    int workers = 0;  // 0 = default policy

    void check() const {
        if (restarts < 1 || iterations < 1)
            throw UsageError("SearchConfig: restarts and iterations must be positive");
    }
};

struct EstimateReport {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

struct ClassicalSolution {
    double value = 0.0;
    DeterministicStrategy strategy;
    std::string method;
};

// Cap on the Alice-map enumeration K^N.
inline constexpr std::int64_t kEnumerationLimit = 100'000'000;

// Exact game value: full enumeration of Alice maps with Bob eliminated by
// per-question best response (the objective is linear in Bob's deterministic
// choices). Ties break to the first maximizer in enumeration order and the
// result is independent of the worker count.
ClassicalSolution classical_value_exact(const Game& g, int workers = 0);

// Exact bias bound of a dichotomic-Bob functional: for each Alice map the
// optimal Bob sign per question is the sign of sum_x M^{a(x)}_{x,y}.
ClassicalSolution classical_bias_exact(const BellFunctional& m, int workers = 0);

// Coordinate ascent between Alice assignments and Bob best responses;
// seeded restarts; never exceeds the exact value.
ClassicalSolution classical_local_search(const BellFunctional& m, const SearchConfig& config);
ClassicalSolution classical_local_search(const Game& g, const SearchConfig& config);

// Ascent on the asym-KV bias through the coset character structure, which
// keeps objective evaluations exact up to l = 4. At l >= 5 full strategy
// storage is out of budget and the canonical representative strategy (Alice
// answers the coset representative, Bob answers +1) is returned with its
// closed-form bias (1-eta)^l.
ClassicalSolution asym_kv_bias_search(const kv::AsymKvGame& game, const SearchConfig& config);

struct SeeSawResult {
    double value = 0.0;
    double raw_value = 0.0;  // signed pairing before the absolute value
    QuantumStrategy strategy;
};

// Alternating-optimization lower bound on the quantum bias of a functional.
// Bob and state updates are exact (sign of the effective operator; leading
// eigenvector); the Alice POVM update is a greedy eigenvector assignment and
// is guarded so the objective never decreases. Result is a valid strategy
// with its exactly evaluated value.
SeeSawResult see_saw_lower_bound(const BellFunctional& m, int dim_alice, int dim_bob,
                                 const SearchConfig& config, const QuantumStrategy* initial = nullptr);

// Same engine for the value of a game; both sides hold POVMs. Binary-Bob
// updates are exact eigenspace selectors.
SeeSawResult see_saw_lower_bound(const Game& g, int dim_alice, int dim_bob,
                                 const SearchConfig& config, const QuantumStrategy* initial = nullptr);

enum class EstimateKind { WinProbability, Bias };

using PlayableStrategy = std::variant<DeterministicStrategy, QuantumStrategy>;

// Referee simulation: sample questions from pi, outcomes from the strategy,
// and the win indicator from the conditional win probability. Sample i draws
// from Philox stream i, so reports are bit-identical for any worker count.
EstimateReport monte_carlo_estimate(const Game& g, const PlayableStrategy& strategy,
                                    std::int64_t samples, std::uint64_t seed,
                                    EstimateKind kind = EstimateKind::WinProbability,
                                    int workers = 0);

struct GrothendieckResult {
    double value = 0.0;
    std::vector<VectorXcd> left;
    std::vector<VectorXcd> right;
};

// Alternating ascent for sup |sum M_{x,y} <u_x, v_y>| over unit balls: each
// half-step replaces one side by the normalized adjoint image, an exact
// maximization, so sweeps are monotone.
GrothendieckResult grothendieck_ascent(const MatrixXcd& m, int dim, const SearchConfig& config);

}  // namespace asymbell::solve
