#pragma once

#include "asymbell/game.hpp"
#include "asymbell/rng.hpp"
#include "asymbell/strategy.hpp"

namespace asymbell {

// Seeded generators for test instances and optimizer restarts. Everything is
// a pure function of the Philox state it consumes.

VectorXcd random_pure_state(int dim, Philox& rng);
inline VectorXcd random_unit_vector(int dim, Philox& rng) { return random_pure_state(dim, rng); }

// Projective measurement from a Haar-ish random unitary; column i feeds
// output i % outputs.
std::vector<MatrixXcd> random_projective_povm(int dim, int outputs, Philox& rng);

// POVM with k outputs from Gaussian factors G_a: E_a = S^{-1/2} G_a G_a^† S^{-1/2}.
std::vector<MatrixXcd> random_povm(int dim, int outputs, Philox& rng);

// Hermitian with spectrum scaled into [-1, 1].
MatrixXcd random_observable(int dim, Philox& rng);

QuantumStrategy random_observable_strategy(int dim_alice, int dim_bob, int alice_inputs,
                                           int bob_inputs, int alice_outputs, Philox& rng);
QuantumStrategy random_povm_strategy(int dim_alice, int dim_bob, int alice_inputs, int bob_inputs,
                                     int alice_outputs, int bob_outputs, Philox& rng);

// Coefficients uniform in [-1, 1] (or [0, 1] when nonnegative).
BellFunctional random_functional(int alice_inputs, int bob_inputs, int alice_outputs, Philox& rng,
                                 bool nonnegative = false);

// Random predicate game: uniform question distribution, iid Bernoulli(1/2)
// predicate.
Game random_game(int x_count, int y_count, int a_count, int b_count, Philox& rng);

}  // namespace asymbell
