#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asymbell/coset.hpp"
#include "asymbell/solve.hpp"

namespace asymbell::bounds {

// Published bracketing of the Grothendieck constants; the complex upper
// bound enters the dimension probe.
struct GrothendieckConstants {
    double real_lower = 1.676;
    double real_upper = 1.783;
    double complex_lower = 1.338;
    double complex_upper = 1.405;
};

struct CheckOutcome {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    bool passed = false;
    std::string context;
};

CheckOutcome inequality_check(double lhs, double rhs, double tol, std::string context);
CheckOutcome equality_check(double lhs, double rhs, double tol, std::string context);

struct CollapseBound {
    double bound = 0.0;
    bool collapse = true;  // quantum bound equals the classical bound
    std::string method;
    DeterministicStrategy certificate;
};

// For a functional with nonnegative coefficients the quantum bound collapses
// onto the classical one; returns the classical bound (exact when the
// enumeration fits, search otherwise) with the collapse flag set.
CollapseBound nonnegative_collapse_bound(const BellFunctional& m, int workers = 0);

// quantum value found <= 2 * exact classical value, for binary-Bob games.
CheckOutcome factor_two_check(const Game& g, double quantum_value_found, int workers = 0);
CheckOutcome factor_two_check(const Game& g, int dim_alice, int dim_bob,
                              const solve::SearchConfig& config);

struct ComplexBilinearForm {
    int rows = 0;
    int cols = 0;
    MatrixXcd entries;
};

// The (N+1)(K-1) x N complex matrix with
//   M'_{(x,s),y} = sum_a omega^{as} (M^a_{x,y} - M^K_{x,y})
//   M'_{(N+1,s),y} = sum_x omega^s M^K_{x,y},  omega = exp(2 pi i / (K-1)).
// Rows are x-major with s inner. Unequal input counts are padded with zero
// coefficients to a square scenario first.
ComplexBilinearForm build_m_prime(const BellFunctional& m);

// A_{(x,s)} = sum_{a<K} omega^{-as} E^a_x and A_{(N+1,s)} = omega^{-s} 1;
// flat (N+1)(K-1) family, x-major; every operator norm is at most 1.
std::vector<MatrixXcd> alice_operator_transform(
    const std::vector<std::vector<MatrixXcd>>& alice_povms, int alice_outputs, int alice_inputs);

// |<M', gamma>| = (K-1) |<M, E>| for gamma_{(x,s),y} = <psi| A_(x,s) (x) B_y |psi>.
CheckOutcome appendix_b_identity_check(const BellFunctional& m, const QuantumStrategy& strategy);

// Samples unimodular products R(x,s) beta_y, asserts
// |<M', R (x) beta>| <= 24 (K-1)^{3/2} B_C(M) on every sample, and checks the
// two properties of the reconstructed pseudo-strategy P: sum_a P(a|x) is
// independent of x, and sum_a |P(a|x)| <= 3 (K-1)^{3/2}.
CheckOutcome appendix_b_classical_estimate_check(const BellFunctional& m, int samples,
                                                 std::uint64_t seed);

// For per-coset value vectors E([y], k) in [-1, 1]:
// sum_b |Q(b|[y])| <= n^{3/2} with Q(b) = sum_k (-1)^{<btilde,k>} E([y],k),
// plus the intermediate Parseval identity sum_b Q^2 = n sum_k E^2.
CheckOutcome parseval_claim_check(
    const std::vector<std::pair<std::uint64_t, std::vector<double>>>& e_values,
    const gf2::CosetTable& table);

// |<M, E(strategy)>| <= 6 sqrt(K_G^C upper) sqrt(dimB) B_C(M).
CheckOutcome dimension_bound_probe(const BellFunctional& m, const QuantumStrategy& strategy,
                                   const GrothendieckConstants& constants, double classical_bound);
CheckOutcome dimension_bound_probe(const BellFunctional& m, const QuantumStrategy& strategy,
                                   const GrothendieckConstants& constants = {});

struct BoundReport {
    double classical_bound = 0.0;
    std::string classical_method;
    DeterministicStrategy classical_certificate;
    double quantum_lower_bound = 0.0;
    std::string quantum_method;
    std::string quantum_descriptor;  // e.g. "see-saw dims 4x4, seed 7"
    double violation_ratio = 0.0;
    bool certified = false;  // false when the classical side is heuristic
};

BoundReport violation_report(double classical_bound, const std::string& classical_method,
                             double quantum_lower_bound, const std::string& quantum_method);
BoundReport violation_report(const solve::ClassicalSolution& classical, double quantum_lower_bound,
                             const std::string& quantum_method, std::string quantum_descriptor);

}  // namespace asymbell::bounds
