#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "asymbell/coset.hpp"
#include "asymbell/game.hpp"
#include "asymbell/strategy.hpp"

namespace asymbell::kv {

using gf2::CosetTable;

enum class EtaLogBase { Two, E };

struct EtaDefault {
    double eta;
    bool degenerate;  // eta == 0: the game collapses to the noiseless case
};

// eta = 1/2 - 1/log(n). The log base is not canonical; base 2 is the default
// and base e is selectable. Negative results are rejected with instructions
// to pass eta explicitly.
EtaDefault eta_default(int n, EtaLogBase base = EtaLogBase::Two);

// Alternative per-coset bijection between coset elements and {0,1}^l.
// perm[coset][k] is the label given to representative ^ codeword(k); an empty
// object is the identity labeling. Game values must not depend on this
// choice, which is what the relabeling-invariance tests exercise.
struct Relabeling {
    std::vector<std::vector<int>> perm;

    bool is_identity() const { return perm.empty(); }
    int label(std::uint64_t coset, int k) const {
        return perm.empty() ? k : perm[static_cast<std::size_t>(coset)][static_cast<std::size_t>(k)];
    }
};

// The KV game: questions are cosets of the Hadamard subgroup, outputs are
// coset elements (indexed by their local label), and the win coefficient for
// answers a, b is (n/2^n) P_eta(a ^ b).
class KvGame {
public:
    KvGame(int l, double eta, std::shared_ptr<const CosetTable> table);

    int l() const { return l_; }
    int n() const { return n_; }
    double eta() const { return eta_; }
    const CosetTable& table() const { return *table_; }
    std::shared_ptr<const CosetTable> shared_table() const { return table_; }
    std::uint64_t coset_count() const { return table_->coset_count(); }

    double coeff(std::uint64_t x, std::uint64_t y, int atilde, int btilde) const;
    double question_prob(std::uint64_t x, std::uint64_t y) const;

    // Dense Game view; within budget for l <= 3.
    Game as_game() const;

private:
    int l_, n_;
    double eta_;
    std::shared_ptr<const CosetTable> table_;
};

// The asymmetric KV game: Alice keeps the coset questions and outputs, Bob
// is asked (coset, k) and answers a sign. Bob input index = coset * n + k.
class AsymKvGame {
public:
    AsymKvGame(int l, double eta, std::shared_ptr<const CosetTable> table,
               Relabeling relabeling = {});

    int l() const { return l_; }
    int n() const { return n_; }
    double eta() const { return eta_; }
    const CosetTable& table() const { return *table_; }
    std::shared_ptr<const CosetTable> shared_table() const { return table_; }
    const Relabeling& relabeling() const { return relabeling_; }

    std::uint64_t alice_input_count() const { return table_->coset_count(); }
    std::uint64_t bob_input_count() const { return table_->coset_count() * n_; }
    int alice_output_count() const { return n_; }

    // Bias coefficient M^a_{[x],([y],k)} = (1/2^n) sum_{z in [x^y]} P_eta(z) (-1)^{<(a^z)~, k>}.
    double coeff(std::uint64_t x, std::uint64_t ypair, int atilde) const;

    // Oracle-backed bias functional (any l with int-sized index ranges).
    BellFunctional functional() const;
    // Dense coefficients; the spec budget allows l <= 3.
    BellFunctional dense_functional() const;

    // Predicate-game view with binary Bob answers (label 0 = +1, 1 = -1).
    Game as_game() const;

private:
    int l_, n_;
    double eta_;
    std::shared_ptr<const CosetTable> table_;
    Relabeling relabeling_;
};

KvGame build_kv_game(int l, double eta);
AsymKvGame build_asym_kv(int l, double eta);
AsymKvGame build_asym_kv(int l, double eta, Relabeling relabeling);

// u_c = 1/sqrt(n) sum_i (-1)^{c(i)} |i>.
Eigen::VectorXd kv_strategy_vector(int n, std::uint64_t word);

// Rank-1 projectors |u_c><u_c| for the n elements of one coset, indexed by
// the local label; they form an orthonormal resolution of the identity.
std::vector<MatrixXcd> kv_coset_projectors(const CosetTable& table, std::uint64_t coset);

// Maximally entangled state of local dimension n plus the projector POVMs
// for every coset, used by both players. Materializes all cosets, so l <= 3.
QuantumStrategy kv_explicit_strategy(int l);

// B_{[y],k} = sum_b (-1)^{<btilde,k>} F^b_{[y]}: dichotomic observables
// indexed by ypair = coset * n + k. POVMs must be valid; output spectra lie
// in [-1, 1].
std::vector<MatrixXcd> fourier_bob_transform(const std::vector<std::vector<MatrixXcd>>& bob_povms,
                                             const CosetTable& table,
                                             const Relabeling& relabeling = {});

// Explicit strategy with Bob's side replaced by the transformed observables:
// the strategy that plays the asymmetric game.
QuantumStrategy kv_transformed_strategy(int l, const Relabeling& relabeling = {});

// Value of the explicit strategy on the KV game: mu^2 (1 - 1/n) + 1/n with
// mu = 1 - 2 eta. Validated against exhaustive z-enumeration in the tests.
double kv_explicit_value_closed_form(int l, double eta);

}  // namespace asymbell::kv
