#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "asymbell/errors.hpp"

namespace asymbell {

// Coefficient family M_{x,y}^a: Alice inputs x in [0,N), Bob inputs y in
// [0,N'), Alice outputs a in [0,K). Bob's side is dichotomic, so no b index.
// Dense storage is x-major, then y, then a; above the dense budget only the
// oracle form is available.
class BellFunctional {
public:
    static constexpr std::int64_t kDenseLimit = 10'000'000;

    BellFunctional() = default;

    static BellFunctional from_dense(int alice_inputs, int bob_inputs, int alice_outputs,
                                     std::vector<double> coeffs, std::string tag = {});
    static BellFunctional from_oracle(int alice_inputs, int bob_inputs, int alice_outputs,
                                      std::function<double(int, int, int)> oracle,
                                      std::string tag = {});

    int alice_inputs() const { return alice_inputs_; }
    int bob_inputs() const { return bob_inputs_; }
    int alice_outputs() const { return alice_outputs_; }
    const std::string& tag() const { return tag_; }
    bool is_dense() const { return !dense_.empty(); }
    const std::vector<double>& dense() const;

    double coeff(int x, int y, int a) const {
        if (!dense_.empty())
            return dense_[(static_cast<std::size_t>(x) * bob_inputs_ + y) * alice_outputs_ + a];
        return oracle_(x, y, a);
    }

    std::int64_t entry_count() const {
        return static_cast<std::int64_t>(alice_inputs_) * bob_inputs_ * alice_outputs_;
    }

    // Materializes the oracle; throws ResourceError above the dense budget.
    BellFunctional densified() const;

private:
    int alice_inputs_ = 0, bob_inputs_ = 0, alice_outputs_ = 0;
    std::vector<double> dense_;
    std::function<double(int, int, int)> oracle_;
    std::string tag_;
};

// E(a|x,y) with the same index ranges; dense only.
struct Correlation {
    int alice_inputs = 0, bob_inputs = 0, alice_outputs = 0;
    std::vector<double> values;  // x-major, y, a

    Correlation() = default;
    Correlation(int n_alice, int n_bob, int n_out)
        : alice_inputs(n_alice), bob_inputs(n_bob), alice_outputs(n_out),
          values(static_cast<std::size_t>(n_alice) * n_bob * n_out, 0.0) {}

    double& at(int x, int y, int a) {
        return values[(static_cast<std::size_t>(x) * bob_inputs + y) * alice_outputs + a];
    }
    double at(int x, int y, int a) const {
        return values[(static_cast<std::size_t>(x) * bob_inputs + y) * alice_outputs + a];
    }
};

// P(a,b|x,y) for a game-mode scenario with finite Bob labels.
struct JointDistribution {
    int alice_inputs = 0, bob_inputs = 0, alice_outputs = 0, bob_outputs = 0;
    std::vector<double> values;  // x-major, y, a, b

    JointDistribution() = default;
    JointDistribution(int nx, int ny, int na, int nb)
        : alice_inputs(nx), bob_inputs(ny), alice_outputs(na), bob_outputs(nb),
          values(static_cast<std::size_t>(nx) * ny * na * nb, 0.0) {}

    double& at(int x, int y, int a, int b) {
        return values[((static_cast<std::size_t>(x) * bob_inputs + y) * alice_outputs + a) *
                          bob_outputs +
                      b];
    }
    double at(int x, int y, int a, int b) const {
        return values[((static_cast<std::size_t>(x) * bob_inputs + y) * alice_outputs + a) *
                          bob_outputs +
                      b];
    }

    // Throws ValidationError unless every (x,y) slice sums to 1 within tol.
    void check_normalized(double tol = 1e-9) const;
};

// <M, E>: triple sum in deterministic x/y/a order with compensated summation.
double evaluate_functional(const BellFunctional& m, const Correlation& e);

// Same pairing for a functional tagged as a game bias; range-checks the result.
double bias_of_correlation(const BellFunctional& m, const Correlation& e);

}  // namespace asymbell
