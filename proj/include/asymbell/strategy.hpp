#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "asymbell/functional.hpp"

namespace asymbell {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Outcome of a validity check: empty issue list means valid.
struct Verdict {
    struct Issue {
        std::string what;
        double magnitude;
    };
    std::vector<Issue> issues;

    bool ok() const { return issues.empty(); }
    std::string summary() const;
    void add(std::string what, double magnitude) { issues.push_back({std::move(what), magnitude}); }
};

// Spec tolerances: 1e-9 for validation/normalization, 1e-12 for exact
// low-dimensional algebra.
inline constexpr double kValidationTol = 1e-9;
inline constexpr double kExactTol = 1e-12;
inline constexpr double kImagTol = 1e-10;

Verdict validate_povm(const std::vector<MatrixXcd>& elements, double tol = kValidationTol);
Verdict validate_observable(const MatrixXcd& b, double tol = kValidationTol);

enum class BobMode { Label, Sign };

// One extreme point of the LHV set: a deterministic output per input. In
// Sign mode Bob's entries are +-1; in Label mode they index his output set.
struct DeterministicStrategy {
    std::vector<int> alice;
    std::vector<int> bob;
    BobMode bob_mode = BobMode::Sign;
};

// Finite mixture of deterministic strategies; all extremal questions about
// the LHV set are answered by such mixtures.
struct LocalModel {
    std::vector<double> weights;
    std::vector<DeterministicStrategy> components;

    void check(double tol = 1e-12) const;
};

// Shared state plus Alice POVMs and Bob POVMs-or-observables. Density-matrix
// states are eigendecomposed on construction and evaluated as mixtures of
// pure states.
class QuantumStrategy {
public:
    enum class BobSide { Povms, Observables };

    static QuantumStrategy with_observables(int dim_alice, int dim_bob, const VectorXcd& state,
                                            std::vector<std::vector<MatrixXcd>> alice_povms,
                                            std::vector<MatrixXcd> bob_observables);
    static QuantumStrategy with_povms(int dim_alice, int dim_bob, const VectorXcd& state,
                                      std::vector<std::vector<MatrixXcd>> alice_povms,
                                      std::vector<std::vector<MatrixXcd>> bob_povms);
    static QuantumStrategy with_density(int dim_alice, int dim_bob, const MatrixXcd& rho,
                                        std::vector<std::vector<MatrixXcd>> alice_povms,
                                        std::vector<std::vector<MatrixXcd>> bob_povms,
                                        std::vector<MatrixXcd> bob_observables, BobSide side);

    int dim_alice() const { return dim_alice_; }
    int dim_bob() const { return dim_bob_; }
    BobSide bob_side() const { return bob_side_; }
    int alice_inputs() const { return static_cast<int>(alice_povms_.size()); }
    int alice_outputs() const { return alice_povms_.empty() ? 0 : static_cast<int>(alice_povms_[0].size()); }
    int bob_inputs() const {
        return bob_side_ == BobSide::Povms ? static_cast<int>(bob_povms_.size())
                                           : static_cast<int>(bob_observables_.size());
    }
    int bob_outputs() const {
        return bob_side_ == BobSide::Povms && !bob_povms_.empty()
                   ? static_cast<int>(bob_povms_[0].size())
                   : 0;
    }

    const std::vector<std::vector<MatrixXcd>>& alice_povms() const { return alice_povms_; }
    const std::vector<std::vector<MatrixXcd>>& bob_povms() const;
    const std::vector<MatrixXcd>& bob_observables() const;

    // Pure components (weight, state reshaped to a dimA x dimB matrix).
    const std::vector<std::pair<double, MatrixXcd>>& components() const { return components_; }

    Verdict validate() const;
    void require_valid() const;

    // <psi| A (x) B |psi> summed over the pure components.
    std::complex<double> pair_expectation(const MatrixXcd& op_alice, const MatrixXcd& op_bob) const;

private:
    int dim_alice_ = 0, dim_bob_ = 0;
    BobSide bob_side_ = BobSide::Observables;
    std::vector<std::pair<double, MatrixXcd>> components_;
    std::vector<std::vector<MatrixXcd>> alice_povms_;
    std::vector<std::vector<MatrixXcd>> bob_povms_;
    std::vector<MatrixXcd> bob_observables_;
};

// E(a|x,y) = tr(E_x^a (x) B_y rho); observable-mode Bob.
Correlation correlation_from_quantum(const QuantumStrategy& s);

// P(a,b|x,y) = tr(E_x^a (x) F_y^b rho); POVM-mode Bob. Entries below -1e-10
// are a numerical-validity error; small negatives are clipped to zero.
JointDistribution joint_from_quantum(const QuantumStrategy& s);

// E(a|x,y) = 1[alice(x)=a] * bob_sign(y); Sign-mode Bob required.
Correlation correlation_from_deterministic(const DeterministicStrategy& s, int alice_outputs);
Correlation correlation_from_deterministic(const LocalModel& model, int alice_outputs);

}  // namespace asymbell
