#include "asymbell/functional.hpp"

#include <cmath>

#include "asymbell/numeric.hpp"

namespace asymbell {

namespace {

void check_shape(int alice_inputs, int bob_inputs, int alice_outputs) {
    if (alice_inputs < 1 || bob_inputs < 1 || alice_outputs < 1)
        throw DimensionError("BellFunctional: index ranges must be positive");
}

}  // namespace

BellFunctional BellFunctional::from_dense(int alice_inputs, int bob_inputs, int alice_outputs,
                                          std::vector<double> coeffs, std::string tag) {
    check_shape(alice_inputs, bob_inputs, alice_outputs);
    const std::int64_t want =
        static_cast<std::int64_t>(alice_inputs) * bob_inputs * alice_outputs;
    if (want > kDenseLimit)
        throw ResourceError("BellFunctional: dense storage of " + std::to_string(want) +
                            " entries exceeds the limit of " + std::to_string(kDenseLimit));
    if (static_cast<std::int64_t>(coeffs.size()) != want)
        throw DimensionError("BellFunctional: expected " + std::to_string(want) +
                             " coefficients, got " + std::to_string(coeffs.size()));
    for (double c : coeffs)
        if (!std::isfinite(c)) throw ValidationError("BellFunctional: non-finite coefficient");
    BellFunctional m;
    m.alice_inputs_ = alice_inputs;
    m.bob_inputs_ = bob_inputs;
    m.alice_outputs_ = alice_outputs;
    m.dense_ = std::move(coeffs);
    m.tag_ = std::move(tag);
    return m;
}

BellFunctional BellFunctional::from_oracle(int alice_inputs, int bob_inputs, int alice_outputs,
                                           std::function<double(int, int, int)> oracle,
                                           std::string tag) {
    check_shape(alice_inputs, bob_inputs, alice_outputs);
    BellFunctional m;
    m.alice_inputs_ = alice_inputs;
    m.bob_inputs_ = bob_inputs;
    m.alice_outputs_ = alice_outputs;
    m.oracle_ = std::move(oracle);
    m.tag_ = std::move(tag);
    return m;
}

const std::vector<double>& BellFunctional::dense() const {
    if (dense_.empty()) throw ResourceError("BellFunctional: not materialized; use densified()");
    return dense_;
}

BellFunctional BellFunctional::densified() const {
    if (is_dense()) return *this;
    if (entry_count() > kDenseLimit)
        throw ResourceError("BellFunctional: " + std::to_string(entry_count()) +
                            " entries exceed the dense limit of " + std::to_string(kDenseLimit));
    std::vector<double> coeffs;
    coeffs.reserve(static_cast<std::size_t>(entry_count()));
    for (int x = 0; x < alice_inputs_; ++x)
        for (int y = 0; y < bob_inputs_; ++y)
            for (int a = 0; a < alice_outputs_; ++a) coeffs.push_back(oracle_(x, y, a));
    return from_dense(alice_inputs_, bob_inputs_, alice_outputs_, std::move(coeffs), tag_);
}

void JointDistribution::check_normalized(double tol) const {
    for (int x = 0; x < alice_inputs; ++x)
        for (int y = 0; y < bob_inputs; ++y) {
            NeumaierSum s;
            for (int a = 0; a < alice_outputs; ++a)
                for (int b = 0; b < bob_outputs; ++b) s.add(at(x, y, a, b));
            if (std::abs(s.total() - 1.0) > tol)
                throw ValidationError("JointDistribution: slice (" + std::to_string(x) + "," +
                                      std::to_string(y) + ") sums to " +
                                      std::to_string(s.total()));
        }
}

double evaluate_functional(const BellFunctional& m, const Correlation& e) {
    if (m.alice_inputs() != e.alice_inputs || m.bob_inputs() != e.bob_inputs ||
        m.alice_outputs() != e.alice_outputs)
        throw DimensionError("evaluate_functional: shape mismatch");
    NeumaierSum sum;
    for (int x = 0; x < m.alice_inputs(); ++x)
        for (int y = 0; y < m.bob_inputs(); ++y)
            for (int a = 0; a < m.alice_outputs(); ++a)
                sum.add(m.coeff(x, y, a) * e.at(x, y, a));
    return sum.total();
}

double bias_of_correlation(const BellFunctional& m, const Correlation& e) {
    const double v = evaluate_functional(m, e);
    if (std::abs(v) > 1.0 + 1e-9)
        throw NumericError("bias_of_correlation: |" + std::to_string(v) +
                           "| > 1; correlation is not a valid strategy bias");
    return v;
}

}  // namespace asymbell
