#include <doctest.h>

#include <cmath>

#include "asymbell/random_gen.hpp"
#include "asymbell/strategy.hpp"

using namespace asymbell;

namespace {

MatrixXcd diag2(double a, double b) {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

VectorXcd bell_state() {
    VectorXcd psi = VectorXcd::Zero(4);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(3) = 1.0 / std::sqrt(2.0);
    return psi;
}

}  // namespace

TEST_CASE("validate_povm examples") {
    CHECK(validate_povm({MatrixXcd::Identity(2, 2)}).ok());
    CHECK(validate_povm({diag2(1, 0), diag2(0, 1)}).ok());

    const Verdict bad = validate_povm({diag2(1, 0), diag2(0.5, 1)});
    REQUIRE(!bad.ok());
    bool found = false;
    for (const auto& issue : bad.issues)
        if (issue.what.find("completeness") != std::string::npos) {
            found = true;
            CHECK(issue.magnitude == doctest::Approx(0.5).epsilon(1e-12));
        }
    CHECK(found);

    CHECK_THROWS_AS(validate_povm({MatrixXcd::Identity(2, 3)}), DimensionError);
    CHECK_THROWS_AS(validate_povm({MatrixXcd::Identity(2, 2), MatrixXcd::Identity(3, 3)}),
                    DimensionError);
}

TEST_CASE("validate_observable examples") {
    CHECK(validate_observable(MatrixXcd::Identity(2, 2)).ok());
    CHECK(validate_observable(diag2(1, -1)).ok());
    const Verdict bad = validate_observable(diag2(2, 0));
    REQUIRE(!bad.ok());
    CHECK(bad.issues[0].magnitude == doctest::Approx(2.0));
    CHECK_THROWS_AS(validate_observable(MatrixXcd::Identity(2, 3)), DimensionError);
}

TEST_CASE("correlation_from_quantum on the Bell state") {
    auto s = QuantumStrategy::with_observables(2, 2, bell_state(),
                                               {{diag2(1, 0), diag2(0, 1)}}, {diag2(1, -1)});
    const Correlation e = correlation_from_quantum(s);
    CHECK(e.at(0, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.at(0, 0, 1) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("identity observable gives the Alice marginal") {
    Philox rng(7);
    auto povm = random_povm(2, 2, rng);
    auto s = QuantumStrategy::with_observables(2, 2, random_pure_state(4, rng), {povm, povm},
                                               {MatrixXcd::Identity(2, 2), random_observable(2, rng)});
    const Correlation e = correlation_from_quantum(s);
    // y = 0 holds the identity: marginals, equal across x for equal POVMs.
    for (int a = 0; a < 2; ++a) {
        CHECK(e.at(0, 0, a) == doctest::Approx(e.at(1, 0, a)).epsilon(1e-12));
        CHECK(e.at(0, 0, a) >= -1e-12);
    }
    CHECK(e.at(0, 0, 0) + e.at(0, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximally entangled state reduces to the transpose trace") {
    const int n = 4;
    VectorXcd psi = VectorXcd::Zero(n * n);
    for (int i = 0; i < n; ++i) psi(i * n + i) = 0.5;
    Philox rng(11);
    const MatrixXcd b = random_observable(n, rng);
    auto s = QuantumStrategy::with_observables(n, n, psi,
                                               {{MatrixXcd::Identity(n, n)}}, {b});
    const Correlation e = correlation_from_quantum(s);
    CHECK(e.at(0, 0, 0) == doctest::Approx(b.transpose().trace().real() / n).epsilon(1e-12));
}

TEST_CASE("correlation_from_deterministic") {
    DeterministicStrategy always{{0, 0}, {1, 1, 1}, BobMode::Sign};
    const Correlation e = correlation_from_deterministic(always, 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 3; ++y) {
            CHECK(e.at(x, y, 0) == 1.0);
            CHECK(e.at(x, y, 1) == 0.0);
        }

    LocalModel cancel{{0.5, 0.5},
                      {DeterministicStrategy{{0}, {1}, BobMode::Sign},
                       DeterministicStrategy{{0}, {-1}, BobMode::Sign}}};
    const Correlation zero = correlation_from_deterministic(cancel, 2);
    CHECK(zero.at(0, 0, 0) == 0.0);

    LocalModel lop{{0.75, 0.25},
                   {DeterministicStrategy{{1}, {1}, BobMode::Sign},
                    DeterministicStrategy{{1}, {-1}, BobMode::Sign}}};
    const Correlation half = correlation_from_deterministic(lop, 2);
    CHECK(half.at(0, 0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(half.at(0, 0, 0) == 0.0);

    DeterministicStrategy labels{{0}, {2}, BobMode::Label};
    CHECK_THROWS_AS(correlation_from_deterministic(labels, 2), ModeError);
}

TEST_CASE("evaluate_functional basics") {
    const auto m = BellFunctional::from_dense(1, 1, 1, {2.0});
    Correlation e(1, 1, 1);
    CHECK(evaluate_functional(m, e) == 0.0);
    e.at(0, 0, 0) = 0.5;
    CHECK(evaluate_functional(m, e) == doctest::Approx(1.0).epsilon(1e-15));

    Correlation wrong(2, 1, 1);
    CHECK_THROWS_AS(evaluate_functional(m, wrong), DimensionError);
}

TEST_CASE("evaluate_functional is linear and convex over mixtures") {
    Philox rng(3);
    const auto m = random_functional(3, 2, 3, rng);
    Correlation e1(3, 2, 3), e2(3, 2, 3);
    for (auto& v : e1.values) v = 2.0 * rng.next_double() - 1.0;
    for (auto& v : e2.values) v = 2.0 * rng.next_double() - 1.0;
    const double alpha = 0.3, beta = -1.7;
    Correlation mix(3, 2, 3);
    for (std::size_t i = 0; i < mix.values.size(); ++i)
        mix.values[i] = alpha * e1.values[i] + beta * e2.values[i];
    CHECK(evaluate_functional(m, mix) ==
          doctest::Approx(alpha * evaluate_functional(m, e1) + beta * evaluate_functional(m, e2))
              .epsilon(1e-9));

    // Convexity over a local model.
    LocalModel model;
    model.weights = {0.2, 0.5, 0.3};
    for (int i = 0; i < 3; ++i) {
        DeterministicStrategy d;
        d.bob_mode = BobMode::Sign;
        for (int x = 0; x < 3; ++x) d.alice.push_back(static_cast<int>(rng.next_below(3)));
        for (int y = 0; y < 2; ++y) d.bob.push_back(rng.next_u32() & 1u ? 1 : -1);
        model.components.push_back(std::move(d));
    }
    const double mixed = evaluate_functional(m, correlation_from_deterministic(model, 3));
    double split = 0.0;
    for (std::size_t i = 0; i < model.components.size(); ++i)
        split += model.weights[i] *
                 evaluate_functional(m, correlation_from_deterministic(model.components[i], 3));
    CHECK(mixed == doctest::Approx(split).epsilon(1e-12));
}

TEST_CASE("joint_from_quantum basics") {
    // Product state |0>|0> with projective bases: a point mass.
    VectorXcd psi = VectorXcd::Zero(4);
    psi(0) = 1.0;
    auto s = QuantumStrategy::with_povms(2, 2, psi, {{diag2(1, 0), diag2(0, 1)}},
                                         {{diag2(1, 0), diag2(0, 1)}});
    const JointDistribution p = joint_from_quantum(s);
    CHECK(p.at(0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.at(0, 0, 1, 1) == doctest::Approx(0.0).epsilon(1e-12));

    Philox rng(9);
    auto random_s = random_povm_strategy(3, 2, 2, 2, 3, 2, rng);
    const JointDistribution q = joint_from_quantum(random_s);
    q.check_normalized(1e-9);
    for (double v : q.values) CHECK(v >= 0.0);
}

TEST_CASE("observable built from signed POVM matches the joint") {
    Philox rng(21);
    const int na = 3, nb = 2;
    auto alice = std::vector<std::vector<MatrixXcd>>{random_povm(3, na, rng),
                                                     random_povm(3, na, rng)};
    auto bob_povm = random_povm(2, nb, rng);
    const VectorXcd psi = random_pure_state(6, rng);

    const int signs[nb] = {1, -1};
    MatrixXcd b = MatrixXcd::Zero(2, 2);
    for (int i = 0; i < nb; ++i) b += static_cast<double>(signs[i]) * bob_povm[i];

    auto povm_side = QuantumStrategy::with_povms(3, 2, psi, alice, {bob_povm});
    auto obs_side = QuantumStrategy::with_observables(3, 2, psi, alice, {b});
    const JointDistribution p = joint_from_quantum(povm_side);
    const Correlation e = correlation_from_quantum(obs_side);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < na; ++a) {
            double expect = 0.0;
            for (int i = 0; i < nb; ++i) expect += signs[i] * p.at(x, 0, a, i);
            CHECK(e.at(x, 0, a) == doctest::Approx(expect).epsilon(1e-9));
        }
}

TEST_CASE("density-matrix states evaluate as pure mixtures") {
    Philox rng(31);
    const VectorXcd psi1 = random_pure_state(4, rng);
    const VectorXcd psi2 = random_pure_state(4, rng);
    const MatrixXcd rho = 0.25 * psi1 * psi1.adjoint() + 0.75 * psi2 * psi2.adjoint();

    auto alice = std::vector<std::vector<MatrixXcd>>{random_povm(2, 2, rng)};
    auto bob = std::vector<MatrixXcd>{random_observable(2, rng)};

    auto mixed = QuantumStrategy::with_density(2, 2, rho, alice, {}, bob,
                                               QuantumStrategy::BobSide::Observables);
    auto pure1 = QuantumStrategy::with_observables(2, 2, psi1, alice, bob);
    auto pure2 = QuantumStrategy::with_observables(2, 2, psi2, alice, bob);

    const Correlation em = correlation_from_quantum(mixed);
    const Correlation e1 = correlation_from_quantum(pure1);
    const Correlation e2 = correlation_from_quantum(pure2);
    for (std::size_t i = 0; i < em.values.size(); ++i)
        CHECK(em.values[i] ==
              doctest::Approx(0.25 * e1.values[i] + 0.75 * e2.values[i]).epsilon(1e-9));
}

TEST_CASE("strategy validation catches broken inputs") {
    VectorXcd psi = VectorXcd::Zero(4);
    psi(0) = 1.0;
    auto bad_povm = std::vector<std::vector<MatrixXcd>>{{diag2(1, 0), diag2(0.5, 1)}};
    auto s = QuantumStrategy::with_observables(2, 2, psi, bad_povm, {diag2(1, -1)});
    CHECK(!s.validate().ok());
    CHECK_THROWS_AS(correlation_from_quantum(s), ValidationError);

    auto povm_mode = QuantumStrategy::with_povms(2, 2, psi, {{diag2(1, 0), diag2(0, 1)}},
                                                 {{diag2(1, 0), diag2(0, 1)}});
    CHECK_THROWS_AS(correlation_from_quantum(povm_mode), ModeError);
    CHECK_THROWS_AS(povm_mode.bob_observables(), ModeError);
}

TEST_CASE("bias_of_correlation range") {
    const auto m = BellFunctional::from_dense(1, 1, 1, {1.0}, "bias");
    Correlation e(1, 1, 1);
    CHECK(bias_of_correlation(m, e) == 0.0);
    e.at(0, 0, 0) = 1.0;
    CHECK(bias_of_correlation(m, e) == 1.0);

    const auto big = BellFunctional::from_dense(1, 1, 1, {3.0});
    CHECK_THROWS_AS(bias_of_correlation(big, e), NumericError);
}
