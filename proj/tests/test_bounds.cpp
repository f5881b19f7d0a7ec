#include <doctest.h>

#include <cmath>
#include <complex>

#include "asymbell/bounds.hpp"
#include "asymbell/kv.hpp"
#include "asymbell/random_gen.hpp"

using namespace asymbell;
using namespace asymbell::bounds;

TEST_CASE("nonnegative collapse bound") {
    const auto single = BellFunctional::from_dense(1, 1, 1, {3.0});
    const CollapseBound b = nonnegative_collapse_bound(single);
    CHECK(b.bound == doctest::Approx(3.0));
    CHECK(b.collapse);
    CHECK(b.method == "exact-enumeration");

    CHECK(nonnegative_collapse_bound(BellFunctional::from_dense(2, 2, 2, std::vector<double>(8, 0.0)))
              .bound == 0.0);

    const auto negative = BellFunctional::from_dense(1, 2, 1, {0.5, -0.25});
    CHECK_THROWS_WITH_AS(nonnegative_collapse_bound(negative),
                         doctest::Contains("(x=0,y=1,a=0)"), ValidationError);
}

TEST_CASE("see-saw never beats the collapse bound on nonnegative functionals") {
    Philox rng(41);
    solve::SearchConfig config;
    config.restarts = 3;
    config.iterations = 25;
    for (int trial = 0; trial < 5; ++trial) {
        const int nx = 1 + static_cast<int>(rng.next_below(4));
        const int ny = 1 + static_cast<int>(rng.next_below(4));
        const int na = 1 + static_cast<int>(rng.next_below(3));
        const BellFunctional m = random_functional(nx, ny, na, rng, /*nonnegative=*/true);
        const double classical = nonnegative_collapse_bound(m).bound;
        config.seed = static_cast<std::uint64_t>(trial) + 1;
        const double quantum = solve::see_saw_lower_bound(m, 3, 3, config).value;
        CHECK(quantum <= classical + 1e-7);
    }
}

TEST_CASE("factor two check") {
    const Game game = kv::build_asym_kv(2, 0.25).as_game();
    const double classical = solve::classical_value_exact(game).value;
    CHECK(factor_two_check(game, classical).passed);  // omega_c <= 2 omega_c

    solve::SearchConfig config;
    config.restarts = 2;
    config.iterations = 15;
    const CheckOutcome out = factor_two_check(game, 4, 4, config);
    CHECK(out.passed);

    CHECK_THROWS_AS(factor_two_check(kv::build_kv_game(2, 0.25).as_game(), 1.0), ModeError);
}

TEST_CASE("m-prime shape and low-order values") {
    Philox rng(8);
    const BellFunctional m34 = random_functional(3, 3, 4, rng);
    const ComplexBilinearForm form = build_m_prime(m34);
    CHECK(form.rows == 12);
    CHECK(form.cols == 3);

    // K=3, N=1: omega = -1; M^1 = 1, M^2 = 0, M^3 = 0.
    const auto m = BellFunctional::from_dense(1, 1, 3, {1.0, 0.0, 0.0});
    const ComplexBilinearForm f = build_m_prime(m);
    REQUIRE(f.rows == 4);
    REQUIRE(f.cols == 1);
    CHECK(f.entries(0, 0).real() == doctest::Approx(-1.0));
    CHECK(f.entries(1, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(f.entries(2, 0)) < 1e-14);
    CHECK(std::abs(f.entries(3, 0)) < 1e-14);

    const auto zero = BellFunctional::from_dense(2, 2, 3, std::vector<double>(12, 0.0));
    CHECK(build_m_prime(zero).entries.cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(build_m_prime(BellFunctional::from_dense(2, 2, 1, std::vector<double>(4, 0.0))),
                    UsageError);
}

TEST_CASE("alice operator transform") {
    Philox rng(12);
    const auto povms = std::vector<std::vector<MatrixXcd>>{random_povm(3, 2, rng),
                                                           random_povm(3, 2, rng)};
    // K = 2: A_(x,1) = E^1_x.
    const auto family = alice_operator_transform(povms, 2, 2);
    REQUIRE(family.size() == 3);
    CHECK((family[0] - povms[0][0]).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((family[1] - povms[1][0]).cwiseAbs().maxCoeff() < 1e-14);
    // Row N+1 is omega^{-s} times the identity; K=2 makes omega = 1.
    CHECK((family[2] - MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("alice operator transform norms stay within one") {
    Philox rng(13);
    for (int k = 2; k <= 4; ++k) {
        const auto povm = random_projective_povm(3, k, rng);
        const auto family = alice_operator_transform({povm}, k, 1);
        for (const auto& a : family) {
            Eigen::JacobiSVD<MatrixXcd> svd(a);
            CHECK(svd.singularValues()(0) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("appendix B identity on random pairs") {
    Philox rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const int nx = 1 + static_cast<int>(rng.next_below(3));
        const int ny = 1 + static_cast<int>(rng.next_below(3));
        const int k = 2 + static_cast<int>(rng.next_below(3));
        const BellFunctional m = random_functional(nx, ny, k, rng);
        const QuantumStrategy s = random_observable_strategy(3, 3, nx, ny, k, rng);
        const CheckOutcome out = appendix_b_identity_check(m, s);
        CHECK(out.passed);
    }

    const auto zero = BellFunctional::from_dense(2, 2, 2, std::vector<double>(8, 0.0));
    Philox rng2(56);
    const QuantumStrategy s = random_observable_strategy(2, 2, 2, 2, 2, rng2);
    const CheckOutcome out = appendix_b_identity_check(zero, s);
    CHECK(out.passed);
    CHECK(out.lhs == doctest::Approx(0.0));
    CHECK(out.rhs == doctest::Approx(0.0));
}

TEST_CASE("appendix B identity with unequal input counts uses padding") {
    Philox rng(57);
    const BellFunctional m = random_functional(2, 3, 3, rng);
    const QuantumStrategy s = random_observable_strategy(2, 2, 2, 3, 3, rng);
    CHECK(appendix_b_identity_check(m, s).passed);
}

TEST_CASE("appendix B classical estimate check") {
    Philox rng(60);
    const BellFunctional m = random_functional(3, 3, 3, rng);
    const CheckOutcome out = appendix_b_classical_estimate_check(m, 500, 11);
    CHECK(out.passed);
    CHECK(out.lhs <= out.rhs + 1e-8);

    const auto zero = BellFunctional::from_dense(2, 2, 2, std::vector<double>(8, 0.0));
    CHECK(appendix_b_classical_estimate_check(zero, 50, 1).passed);
}

TEST_CASE("pseudo-strategy telescoping for constant R") {
    // With R identically one the two quoted properties of P reduce to plain
    // root-of-unity sums; verify them from the definition.
    for (int k = 2; k <= 5; ++k) {
        const int km1 = k - 1;
        const auto omega = [&](long long e) {
            const double angle = 2.0 * M_PI * static_cast<double>(((e % km1) + km1) % km1) / km1;
            return std::complex<double>(std::cos(angle), std::sin(angle));
        };
        std::complex<double> tail = 0.0;
        for (int s = 1; s <= km1; ++s) tail += omega(s);
        for (int x = 0; x < 3; ++x) {
            std::complex<double> total = 0.0;
            std::complex<double> head = 0.0;
            for (int a = 1; a <= km1; ++a) {
                std::complex<double> p = 0.0;
                for (int s = 1; s <= km1; ++s) p += omega(static_cast<long long>(a) * s);
                total += p;
                head += p;
            }
            total += tail - head;  // P(K|x)
            CHECK(std::abs(total - tail) < 1e-12);
        }
    }
}

TEST_CASE("parseval claim check") {
    const auto table = gf2::shared_coset_table(2);
    const int n = table->n();

    // E identically one: Q concentrates n on the zero label.
    std::vector<std::pair<std::uint64_t, std::vector<double>>> ones{{0, std::vector<double>(n, 1.0)}};
    const CheckOutcome all_ones = parseval_claim_check(ones, *table);
    CHECK(all_ones.passed);
    CHECK(all_ones.lhs == doctest::Approx(static_cast<double>(n)));

    // Indicator of a single k0: |Q| = 1 everywhere.
    std::vector<double> indicator(n, 0.0);
    indicator[2] = 1.0;
    const CheckOutcome single = parseval_claim_check({{1, indicator}}, *table);
    CHECK(single.passed);
    CHECK(single.lhs == doctest::Approx(static_cast<double>(n)));

    // Random vectors across l = 2..4 pass both the claim and the identity.
    for (int l = 2; l <= 4; ++l) {
        const auto t = gf2::shared_coset_table(l);
        Philox rng(100 + static_cast<std::uint64_t>(l));
        std::vector<std::pair<std::uint64_t, std::vector<double>>> batch;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> values(static_cast<std::size_t>(t->n()));
            for (auto& v : values) v = 2.0 * rng.next_double() - 1.0;
            batch.emplace_back(rng.next_below(t->coset_count()), std::move(values));
        }
        CHECK(parseval_claim_check(batch, *t).passed);
    }

    std::vector<double> out_of_range(n, 1.5);
    CHECK_THROWS_AS(parseval_claim_check({{0, out_of_range}}, *table), ValidationError);
}

TEST_CASE("dimension bound probe") {
    Philox rng(71);
    // d = 1: scalar Bob observables are classical; generous slack.
    const BellFunctional m = random_functional(2, 2, 2, rng);
    const QuantumStrategy scalar_bob = random_observable_strategy(2, 1, 2, 2, 2, rng);
    const double classical = solve::classical_bias_exact(m).value;
    const CheckOutcome probe = dimension_bound_probe(m, scalar_bob);
    CHECK(probe.passed);
    CHECK(probe.slack >= (6.0 * std::sqrt(1.338) - 1.0) * classical - 1e-9);

    // Explicit transformed strategy on the asymmetric game at l=2.
    const auto asym = kv::build_asym_kv(2, 0.25).dense_functional();
    const CheckOutcome kv_probe = dimension_bound_probe(asym, kv::kv_transformed_strategy(2));
    CHECK(kv_probe.passed);
    CHECK(kv_probe.lhs == doctest::Approx(7.0 / 16.0).epsilon(1e-9));
    CHECK(kv_probe.rhs ==
          doctest::Approx(6.0 * std::sqrt(1.405) * 2.0 * (9.0 / 16.0)).epsilon(1e-9));

    // Random pairs at small dimension.
    for (int trial = 0; trial < 5; ++trial) {
        const BellFunctional r = random_functional(2, 2, 2, rng);
        const QuantumStrategy s = random_observable_strategy(2, 2, 2, 2, 2, rng);
        CHECK(dimension_bound_probe(r, s).passed);
    }
}

TEST_CASE("violation report") {
    const BoundReport equal = violation_report(0.5, "exact-enumeration", 0.5, "see-saw");
    CHECK(equal.violation_ratio == doctest::Approx(1.0));
    CHECK(equal.certified);

    const BoundReport heuristic = violation_report(0.5, "local-search", 0.6, "see-saw");
    CHECK(!heuristic.certified);

    CHECK_THROWS_AS(violation_report(0.0, "exact-enumeration", 1.0, "see-saw"), UsageError);

    // Nonnegative functional: quantum/classical ratio stays at one.
    Philox rng(81);
    const BellFunctional m = random_functional(2, 2, 2, rng, /*nonnegative=*/true);
    const CollapseBound collapse = nonnegative_collapse_bound(m);
    solve::SearchConfig config;
    config.restarts = 3;
    config.iterations = 25;
    const double quantum = solve::see_saw_lower_bound(m, 2, 2, config).value;
    if (collapse.bound > 0.0) {
        const BoundReport report =
            violation_report(collapse.bound, collapse.method, quantum, "see-saw");
        CHECK(report.violation_ratio <= 1.0 + 1e-7);
    }
}
