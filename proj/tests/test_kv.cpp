#include <doctest.h>

#include <cmath>

#include "asymbell/kv.hpp"
#include "asymbell/numeric.hpp"
#include "asymbell/random_gen.hpp"

using namespace asymbell;
using namespace asymbell::kv;

namespace {

// Independent referee-side oracle: enumerate every noise word z, read the
// joint outcome table, and accumulate the win probability from the game's
// definition rather than through the coefficient pairing.
double exhaustive_explicit_value(int l, double eta) {
    const auto table = gf2::shared_coset_table(l);
    const int n = table->n();
    const auto cosets = static_cast<int>(table->coset_count());
    const JointDistribution joint = joint_from_quantum(kv_explicit_strategy(l));

    NeumaierSum p_win;
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        const double pz = noise_weight(eta, __builtin_popcountll(z), n);
        NeumaierSum inner;
        for (int x = 0; x < cosets; ++x) {
            for (int at = 0; at < n; ++at) {
                const std::uint64_t wa = table->element_bits(x, at);
                const auto loc = table->locate_bits(wa ^ z);
                inner.add(joint.at(x, static_cast<int>(loc.coset), at, static_cast<int>(loc.k)));
            }
        }
        p_win.add(pz * inner.total());
    }
    return static_cast<double>(n) / std::ldexp(1.0, n) * p_win.total();
}

}  // namespace

TEST_CASE("eta_default") {
    CHECK(eta_default(16).eta == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(!eta_default(16).degenerate);
    CHECK(eta_default(8).eta == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    const auto degenerate = eta_default(4);
    CHECK(degenerate.eta == 0.0);
    CHECK(degenerate.degenerate);
    CHECK_THROWS_AS(eta_default(4, EtaLogBase::E), UsageError);
    CHECK_THROWS_AS(eta_default(1), UsageError);
}

TEST_CASE("kv game coefficients at l=2") {
    const KvGame game = build_kv_game(2, 0.25);
    // a = 0000 (coset 0, label 0); b = 0101 (coset 0, label 1): weight 2.
    CHECK(game.coeff(0, 0, 0, 1) == 9.0 / 1024.0);

    // Question marginal sums to one.
    NeumaierSum total;
    for (std::uint64_t x = 0; x < game.coset_count(); ++x)
        for (std::uint64_t y = 0; y < game.coset_count(); ++y)
            total.add(game.question_prob(x, y));
    CHECK(total.total() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(build_kv_game(2, 0.75), UsageError);
    CHECK_THROWS_AS(build_kv_game(2, -0.1), UsageError);
}

TEST_CASE("noiseless game wins exactly on equal answers") {
    const KvGame game = build_kv_game(2, 0.0);
    const auto& table = game.table();
    for (std::uint64_t x = 0; x < game.coset_count(); ++x)
        for (std::uint64_t y = 0; y < game.coset_count(); ++y)
            for (int a = 0; a < game.n(); ++a)
                for (int b = 0; b < game.n(); ++b) {
                    const bool same_word = table.element_bits(x, a) == table.element_bits(y, b);
                    CHECK((game.coeff(x, y, a, b) > 0.0) == same_word);
                }
}

TEST_CASE("explicit strategy vectors") {
    const auto u0 = kv_strategy_vector(4, 0b0000);
    for (int i = 0; i < 4; ++i) CHECK(u0(i) == 0.5);

    // <u_a, u_b> = (n - 2|a^b|)/n; zero exactly on nonzero codewords.
    for (int l = 2; l <= 3; ++l) {
        const int n = 1 << l;
        for (std::uint64_t a = 0; a < 64 && a < (std::uint64_t{1} << n); ++a)
            for (std::uint64_t b = 0; b < 64 && b < (std::uint64_t{1} << n); ++b) {
                const double dot = kv_strategy_vector(n, a).dot(kv_strategy_vector(n, b));
                const double expect =
                    (n - 2.0 * __builtin_popcountll(a ^ b)) / static_cast<double>(n);
                CHECK(dot == doctest::Approx(expect).epsilon(1e-12));
            }
    }
}

TEST_CASE("per-coset projectors resolve the identity up to l=4") {
    for (int l = 1; l <= 4; ++l) {
        const auto table = gf2::shared_coset_table(l);
        const int n = table->n();
        for (std::uint64_t c = 0; c < table->coset_count(); ++c) {
            const auto povm = kv_coset_projectors(*table, c);
            MatrixXcd sum = MatrixXcd::Zero(n, n);
            for (const auto& e : povm) sum += e;
            CHECK((sum - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("explicit strategy joint at l=2") {
    const JointDistribution p = joint_from_quantum(kv_explicit_strategy(2));
    const auto table = gf2::shared_coset_table(2);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const int diff = __builtin_popcountll(table->element_bits(x, a) ^
                                                          table->element_bits(y, b));
                    const double expect = (4.0 - 2.0 * diff) * (4.0 - 2.0 * diff) / 16.0 / 4.0;
                    CHECK(p.at(x, y, a, b) == doctest::Approx(expect).epsilon(1e-12));
                }
    CHECK(p.at(0, 0, 0, 0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("closed form matches exhaustive z-enumeration") {
    for (int l = 2; l <= 3; ++l)
        for (double eta : {0.0, 0.1, 0.25, 0.4}) {
            const double direct = exhaustive_explicit_value(l, eta);
            const double closed = kv_explicit_value_closed_form(l, eta);
            CHECK(std::abs(direct - closed) < 1e-12);
        }
    CHECK(kv_explicit_value_closed_form(2, 0.0) == 1.0);
    CHECK(kv_explicit_value_closed_form(2, 0.25) == doctest::Approx(7.0 / 16.0).epsilon(1e-15));
    CHECK(kv_explicit_value_closed_form(3, 1.0 / 6.0) ==
          doctest::Approx(37.0 / 72.0).epsilon(1e-14));
}

TEST_CASE("game value of the explicit joint") {
    const Game game = build_kv_game(2, 0.25).as_game();
    const double value = game_value_of_distribution(game, joint_from_quantum(kv_explicit_strategy(2)));
    CHECK(value == doctest::Approx(7.0 / 16.0).epsilon(1e-12));

    const Game noiseless = build_kv_game(2, 0.0).as_game();
    CHECK(game_value_of_distribution(noiseless, joint_from_quantum(kv_explicit_strategy(2))) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("asym coefficients obey the Fourier relation to the KV game") {
    for (int l = 2; l <= 3; ++l) {
        const double eta = 0.25;
        const KvGame kv_game = build_kv_game(l, eta);
        const AsymKvGame asym = build_asym_kv(l, eta);
        const auto& table = kv_game.table();
        const int n = kv_game.n();
        for (std::uint64_t x = 0; x < kv_game.coset_count(); ++x)
            for (std::uint64_t y = 0; y < kv_game.coset_count(); ++y)
                for (int at = 0; at < n; ++at)
                    for (int bt = 0; bt < n; ++bt) {
                        double sum = 0.0;
                        for (int k = 0; k < n; ++k) {
                            const double sign =
                                __builtin_parityll(static_cast<std::uint64_t>(bt) &
                                                   static_cast<std::uint64_t>(k))
                                    ? -1.0
                                    : 1.0;
                            sum += sign * asym.coeff(x, y * n + k, at);
                        }
                        CHECK(sum == doctest::Approx(kv_game.coeff(x, y, at, bt)).epsilon(1e-12));
                    }
        (void)table;
    }
}

TEST_CASE("asym k=0 coefficients are the positive question mass") {
    const AsymKvGame asym = build_asym_kv(2, 0.25);
    const Game game = asym.as_game();
    for (std::uint64_t x = 0; x < 4; ++x)
        for (std::uint64_t y = 0; y < 4; ++y) {
            // At k=0 the sign factor is identically +1, so the coefficient is
            // (1/2^n) sum_{z in [x^y]} P_eta(z), independent of a.
            const double mass = game.question_prob(static_cast<int>(x), static_cast<int>(y * 4));
            for (int a = 0; a < 4; ++a) {
                const double c = asym.coeff(x, y * 4 + 0, a);
                CHECK(c > 0.0);
                CHECK(c == doctest::Approx(mass).epsilon(1e-13));
            }
        }
}

TEST_CASE("asym dense functional sizes and budget") {
    const BellFunctional dense = build_asym_kv(2, 0.25).dense_functional();
    CHECK(dense.alice_inputs() == 4);
    CHECK(dense.bob_inputs() == 16);
    CHECK(dense.alice_outputs() == 4);
    CHECK(dense.dense().size() == 256);
    CHECK_THROWS_AS(build_asym_kv(4, 0.25).dense_functional(), ResourceError);
}

TEST_CASE("fourier transform of per-coset POVMs") {
    const auto table = gf2::shared_coset_table(2);
    const QuantumStrategy s = kv_explicit_strategy(2);
    const auto observables = fourier_bob_transform(s.bob_povms(), *table);
    REQUIRE(observables.size() == 16);
    for (std::size_t y = 0; y < 4; ++y) {
        // k = 0: POVM completeness makes the observable the identity.
        CHECK((observables[y * 4] - MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
        for (std::size_t k = 0; k < 4; ++k) {
            const auto& b = observables[y * 4 + k];
            CHECK(validate_observable(b).ok());
            // Projective input: the transform squares to the identity.
            CHECK((b * b - MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    auto broken = s.bob_povms();
    broken[0][0] *= 1.5;
    CHECK_THROWS_AS(fourier_bob_transform(broken, *table), ValidationError);
}

TEST_CASE("transform identity at l=2") {
    for (double eta : {0.1, 0.25}) {
        const double kv_value = game_value_of_distribution(
            build_kv_game(2, eta).as_game(), joint_from_quantum(kv_explicit_strategy(2)));
        const QuantumStrategy transformed = kv_transformed_strategy(2);
        const double bias = bias_of_correlation(build_asym_kv(2, eta).dense_functional(),
                                                correlation_from_quantum(transformed));
        CHECK(bias == doctest::Approx(kv_value).epsilon(1e-9));
    }
}

TEST_CASE("transformed correlation matches the transpose-trace shortcut") {
    const QuantumStrategy transformed = kv_transformed_strategy(2);
    const Correlation e = correlation_from_quantum(transformed);
    const auto& alice = transformed.alice_povms();
    const auto& obs = transformed.bob_observables();
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 16; ++y)
            for (int a = 0; a < 4; ++a) {
                const double shortcut =
                    (alice[x][a] * obs[y].transpose()).trace().real() / 4.0;
                CHECK(e.at(x, y, a) == doctest::Approx(shortcut).epsilon(1e-12));
            }
}

TEST_CASE("relabeling leaves the transform identity value unchanged") {
    const double eta = 0.25;
    const double canonical = bias_of_correlation(build_asym_kv(2, eta).dense_functional(),
                                                 correlation_from_quantum(kv_transformed_strategy(2)));

    Philox rng(17);
    Relabeling relabel;
    relabel.perm.resize(4);
    for (auto& row : relabel.perm) {
        row = {0, 1, 2, 3};
        for (int i = 3; i > 0; --i)
            std::swap(row[static_cast<std::size_t>(i)],
                      row[static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(i + 1)))]);
    }

    const AsymKvGame relabeled = build_asym_kv(2, eta, relabel);
    const QuantumStrategy transformed = kv_transformed_strategy(2, relabel);
    const double bias = bias_of_correlation(relabeled.dense_functional(),
                                            correlation_from_quantum(transformed));
    CHECK(bias == doctest::Approx(canonical).epsilon(1e-12));
    CHECK(bias == doctest::Approx(7.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("asym game view is consistent with the bias functional") {
    const AsymKvGame asym = build_asym_kv(2, 0.25);
    const Game game = asym.as_game();
    const BellFunctional from_game = bias_functional_of_binary_game(game);
    const BellFunctional direct = asym.dense_functional();
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 16; ++y)
            for (int a = 0; a < 4; ++a)
                CHECK(from_game.coeff(x, y, a) == doctest::Approx(direct.coeff(x, y, a)).epsilon(1e-14));

    // Question normalization of the asymmetric game.
    NeumaierSum total;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 16; ++y) total.add(game.question_prob(x, y));
    CHECK(total.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("explicit strategy materialization is budgeted") {
    CHECK_THROWS_AS(kv_explicit_strategy(4), ResourceError);
}
