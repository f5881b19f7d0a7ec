#include "asymbell/random_gen.hpp"

namespace asymbell {

namespace {

MatrixXcd random_gaussian_matrix(int rows, int cols, Philox& rng) {
    MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    return m;
}

}  // namespace

VectorXcd random_pure_state(int dim, Philox& rng) {
    VectorXcd v(dim);
    for (int i = 0; i < dim; ++i)
        v(i) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    v.normalize();
    return v;
}

std::vector<MatrixXcd> random_projective_povm(int dim, int outputs, Philox& rng) {
    const MatrixXcd g = random_gaussian_matrix(dim, dim, rng);
    const Eigen::HouseholderQR<MatrixXcd> qr(g);
    const MatrixXcd q = qr.householderQ();
    std::vector<MatrixXcd> povm(static_cast<std::size_t>(outputs), MatrixXcd::Zero(dim, dim));
    for (int i = 0; i < dim; ++i)
        povm[static_cast<std::size_t>(i % outputs)] += q.col(i) * q.col(i).adjoint();
    return povm;
}

std::vector<MatrixXcd> random_povm(int dim, int outputs, Philox& rng) {
    std::vector<MatrixXcd> parts;
    parts.reserve(static_cast<std::size_t>(outputs));
    MatrixXcd total = MatrixXcd::Zero(dim, dim);
    for (int a = 0; a < outputs; ++a) {
        const MatrixXcd g = random_gaussian_matrix(dim, dim, rng);
        parts.push_back(g * g.adjoint());
        total += parts.back();
    }
    // S^{-1/2} E_a S^{-1/2} restores completeness exactly.
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(total);
    const MatrixXcd inv_sqrt = solver.operatorInverseSqrt();
    for (auto& e : parts) e = inv_sqrt * e * inv_sqrt;
    return parts;
}

MatrixXcd random_observable(int dim, Philox& rng) {
    const MatrixXcd g = random_gaussian_matrix(dim, dim, rng);
    MatrixXcd h = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
    const double radius = solver.eigenvalues().cwiseAbs().maxCoeff();
    if (radius > 1.0) h /= radius;
    return h;
}

QuantumStrategy random_observable_strategy(int dim_alice, int dim_bob, int alice_inputs,
                                           int bob_inputs, int alice_outputs, Philox& rng) {
    const VectorXcd state = random_pure_state(dim_alice * dim_bob, rng);
    std::vector<std::vector<MatrixXcd>> alice;
    alice.reserve(static_cast<std::size_t>(alice_inputs));
    for (int x = 0; x < alice_inputs; ++x) alice.push_back(random_povm(dim_alice, alice_outputs, rng));
    std::vector<MatrixXcd> bob;
    bob.reserve(static_cast<std::size_t>(bob_inputs));
    for (int y = 0; y < bob_inputs; ++y) bob.push_back(random_observable(dim_bob, rng));
    return QuantumStrategy::with_observables(dim_alice, dim_bob, state, std::move(alice),
                                             std::move(bob));
}

QuantumStrategy random_povm_strategy(int dim_alice, int dim_bob, int alice_inputs, int bob_inputs,
                                     int alice_outputs, int bob_outputs, Philox& rng) {
    const VectorXcd state = random_pure_state(dim_alice * dim_bob, rng);
    std::vector<std::vector<MatrixXcd>> alice;
    alice.reserve(static_cast<std::size_t>(alice_inputs));
    for (int x = 0; x < alice_inputs; ++x) alice.push_back(random_povm(dim_alice, alice_outputs, rng));
    std::vector<std::vector<MatrixXcd>> bob;
    bob.reserve(static_cast<std::size_t>(bob_inputs));
    for (int y = 0; y < bob_inputs; ++y) bob.push_back(random_povm(dim_bob, bob_outputs, rng));
    return QuantumStrategy::with_povms(dim_alice, dim_bob, state, std::move(alice), std::move(bob));
}

BellFunctional random_functional(int alice_inputs, int bob_inputs, int alice_outputs, Philox& rng,
                                 bool nonnegative) {
    std::vector<double> coeffs;
    coeffs.reserve(static_cast<std::size_t>(alice_inputs) * bob_inputs * alice_outputs);
    for (int i = 0; i < alice_inputs * bob_inputs * alice_outputs; ++i) {
        const double u = rng.next_double();
        coeffs.push_back(nonnegative ? u : 2.0 * u - 1.0);
    }
    return BellFunctional::from_dense(alice_inputs, bob_inputs, alice_outputs, std::move(coeffs),
                                      "random");
}

Game random_game(int x_count, int y_count, int a_count, int b_count, Philox& rng) {
    std::vector<double> pi(static_cast<std::size_t>(x_count) * y_count,
                           1.0 / (static_cast<double>(x_count) * y_count));
    std::vector<double> win;
    win.reserve(static_cast<std::size_t>(x_count) * y_count * a_count * b_count);
    for (int x = 0; x < x_count; ++x)
        for (int y = 0; y < y_count; ++y) {
            const double p = pi[static_cast<std::size_t>(x) * y_count + y];
            for (int a = 0; a < a_count; ++a)
                for (int b = 0; b < b_count; ++b)
                    win.push_back(rng.next_u32() & 1u ? p : 0.0);
        }
    return Game::from_dense(x_count, y_count, a_count, b_count, std::move(pi), std::move(win),
                            "random");
}

}  // namespace asymbell
