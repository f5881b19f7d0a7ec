#include "asymbell/strategy.hpp"

#include <cmath>

#include "asymbell/numeric.hpp"

namespace asymbell {

std::string Verdict::summary() const {
    if (issues.empty()) return "valid";
    std::string s;
    for (const auto& issue : issues) {
        if (!s.empty()) s += "; ";
        s += issue.what + " (" + format_double(issue.magnitude) + ")";
    }
    return s;
}

namespace {

double hermiticity_defect(const MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const MatrixXcd& m) {
    // Symmetrize first so slightly non-Hermitian inputs still get a verdict.
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(0.5 * (m + m.adjoint()));
    return solver.eigenvalues();
}

void require_square_same_dim(const std::vector<MatrixXcd>& elements) {
    if (elements.empty()) throw DimensionError("validate_povm: empty element list");
    const auto dim = elements[0].rows();
    for (const auto& e : elements)
        if (e.rows() != e.cols() || e.rows() != dim)
            throw DimensionError("validate_povm: elements must be square matrices of one dimension");
}

}  // namespace

Verdict validate_povm(const std::vector<MatrixXcd>& elements, double tol) {
    require_square_same_dim(elements);
    Verdict v;
    const auto dim = elements[0].rows();
    MatrixXcd sum = MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const double herm = hermiticity_defect(elements[i]);
        if (herm > kExactTol * 10)
            v.add("element " + std::to_string(i) + " not Hermitian", herm);
        const double lambda_min = hermitian_eigenvalues(elements[i]).minCoeff();
        if (lambda_min < -tol)
            v.add("element " + std::to_string(i) + " not PSD: min eigenvalue", lambda_min);
        sum += elements[i];
    }
    const double completeness = (sum - MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (completeness > tol) v.add("completeness violated by", completeness);
    return v;
}

Verdict validate_observable(const MatrixXcd& b, double tol) {
    if (b.rows() != b.cols()) throw DimensionError("validate_observable: matrix must be square");
    Verdict v;
    const double herm = hermiticity_defect(b);
    if (herm > kExactTol) v.add("not Hermitian: defect", herm);
    const auto eigs = hermitian_eigenvalues(b);
    if (eigs.minCoeff() < -1.0 - tol) v.add("eigenvalue below -1", eigs.minCoeff());
    if (eigs.maxCoeff() > 1.0 + tol) v.add("eigenvalue above +1", eigs.maxCoeff());
    return v;
}

void LocalModel::check(double tol) const {
    if (weights.size() != components.size())
        throw DimensionError("LocalModel: weights and components differ in length");
    if (weights.empty()) throw DimensionError("LocalModel: empty mixture");
    NeumaierSum total;
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("LocalModel: negative weight");
        total.add(w);
    }
    if (std::abs(total.total() - 1.0) > tol)
        throw ValidationError("LocalModel: weights sum to " + std::to_string(total.total()));
}

namespace {

MatrixXcd reshape_state(const VectorXcd& state, int dim_alice, int dim_bob) {
    if (state.size() != static_cast<Eigen::Index>(dim_alice) * dim_bob)
        throw DimensionError("QuantumStrategy: state has dimension " + std::to_string(state.size()) +
                             ", expected " + std::to_string(dim_alice * dim_bob));
    MatrixXcd psi(dim_alice, dim_bob);
    for (int i = 0; i < dim_alice; ++i)
        for (int j = 0; j < dim_bob; ++j) psi(i, j) = state(static_cast<Eigen::Index>(i) * dim_bob + j);
    return psi;
}

}  // namespace

QuantumStrategy QuantumStrategy::with_observables(int dim_alice, int dim_bob, const VectorXcd& state,
                                                  std::vector<std::vector<MatrixXcd>> alice_povms,
                                                  std::vector<MatrixXcd> bob_observables) {
    QuantumStrategy s;
    s.dim_alice_ = dim_alice;
    s.dim_bob_ = dim_bob;
    s.bob_side_ = BobSide::Observables;
    s.components_.emplace_back(1.0, reshape_state(state, dim_alice, dim_bob));
    s.alice_povms_ = std::move(alice_povms);
    s.bob_observables_ = std::move(bob_observables);
    return s;
}

QuantumStrategy QuantumStrategy::with_povms(int dim_alice, int dim_bob, const VectorXcd& state,
                                            std::vector<std::vector<MatrixXcd>> alice_povms,
                                            std::vector<std::vector<MatrixXcd>> bob_povms) {
    QuantumStrategy s;
    s.dim_alice_ = dim_alice;
    s.dim_bob_ = dim_bob;
    s.bob_side_ = BobSide::Povms;
    s.components_.emplace_back(1.0, reshape_state(state, dim_alice, dim_bob));
    s.alice_povms_ = std::move(alice_povms);
    s.bob_povms_ = std::move(bob_povms);
    return s;
}

QuantumStrategy QuantumStrategy::with_density(int dim_alice, int dim_bob, const MatrixXcd& rho,
                                              std::vector<std::vector<MatrixXcd>> alice_povms,
                                              std::vector<std::vector<MatrixXcd>> bob_povms,
                                              std::vector<MatrixXcd> bob_observables, BobSide side) {
    const Eigen::Index dim = static_cast<Eigen::Index>(dim_alice) * dim_bob;
    if (rho.rows() != dim || rho.cols() != dim)
        throw DimensionError("QuantumStrategy: density matrix dimension mismatch");
    if (hermiticity_defect(rho) > kExactTol * 10)
        throw ValidationError("QuantumStrategy: density matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > kExactTol || std::abs(rho.trace().imag()) > kExactTol)
        throw ValidationError("QuantumStrategy: density matrix trace != 1");

    QuantumStrategy s;
    s.dim_alice_ = dim_alice;
    s.dim_bob_ = dim_bob;
    s.bob_side_ = side;
    s.alice_povms_ = std::move(alice_povms);
    s.bob_povms_ = std::move(bob_povms);
    s.bob_observables_ = std::move(bob_observables);

    // Convex decomposition into pure states; evaluation is linear in rho.
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(0.5 * (rho + rho.adjoint()));
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double w = solver.eigenvalues()(i);
        if (w < -kValidationTol)
            throw ValidationError("QuantumStrategy: density matrix has eigenvalue " +
                                  std::to_string(w));
        if (w <= 0.0) continue;
        s.components_.emplace_back(w, reshape_state(solver.eigenvectors().col(i), dim_alice, dim_bob));
    }
    if (s.components_.empty()) throw ValidationError("QuantumStrategy: density matrix is zero");
    return s;
}

const std::vector<std::vector<MatrixXcd>>& QuantumStrategy::bob_povms() const {
    if (bob_side_ != BobSide::Povms)
        throw ModeError("QuantumStrategy: Bob side holds observables, not POVMs");
    return bob_povms_;
}

const std::vector<MatrixXcd>& QuantumStrategy::bob_observables() const {
    if (bob_side_ != BobSide::Observables)
        throw ModeError("QuantumStrategy: Bob side holds POVMs, not observables");
    return bob_observables_;
}

Verdict QuantumStrategy::validate() const {
    Verdict v;
    NeumaierSum weight_sum;
    for (const auto& [w, psi] : components_) {
        weight_sum.add(w * psi.squaredNorm());
        if (psi.rows() != dim_alice_ || psi.cols() != dim_bob_)
            v.add("state component has wrong shape", 0.0);
    }
    const double norm_defect = std::abs(weight_sum.total() - 1.0);
    if (norm_defect > kExactTol) v.add("state not normalized: defect", norm_defect);

    for (std::size_t x = 0; x < alice_povms_.size(); ++x) {
        Verdict povm = validate_povm(alice_povms_[x]);
        for (auto& issue : povm.issues) v.add("Alice x=" + std::to_string(x) + ": " + issue.what, issue.magnitude);
        for (const auto& e : alice_povms_[x])
            if (e.rows() != dim_alice_) v.add("Alice x=" + std::to_string(x) + ": wrong dimension", 0.0);
        if (alice_povms_[x].size() != alice_povms_[0].size())
            v.add("Alice x=" + std::to_string(x) + ": output count differs", 0.0);
    }
    if (alice_povms_.empty()) v.add("Alice has no measurements", 0.0);

    if (bob_side_ == BobSide::Povms) {
        for (std::size_t y = 0; y < bob_povms_.size(); ++y) {
            Verdict povm = validate_povm(bob_povms_[y]);
            for (auto& issue : povm.issues) v.add("Bob y=" + std::to_string(y) + ": " + issue.what, issue.magnitude);
            for (const auto& e : bob_povms_[y])
                if (e.rows() != dim_bob_) v.add("Bob y=" + std::to_string(y) + ": wrong dimension", 0.0);
        }
        if (bob_povms_.empty()) v.add("Bob has no measurements", 0.0);
    } else {
        for (std::size_t y = 0; y < bob_observables_.size(); ++y) {
            Verdict obs = validate_observable(bob_observables_[y]);
            for (auto& issue : obs.issues) v.add("Bob y=" + std::to_string(y) + ": " + issue.what, issue.magnitude);
            if (bob_observables_[y].rows() != dim_bob_)
                v.add("Bob y=" + std::to_string(y) + ": wrong dimension", 0.0);
        }
        if (bob_observables_.empty()) v.add("Bob has no observables", 0.0);
    }
    return v;
}

void QuantumStrategy::require_valid() const {
    Verdict v = validate();
    if (!v.ok()) throw ValidationError("invalid quantum strategy: " + v.summary());
}

std::complex<double> QuantumStrategy::pair_expectation(const MatrixXcd& op_alice,
                                                       const MatrixXcd& op_bob) const {
    std::complex<double> total = 0.0;
    for (const auto& [w, psi] : components_) {
        // <psi| A (x) B |psi> = sum_{j,l} (Psi^† A Psi)_{jl} B_{jl}
        const MatrixXcd c = psi.adjoint() * op_alice * psi;
        total += w * (c.array() * op_bob.array()).sum();
    }
    return total;
}

Correlation correlation_from_quantum(const QuantumStrategy& s) {
    if (s.bob_side() != QuantumStrategy::BobSide::Observables)
        throw ModeError("correlation_from_quantum: Bob side must hold observables");
    s.require_valid();
    const int nx = s.alice_inputs(), ny = s.bob_inputs(), na = s.alice_outputs();
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(nx) * ny * na, 0.0);
    // Hoist Psi^† A Psi out of the y loop; the Bob side is a cheap
    // elementwise contraction against it.
    for (const auto& [w, psi] : s.components())
        for (int x = 0; x < nx; ++x)
            for (int a = 0; a < na; ++a) {
                const MatrixXcd c = psi.adjoint() * s.alice_povms()[x][a] * psi;
                for (int y = 0; y < ny; ++y)
                    acc[(static_cast<std::size_t>(x) * ny + y) * na + a] +=
                        w * (c.array() * s.bob_observables()[y].array()).sum();
            }
    Correlation e(nx, ny, na);
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (std::abs(acc[i].imag()) > kImagTol)
            throw NumericError("correlation_from_quantum: imaginary residue " +
                               std::to_string(acc[i].imag()));
        e.values[i] = acc[i].real();
    }
    return e;
}

JointDistribution joint_from_quantum(const QuantumStrategy& s) {
    if (s.bob_side() != QuantumStrategy::BobSide::Povms)
        throw ModeError("joint_from_quantum: Bob side must hold POVMs");
    s.require_valid();
    const int nx = s.alice_inputs(), ny = s.bob_inputs(), na = s.alice_outputs(),
              nb = s.bob_outputs();
    std::vector<std::complex<double>> acc(static_cast<std::size_t>(nx) * ny * na * nb, 0.0);
    for (const auto& [w, psi] : s.components())
        for (int x = 0; x < nx; ++x)
            for (int a = 0; a < na; ++a) {
                const MatrixXcd c = psi.adjoint() * s.alice_povms()[x][a] * psi;
                for (int y = 0; y < ny; ++y)
                    for (int b = 0; b < nb; ++b)
                        acc[((static_cast<std::size_t>(x) * ny + y) * na + a) * nb + b] +=
                            w * (c.array() * s.bob_povms()[y][b].array()).sum();
            }
    JointDistribution p(nx, ny, na, nb);
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (std::abs(acc[i].imag()) > kImagTol)
            throw NumericError("joint_from_quantum: imaginary residue " +
                               std::to_string(acc[i].imag()));
        const double prob = acc[i].real();
        if (prob < -kImagTol)
            throw NumericError("joint_from_quantum: probability " + std::to_string(prob) +
                               " below -1e-10");
        p.values[i] = prob < 0.0 ? 0.0 : prob;
    }
    p.check_normalized();
    return p;
}

Correlation correlation_from_deterministic(const DeterministicStrategy& s, int alice_outputs) {
    if (s.bob_mode != BobMode::Sign)
        throw ModeError("correlation_from_deterministic: Bob strategy is in label mode");
    const int nx = static_cast<int>(s.alice.size());
    const int ny = static_cast<int>(s.bob.size());
    Correlation e(nx, ny, alice_outputs);
    for (int x = 0; x < nx; ++x) {
        if (s.alice[x] < 0 || s.alice[x] >= alice_outputs)
            throw DimensionError("correlation_from_deterministic: Alice output out of range");
        for (int y = 0; y < ny; ++y) {
            if (s.bob[y] != 1 && s.bob[y] != -1)
                throw ModeError("correlation_from_deterministic: Bob sign must be +-1");
            e.at(x, y, s.alice[x]) = static_cast<double>(s.bob[y]);
        }
    }
    return e;
}

Correlation correlation_from_deterministic(const LocalModel& model, int alice_outputs) {
    model.check();
    Correlation e(static_cast<int>(model.components[0].alice.size()),
                  static_cast<int>(model.components[0].bob.size()), alice_outputs);
    for (std::size_t i = 0; i < model.components.size(); ++i) {
        const Correlation part = correlation_from_deterministic(model.components[i], alice_outputs);
        if (part.values.size() != e.values.size())
            throw DimensionError("correlation_from_deterministic: mixture components differ in shape");
        for (std::size_t j = 0; j < e.values.size(); ++j)
            e.values[j] += model.weights[i] * part.values[j];
    }
    return e;
}

}  // namespace asymbell
