#include "asymbell/bounds.hpp"

#include <cmath>
#include <complex>

#include "asymbell/numeric.hpp"
#include "asymbell/random_gen.hpp"

namespace asymbell::bounds {

CheckOutcome inequality_check(double lhs, double rhs, double tol, std::string context) {
    CheckOutcome out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.slack = rhs - lhs;
    out.passed = out.slack >= -tol;
    out.context = std::move(context);
    return out;
}

CheckOutcome equality_check(double lhs, double rhs, double tol, std::string context) {
    CheckOutcome out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.slack = rhs - lhs;
    out.passed = std::abs(out.slack) <= tol;
    out.context = std::move(context);
    return out;
}

CollapseBound nonnegative_collapse_bound(const BellFunctional& m, int workers) {
    for (int x = 0; x < m.alice_inputs(); ++x)
        for (int y = 0; y < m.bob_inputs(); ++y)
            for (int a = 0; a < m.alice_outputs(); ++a)
                if (m.coeff(x, y, a) < 0.0)
                    throw ValidationError("nonnegative_collapse_bound: coefficient at (x=" +
                                          std::to_string(x) + ",y=" + std::to_string(y) +
                                          ",a=" + std::to_string(a) + ") is negative: " +
                                          format_double(m.coeff(x, y, a)));
    CollapseBound out;
    try {
        solve::ClassicalSolution exact = solve::classical_bias_exact(m, workers);
        out.bound = exact.value;
        out.method = exact.method;
        out.certificate = std::move(exact.strategy);
    } catch (const ResourceError&) {
        solve::SearchConfig config;
        config.restarts = 32;
        solve::ClassicalSolution found = solve::classical_local_search(m, config);
        out.bound = found.value;
        out.method = found.method;
        out.certificate = std::move(found.strategy);
    }
    out.collapse = true;
    return out;
}

CheckOutcome factor_two_check(const Game& g, double quantum_value_found, int workers) {
    if (g.b_count() != 2)
        throw ModeError("factor_two_check: game must have binary Bob outputs, has " +
                        std::to_string(g.b_count()));
    const solve::ClassicalSolution classical = solve::classical_value_exact(g, workers);
    return inequality_check(quantum_value_found, 2.0 * classical.value, 1e-7,
                            "quantum value vs 2x classical value " + format_double(classical.value));
}

CheckOutcome factor_two_check(const Game& g, int dim_alice, int dim_bob,
                              const solve::SearchConfig& config) {
    const solve::SeeSawResult quantum = solve::see_saw_lower_bound(g, dim_alice, dim_bob, config);
    return factor_two_check(g, quantum.value, config.workers);
}

namespace {

// Pads a functional with zero coefficients so Alice and Bob have the same
// input count; the paper's construction assumes a square scenario.
BellFunctional squared_up(const BellFunctional& m) {
    if (m.alice_inputs() == m.bob_inputs()) return m.densified();
    const int np = std::max(m.alice_inputs(), m.bob_inputs());
    const int k = m.alice_outputs();
    std::vector<double> coeffs(static_cast<std::size_t>(np) * np * k, 0.0);
    for (int x = 0; x < m.alice_inputs(); ++x)
        for (int y = 0; y < m.bob_inputs(); ++y)
            for (int a = 0; a < k; ++a)
                coeffs[(static_cast<std::size_t>(x) * np + y) * k + a] = m.coeff(x, y, a);
    return BellFunctional::from_dense(np, np, k, std::move(coeffs), m.tag());
}

std::complex<double> omega_power(int k_minus_one, long long exponent) {
    // exp(2 pi i exponent / (K-1)); reduce the exponent first for accuracy.
    const long long r = ((exponent % k_minus_one) + k_minus_one) % k_minus_one;
    const double angle = 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(k_minus_one);
    return {std::cos(angle), std::sin(angle)};
}

double operator_norm(const MatrixXcd& a) {
    Eigen::JacobiSVD<MatrixXcd> svd(a);
    return svd.singularValues()(0);
}

}  // namespace

ComplexBilinearForm build_m_prime(const BellFunctional& m) {
    const int k = m.alice_outputs();
    if (k < 2) throw UsageError("build_m_prime: needs K >= 2 outputs, got " + std::to_string(k));
    const BellFunctional sq = squared_up(m);
    const int n = sq.alice_inputs();

    ComplexBilinearForm form;
    form.rows = (n + 1) * (k - 1);
    form.cols = n;
    form.entries = MatrixXcd::Zero(form.rows, form.cols);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x)
            for (int s = 1; s <= k - 1; ++s) {
                std::complex<double> v = 0.0;
                for (int a = 1; a <= k - 1; ++a)
                    v += omega_power(k - 1, static_cast<long long>(a) * s) *
                         (sq.coeff(x, y, a - 1) - sq.coeff(x, y, k - 1));
                form.entries(x * (k - 1) + (s - 1), y) = v;
            }
        for (int s = 1; s <= k - 1; ++s) {
            std::complex<double> v = 0.0;
            for (int x = 0; x < n; ++x)
                v += omega_power(k - 1, s) * sq.coeff(x, y, k - 1);
            form.entries(n * (k - 1) + (s - 1), y) = v;
        }
    }
    return form;
}

std::vector<MatrixXcd> alice_operator_transform(
    const std::vector<std::vector<MatrixXcd>>& alice_povms, int alice_outputs, int alice_inputs) {
    const int k = alice_outputs;
    if (k < 2) throw UsageError("alice_operator_transform: needs K >= 2");
    if (static_cast<int>(alice_povms.size()) < alice_inputs)
        throw DimensionError("alice_operator_transform: missing POVMs");
    for (int x = 0; x < alice_inputs; ++x) {
        const Verdict verdict = validate_povm(alice_povms[x]);
        if (!verdict.ok())
            throw ValidationError("alice_operator_transform: invalid POVM at x=" +
                                  std::to_string(x) + ": " + verdict.summary());
        if (static_cast<int>(alice_povms[x].size()) != k)
            throw DimensionError("alice_operator_transform: POVM output count mismatch");
    }
    const Eigen::Index dim = alice_povms[0][0].rows();

    std::vector<MatrixXcd> family;
    family.reserve(static_cast<std::size_t>(alice_inputs + 1) * (k - 1));
    for (int x = 0; x < alice_inputs; ++x)
        for (int s = 1; s <= k - 1; ++s) {
            MatrixXcd a_op = MatrixXcd::Zero(dim, dim);
            for (int a = 1; a <= k - 1; ++a)
                a_op += omega_power(k - 1, -static_cast<long long>(a) * s) * alice_povms[x][a - 1];
            family.push_back(std::move(a_op));
        }
    for (int s = 1; s <= k - 1; ++s)
        family.push_back(omega_power(k - 1, -s) * MatrixXcd::Identity(dim, dim));

    for (std::size_t i = 0; i < family.size(); ++i) {
        const double norm = operator_norm(family[i]);
        if (norm > 1.0 + kValidationTol)
            throw NumericError("alice_operator_transform: operator " + std::to_string(i) +
                               " has norm " + format_double(norm));
    }
    return family;
}

CheckOutcome appendix_b_identity_check(const BellFunctional& m, const QuantumStrategy& strategy) {
    if (strategy.bob_side() != QuantumStrategy::BobSide::Observables)
        throw ModeError("appendix_b_identity_check: strategy must hold Bob observables");
    strategy.require_valid();
    if (strategy.alice_inputs() != m.alice_inputs() || strategy.bob_inputs() != m.bob_inputs() ||
        strategy.alice_outputs() != m.alice_outputs())
        throw DimensionError("appendix_b_identity_check: strategy shape mismatch");

    const int k = m.alice_outputs();
    const ComplexBilinearForm m_prime = build_m_prime(m);
    const int np = m_prime.cols;

    // Extend a padded scenario with trivial measurements; the padded rows and
    // columns of M' are zero, so they contribute nothing either way.
    std::vector<std::vector<MatrixXcd>> povms = strategy.alice_povms();
    for (int x = strategy.alice_inputs(); x < np; ++x) {
        std::vector<MatrixXcd> trivial(static_cast<std::size_t>(k),
                                       MatrixXcd::Zero(strategy.dim_alice(), strategy.dim_alice()));
        trivial[static_cast<std::size_t>(k - 1)] =
            MatrixXcd::Identity(strategy.dim_alice(), strategy.dim_alice());
        povms.push_back(std::move(trivial));
    }
    std::vector<MatrixXcd> observables = strategy.bob_observables();
    for (int y = strategy.bob_inputs(); y < np; ++y)
        observables.push_back(MatrixXcd::Identity(strategy.dim_bob(), strategy.dim_bob()));

    const std::vector<MatrixXcd> family = alice_operator_transform(povms, k, np);

    std::complex<double> pairing = 0.0;
    for (int row = 0; row < m_prime.rows; ++row)
        for (int y = 0; y < np; ++y) {
            if (m_prime.entries(row, y) == std::complex<double>(0.0, 0.0)) continue;
            pairing += m_prime.entries(row, y) *
                       strategy.pair_expectation(family[static_cast<std::size_t>(row)],
                                                 observables[static_cast<std::size_t>(y)]);
        }
    const double lhs = std::abs(pairing);

    const Correlation e = correlation_from_quantum(strategy);
    const double rhs = (k - 1) * std::abs(evaluate_functional(m, e));
    return equality_check(lhs, rhs, 1e-8 * std::max(1.0, rhs),
                          "|<M',gamma>| vs (K-1)|<M,E>| at K=" + std::to_string(k));
}

CheckOutcome appendix_b_classical_estimate_check(const BellFunctional& m, int samples,
                                                 std::uint64_t seed) {
    if (samples < 1) throw UsageError("appendix_b_classical_estimate_check: need samples >= 1");
    const int k = m.alice_outputs();
    if (k < 2) throw UsageError("appendix_b_classical_estimate_check: needs K >= 2");

    const double classical = solve::classical_bias_exact(m).value;
    const double scale = std::pow(static_cast<double>(k - 1), 1.5);
    const double bound = 24.0 * scale * classical;
    const double p_bound = 3.0 * scale;

    const ComplexBilinearForm m_prime = build_m_prime(m);
    const int np = m_prime.cols;

    double worst_value = 0.0;
    double worst_constancy = 0.0;
    double worst_p_sum = 0.0;
    bool all_passed = true;

    std::vector<std::complex<double>> r(static_cast<std::size_t>(np + 1) * (k - 1));
    std::vector<std::complex<double>> beta(static_cast<std::size_t>(np));

    for (int sample = 0; sample < samples; ++sample) {
        Philox rng(seed, static_cast<std::uint64_t>(sample));
        for (auto& v : r) {
            const double phi = 2.0 * M_PI * rng.next_double();
            v = {std::cos(phi), std::sin(phi)};
        }
        for (auto& v : beta) {
            const double phi = 2.0 * M_PI * rng.next_double();
            v = {std::cos(phi), std::sin(phi)};
        }

        std::complex<double> pairing = 0.0;
        for (int row = 0; row < m_prime.rows; ++row)
            for (int y = 0; y < np; ++y)
                pairing += m_prime.entries(row, y) * r[static_cast<std::size_t>(row)] *
                           beta[static_cast<std::size_t>(y)];
        const double value = std::abs(pairing);
        worst_value = std::max(worst_value, value);
        if (value > bound + 1e-8) all_passed = false;

        // Reconstruct P(a|x) and test its two quoted properties.
        std::complex<double> tail = 0.0;  // sum_s omega^s R(N+1,s)
        for (int s = 1; s <= k - 1; ++s)
            tail += omega_power(k - 1, s) * r[static_cast<std::size_t>(np) * (k - 1) + (s - 1)];
        for (int x = 0; x < np; ++x) {
            std::complex<double> total = 0.0;
            double abs_sum = 0.0;
            std::complex<double> head = 0.0;
            for (int a = 1; a <= k - 1; ++a) {
                std::complex<double> p = 0.0;
                for (int s = 1; s <= k - 1; ++s)
                    p += omega_power(k - 1, static_cast<long long>(a) * s) *
                         r[static_cast<std::size_t>(x) * (k - 1) + (s - 1)];
                total += p;
                head += p;
                abs_sum += std::abs(p);
            }
            const std::complex<double> p_last = tail - head;
            total += p_last;
            abs_sum += std::abs(p_last);

            worst_constancy = std::max(worst_constancy, std::abs(total - tail));
            worst_p_sum = std::max(worst_p_sum, abs_sum);
            if (std::abs(total - tail) > 1e-9 || abs_sum > p_bound + 1e-9) all_passed = false;
        }
    }

    CheckOutcome out = inequality_check(worst_value, bound, 1e-8,
                                        "max |<M',R(x)beta>| over " + std::to_string(samples) +
                                            " samples; P-constancy defect " +
                                            format_double(worst_constancy) + ", max sum|P| " +
                                            format_double(worst_p_sum) + " vs " +
                                            format_double(p_bound));
    out.passed = out.passed && all_passed;
    return out;
}

CheckOutcome parseval_claim_check(
    const std::vector<std::pair<std::uint64_t, std::vector<double>>>& e_values,
    const gf2::CosetTable& table) {
    const int n = table.n();
    const double claim_bound = std::pow(static_cast<double>(n), 1.5);

    double worst_sum = 0.0;
    double worst_identity = 0.0;
    bool all_passed = true;

    std::vector<double> q(static_cast<std::size_t>(n));
    for (const auto& [coset, values] : e_values) {
        if (coset >= table.coset_count())
            throw DimensionError("parseval_claim_check: coset index out of range");
        if (static_cast<int>(values.size()) != n)
            throw DimensionError("parseval_claim_check: expected n values per coset");
        for (double e : values)
            if (!(std::abs(e) <= 1.0))
                throw ValidationError("parseval_claim_check: |E| > 1: " + format_double(e));

        NeumaierSum e_sq;
        for (double e : values) e_sq.add(e * e);

        NeumaierSum abs_sum, sq_sum;
        for (int bt = 0; bt < n; ++bt) {
            double qv = 0.0;
            for (int kk = 0; kk < n; ++kk) {
                const double sign = __builtin_parityll(static_cast<std::uint64_t>(bt) &
                                                       static_cast<std::uint64_t>(kk))
                                        ? -1.0
                                        : 1.0;
                qv += sign * values[static_cast<std::size_t>(kk)];
            }
            q[static_cast<std::size_t>(bt)] = qv;
            abs_sum.add(std::abs(qv));
            sq_sum.add(qv * qv);
        }

        worst_sum = std::max(worst_sum, abs_sum.total());
        const double identity_defect = std::abs(sq_sum.total() - n * e_sq.total());
        worst_identity = std::max(worst_identity, identity_defect);
        if (abs_sum.total() > claim_bound + 1e-9 || identity_defect > 1e-9) all_passed = false;
    }

    CheckOutcome out = inequality_check(worst_sum, claim_bound, 1e-9,
                                        "max sum_b |Q| over " + std::to_string(e_values.size()) +
                                            " cosets; worst Parseval defect " +
                                            format_double(worst_identity));
    out.passed = out.passed && all_passed;
    return out;
}

CheckOutcome dimension_bound_probe(const BellFunctional& m, const QuantumStrategy& strategy,
                                   const GrothendieckConstants& constants, double classical_bound) {
    const Correlation e = correlation_from_quantum(strategy);
    const double lhs = std::abs(evaluate_functional(m, e));
    const double rhs = 6.0 * std::sqrt(constants.complex_upper) *
                       std::sqrt(static_cast<double>(strategy.dim_bob())) * classical_bound;
    return inequality_check(lhs, rhs, 1e-8 * std::max(1.0, rhs),
                            "|<M,E>| vs 6 sqrt(K_G^C) sqrt(d) B_C at d=" +
                                std::to_string(strategy.dim_bob()));
}

CheckOutcome dimension_bound_probe(const BellFunctional& m, const QuantumStrategy& strategy,
                                   const GrothendieckConstants& constants) {
    return dimension_bound_probe(m, strategy, constants, solve::classical_bias_exact(m).value);
}

BoundReport violation_report(double classical_bound, const std::string& classical_method,
                             double quantum_lower_bound, const std::string& quantum_method) {
    if (!(classical_bound > 0.0))
        throw UsageError("violation_report: ratio undefined for classical bound " +
                         format_double(classical_bound));
    BoundReport report;
    report.classical_bound = classical_bound;
    report.classical_method = classical_method;
    report.quantum_lower_bound = quantum_lower_bound;
    report.quantum_method = quantum_method;
    report.violation_ratio = quantum_lower_bound / classical_bound;
    report.certified = classical_method == "exact-enumeration";
    return report;
}

BoundReport violation_report(const solve::ClassicalSolution& classical, double quantum_lower_bound,
                             const std::string& quantum_method, std::string quantum_descriptor) {
    BoundReport report =
        violation_report(classical.value, classical.method, quantum_lower_bound, quantum_method);
    report.classical_certificate = classical.strategy;
    report.quantum_descriptor = std::move(quantum_descriptor);
    return report;
}

}  // namespace asymbell::bounds
