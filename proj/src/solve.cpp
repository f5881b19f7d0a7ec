#include "asymbell/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asymbell/numeric.hpp"
#include "asymbell/parallel.hpp"
#include "asymbell/random_gen.hpp"

namespace asymbell::solve {

namespace {

std::int64_t checked_pow(std::int64_t base, int exp, std::int64_t limit, const char* what) {
    std::int64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > limit / base)
            throw ResourceError(std::string(what) + ": enumeration space exceeds the limit of " +
                                std::to_string(limit) + " maps");
        v *= base;
    }
    return v;
}

void decode_map(std::int64_t index, int outputs, std::vector<int>& map) {
    for (auto& a : map) {
        a = static_cast<int>(index % outputs);
        index /= outputs;
    }
}

struct BestIndex {
    double value = -std::numeric_limits<double>::infinity();
    std::int64_t index = -1;
};

// Reduce per-chunk winners in chunk order: strict improvement only, so the
// lowest map index wins ties regardless of worker count.
BestIndex reduce_best(const std::vector<BestIndex>& per_chunk) {
    BestIndex best;
    for (const auto& b : per_chunk)
        if (b.index >= 0 && b.value > best.value) best = b;
    return best;
}

}  // namespace

ClassicalSolution classical_value_exact(const Game& g, int workers) {
    const Game dense = g.densified();
    const int nx = dense.x_count(), ny = dense.y_count(), na = dense.a_count(),
              nb = dense.b_count();
    const std::int64_t total =
        checked_pow(na, nx, kEnumerationLimit, "classical_value_exact");

    auto map_value = [&](const std::vector<int>& amap) {
        NeumaierSum value;
        for (int y = 0; y < ny; ++y) {
            double best = -std::numeric_limits<double>::infinity();
            for (int b = 0; b < nb; ++b) {
                double s = 0.0;
                for (int x = 0; x < nx; ++x) s += dense.win_coeff(x, y, amap[x], b);
                if (s > best) best = s;
            }
            value.add(best);
        }
        return value.total();
    };

    std::vector<BestIndex> chunk_best(chunk_count(total, 4096));
    for_chunks(
        total, 4096,
        [&](std::size_t chunk, std::int64_t begin, std::int64_t end) {
            std::vector<int> amap(static_cast<std::size_t>(nx));
            BestIndex local;
            for (std::int64_t i = begin; i < end; ++i) {
                decode_map(i, na, amap);
                const double v = map_value(amap);
                if (v > local.value) local = {v, i};
            }
            chunk_best[chunk] = local;
        },
        workers);
    const BestIndex best = reduce_best(chunk_best);

    DeterministicStrategy strategy;
    strategy.alice.resize(static_cast<std::size_t>(nx));
    strategy.bob_mode = BobMode::Label;
    decode_map(best.index, na, strategy.alice);
    strategy.bob.resize(static_cast<std::size_t>(ny));
    for (int y = 0; y < ny; ++y) {
        double best_s = -std::numeric_limits<double>::infinity();
        int best_b = 0;
        for (int b = 0; b < nb; ++b) {
            double s = 0.0;
            for (int x = 0; x < nx; ++x) s += dense.win_coeff(x, y, strategy.alice[x], b);
            if (s > best_s) {
                best_s = s;
                best_b = b;
            }
        }
        strategy.bob[y] = best_b;
    }
    return ClassicalSolution{best.value, std::move(strategy), "exact-enumeration"};
}

ClassicalSolution classical_bias_exact(const BellFunctional& m, int workers) {
    const BellFunctional dense = m.densified();
    const int nx = dense.alice_inputs(), ny = dense.bob_inputs(), na = dense.alice_outputs();
    const std::int64_t total = checked_pow(na, nx, kEnumerationLimit, "classical_bias_exact");

    auto map_value = [&](const std::vector<int>& amap) {
        NeumaierSum value;
        for (int y = 0; y < ny; ++y) {
            double inner = 0.0;
            for (int x = 0; x < nx; ++x) inner += dense.coeff(x, y, amap[x]);
            value.add(std::abs(inner));
        }
        return value.total();
    };

    std::vector<BestIndex> chunk_best(chunk_count(total, 4096));
    for_chunks(
        total, 4096,
        [&](std::size_t chunk, std::int64_t begin, std::int64_t end) {
            std::vector<int> amap(static_cast<std::size_t>(nx));
            BestIndex local;
            for (std::int64_t i = begin; i < end; ++i) {
                decode_map(i, na, amap);
                const double v = map_value(amap);
                if (v > local.value) local = {v, i};
            }
            chunk_best[chunk] = local;
        },
        workers);
    const BestIndex best = reduce_best(chunk_best);

    DeterministicStrategy strategy;
    strategy.alice.resize(static_cast<std::size_t>(nx));
    strategy.bob_mode = BobMode::Sign;
    decode_map(best.index, na, strategy.alice);
    strategy.bob.resize(static_cast<std::size_t>(ny));
    for (int y = 0; y < ny; ++y) {
        double inner = 0.0;
        for (int x = 0; x < nx; ++x) inner += dense.coeff(x, y, strategy.alice[x]);
        strategy.bob[y] = inner >= 0.0 ? 1 : -1;
    }
    return ClassicalSolution{best.value, std::move(strategy), "exact-enumeration"};
}

ClassicalSolution classical_local_search(const BellFunctional& m, const SearchConfig& config) {
    config.check();
    const BellFunctional dense = m.densified();
    const int nx = dense.alice_inputs(), ny = dense.bob_inputs(), na = dense.alice_outputs();

    ClassicalSolution best;
    best.value = -std::numeric_limits<double>::infinity();
    best.method = "local-search";

    std::vector<int> amap(static_cast<std::size_t>(nx));
    std::vector<int> signs(static_cast<std::size_t>(ny));
    std::vector<double> inner(static_cast<std::size_t>(ny));

    for (int restart = 0; restart < config.restarts; ++restart) {
        Philox rng(config.seed, static_cast<std::uint64_t>(restart));
        for (auto& a : amap) a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(na)));

        for (int iter = 0; iter < config.iterations; ++iter) {
            for (int y = 0; y < ny; ++y) {
                double s = 0.0;
                for (int x = 0; x < nx; ++x) s += dense.coeff(x, y, amap[x]);
                inner[y] = s;
                signs[y] = s >= 0.0 ? 1 : -1;
            }
            bool changed = false;
            for (int x = 0; x < nx; ++x) {
                double best_s = -std::numeric_limits<double>::infinity();
                int best_a = amap[x];
                for (int a = 0; a < na; ++a) {
                    double s = 0.0;
                    for (int y = 0; y < ny; ++y) s += dense.coeff(x, y, a) * signs[y];
                    if (s > best_s) {
                        best_s = s;
                        best_a = a;
                    }
                }
                if (best_a != amap[x]) {
                    amap[x] = best_a;
                    changed = true;
                }
            }
            if (!changed) break;
        }

        NeumaierSum value;
        for (int y = 0; y < ny; ++y) {
            double s = 0.0;
            for (int x = 0; x < nx; ++x) s += dense.coeff(x, y, amap[x]);
            inner[y] = s;
            signs[y] = s >= 0.0 ? 1 : -1;
            value.add(std::abs(s));
        }
        if (value.total() > best.value) {
            best.value = value.total();
            best.strategy.alice = amap;
            best.strategy.bob = signs;
            best.strategy.bob_mode = BobMode::Sign;
        }
    }
    return best;
}

ClassicalSolution classical_local_search(const Game& g, const SearchConfig& config) {
    config.check();
    const Game dense = g.densified();
    const int nx = dense.x_count(), ny = dense.y_count(), na = dense.a_count(),
              nb = dense.b_count();

    ClassicalSolution best;
    best.value = -std::numeric_limits<double>::infinity();
    best.method = "local-search";

    std::vector<int> amap(static_cast<std::size_t>(nx));
    std::vector<int> bmap(static_cast<std::size_t>(ny));

    for (int restart = 0; restart < config.restarts; ++restart) {
        Philox rng(config.seed, static_cast<std::uint64_t>(restart));
        for (auto& a : amap) a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(na)));

        for (int iter = 0; iter < config.iterations; ++iter) {
            for (int y = 0; y < ny; ++y) {
                double best_s = -std::numeric_limits<double>::infinity();
                int best_b = 0;
                for (int b = 0; b < nb; ++b) {
                    double s = 0.0;
                    for (int x = 0; x < nx; ++x) s += dense.win_coeff(x, y, amap[x], b);
                    if (s > best_s) {
                        best_s = s;
                        best_b = b;
                    }
                }
                bmap[y] = best_b;
            }
            bool changed = false;
            for (int x = 0; x < nx; ++x) {
                double best_s = -std::numeric_limits<double>::infinity();
                int best_a = amap[x];
                for (int a = 0; a < na; ++a) {
                    double s = 0.0;
                    for (int y = 0; y < ny; ++y) s += dense.win_coeff(x, y, a, bmap[y]);
                    if (s > best_s) {
                        best_s = s;
                        best_a = a;
                    }
                }
                if (best_a != amap[x]) {
                    amap[x] = best_a;
                    changed = true;
                }
            }
            if (!changed) break;
        }

        NeumaierSum value;
        for (int y = 0; y < ny; ++y) {
            double best_s = -std::numeric_limits<double>::infinity();
            int best_b = 0;
            for (int b = 0; b < nb; ++b) {
                double s = 0.0;
                for (int x = 0; x < nx; ++x) s += dense.win_coeff(x, y, amap[x], b);
                if (s > best_s) {
                    best_s = s;
                    best_b = b;
                }
            }
            bmap[y] = best_b;
            value.add(best_s);
        }
        if (value.total() > best.value) {
            best.value = value.total();
            best.strategy.alice = amap;
            best.strategy.bob = bmap;
            best.strategy.bob_mode = BobMode::Label;
        }
    }
    return best;
}

namespace {

// In-place unnormalized Walsh-Hadamard transform; applying it twice scales by
// the length.
void wht_inplace(std::vector<double>& v) {
    const std::size_t size = v.size();
    for (std::size_t len = 1; len < size; len <<= 1)
        for (std::size_t i = 0; i < size; i += (len << 1))
            for (std::size_t j = i; j < i + len; ++j) {
                const double a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
}

}  // namespace

ClassicalSolution asym_kv_bias_search(const kv::AsymKvGame& game, const SearchConfig& config) {
    config.check();
    const int l = game.l();
    const int n = game.n();

    if (l >= 5) {
        // 2^n-point tables no longer fit; fall back to the canonical
        // representative strategy, whose bias has the validated closed form
        // (1-eta)^l: Alice answers the representative, Bob answers +1.
        double value = 1.0;
        for (int i = 0; i < l; ++i) value *= 1.0 - game.eta();
        ClassicalSolution out;
        out.value = value;
        out.method = "canonical-representative";
        out.strategy.bob_mode = BobMode::Sign;
        return out;
    }

    const auto& table = game.table();
    const std::size_t words = std::size_t{1} << n;
    const std::size_t cosets = static_cast<std::size_t>(table.coset_count());

    std::vector<double> noise(words);
    for (std::size_t w = 0; w < words; ++w)
        noise[w] = noise_weight(game.eta(), __builtin_popcountll(w), n);
    std::vector<double> noise_hat = noise;
    wht_inplace(noise_hat);

    const double inv_words = 1.0 / static_cast<double>(words);

    // label(coset, k) under the game's bijection, and its inverse.
    auto label_of = [&](std::size_t c, int k) { return game.relabeling().label(c, k); };

    std::vector<int> labels(cosets);
    std::vector<int> signs(cosets * static_cast<std::size_t>(n));
    std::vector<double> buf(words), gathered(static_cast<std::size_t>(n));

    // Bob best response; returns the bias and fills signs.
    auto bob_update = [&](const std::vector<int>& alice_labels) {
        std::fill(buf.begin(), buf.end(), 0.0);
        for (std::size_t c = 0; c < cosets; ++c)
            buf[table.element_bits(c, static_cast<std::uint64_t>(alice_labels[c]))] = 1.0;
        wht_inplace(buf);
        for (std::size_t w = 0; w < words; ++w) buf[w] *= noise_hat[w] * inv_words;
        wht_inplace(buf);  // buf[b] = sum_x P_eta(a(x) ^ b)
        NeumaierSum bias;
        for (std::size_t c = 0; c < cosets; ++c) {
            for (int bt = 0; bt < n; ++bt)
                gathered[static_cast<std::size_t>(label_of(c, bt))] =
                    buf[table.element_bits(c, static_cast<std::uint64_t>(bt))];
            wht_inplace(gathered);
            for (int k = 0; k < n; ++k) {
                const double s = gathered[static_cast<std::size_t>(k)] * inv_words;
                signs[c * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] =
                    s >= 0.0 ? 1 : -1;
                bias.add(std::abs(s));
            }
        }
        return bias.total();
    };

    // Alice best response to the current signs; returns true on any change.
    auto alice_update = [&](std::vector<int>& alice_labels) {
        for (std::size_t c = 0; c < cosets; ++c) {
            for (int k = 0; k < n; ++k)
                gathered[static_cast<std::size_t>(k)] = static_cast<double>(
                    signs[c * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)]);
            wht_inplace(gathered);  // gathered[lbl] = sum_k (-1)^<lbl,k> sigma(c,k)
            for (int bt = 0; bt < n; ++bt)
                buf[table.element_bits(c, static_cast<std::uint64_t>(bt))] =
                    gathered[static_cast<std::size_t>(label_of(c, bt))];
        }
        wht_inplace(buf);
        for (std::size_t w = 0; w < words; ++w) buf[w] *= noise_hat[w] * inv_words;
        wht_inplace(buf);  // buf[a] = sum_b P_eta(a ^ b) G(b)
        bool changed = false;
        for (std::size_t c = 0; c < cosets; ++c) {
            double best_v = -std::numeric_limits<double>::infinity();
            int best_bt = alice_labels[c];
            for (int bt = 0; bt < n; ++bt) {
                const double v = buf[table.element_bits(c, static_cast<std::uint64_t>(bt))];
                if (v > best_v) {
                    best_v = v;
                    best_bt = bt;
                }
            }
            if (best_bt != alice_labels[c]) {
                alice_labels[c] = best_bt;
                changed = true;
            }
        }
        return changed;
    };

    ClassicalSolution best;
    best.value = -std::numeric_limits<double>::infinity();
    best.method = "local-search-structured";

    for (int restart = 0; restart < config.restarts; ++restart) {
        if (restart == 0) {
            std::fill(labels.begin(), labels.end(), 0);  // canonical representative start
        } else {
            Philox rng(config.seed, static_cast<std::uint64_t>(restart));
            for (auto& lab : labels)
                lab = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        }
        double value = bob_update(labels);
        for (int iter = 0; iter < config.iterations; ++iter) {
            if (!alice_update(labels)) break;
            value = bob_update(labels);
        }
        if (value > best.value) {
            best.value = value;
            best.strategy.alice = labels;
            best.strategy.bob = signs;
            best.strategy.bob_mode = BobMode::Sign;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// See-saw
// ---------------------------------------------------------------------------

namespace {

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// sum sgn(lambda_i) v_i v_i^dagger with sgn(0) = +1.
MatrixXcd hermitian_sign(const MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
    MatrixXcd out = MatrixXcd::Zero(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        const double s = solver.eigenvalues()(i) >= 0.0 ? 1.0 : -1.0;
        out += s * solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
    }
    return out;
}

MatrixXcd nonnegative_eigenspace_projector(const MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
    MatrixXcd out = MatrixXcd::Zero(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        if (solver.eigenvalues()(i) >= 0.0)
            out += solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
    return out;
}

// Greedy eigenvector assignment: pool the eigenvectors of every effective
// operator, repeatedly pick the (vector, output) pair with the best score in
// the orthocomplement of what is already chosen, and return the projective
// POVM it spans. Heuristic; the caller keeps the old POVM when this does not
// improve the objective.
std::vector<MatrixXcd> greedy_assignment_povm(const std::vector<MatrixXcd>& effective) {
    const Eigen::Index dim = effective[0].rows();
    const int outputs = static_cast<int>(effective.size());

    std::vector<VectorXcd> candidates;
    candidates.reserve(static_cast<std::size_t>(outputs) * dim + dim);
    for (const auto& h : effective) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
        for (Eigen::Index i = 0; i < dim; ++i) candidates.push_back(solver.eigenvectors().col(i));
    }
    for (Eigen::Index i = 0; i < dim; ++i) candidates.push_back(MatrixXcd::Identity(dim, dim).col(i));

    std::vector<std::pair<VectorXcd, int>> chosen;
    chosen.reserve(static_cast<std::size_t>(dim));
    while (static_cast<Eigen::Index>(chosen.size()) < dim) {
        double best_score = -std::numeric_limits<double>::infinity();
        VectorXcd best_vec;
        int best_out = -1;
        for (const auto& cand : candidates) {
            VectorXcd v = cand;
            for (const auto& [u, out] : chosen) v -= u * (u.adjoint() * v)(0);
            const double norm = v.norm();
            // Tiny residuals are near-duplicates of chosen directions;
            // normalizing them amplifies the orthogonalization error, so
            // skip them and re-orthogonalize the survivors once more.
            if (norm < 1e-6) continue;
            v /= norm;
            for (const auto& [u, out] : chosen) v -= u * (u.adjoint() * v)(0);
            v.normalize();
            for (int a = 0; a < outputs; ++a) {
                const double score = (v.adjoint() * effective[a] * v)(0).real();
                if (score > best_score) {
                    best_score = score;
                    best_vec = v;
                    best_out = a;
                }
            }
        }
        if (best_out < 0) break;  // candidates exhausted; should not happen with the identity pool
        chosen.emplace_back(best_vec, best_out);
    }

    std::vector<MatrixXcd> povm(static_cast<std::size_t>(outputs), MatrixXcd::Zero(dim, dim));
    for (const auto& [v, a] : chosen) povm[static_cast<std::size_t>(a)] += v * v.adjoint();
    return povm;
}

void check_dims(int dim_alice, int dim_bob) {
    if (dim_alice < 1 || dim_bob < 1)
        throw UsageError("see_saw_lower_bound: dimensions must be positive");
    // The state update eigensolves a (dimA*dimB)^2 operator.
    if (static_cast<std::int64_t>(dim_alice) * dim_bob > 4096)
        throw ResourceError("see_saw_lower_bound: dimA*dimB exceeds the supported limit of 4096");
}

MatrixXcd reshape_to_matrix(const VectorXcd& psi, int dim_alice, int dim_bob) {
    MatrixXcd m(dim_alice, dim_bob);
    for (int i = 0; i < dim_alice; ++i)
        for (int j = 0; j < dim_bob; ++j) m(i, j) = psi(static_cast<Eigen::Index>(i) * dim_bob + j);
    return m;
}

VectorXcd flatten_state(const MatrixXcd& psi) {
    VectorXcd v(psi.rows() * psi.cols());
    for (Eigen::Index i = 0; i < psi.rows(); ++i)
        for (Eigen::Index j = 0; j < psi.cols(); ++j) v(i * psi.cols() + j) = psi(i, j);
    return v;
}

}  // namespace

SeeSawResult see_saw_lower_bound(const BellFunctional& m, int dim_alice, int dim_bob,
                                 const SearchConfig& config, const QuantumStrategy* initial) {
    config.check();
    check_dims(dim_alice, dim_bob);
    const int nx = m.alice_inputs(), ny = m.bob_inputs(), na = m.alice_outputs();

    if (initial) {
        initial->require_valid();
        if (initial->bob_side() != QuantumStrategy::BobSide::Observables)
            throw ModeError("see_saw_lower_bound: initial strategy must hold Bob observables");
        if (initial->alice_inputs() != nx || initial->bob_inputs() != ny ||
            initial->alice_outputs() != na || initial->dim_alice() != dim_alice ||
            initial->dim_bob() != dim_bob)
            throw DimensionError("see_saw_lower_bound: initial strategy shape mismatch");
    }

    struct Candidate {
        double raw = 0.0;
        MatrixXcd psi;
        std::vector<std::vector<MatrixXcd>> alice;
        std::vector<MatrixXcd> bob;
    };

    // Exact objective for the current iterate.
    auto evaluate = [&](const Candidate& c) {
        NeumaierSum total;
        for (int y = 0; y < ny; ++y) {
            MatrixXcd eff = MatrixXcd::Zero(dim_alice, dim_alice);
            for (int x = 0; x < nx; ++x)
                for (int a = 0; a < na; ++a) eff += m.coeff(x, y, a) * c.alice[x][a];
            const MatrixXcd d = c.psi.adjoint() * eff * c.psi;
            total.add((d.array() * c.bob[y].array()).sum().real());
        }
        return total.total();
    };

    Candidate best;
    best.raw = -std::numeric_limits<double>::infinity();

    auto consider = [&](const Candidate& c) {
        if (c.raw > best.raw) best = c;
    };

    double initial_value = -std::numeric_limits<double>::infinity();
    if (initial) {
        // Evaluate the supplied strategy exactly (mixtures included) so the
        // returned bound can never fall below it.
        const Correlation e = correlation_from_quantum(*initial);
        initial_value = evaluate_functional(m, e);
    }

    const int total_restarts = config.restarts + (initial ? 1 : 0);
    for (int restart = 0; restart < total_restarts; ++restart) {
        Candidate cur;
        if (initial && restart == 0) {
            // Seed from the dominant pure component; flip Bob's observables if
            // the raw pairing is negative so the ascent starts at +|value|.
            const auto& comp = *std::max_element(
                initial->components().begin(), initial->components().end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
            cur.psi = comp.second / comp.second.norm();
            cur.alice = initial->alice_povms();
            cur.bob = initial->bob_observables();
            if (initial_value < 0.0)
                for (auto& b : cur.bob) b = -b;
        } else {
            Philox rng(config.seed, static_cast<std::uint64_t>(restart) + 1);
            cur.psi = reshape_to_matrix(random_unit_vector(dim_alice * dim_bob, rng), dim_alice,
                                        dim_bob);
            cur.alice.resize(static_cast<std::size_t>(nx));
            for (auto& povm : cur.alice) povm = random_projective_povm(dim_alice, na, rng);
            cur.bob.assign(static_cast<std::size_t>(ny), MatrixXcd::Identity(dim_bob, dim_bob));
        }

        double value = evaluate(cur);
        for (int iter = 0; iter < config.iterations; ++iter) {
            // Bob: exact sign update.
            for (int y = 0; y < ny; ++y) {
                MatrixXcd eff = MatrixXcd::Zero(dim_alice, dim_alice);
                for (int x = 0; x < nx; ++x)
                    for (int a = 0; a < na; ++a) eff += m.coeff(x, y, a) * cur.alice[x][a];
                const MatrixXcd d = cur.psi.adjoint() * eff * cur.psi;
                cur.bob[y] = hermitian_sign(d).conjugate();
            }
            // State: leading eigenvector of the full operator.
            MatrixXcd big = MatrixXcd::Zero(dim_alice * dim_bob, dim_alice * dim_bob);
            for (int y = 0; y < ny; ++y) {
                MatrixXcd eff = MatrixXcd::Zero(dim_alice, dim_alice);
                for (int x = 0; x < nx; ++x)
                    for (int a = 0; a < na; ++a) eff += m.coeff(x, y, a) * cur.alice[x][a];
                big += kron(eff, cur.bob[y]);
            }
            Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(big);
            cur.psi = reshape_to_matrix(solver.eigenvectors().col(dim_alice * dim_bob - 1),
                                        dim_alice, dim_bob);
            // Alice: greedy eigenvector assignment, guarded per input.
            std::vector<MatrixXcd> bob_lift(static_cast<std::size_t>(ny));
            for (int y = 0; y < ny; ++y) bob_lift[y] = cur.psi * cur.bob[y].transpose() * cur.psi.adjoint();
            for (int x = 0; x < nx; ++x) {
                std::vector<MatrixXcd> effective(static_cast<std::size_t>(na),
                                                 MatrixXcd::Zero(dim_alice, dim_alice));
                for (int a = 0; a < na; ++a)
                    for (int y = 0; y < ny; ++y) effective[a] += m.coeff(x, y, a) * bob_lift[y];
                const std::vector<MatrixXcd> candidate = greedy_assignment_povm(effective);
                double old_score = 0.0, new_score = 0.0;
                for (int a = 0; a < na; ++a) {
                    old_score += (cur.alice[x][a] * effective[a]).trace().real();
                    new_score += (candidate[a] * effective[a]).trace().real();
                }
                if (new_score > old_score + 1e-15) cur.alice[x] = candidate;
            }

            const double next = evaluate(cur);
            if (next <= value + 1e-13 && iter > 0) {
                value = std::max(value, next);
                break;
            }
            value = next;
        }
        cur.raw = value;
        consider(cur);
    }

    QuantumStrategy strategy = QuantumStrategy::with_observables(
        dim_alice, dim_bob, flatten_state(best.psi), best.alice, best.bob);
    strategy.require_valid();
    const double exact = evaluate_functional(m, correlation_from_quantum(strategy));

    SeeSawResult out{std::abs(exact), exact, std::move(strategy)};
    if (initial && out.value < std::abs(initial_value)) {
        // Keep the supplied strategy when the ascent could not improve on it.
        out = SeeSawResult{std::abs(initial_value), initial_value, *initial};
    }
    return out;
}

SeeSawResult see_saw_lower_bound(const Game& g, int dim_alice, int dim_bob,
                                 const SearchConfig& config, const QuantumStrategy* initial) {
    config.check();
    check_dims(dim_alice, dim_bob);
    const Game dense = g.densified();
    const int nx = dense.x_count(), ny = dense.y_count(), na = dense.a_count(),
              nb = dense.b_count();

    if (initial) {
        initial->require_valid();
        if (initial->bob_side() != QuantumStrategy::BobSide::Povms)
            throw ModeError("see_saw_lower_bound(game): initial strategy must hold Bob POVMs");
        if (initial->alice_inputs() != nx || initial->bob_inputs() != ny ||
            initial->alice_outputs() != na || initial->bob_outputs() != nb ||
            initial->dim_alice() != dim_alice || initial->dim_bob() != dim_bob)
            throw DimensionError("see_saw_lower_bound(game): initial strategy shape mismatch");
    }

    struct Candidate {
        double value = 0.0;
        MatrixXcd psi;
        std::vector<std::vector<MatrixXcd>> alice;
        std::vector<std::vector<MatrixXcd>> bob;
    };

    auto evaluate = [&](const Candidate& c) {
        NeumaierSum total;
        for (int y = 0; y < ny; ++y)
            for (int b = 0; b < nb; ++b) {
                MatrixXcd eff = MatrixXcd::Zero(dim_alice, dim_alice);
                for (int x = 0; x < nx; ++x)
                    for (int a = 0; a < na; ++a) eff += dense.win_coeff(x, y, a, b) * c.alice[x][a];
                const MatrixXcd d = c.psi.adjoint() * eff * c.psi;
                total.add((d.array() * c.bob[y][b].array()).sum().real());
            }
        return total.total();
    };

    Candidate best;
    best.value = -std::numeric_limits<double>::infinity();

    double initial_value = -std::numeric_limits<double>::infinity();
    if (initial) initial_value = game_value_of_distribution(dense, joint_from_quantum(*initial));

    const int total_restarts = config.restarts + (initial ? 1 : 0);
    for (int restart = 0; restart < total_restarts; ++restart) {
        Candidate cur;
        if (initial && restart == 0) {
            const auto& comp = *std::max_element(
                initial->components().begin(), initial->components().end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
            cur.psi = comp.second / comp.second.norm();
            cur.alice = initial->alice_povms();
            cur.bob = initial->bob_povms();
        } else {
            Philox rng(config.seed, static_cast<std::uint64_t>(restart) + 1);
            cur.psi = reshape_to_matrix(random_unit_vector(dim_alice * dim_bob, rng), dim_alice,
                                        dim_bob);
            cur.alice.resize(static_cast<std::size_t>(nx));
            for (auto& povm : cur.alice) povm = random_projective_povm(dim_alice, na, rng);
            cur.bob.resize(static_cast<std::size_t>(ny));
            for (auto& povm : cur.bob) povm = random_projective_povm(dim_bob, nb, rng);
        }

        double value = evaluate(cur);
        for (int iter = 0; iter < config.iterations; ++iter) {
            // Bob update: exact for binary outputs, guarded greedy otherwise.
            for (int y = 0; y < ny; ++y) {
                std::vector<MatrixXcd> eff(static_cast<std::size_t>(nb),
                                           MatrixXcd::Zero(dim_bob, dim_bob));
                for (int b = 0; b < nb; ++b) {
                    MatrixXcd alice_side = MatrixXcd::Zero(dim_alice, dim_alice);
                    for (int x = 0; x < nx; ++x)
                        for (int a = 0; a < na; ++a)
                            alice_side += dense.win_coeff(x, y, a, b) * cur.alice[x][a];
                    eff[b] = (cur.psi.adjoint() * alice_side * cur.psi).transpose();
                }
                if (nb == 2) {
                    const MatrixXcd p = nonnegative_eigenspace_projector(eff[0] - eff[1]);
                    cur.bob[y][0] = p;
                    cur.bob[y][1] = MatrixXcd::Identity(dim_bob, dim_bob) - p;
                } else {
                    const std::vector<MatrixXcd> candidate = greedy_assignment_povm(eff);
                    double old_score = 0.0, new_score = 0.0;
                    for (int b = 0; b < nb; ++b) {
                        old_score += (cur.bob[y][b] * eff[b]).trace().real();
                        new_score += (candidate[b] * eff[b]).trace().real();
                    }
                    if (new_score > old_score + 1e-15) cur.bob[y] = candidate;
                }
            }
            // State update.
            MatrixXcd big = MatrixXcd::Zero(dim_alice * dim_bob, dim_alice * dim_bob);
            for (int y = 0; y < ny; ++y)
                for (int b = 0; b < nb; ++b) {
                    MatrixXcd alice_side = MatrixXcd::Zero(dim_alice, dim_alice);
                    for (int x = 0; x < nx; ++x)
                        for (int a = 0; a < na; ++a)
                            alice_side += dense.win_coeff(x, y, a, b) * cur.alice[x][a];
                    big += kron(alice_side, cur.bob[y][b]);
                }
            Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(big);
            cur.psi = reshape_to_matrix(solver.eigenvectors().col(dim_alice * dim_bob - 1),
                                        dim_alice, dim_bob);
            // Alice update: guarded greedy.
            for (int x = 0; x < nx; ++x) {
                std::vector<MatrixXcd> effective(static_cast<std::size_t>(na),
                                                 MatrixXcd::Zero(dim_alice, dim_alice));
                for (int a = 0; a < na; ++a)
                    for (int y = 0; y < ny; ++y)
                        for (int b = 0; b < nb; ++b)
                            effective[a] += dense.win_coeff(x, y, a, b) *
                                            (cur.psi * cur.bob[y][b].transpose() * cur.psi.adjoint());
                const std::vector<MatrixXcd> candidate = greedy_assignment_povm(effective);
                double old_score = 0.0, new_score = 0.0;
                for (int a = 0; a < na; ++a) {
                    old_score += (cur.alice[x][a] * effective[a]).trace().real();
                    new_score += (candidate[a] * effective[a]).trace().real();
                }
                if (new_score > old_score + 1e-15) cur.alice[x] = candidate;
            }

            const double next = evaluate(cur);
            if (next <= value + 1e-13 && iter > 0) {
                value = std::max(value, next);
                break;
            }
            value = next;
        }
        cur.value = value;
        if (cur.value > best.value) best = cur;
    }

    QuantumStrategy strategy = QuantumStrategy::with_povms(dim_alice, dim_bob,
                                                           flatten_state(best.psi), best.alice,
                                                           best.bob);
    strategy.require_valid();
    const double exact = game_value_of_distribution(dense, joint_from_quantum(strategy));

    SeeSawResult out{exact, exact, std::move(strategy)};
    if (initial && out.value < initial_value) out = SeeSawResult{initial_value, initial_value, *initial};
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo referee simulation
// ---------------------------------------------------------------------------

EstimateReport monte_carlo_estimate(const Game& g, const PlayableStrategy& strategy,
                                    std::int64_t samples, std::uint64_t seed, EstimateKind kind,
                                    int workers) {
    if (samples < 1) throw UsageError("monte_carlo_estimate: need at least one sample");
    const Game dense = g.densified();
    const int nx = dense.x_count(), ny = dense.y_count(), na = dense.a_count(),
              nb = dense.b_count();

    // Question CDF.
    std::vector<double> question_cdf(static_cast<std::size_t>(nx) * ny);
    {
        NeumaierSum acc;
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y) {
                acc.add(dense.question_prob(x, y));
                question_cdf[static_cast<std::size_t>(x) * ny + y] = acc.total();
            }
        if (std::abs(acc.total() - 1.0) > 1e-6)
            throw ValidationError("monte_carlo_estimate: question distribution sums to " +
                                  std::to_string(acc.total()));
    }

    // Outcome CDFs per question.
    const bool deterministic = std::holds_alternative<DeterministicStrategy>(strategy);
    std::vector<double> outcome_cdf;
    std::vector<int> det_a, det_b;
    if (deterministic) {
        const auto& det = std::get<DeterministicStrategy>(strategy);
        if (static_cast<int>(det.alice.size()) != nx || static_cast<int>(det.bob.size()) != ny)
            throw DimensionError("monte_carlo_estimate: deterministic strategy shape mismatch");
        det_a = det.alice;
        det_b.resize(static_cast<std::size_t>(ny));
        for (int y = 0; y < ny; ++y) {
            int label = det.bob[y];
            if (det.bob_mode == BobMode::Sign) {
                if (nb != 2) throw ModeError("monte_carlo_estimate: sign-mode Bob needs binary game");
                label = det.bob[y] == 1 ? 0 : 1;
            }
            if (label < 0 || label >= nb)
                throw DimensionError("monte_carlo_estimate: Bob label out of range");
            det_b[y] = label;
        }
    } else {
        const auto& qs = std::get<QuantumStrategy>(strategy);
        const JointDistribution joint = joint_from_quantum(qs);
        if (joint.alice_inputs != nx || joint.bob_inputs != ny || joint.alice_outputs != na ||
            joint.bob_outputs != nb)
            throw DimensionError("monte_carlo_estimate: quantum strategy shape mismatch");
        outcome_cdf.resize(static_cast<std::size_t>(nx) * ny * na * nb);
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y) {
                NeumaierSum acc;
                for (int a = 0; a < na; ++a)
                    for (int b = 0; b < nb; ++b) {
                        acc.add(joint.at(x, y, a, b));
                        outcome_cdf[((static_cast<std::size_t>(x) * ny + y) * na + a) * nb + b] =
                            acc.total();
                    }
            }
    }

    const std::int64_t chunk_size = 65536;
    std::vector<std::int64_t> wins_per_chunk(chunk_count(samples, chunk_size), 0);

    for_chunks(
        samples, chunk_size,
        [&](std::size_t chunk, std::int64_t begin, std::int64_t end) {
            std::int64_t wins = 0;
            for (std::int64_t i = begin; i < end; ++i) {
                Philox rng(seed, static_cast<std::uint64_t>(i));
                // Question.
                const double uq = rng.next_double();
                const auto qit = std::upper_bound(question_cdf.begin(), question_cdf.end(), uq);
                const std::size_t q = std::min<std::size_t>(
                    static_cast<std::size_t>(qit - question_cdf.begin()), question_cdf.size() - 1);
                const int x = static_cast<int>(q / ny), y = static_cast<int>(q % ny);
                // Outcome.
                int a, b;
                if (deterministic) {
                    a = det_a[x];
                    b = det_b[y];
                } else {
                    const double uo = rng.next_double();
                    const auto base = outcome_cdf.begin() +
                                      static_cast<std::ptrdiff_t>((static_cast<std::size_t>(x) * ny + y) *
                                                                  na * nb);
                    const auto oit = std::upper_bound(base, base + na * nb, uo * *(base + na * nb - 1));
                    const std::size_t o = std::min<std::size_t>(
                        static_cast<std::size_t>(oit - base), static_cast<std::size_t>(na * nb - 1));
                    a = static_cast<int>(o / nb);
                    b = static_cast<int>(o % nb);
                }
                // Win indicator from the conditional win probability.
                const double pi = dense.question_prob(x, y);
                const double cond = pi > 0.0 ? dense.win_coeff(x, y, a, b) / pi : 0.0;
                if (cond >= 1.0 || rng.next_double() < cond) ++wins;
            }
            wins_per_chunk[chunk] = wins;
        },
        workers);

    std::int64_t wins = 0;
    for (std::int64_t w : wins_per_chunk) wins += w;

    EstimateReport report;
    report.samples = samples;
    report.seed = seed;
    const double mean_win = static_cast<double>(wins) / static_cast<double>(samples);
    if (kind == EstimateKind::WinProbability) {
        report.estimate = mean_win;
        if (samples > 1) {
            const double var = static_cast<double>(wins) *
                               (static_cast<double>(samples - wins)) /
                               (static_cast<double>(samples) * static_cast<double>(samples - 1));
            report.std_error = std::sqrt(var / static_cast<double>(samples));
        }
    } else {
        report.estimate = 2.0 * mean_win - 1.0;
        if (samples > 1) {
            const double var = static_cast<double>(samples) *
                               (1.0 - report.estimate * report.estimate) /
                               static_cast<double>(samples - 1);
            report.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Grothendieck vector-model ascent
// ---------------------------------------------------------------------------

GrothendieckResult grothendieck_ascent(const MatrixXcd& m, int dim, const SearchConfig& config) {
    config.check();
    if (dim < 1) throw UsageError("grothendieck_ascent: dim must be >= 1");
    const Eigen::Index rows = m.rows(), cols = m.cols();
    if (rows < 1 || cols < 1) throw DimensionError("grothendieck_ascent: empty matrix");

    GrothendieckResult best;
    best.value = -std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < config.restarts; ++restart) {
        Philox rng(config.seed, static_cast<std::uint64_t>(restart));
        std::vector<VectorXcd> left(static_cast<std::size_t>(rows));
        std::vector<VectorXcd> right(static_cast<std::size_t>(cols));
        for (auto& u : left) u = random_unit_vector(dim, rng);
        for (auto& v : right) v = random_unit_vector(dim, rng);

        double value = 0.0;
        for (int iter = 0; iter < config.iterations; ++iter) {
            // v_y = normalized sum_x conj(M_{x,y}) u_x; exact half-step.
            for (Eigen::Index y = 0; y < cols; ++y) {
                VectorXcd w = VectorXcd::Zero(dim);
                for (Eigen::Index x = 0; x < rows; ++x) w += std::conj(m(x, y)) * left[x];
                const double norm = w.norm();
                if (norm > 1e-300) right[y] = w / norm;
            }
            // u_x = normalized sum_y M_{x,y} v_y.
            for (Eigen::Index x = 0; x < rows; ++x) {
                VectorXcd t = VectorXcd::Zero(dim);
                for (Eigen::Index y = 0; y < cols; ++y) t += m(x, y) * right[y];
                const double norm = t.norm();
                if (norm > 1e-300) left[x] = t / norm;
            }
            // Objective after the u-step: sum_y ||sum_x conj(M) u_x||.
            NeumaierSum obj;
            for (Eigen::Index y = 0; y < cols; ++y) {
                VectorXcd w = VectorXcd::Zero(dim);
                for (Eigen::Index x = 0; x < rows; ++x) w += std::conj(m(x, y)) * left[x];
                obj.add(w.norm());
            }
            const double next = obj.total();
            if (next <= value * (1.0 + 1e-13) && iter > 0) {
                value = std::max(value, next);
                break;
            }
            value = next;
        }
        if (value > best.value) {
            best.value = value;
            best.left = left;
            best.right = right;
        }
    }
    return best;
}

}  // namespace asymbell::solve
