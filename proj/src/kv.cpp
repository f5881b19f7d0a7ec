#include "asymbell/kv.hpp"

#include <cmath>
#include <limits>

#include "asymbell/numeric.hpp"

namespace asymbell::kv {

namespace {

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 0.5))
        throw UsageError("eta must lie in [0, 1/2], got " + format_double(eta));
}

double pow2n(int n) { return std::ldexp(1.0, n); }  // 2^n exactly

}  // namespace

EtaDefault eta_default(int n, EtaLogBase base) {
    if (n < 2) throw UsageError("eta_default: n must be >= 2");
    const double log_n = base == EtaLogBase::Two ? std::log2(static_cast<double>(n))
                                                 : std::log(static_cast<double>(n));
    const double eta = 0.5 - 1.0 / log_n;
    if (eta < 0.0)
        throw UsageError("eta_default: 1/2 - 1/log(n) = " + format_double(eta) +
                         " is negative at n = " + std::to_string(n) +
                         "; pass eta explicitly");
    return EtaDefault{eta, eta <= 0.0};
}

KvGame::KvGame(int l, double eta, std::shared_ptr<const CosetTable> table)
    : l_(l), n_(1 << l), eta_(eta), table_(std::move(table)) {
    check_eta(eta);
    if (table_->l() != l) throw DimensionError("KvGame: table does not match l");
}

double KvGame::coeff(std::uint64_t x, std::uint64_t y, int atilde, int btilde) const {
    const std::uint64_t wa = table_->element_bits(x, static_cast<std::uint64_t>(atilde));
    const std::uint64_t wb = table_->element_bits(y, static_cast<std::uint64_t>(btilde));
    return n_ / pow2n(n_) * noise_weight(eta_, __builtin_popcountll(wa ^ wb), n_);
}

double KvGame::question_prob(std::uint64_t x, std::uint64_t y) const {
    const std::uint64_t diff = table_->representative_bits(x) ^ table_->representative_bits(y);
    const std::uint64_t rep = table_->representative_bits(table_->locate_bits(diff).coset);
    NeumaierSum sum;
    for (int k = 0; k < n_; ++k)
        sum.add(noise_weight(eta_, __builtin_popcountll(rep ^ table_->codeword_bits(k)), n_));
    return n_ / pow2n(n_) * sum.total();
}

Game KvGame::as_game() const {
    if (l_ > 3)
        throw ResourceError("KvGame: dense Game view is limited to l <= 3 (requested l = " +
                            std::to_string(l_) + ")");
    const int cosets = static_cast<int>(coset_count());
    std::vector<double> pi, win;
    pi.reserve(static_cast<std::size_t>(cosets) * cosets);
    win.reserve(static_cast<std::size_t>(cosets) * cosets * n_ * n_);
    for (int x = 0; x < cosets; ++x)
        for (int y = 0; y < cosets; ++y) {
            pi.push_back(question_prob(x, y));
            for (int a = 0; a < n_; ++a)
                for (int b = 0; b < n_; ++b) win.push_back(coeff(x, y, a, b));
        }
    return Game::from_dense(cosets, cosets, n_, n_, std::move(pi), std::move(win), "kv");
}

AsymKvGame::AsymKvGame(int l, double eta, std::shared_ptr<const CosetTable> table,
                       Relabeling relabeling)
    : l_(l), n_(1 << l), eta_(eta), table_(std::move(table)), relabeling_(std::move(relabeling)) {
    check_eta(eta);
    if (table_->l() != l) throw DimensionError("AsymKvGame: table does not match l");
    if (!relabeling_.is_identity()) {
        if (relabeling_.perm.size() != table_->coset_count())
            throw DimensionError("AsymKvGame: relabeling must cover every coset");
        for (const auto& p : relabeling_.perm) {
            if (static_cast<int>(p.size()) != n_)
                throw DimensionError("AsymKvGame: relabeling rows must have n entries");
            std::vector<bool> seen(static_cast<std::size_t>(n_), false);
            for (int v : p) {
                if (v < 0 || v >= n_ || seen[static_cast<std::size_t>(v)])
                    throw ValidationError("AsymKvGame: relabeling row is not a bijection");
                seen[static_cast<std::size_t>(v)] = true;
            }
        }
    }
}

double AsymKvGame::coeff(std::uint64_t x, std::uint64_t ypair, int atilde) const {
    const std::uint64_t coset_y = ypair / static_cast<std::uint64_t>(n_);
    const int k = static_cast<int>(ypair % static_cast<std::uint64_t>(n_));
    const std::uint64_t wa = table_->element_bits(x, static_cast<std::uint64_t>(atilde));
    const std::uint64_t rep_y = table_->representative_bits(coset_y);
    // With b = a ^ z running over [y], the z-sum becomes a character sum over
    // the coset: (1/2^n) sum_b P_eta(a ^ b) (-1)^{<btilde, k>}.
    NeumaierSum sum;
    for (int bt = 0; bt < n_; ++bt) {
        const std::uint64_t wb = rep_y ^ table_->codeword_bits(bt);
        const int label = relabeling_.label(coset_y, bt);
        const double sign = __builtin_parityll(static_cast<std::uint64_t>(label) &
                                               static_cast<std::uint64_t>(k))
                                ? -1.0
                                : 1.0;
        sum.add(sign * noise_weight(eta_, __builtin_popcountll(wa ^ wb), n_));
    }
    return sum.total() / pow2n(n_);
}

BellFunctional AsymKvGame::functional() const {
    if (bob_input_count() > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw ResourceError("AsymKvGame: Bob input count exceeds int index range at l = " +
                            std::to_string(l_));
    AsymKvGame self = *this;
    return BellFunctional::from_oracle(
        static_cast<int>(alice_input_count()), static_cast<int>(bob_input_count()),
        alice_output_count(),
        [self](int x, int ypair, int a) {
            return self.coeff(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(ypair), a);
        },
        "asym-kv-bias");
}

BellFunctional AsymKvGame::dense_functional() const {
    if (l_ > 3)
        throw ResourceError("AsymKvGame: dense coefficients are limited to l <= 3 (requested l = " +
                            std::to_string(l_) + ")");
    return functional().densified();
}

Game AsymKvGame::as_game() const {
    const int cosets = static_cast<int>(table_->coset_count());
    const int ny = static_cast<int>(bob_input_count());
    auto self = *this;
    auto pi = [self](int x, int ypair) {
        const std::uint64_t coset_y = static_cast<std::uint64_t>(ypair) / self.n_;
        const std::uint64_t diff =
            self.table_->representative_bits(static_cast<std::uint64_t>(x)) ^
            self.table_->representative_bits(coset_y);
        const std::uint64_t rep = self.table_->representative_bits(self.table_->locate_bits(diff).coset);
        NeumaierSum sum;
        for (int k = 0; k < self.n_; ++k)
            sum.add(noise_weight(self.eta_, __builtin_popcountll(rep ^ self.table_->codeword_bits(k)),
                                 self.n_));
        return sum.total() / pow2n(self.n_);
    };
    auto win = [self](int x, int ypair, int a, int b) {
        const std::uint64_t coset_y = static_cast<std::uint64_t>(ypair) / self.n_;
        const int k = ypair % self.n_;
        const std::uint64_t wa =
            self.table_->element_bits(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(a));
        const std::uint64_t rep_y = self.table_->representative_bits(coset_y);
        const int want_sign = b == 0 ? 1 : -1;
        NeumaierSum sum;
        for (int bt = 0; bt < self.n_; ++bt) {
            const std::uint64_t wb = rep_y ^ self.table_->codeword_bits(bt);
            const int label = self.relabeling_.label(coset_y, bt);
            const int sign = __builtin_parityll(static_cast<std::uint64_t>(label) &
                                                static_cast<std::uint64_t>(k))
                                 ? -1
                                 : 1;
            if (sign == want_sign)
                sum.add(noise_weight(self.eta_, __builtin_popcountll(wa ^ wb), self.n_));
        }
        return sum.total() / pow2n(self.n_);
    };
    Game g = Game::from_oracle(cosets, ny, n_, 2, pi, win, "asym-kv");
    if (l_ <= 3) return g.densified();
    return g;
}

KvGame build_kv_game(int l, double eta) { return KvGame(l, eta, gf2::shared_coset_table(l)); }

AsymKvGame build_asym_kv(int l, double eta) {
    return AsymKvGame(l, eta, gf2::shared_coset_table(l));
}

AsymKvGame build_asym_kv(int l, double eta, Relabeling relabeling) {
    return AsymKvGame(l, eta, gf2::shared_coset_table(l), std::move(relabeling));
}

Eigen::VectorXd kv_strategy_vector(int n, std::uint64_t word) {
    Eigen::VectorXd u(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        u(i) = ((word >> (n - 1 - i)) & 1u) ? -scale : scale;
    return u;
}

std::vector<MatrixXcd> kv_coset_projectors(const CosetTable& table, std::uint64_t coset) {
    const int n = table.n();
    std::vector<MatrixXcd> povm;
    povm.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd u = kv_strategy_vector(n, table.element_bits(coset, k));
        povm.push_back((u * u.transpose()).cast<std::complex<double>>());
    }
    return povm;
}

QuantumStrategy kv_explicit_strategy(int l) {
    if (l < 1) throw DimensionError("kv_explicit_strategy: l must be >= 1");
    if (l > 3)
        throw ResourceError("kv_explicit_strategy: materializing every coset POVM is limited to "
                            "l <= 3 (requested l = " + std::to_string(l) +
                            "); use kv_coset_projectors per coset beyond");
    const auto table = gf2::shared_coset_table(l);
    const int n = table->n();
    const int cosets = static_cast<int>(table->coset_count());

    VectorXcd state = VectorXcd::Zero(static_cast<Eigen::Index>(n) * n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) state(static_cast<Eigen::Index>(i) * n + i) = amp;

    std::vector<std::vector<MatrixXcd>> povms;
    povms.reserve(static_cast<std::size_t>(cosets));
    for (int c = 0; c < cosets; ++c) povms.push_back(kv_coset_projectors(*table, c));

    return QuantumStrategy::with_povms(n, n, state, povms, povms);
}

std::vector<MatrixXcd> fourier_bob_transform(const std::vector<std::vector<MatrixXcd>>& bob_povms,
                                             const CosetTable& table, const Relabeling& relabeling) {
    const int n = table.n();
    if (bob_povms.size() != table.coset_count())
        throw DimensionError("fourier_bob_transform: need one POVM per coset");
    std::vector<MatrixXcd> observables;
    observables.reserve(bob_povms.size() * static_cast<std::size_t>(n));
    for (std::size_t coset = 0; coset < bob_povms.size(); ++coset) {
        const auto& povm = bob_povms[coset];
        if (static_cast<int>(povm.size()) != n)
            throw DimensionError("fourier_bob_transform: POVM must have n outputs");
        const Verdict verdict = validate_povm(povm);
        if (!verdict.ok())
            throw ValidationError("fourier_bob_transform: invalid POVM for coset " +
                                  std::to_string(coset) + ": " + verdict.summary());
        for (int k = 0; k < n; ++k) {
            MatrixXcd b = MatrixXcd::Zero(povm[0].rows(), povm[0].cols());
            for (int bt = 0; bt < n; ++bt) {
                const int label = relabeling.label(coset, bt);
                const double sign = __builtin_parityll(static_cast<std::uint64_t>(label) &
                                                       static_cast<std::uint64_t>(k))
                                        ? -1.0
                                        : 1.0;
                b += sign * povm[bt];
            }
            observables.push_back(std::move(b));
        }
    }
    return observables;
}

QuantumStrategy kv_transformed_strategy(int l, const Relabeling& relabeling) {
    const auto table = gf2::shared_coset_table(l);
    QuantumStrategy explicit_strategy = kv_explicit_strategy(l);
    std::vector<MatrixXcd> observables =
        fourier_bob_transform(explicit_strategy.bob_povms(), *table, relabeling);
    VectorXcd state = VectorXcd::Zero(static_cast<Eigen::Index>(table->n()) * table->n());
    const double amp = 1.0 / std::sqrt(static_cast<double>(table->n()));
    for (int i = 0; i < table->n(); ++i)
        state(static_cast<Eigen::Index>(i) * table->n() + i) = amp;
    return QuantumStrategy::with_observables(table->n(), table->n(), state,
                                             explicit_strategy.alice_povms(), std::move(observables));
}

double kv_explicit_value_closed_form(int l, double eta) {
    check_eta(eta);
    const double n = static_cast<double>(1 << l);
    const double mu = 1.0 - 2.0 * eta;
    return mu * mu * (1.0 - 1.0 / n) + 1.0 / n;
}

}  // namespace asymbell::kv
