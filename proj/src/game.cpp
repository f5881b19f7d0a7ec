#include "asymbell/game.hpp"

#include <cmath>

#include "asymbell/numeric.hpp"

namespace asymbell {

Game Game::from_dense(int x_count, int y_count, int a_count, int b_count, std::vector<double> pi,
                      std::vector<double> win_coeffs, std::string tag) {
    if (x_count < 1 || y_count < 1 || a_count < 1 || b_count < 1)
        throw DimensionError("Game: index ranges must be positive");
    const std::int64_t want =
        static_cast<std::int64_t>(x_count) * y_count * a_count * b_count;
    if (want > kDenseLimit)
        throw ResourceError("Game: dense storage of " + std::to_string(want) +
                            " entries exceeds the limit of " + std::to_string(kDenseLimit));
    if (static_cast<std::int64_t>(win_coeffs.size()) != want)
        throw DimensionError("Game: expected " + std::to_string(want) + " win coefficients");
    if (static_cast<std::int64_t>(pi.size()) != static_cast<std::int64_t>(x_count) * y_count)
        throw DimensionError("Game: question distribution has wrong size");
    for (double v : pi)
        if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("Game: invalid question probability");
    for (double v : win_coeffs)
        if (!std::isfinite(v) || v < 0.0) throw ValidationError("Game: invalid win coefficient");
    Game g;
    g.x_count_ = x_count;
    g.y_count_ = y_count;
    g.a_count_ = a_count;
    g.b_count_ = b_count;
    g.pi_dense_ = std::move(pi);
    g.win_dense_ = std::move(win_coeffs);
    g.tag_ = std::move(tag);
    return g;
}

Game Game::from_oracle(int x_count, int y_count, int a_count, int b_count,
                       std::function<double(int, int)> pi,
                       std::function<double(int, int, int, int)> win_coeff, std::string tag) {
    if (x_count < 1 || y_count < 1 || a_count < 1 || b_count < 1)
        throw DimensionError("Game: index ranges must be positive");
    Game g;
    g.x_count_ = x_count;
    g.y_count_ = y_count;
    g.a_count_ = a_count;
    g.b_count_ = b_count;
    g.pi_oracle_ = std::move(pi);
    g.win_oracle_ = std::move(win_coeff);
    g.tag_ = std::move(tag);
    return g;
}

Game Game::densified() const {
    if (is_dense()) return *this;
    const std::int64_t want =
        static_cast<std::int64_t>(x_count_) * y_count_ * a_count_ * b_count_;
    if (want > kDenseLimit)
        throw ResourceError("Game: " + std::to_string(want) + " entries exceed the dense limit");
    std::vector<double> pi, win;
    pi.reserve(static_cast<std::size_t>(x_count_) * y_count_);
    win.reserve(static_cast<std::size_t>(want));
    for (int x = 0; x < x_count_; ++x)
        for (int y = 0; y < y_count_; ++y) {
            pi.push_back(question_prob(x, y));
            for (int a = 0; a < a_count_; ++a)
                for (int b = 0; b < b_count_; ++b) win.push_back(win_coeff(x, y, a, b));
        }
    return from_dense(x_count_, y_count_, a_count_, b_count_, std::move(pi), std::move(win), tag_);
}

double game_value_of_distribution(const Game& g, const JointDistribution& p) {
    if (g.x_count() != p.alice_inputs || g.y_count() != p.bob_inputs ||
        g.a_count() != p.alice_outputs || g.b_count() != p.bob_outputs)
        throw DimensionError("game_value_of_distribution: shape mismatch");
    NeumaierSum sum;
    for (int x = 0; x < g.x_count(); ++x)
        for (int y = 0; y < g.y_count(); ++y)
            for (int a = 0; a < g.a_count(); ++a)
                for (int b = 0; b < g.b_count(); ++b)
                    sum.add(g.win_coeff(x, y, a, b) * p.at(x, y, a, b));
    const double v = sum.total();
    if (v < -1e-9 || v > 1.0 + 1e-9)
        throw NumericError("game_value_of_distribution: value " + std::to_string(v) +
                           " outside [0,1]");
    return v;
}

BellFunctional bias_functional_of_binary_game(const Game& g) {
    if (g.b_count() != 2)
        throw ModeError("bias_functional_of_binary_game: Bob must have exactly 2 outputs");
    const Game dense = g.densified();
    std::vector<double> coeffs;
    coeffs.reserve(static_cast<std::size_t>(g.x_count()) * g.y_count() * g.a_count());
    for (int x = 0; x < g.x_count(); ++x)
        for (int y = 0; y < g.y_count(); ++y)
            for (int a = 0; a < g.a_count(); ++a)
                coeffs.push_back(dense.win_coeff(x, y, a, 0) - dense.win_coeff(x, y, a, 1));
    return BellFunctional::from_dense(g.x_count(), g.y_count(), g.a_count(), std::move(coeffs),
                                      g.tag().empty() ? "bias" : g.tag() + "-bias");
}

}  // namespace asymbell
