#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "asymbell/functional.hpp"

namespace asymbell {

// Two-player game in coefficient form. win_coeff(x,y,a,b) is
// pi(x,y) * P(win | x,y,a,b); for plain predicate games the conditional win
// probability is the 0/1 predicate, for referee procedures with hidden
// randomness (the noise word z) it is the z-average consistent with the
// questions. The value of a joint distribution P is sum win_coeff * P.
class Game {
public:
    static constexpr std::int64_t kDenseLimit = 10'000'000;

    Game() = default;

    static Game from_dense(int x_count, int y_count, int a_count, int b_count,
                           std::vector<double> pi, std::vector<double> win_coeffs,
                           std::string tag = {});
    static Game from_oracle(int x_count, int y_count, int a_count, int b_count,
                            std::function<double(int, int)> pi,
                            std::function<double(int, int, int, int)> win_coeff,
                            std::string tag = {});

    int x_count() const { return x_count_; }
    int y_count() const { return y_count_; }
    int a_count() const { return a_count_; }
    int b_count() const { return b_count_; }
    const std::string& tag() const { return tag_; }
    bool is_dense() const { return !win_dense_.empty(); }

    double question_prob(int x, int y) const {
        if (!pi_dense_.empty()) return pi_dense_[static_cast<std::size_t>(x) * y_count_ + y];
        return pi_oracle_(x, y);
    }

    double win_coeff(int x, int y, int a, int b) const {
        if (!win_dense_.empty())
            return win_dense_[((static_cast<std::size_t>(x) * y_count_ + y) * a_count_ + a) *
                                  b_count_ +
                              b];
        return win_oracle_(x, y, a, b);
    }

    Game densified() const;

private:
    int x_count_ = 0, y_count_ = 0, a_count_ = 0, b_count_ = 0;
    std::vector<double> pi_dense_;
    std::vector<double> win_dense_;
    std::function<double(int, int)> pi_oracle_;
    std::function<double(int, int, int, int)> win_oracle_;
    std::string tag_;
};

// sum pi(x,y) V(a,b|x,y) P(a,b|x,y) for a fixed distribution P; deterministic
// summation order with compensated accumulation.
double game_value_of_distribution(const Game& g, const JointDistribution& p);

// For a binary-Bob game, the bias functional M^a_{x,y} = W(x,y,a,0) - W(x,y,a,1)
// (Bob label 0 plays +1, label 1 plays -1). Pairing it with a correlation
// gives P_win - P_lose.
BellFunctional bias_functional_of_binary_game(const Game& g);

}  // namespace asymbell
