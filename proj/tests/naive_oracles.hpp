#pragma once

// Brute-force oracles used only by tests. They enumerate both players' maps
// outright, with none of the best-response elimination the engines use, so
// they stay an independent reference.

#include <cmath>
#include <cstdint>
#include <vector>

#include "asymbell/functional.hpp"
#include "asymbell/game.hpp"

namespace testing_oracles {

inline void advance_odometer(std::vector<int>& digits, int base, bool& done) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < base) return;
        digits[i] = 0;
    }
    done = true;
}

// max over all (alice map, bob map) of sum_{x,y} W(x,y,a(x),b(y)).
inline double naive_game_value(const asymbell::Game& g) {
    const int nx = g.x_count(), ny = g.y_count(), na = g.a_count(), nb = g.b_count();
    double best = -1.0;
    std::vector<int> amap(static_cast<std::size_t>(nx), 0);
    bool a_done = false;
    while (!a_done) {
        std::vector<int> bmap(static_cast<std::size_t>(ny), 0);
        bool b_done = false;
        while (!b_done) {
            double v = 0.0;
            for (int x = 0; x < nx; ++x)
                for (int y = 0; y < ny; ++y) v += g.win_coeff(x, y, amap[x], bmap[y]);
            if (v > best) best = v;
            advance_odometer(bmap, nb, b_done);
        }
        advance_odometer(amap, na, a_done);
    }
    return best;
}

// max over all (alice map, sign vector) of |sum_{x,y} M^{a(x)}_{x,y} s_y|.
inline double naive_bias_value(const asymbell::BellFunctional& m) {
    const int nx = m.alice_inputs(), ny = m.bob_inputs(), na = m.alice_outputs();
    double best = 0.0;
    std::vector<int> amap(static_cast<std::size_t>(nx), 0);
    bool a_done = false;
    while (!a_done) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ny); ++mask) {
            double v = 0.0;
            for (int y = 0; y < ny; ++y) {
                const double s = (mask >> y) & 1u ? -1.0 : 1.0;
                for (int x = 0; x < nx; ++x) v += m.coeff(x, y, amap[x]) * s;
            }
            if (std::abs(v) > best) best = std::abs(v);
        }
        advance_odometer(amap, na, a_done);
    }
    return best;
}

}  // namespace testing_oracles
