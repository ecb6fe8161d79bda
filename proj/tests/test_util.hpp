#pragma once

#include "frob/metaplectic.hpp"

#include <random>

namespace testutil {

using frob::Int;

// random element of SL2(Z) with |a|, |c| <= bound; c is a multiple of level
inline frob::Mat2 random_gamma0(std::mt19937_64& rng, Int level, Int bound) {
    std::uniform_int_distribution<Int> dist(-bound, bound);
    for (;;) {
        Int a = dist(rng), c = level * (dist(rng) / level);
        if (a == 0 || frob::gcd(a, c) != 1) continue;
        Int x, y;
        frob::ext_gcd(a, c, x, y);  // a x + c y = 1
        // d = x + t c, b = -y + t a keeps ad - bc = 1
        Int t = std::uniform_int_distribution<Int>(-3, 3)(rng);
        Int d = x + t * c, b = -y + t * a;
        frob::Mat2 m = frob::mat2(a, b, c, d);
        if (m.det() == 1) return m;
    }
}

inline frob::Mat2 random_sl2z(std::mt19937_64& rng, Int bound) { return random_gamma0(rng, 1, bound); }

inline frob::MetaElement random_meta(std::mt19937_64& rng, Int level, Int bound) {
    int eps = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
    return frob::MetaElement(random_gamma0(rng, level, bound), eps);
}

}  // namespace testutil
