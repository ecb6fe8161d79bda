#pragma once

// Rank one discriminant modules D_k, the Gauss sums g_k(b,d;t) and G_k(d,x),
// and the Weil representation attached to L_k (Z for even k, 2Z for odd k).
//
// Square roots of integers are exact cyclotomic elements (sqrt_cyclo), so every
// matrix entry is a single CycloNumber.

#include "frob/cmatrix.hpp"
#include "frob/gauss.hpp"
#include "frob/metaplectic.hpp"

#include <set>

namespace frob {

// D_k = L#/L; element j stands for x = j/scale, taken mod order
struct DiscModule {
    Int k = 2;
    Int scale = 2;  // |k| for even k, 2|k| for odd k
    Int order = 2;  // |k| or 4|k|

    explicit DiscModule(Int kk) : k(kk) {
        if (k == 0) throw precondition_error("k must be nonzero");
        Int ak = k < 0 ? -k : k;
        scale = (k % 2 == 0) ? ak : 2 * ak;
        order = (k % 2 == 0) ? ak : 4 * ak;
    }

    Rational value(Int j) const { return make_rat(mod(j, order), scale); }
    // kx^2/2 mod 1
    Rational q(Int j) const { return frac(make_rat(k * mod(j, order) * mod(j, order), 2 * scale * scale)); }
    // kxy mod 1
    Rational b(Int i, Int j) const { return frac(make_rat(k * mod(i, order) * mod(j, order), scale * scale)); }

    // index of a rational point of L#; throws when off the grid
    Int index(const Rational& x) const {
        Rational s = x * scale;
        if (!is_integer(s)) throw precondition_error("point is not in the dual lattice");
        return mod(to_int(s.get_num()), order);
    }
};

// D_k[d], D_k[d]*, D_k[d]bullet as index sets
struct DSubsets {
    std::vector<Int> kernel, image, bullet;
};

inline DSubsets d_subsets(Int k, Int d) {
    DiscModule D(k);
    DSubsets r;
    std::set<Int> img;
    for (Int j = 0; j < D.order; ++j) {
        if (mod(d * j, D.order) == 0) r.kernel.push_back(j);
        img.insert(mod(d * j, D.order));
    }
    r.image.assign(img.begin(), img.end());
    for (Int y = 0; y < D.order; ++y) {
        bool ok = true;
        for (Int z : r.kernel)
            if (frac(Rational(d * D.q(z) + D.b(y, z))) != 0) {
                ok = false;
                break;
            }
        if (ok) r.bullet.push_back(y);
    }
    // bullet is a coset of the image
    if (r.bullet.size() != r.image.size()) throw verification_error("d_subsets: |bullet| != |image|");
    if (!r.bullet.empty()) {
        Int y0 = r.bullet.front();
        std::set<Int> bs(r.bullet.begin(), r.bullet.end());
        for (Int w : r.image)
            if (!bs.count(mod(y0 + w, D.order))) throw verification_error("d_subsets: bullet set is not a coset");
    }
    return r;
}

inline bool in_bullet(Int k, Int d, Int x) {
    DSubsets s = d_subsets(k, d);
    Int xo = mod(x, DiscModule(k).order);
    return std::binary_search(s.bullet.begin(), s.bullet.end(), xo);
}

// g_k(b,d;t) = |d|^-1/2 sum_{v in L/dL} e(bk(t+v)^2/(2d))
inline CycloNumber frak_g_brute(Int k, Int b, Int d, const Rational& t) {
    if (d == 0) throw precondition_error("frak_g: d must be nonzero");
    DiscModule D(k);
    D.index(t);
    Int ad = d < 0 ? -d : d;
    Int step = (k % 2 == 0) ? 1 : 2;
    CycloNumber s(0);
    for (Int j = 0; j < ad; ++j) {
        Rational u = t + make_rat(step * j);
        s += cyclo(Rational(make_rat(b * k) * u * u / (2 * d)));
    }
    return s / sqrt_cyclo(ad);
}

// closed form for gamma = (a b; c d) in SL2(Z) with k | bc (k even) or 4k | bc (k odd), t = beta/k
inline CycloNumber frak_g_closed(Int k, const Mat2& g, const Rational& beta) {
    require_sl2z(g);
    if (k < 1) throw precondition_error("frak_g closed form needs k >= 1");
    Int a = to_int(g.a().get_num()), b = to_int(g.b().get_num()), c = to_int(g.c().get_num()), d = to_int(g.d().get_num());
    if (d == 0) throw precondition_error("frak_g: d must be nonzero");
    if (k % 2 == 0) {
        if (!is_integer(beta)) throw precondition_error("frak_g: beta must be an integer for even k");
        if (mod(b * c, k) != 0) throw precondition_error("frak_g closed form needs k | bc");
    } else {
        if (is_integer(beta) || !is_integer(Rational(2 * beta))) throw precondition_error("frak_g: beta must be a half-integer for odd k");
        if (mod(b * c, 4 * k) != 0) throw precondition_error("frak_g closed form needs 4k | bc");
    }
    Int ad = d < 0 ? -d : d;
    int kr = kronecker(sgn(d) * k * b, ad);
    Rational ab = make_rat(a) * beta;
    return cyclo(make_rat(1 - ad, 8)) * cyclo(Rational(make_rat(b * d) * ab * ab / (2 * k))) * make_rat(kr);
}

// G_k(d,x) = (|D| |D[d]|)^-1/2 sum_y e(d k y^2/2 + k x y)
inline CycloNumber scr_g(Int k, Int d, Int x) {
    DiscModule D(k);
    Int kern = 0;
    for (Int j = 0; j < D.order; ++j)
        if (mod(d * j, D.order) == 0) ++kern;
    CycloNumber s(0);
    for (Int y = 0; y < D.order; ++y) s += cyclo(Rational(d * D.q(y) + D.b(x, y)));
    return s / sqrt_cyclo(D.order * kern);
}

// ---------------------------------------------------------------------------
// Weil representation; matrix entry (y, x) is the delta_y coefficient of rho(g) delta_x

inline std::vector<CycloNumber> weil_t_diagonal(Int k, Int n = 1) {
    DiscModule D(k);
    std::vector<CycloNumber> d;
    for (Int j = 0; j < D.order; ++j) d.push_back(cyclo(Rational(n * D.q(j))));
    return d;
}

inline CMatrix weil_s(Int k) {
    DiscModule D(k);
    // sqrt(-sgn(k) i) = e(-1/8) or e(1/8)
    CycloNumber pre = cyclo(make_rat(k > 0 ? -1 : 1, 8)) / sqrt_cyclo(D.order);
    CMatrix s(D.order);
    for (Int x = 0; x < D.order; ++x)
        for (Int y = 0; y < D.order; ++y) s(y, x) = pre * cyclo(Rational(-D.b(x, y)));
    return s;
}

inline CMatrix weil_t(Int k) { return CMatrix::diagonal(weil_t_diagonal(k)); }

inline CMatrix weil_rho(Int k, const MetaElement& g) {
    STWord w = st_word(g);
    DiscModule D(k);
    CMatrix s = weil_s(k);
    // evaluate right to left so T powers act as row scalings
    CMatrix r = CMatrix::identity(D.order);
    for (Int i = 0; i < w.tail; ++i) r = s * r;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (it->gen == 'S') r = s * r;
        else r = r.scale_rows(weil_t_diagonal(k, it->power));
    }
    return r;
}

// closed (y, x) coefficient; y, x are indices in D_k
inline CycloNumber weil_coeff_closed(Int k, const MetaElement& g, Int y, Int x) {
    require_sl2z(g.m);
    if (k < 1) throw precondition_error("weil_coeff_closed needs k >= 1");
    Int a = to_int(g.m.a().get_num()), b = to_int(g.m.b().get_num()), c = to_int(g.m.c().get_num()), d = to_int(g.m.d().get_num());
    if (d == 0) throw precondition_error("weil_coeff_closed needs d != 0");
    if (mod(b * c, k % 2 == 0 ? k : 4 * k) != 0) throw precondition_error("weil_coeff_closed needs k | bc (even k) or 4k | bc (odd k)");
    DiscModule D(k);
    if (!in_bullet(k, c, a * y - x)) return CycloNumber(0);
    Int kern = 0;
    for (Int j = 0; j < D.order; ++j)
        if (mod(c * j, D.order) == 0) ++kern;
    Int ex = (d < 0 ? 1 : 0) * kronecker(c, -1);
    CycloNumber r = ipow_i(-ex);
    r *= frak_g_brute(k, b, d, D.value(y));
    r *= sqrt_cyclo(kern) / sqrt_cyclo(D.order);
    r *= scr_g(k, -c * d, y - d * x);
    return r;
}

}  // namespace frob
