#pragma once

// Group side of the U operators: the permutation sigma_R of a residue system,
// the conjugation C_m^R, the matrices whose invariance lets U_m^R commute with a
// slash, and the (r, r_e) parameters of U_p'.

#include "frob/metaplectic.hpp"
#include "frob/vvtransform.hpp"

#include <set>

namespace frob {

struct RepSet {
    Int m = 1;
    std::vector<Int> R;

    RepSet() = default;
    RepSet(Int mm, std::vector<Int> rr) : m(mm), R(std::move(rr)) {
        if (m < 1) throw precondition_error("RepSet: modulus must be positive");
        if (static_cast<Int>(R.size()) != m) throw precondition_error("RepSet: need exactly m representatives");
        std::set<Int> res;
        for (Int x : R) res.insert(mod(x, m));
        if (static_cast<Int>(res.size()) != m) throw precondition_error("RepSet: not a complete residue system");
    }

    bool contains(Int x) const { return std::find(R.begin(), R.end(), x) != R.end(); }
    bool has_zero() const { return contains(0); }
    Int rep(Int residue) const {
        for (Int x : R)
            if (mod(x - residue, m) == 0) return x;
        throw verification_error("RepSet: residue not represented");
    }
};

// {0, step, 2 step, ..., (m-1) step}
inline RepSet multiples_rep_set(Int m, Int step) {
    if (gcd(step, m) != 1) throw precondition_error("step must be coprime to m");
    std::vector<Int> r;
    for (Int i = 0; i < m; ++i) r.push_back(i * step);
    return RepSet(m, r);
}

// the y in R with (a + cx) y = b + dx mod m
inline Int sigma_R(const Mat2& g, const RepSet& R, Int x) {
    require_gamma0(g, R.m, "Gamma0(m)");
    if (!R.contains(x)) throw precondition_error("x is not in R");
    auto [a, b, c, d] = detail::entries(g);
    Int u = mod(a + mod(c, R.m) * mod(x, R.m), R.m);
    Int v = mod(b + mod(d, R.m) * mod(x, R.m), R.m);
    if (R.m == 1) return R.R.front();
    return R.rep(mod(v * inv_mod(u, R.m), R.m));
}

// sigma_R on all of R, in the order of R; bijectivity checked
inline std::vector<Int> sigma_map(const Mat2& g, const RepSet& R) {
    std::vector<Int> out;
    std::set<Int> seen;
    for (Int x : R.R) {
        out.push_back(sigma_R(g, R, x));
        seen.insert(out.back());
    }
    if (seen.size() != R.R.size()) throw verification_error("sigma_R is not a bijection");
    return out;
}

inline Mat2 c_m_R(const Mat2& g, const RepSet& R) {
    if (!R.has_zero()) throw precondition_error("C_m^R needs 0 in R");
    Int s0 = sigma_R(g, R, 0);
    auto [a, b, c, d] = detail::entries(g);
    if (mod(b - a * s0, R.m) != 0) throw verification_error("C_m^R: upper right entry is not integral");
    Mat2 out = mat2(a, (b - a * s0) / R.m, R.m * c, d - c * s0);
    // same thing as diag(1, m) g (1 s0; 0 m)^-1
    if (out != mat2(1, 0, 0, R.m) * g * mat2(1, s0, 0, R.m).inverse()) throw verification_error("C_m^R: conjugation mismatch");
    return out;
}

inline bool in_gamma1_star(const Mat2& g, Int level) {
    if (!g.in_sl2z()) return false;
    auto [a, b, c, d] = detail::entries(g);
    return mod(a - 1, level) == 0 && mod(d - 1, level) == 0 && mod(c, level) == 0 && mod(b, 24) == 0;
}

namespace detail {

// (a1 b1; c1 d1)(x) of the commutation lemma
inline Mat2 commutation_matrix(const Mat2& g, const RepSet& R, Int x) {
    auto [a, b, c, d] = entries(g);
    (void)b;
    (void)d;
    Int sp = sigma_R(g, R, x) - sigma_R(g, R, 0);
    BigInt num = BigInt(x) - BigInt(a) * (a + c * x) * sp;
    if (num % R.m != 0) throw verification_error("commutation matrix: non-integral entry");
    Mat2 out(Rational(1 + BigInt(c) * (a + c * x) * sp), Rational(BigInt(num / R.m)), Rational(BigInt(R.m) * c * c * sp), Rational(1 - BigInt(a) * c * sp));
    if (!out.in_sl2z()) throw verification_error("commutation matrix is not in SL2(Z)");
    return out;
}

}  // namespace detail

struct HypothesisMatrices {
    std::vector<Mat2> A;  // one per x in R
    std::vector<Mat2> B;  // same, built from C_m^R gamma
    Mat2 C;
};

inline HypothesisMatrices hypothesis_matrices(const Mat2& g, const RepSet& R) {
    if (!R.has_zero()) throw precondition_error("hypothesis matrices need 0 in R");
    require_gamma0(g, R.m, "Gamma0(m)");
    HypothesisMatrices h;
    Mat2 cg = c_m_R(g, R);
    for (Int x : R.R) {
        h.A.push_back(detail::commutation_matrix(g, R, x));
        h.B.push_back(detail::commutation_matrix(cg, R, x));
    }
    auto [a, b, c, d] = detail::entries(g);
    Int m = R.m;
    BigInt s = BigInt(sigma_R(g, R, 0)) + BigInt(m) * sigma_R(cg, R, 0);
    BigInt m2 = BigInt(m) * m, m21 = m2 - 1;
    BigInt an = m21 * b * c + BigInt(a) * c * s, bn = m21 * a * b + BigInt(a) * a * s;
    if (an % m2 != 0 || bn % m2 != 0) throw verification_error("hypothesis matrix C: non-integral entry");
    h.C = Mat2(Rational(1 + BigInt(an / m2)), Rational(BigInt(-(bn / m2))), Rational(m21 * c * d + BigInt(c) * c * s),
               Rational(1 - m21 * b * c - BigInt(a) * c * s));
    if (!h.C.in_sl2z()) throw verification_error("hypothesis matrix C is not in SL2(Z)");
    // C~ gamma~ = (C_m^R)^2 gamma~ in the metaplectic group
    if (lift(h.C) * lift(g) != lift(c_m_R(cg, R))) throw verification_error("(C_m^R)^2 factorization failed");
    return h;
}

// lists for every support element of an algebra element, with the Gamma1*(24 l) check
inline std::vector<HypothesisMatrices> hypothesis_matrices(const AlgebraElement& M, const RepSet& R, bool check_level = true) {
    Int l = to_int(content(M));
    std::vector<HypothesisMatrices> out;
    for (const auto& [g, coef] : M.terms()) {
        (void)coef;
        out.push_back(hypothesis_matrices(g.m, R));
        if (check_level) {
            const auto& h = out.back();
            auto ok = [&](const Mat2& x) { return in_gamma1_star(x, 24 * l); };
            if (!std::all_of(h.A.begin(), h.A.end(), ok) || !std::all_of(h.B.begin(), h.B.end(), ok) || !ok(h.C))
                throw verification_error("hypothesis matrix outside Gamma1*(24l)");
        }
    }
    return out;
}

inline AlgebraElement c_m_R(const AlgebraElement& M, const RepSet& R) {
    AlgebraElement out;
    for (const auto& [g, coef] : M.terms()) out.add_term(coef, MetaElement(c_m_R(g.m, R), g.eps));
    return out;
}

struct UPrimeParams {
    Int r = 1;
    Int r_e = 2;
};

inline UPrimeParams u_p_prime_params(Int k, const Rational& beta, Int p) {
    if (p < 5 || !is_prime(p)) throw precondition_error("p must be a prime >= 5");
    detail::beta_pos(k, beta);
    Rational t = (2 * beta) * (2 * beta) * (p * p - 1) / 8;
    if (!is_integer(t)) throw verification_error("(2 beta)^2 (p^2-1)/8 is not an integer");
    Int g = gcd(k, to_int(t.get_num()));
    UPrimeParams out;
    out.r = k / g;
    out.r_e = lcm(2, out.r);
    return out;
}

}  // namespace frob
