#pragma once

// The representation rho_k on (f_{k,beta})_{beta in B_k}: generator matrices,
// word evaluation, the closed Gamma0(k) law (T_beta, p_beta), equivalence
// classes, quotient multipliers, the Gamma0^0(2,6) law for k = 3 and the link to
// the Weil representation on Gamma0(2).
//
// Orientation: f | g = rho_k(g) f with f a column indexed by B_k in increasing
// order, so row beta of rho_k(g) holds the coefficients of f_{k,beta} | g.

#include "frob/frobenius.hpp"
#include "frob/weilrep.hpp"

#include <map>
#include <utility>

namespace frob {

namespace detail {

inline std::size_t beta_pos(Int k, const Rational& beta) {
    require_beta(k, beta);
    Rational twice = 2 * beta;
    Int b2 = to_int(twice.get_num());
    if (b2 < 0 || b2 > k) throw precondition_error("beta is not in B_k");
    return static_cast<std::size_t>(b2 / 2);
}

struct Abcd {
    Int a, b, c, d;
};

inline Abcd entries(const Mat2& m) {
    require_sl2z(m);
    return {to_int(m.a().get_num()), to_int(m.b().get_num()), to_int(m.c().get_num()), to_int(m.d().get_num())};
}

inline Rational mu(Int k, const Rational& bp) { return (bp == 0 || 2 * bp == k) ? make_rat(1, 2) : Rational(1); }

}  // namespace detail

// diagonal of rho_k(T~^n)
inline std::vector<CycloNumber> rho_k_t_diagonal(Int k, Int n = 1) {
    std::vector<CycloNumber> d;
    for (const Rational& b : beta_index(k)) d.push_back(cyclo(Rational(n * (make_rat(k, 12) - b * b / (2 * k)))));
    return d;
}

inline CMatrix rho_k_s(Int k) {
    auto bs = beta_index(k);
    CMatrix s(bs.size());
    CycloNumber pre = cyclo(make_rat(2 * k + 1, 8)) * make_rat(2) / sqrt_cyclo(k);
    for (std::size_t i = 0; i < bs.size(); ++i)
        for (std::size_t j = 0; j < bs.size(); ++j) {
            const Rational& b = bs[i];
            const Rational& bp = bs[j];
            Rational theta = bp * (b + make_rat(k, 2)) / k;
            CycloNumber cosine = (cyclo(theta) + cyclo(Rational(-theta))) * make_rat(1, 2);
            s(i, j) = pre * cosine * ipow_i(to_int(Rational(2 * b).get_num())) * detail::mu(k, bp);
        }
    return s;
}

inline std::pair<CMatrix, CMatrix> rho_k_generators(Int k) {
    if (k < 1) throw precondition_error("k must be positive");
    return {CMatrix::diagonal(rho_k_t_diagonal(k)), rho_k_s(k)};
}

inline CMatrix rho_k_of(Int k, const MetaElement& g) {
    if (k < 1) throw precondition_error("k must be positive");
    STWord w = st_word(g);
    CMatrix s = rho_k_s(k);
    CMatrix r = CMatrix::identity(beta_index(k).size());
    for (Int i = 0; i < w.tail; ++i) r = s * r;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (it->gen == 'S') r = s * r;
        else r = r.scale_rows(rho_k_t_diagonal(k, it->power));
    }
    return r;
}

// the unique element of B_k in +-beta + kZ
inline Rational lambda_k(Int k, const Rational& beta) {
    if (k < 1) throw precondition_error("k must be positive");
    if (!beta_on_grid(k, beta)) throw precondition_error("invalid beta: beta must lie in k/2 + Z");
    Int t = mod(to_int(Rational(2 * beta).get_num()), 2 * k);
    return t <= k ? make_rat(t, 2) : Rational(k - make_rat(t, 2));
}

inline void require_gamma0(const Mat2& m, Int n, const char* what = "Gamma0(N)") {
    require_sl2z(m);
    if (mod(to_int(m.c().get_num()), n) != 0) throw precondition_error(std::string("matrix is not in ") + what);
}

inline Rational t_beta(Int k, const Rational& beta, const Mat2& m) {
    detail::beta_pos(k, beta);
    require_gamma0(m, k, "Gamma0(k)");
    auto [a, b, c, d] = detail::entries(m);
    (void)b;
    (void)d;
    Rational ab = make_rat(a) * beta;
    bool plain = (k % 2 == 0) ? (mod(c, 2 * k) == 0) : (mod(a, 2) != 0);
    return plain ? lambda_k(k, ab) : lambda_k(k, ab - make_rat(k, 2));
}

inline CycloNumber p_beta(Int k, const Rational& beta, const Mat2& m) {
    detail::beta_pos(k, beta);
    require_gamma0(m, k, "Gamma0(k)");
    auto [a, b, c, d] = detail::entries(m);
    if (c % 2 == 0) {
        Int ad = d < 0 ? -d : d;
        int kr = kronecker(sgn(d) * k * b, ad);
        Int ie = (d < 0 ? 1 : 0) * kronecker(c, -1);
        Rational ab = make_rat(a) * beta;
        Rational ex = Rational(BigInt(k) * (BigInt(2 * a) * c - BigInt(c) * d + BigInt(2 * b) * d - BigInt(2 * b) * d * c * c)) / 24 -
                      make_rat(b) * d * ab * ab / (2 * k);
        return cyclo(make_rat(ad - 1, 8)) * ipow_i(ie) * cyclo(ex) * make_rat(kr);
    }
    // odd c forces odd k; one reduction step lands on an even lower-left entry
    Int sc = sgn(c);
    if (a % 2 != 0) {
        Mat2 m1 = mat2(a, b, c - sc * k * a, d - sc * k * b);
        if (to_int(m1.c().get_num()) % 2 != 0) throw verification_error("p_beta: reduction did not reach even c");
        return cyclo(make_rat(sc * k * k, 24)) * p_beta(k, beta, m1);
    }
    Int a1 = a + c, b1 = b + d, c1 = -sc * k * a + (1 - sc * k) * c, d1 = -sc * k * b + (1 - sc * k) * d;
    if (c1 % 2 != 0) throw verification_error("p_beta: reduction did not reach even c");
    Rational ex = -make_rat(k, 12) + beta * beta / (2 * k) + make_rat(sc * k * k, 24);
    return cyclo(ex) * p_beta(k, beta, mat2(a1, b1, c1, d1));
}

// generalized permutation matrix from (t_beta, p_beta)
inline CMatrix rho_k_closed(Int k, const Mat2& m) {
    auto bs = beta_index(k);
    CMatrix r(bs.size());
    for (std::size_t i = 0; i < bs.size(); ++i) r(i, detail::beta_pos(k, t_beta(k, bs[i], m))) = p_beta(k, bs[i], m);
    return r;
}

// classes of B_k under beta ~ beta' iff gcd(2 beta, k) = gcd(2 beta', k)
inline std::vector<std::vector<Rational>> equivalence_classes(Int k) {
    if (k < 1) throw precondition_error("k must be positive");
    std::map<Int, std::vector<Rational>> by;
    std::vector<Int> order;
    for (const Rational& b : beta_index(k)) {
        Int g = gcd(to_int(Rational(2 * b).get_num()), k);
        if (!by.count(g)) order.push_back(g);
        by[g].push_back(b);
    }
    std::vector<std::vector<Rational>> out;
    for (Int g : order) out.push_back(by[g]);
    return out;
}

// f_{k,beta}(tau)/f_{k,beta}(N tau) | gamma = factor * f_{k,beta'}(tau)/f_{k,beta'}(N tau)
struct PermAction {
    Rational beta;
    CycloNumber factor;
};

inline PermAction quotient_multiplier(Int k, const Rational& beta, Int n, const Mat2& m) {
    detail::beta_pos(k, beta);
    if (n < 1) throw precondition_error("N must be positive");
    if (k % 2 == 0 && n % 2 == 0) throw precondition_error("N must be odd when k is even");
    require_gamma0(m, n * lcm(2, k), "Gamma0(N lcm(2,k))");
    auto [a, b, c, d] = detail::entries(m);
    Int ad = d < 0 ? -d : d;
    Rational ab = make_rat(a) * beta;
    Rational inner = Rational(BigInt(2 * a - d) * c, n) - Rational(BigInt(2 * b) * d) * (1 + Rational(BigInt(c) * c, n));
    Rational ex = make_rat((n - 1) * k, 24) * inner + make_rat(n - 1) * b * d * ab * ab / (2 * k);
    return {t_beta(k, beta, m), cyclo(ex) * make_rat(kronecker(n, ad))};
}

// the N = p^2 specialization
inline CycloNumber quotient_multiplier_p2(Int k, const Rational& beta, Int p, const Mat2& m) {
    if (p < 5 || !is_prime(p)) throw precondition_error("p must be a prime >= 5");
    require_gamma0(m, p * p * lcm(2, k), "Gamma0(p^2 lcm(2,k))");
    auto [a, b, c, d] = detail::entries(m);
    (void)c;
    Rational tb = 2 * beta;
    return cyclo(Rational(tb * tb * (p * p - 1) * b * d * a * a / (8 * k)));
}

// f_{3,1/2} | (gamma T^s)~ = u f_{3,1/2} + v f_{3,3/2} for gamma in Gamma0^0(2,6)
inline std::pair<CycloNumber, CycloNumber> gamma026_action(const Mat2& m, Int s) {
    auto [a, b, c, d] = detail::entries(m);
    if (mod(c, 2) != 0 || mod(b, 6) != 0) throw precondition_error("matrix is not in Gamma0^0(2,6)");
    Int ad = d < 0 ? -d : d;
    Int ie = (d < 0 ? 1 : 0) * kronecker(c, -1);
    CycloNumber alpha = cyclo(make_rat(ad - 1, 8)) * ipow_i(ie) * cyclo(Rational(Rational(BigInt(2 * b + c) * d, 8) - make_rat(a * b, 24))) *
                        make_rat(kronecker(sgn(d) * 3 * b, ad));
    CycloNumber z = cyclo(make_rat(mod((c / 2) * mod(d, 3), 3), 3));
    CycloNumber u = alpha * cyclo(make_rat(5 * s, 24)) * (CycloNumber(2) + z) * make_rat(1, 3);
    CycloNumber v = alpha * cyclo(make_rat(-s, 8)) * (CycloNumber(1) - z) * make_rat(1, 3);
    return {u, v};
}

// entry (beta, beta') of rho_k on Gamma0(2) rebuilt from the conjugate Weil representation
inline CycloNumber rho_k_via_weil(Int k, const MetaElement& g, const Rational& beta, const Rational& bp, const CMatrix& weil) {
    require_gamma0(g.m, 2, "Gamma0(2)");
    auto [a, b, c, d] = detail::entries(g.m);
    (void)a;
    (void)b;
    DiscModule D(k);
    auto idx = [&](const Rational& num) { return static_cast<std::size_t>(D.index(num / k)); };
    std::size_t row = idx(beta);
    CycloNumber sum = weil(row, idx(bp)).conj() + weil(row, idx(-bp)).conj();
    CycloNumber pre = ipow_i(-k * (c / 2)) * chi_eta(g).pow(2 * k) * detail::mu(k, bp);
    if (k % 2 != 0) {
        sum += weil(row, idx(k + bp)).conj() + weil(row, idx(-(k + bp))).conj();
        Int e = c * (d - 1) / 4 + (c + d - 1) / 2;
        if (mod(e, 2) != 0) pre = -pre;
    }
    return pre * sum;
}

inline bool rho_weil_bridge_check(Int k, const MetaElement& g, const Rational& beta, const Rational& bp) {
    CMatrix weil = weil_rho(k, g);
    CMatrix rk = rho_k_of(k, g);
    return rk(detail::beta_pos(k, beta), detail::beta_pos(k, bp)) == rho_k_via_weil(k, g, beta, bp, weil);
}

// all entries at once
inline bool rho_weil_bridge_check(Int k, const MetaElement& g) {
    CMatrix weil = weil_rho(k, g);
    CMatrix rk = rho_k_of(k, g);
    auto bs = beta_index(k);
    for (std::size_t i = 0; i < bs.size(); ++i)
        for (std::size_t j = 0; j < bs.size(); ++j)
            if (rk(i, j) != rho_k_via_weil(k, g, bs[i], bs[j], weil)) return false;
    return true;
}

}  // namespace frob
