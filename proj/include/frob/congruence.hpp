#pragma once

// Congruence machinery for k = 3, p = 5 and friends: the gamma finder,
// the Atkin-Lehner decomposition, the base eta quotients t, x, y, p0, p1, A, A3,
// the U-operator relations they satisfy, the L and K sequences with their
// t / p t basis decompositions, the companion functions pbar0 and pbar1, and
// direct scans of arithmetic progressions of cpsi coefficients.

#include "frob/frobenius.hpp"
#include "frob/heckeu.hpp"
#include "frob/qseries.hpp"
#include "frob/vvtransform.hpp"

#include <optional>
#include <string>

namespace frob {

// ---------------------------------------------------------------------------
// gamma search

struct GammaSearchSpec {
    Int p = 5;
    Int k = 3;
    Rational beta, beta2;
    Int r = 1;
    Int r_e = 2;
};

inline GammaSearchSpec gamma_search_spec(Int k, Int p, const Rational& beta, const Rational& beta2) {
    detail::beta_pos(k, beta);
    detail::beta_pos(k, beta2);
    if (p >= 5 && is_prime(p) && k % p == 0) throw precondition_error("p must not divide k");
    UPrimeParams up = u_p_prime_params(k, beta, p);
    GammaSearchSpec s;
    s.p = p;
    s.k = k;
    s.beta = beta;
    s.beta2 = beta2;
    s.r = up.r;
    s.r_e = up.r_e;
    return s;
}

inline Mat2 find_gamma(const GammaSearchSpec& s) {
    const Int k = s.k, p = s.p;
    if (p < 5 || !is_prime(p)) throw precondition_error("p must be a prime >= 5");
    if (k % p == 0) throw precondition_error("p must not divide k");
    Int B = to_int(Rational(2 * s.beta).get_num()), B2 = to_int(Rational(2 * s.beta2).get_num());
    detail::beta_pos(k, s.beta);
    detail::beta_pos(k, s.beta2);
    if (gcd(B, k) != gcd(B2, k)) throw precondition_error("no gamma exists: beta and beta' lie in different classes");
    if (s.r < 1 || mod(k, s.r) != 0) throw precondition_error("r must divide k");

    Int g = gcd(B, 2 * k);
    bool case_a = gcd(B2, 2 * k) == g;
    if (!case_a && (k % 2 != 0 || gcd(B2 + k, 2 * k) != g)) throw verification_error("find_gamma: neither case applies");
    Int target = case_a ? B2 : B2 + k;

    // smallest a > 0 prime to 2k with a B = target mod 2k
    Int a = 0;
    for (Int x = 1; x <= 2 * k; ++x)
        if (gcd(x, 2 * k) == 1 && mod(x * B - target, 2 * k) == 0) {
            a = x;
            break;
        }
    if (a == 0) throw verification_error("find_gamma: no admissible a");
    if (a % p == 0) a += 2 * k;

    Int c = 0;
    Int unit = case_a ? 2 * p * p * k : p * p * k;
    for (Int j = 1;; ++j) {
        if (!case_a && j % 2 == 0) continue;  // 2k must not divide c
        if (gcd(j * unit, a) == 1) {
            c = j * unit;
            break;
        }
    }

    // b = r b' with a | 1 + r b' c
    Int bp = a == 1 ? 0 : mod(-inv_mod(mod(s.r * c, a), a), a);
    Int b = s.r * bp;
    BigInt num = 1 + BigInt(b) * c;
    if (num % a != 0) throw verification_error("find_gamma: d is not integral");
    Int d = to_int(BigInt(num / a));
    Mat2 m = mat2(a, b, c, d);

    if (!m.in_sl2z()) throw verification_error("find_gamma: result is not in SL2(Z)");
    if (mod(c, p * p * k) != 0 || mod(b, s.r) != 0) throw verification_error("find_gamma: result is not in Gamma0^0(p^2 k, r)");
    if (t_beta(k, s.beta, m) != s.beta2) throw verification_error("find_gamma: T_beta check failed");
    if (quotient_multiplier_p2(k, s.beta, p, m) != CycloNumber(1)) throw verification_error("find_gamma: multiplier is not trivial");
    return m;
}

struct AtkinLehner {
    Mat2 gamma;  // (1 0; p^2 k 1)
    Mat2 U;      // (1 -1/2; 0 1)
    Mat2 W;      // 2 gamma = U W U
    Int Q = 4;
    Int N = 0;
};

inline AtkinLehner atkin_lehner_gamma(Int k, Int p) {
    if (mod(k, 4) != 2) throw precondition_error("k must be 2 mod 4");
    if (p < 5 || !is_prime(p)) throw precondition_error("p must be a prime >= 5");
    Int n = p * p * k;
    AtkinLehner al;
    al.gamma = mat2(1, 0, n, 1);
    al.U = Mat2(1, make_rat(-1, 2), 0, 1);
    al.W = mat2(2 + n, 2 + n / 2, 2 * n, n + 2);
    al.N = 2 * n;
    if (make_rat(2) * al.gamma != al.U * al.W * al.U) throw verification_error("Atkin-Lehner decomposition failed");
    if (al.W.det() != al.Q) throw verification_error("W must have determinant 4");
    auto [a, b, c, d] = std::array<Int, 4>{to_int(al.W.a().get_num()), to_int(al.W.b().get_num()), to_int(al.W.c().get_num()),
                                           to_int(al.W.d().get_num())};
    (void)b;
    if (mod(a, al.Q) != 0 || mod(d, al.Q) != 0 || mod(c, al.N) != 0) throw verification_error("W is not of the form (Qx y; Nz Qw)");
    if (gcd(al.Q, al.N / al.Q) != 1 || al.N % al.Q != 0) throw verification_error("Q does not exactly divide N");
    return al;
}

// ---------------------------------------------------------------------------
// base eta quotients, integer exponents, valid below q^order

namespace detail {

inline FracQSeries int_eta(const EtaQuotientSpec& spec, Int order) {
    Int off = 0;
    for (const auto& [m, r] : spec) off += m * r;
    if (mod(off, 24) != 0) throw precondition_error("int_eta: leading exponent is not an integer");
    FracQSeries f = eta_quotient(spec, 24 * order).truncate(order).compact();
    if (f.grid() != 1) throw verification_error("int_eta: did not land on the integer grid");
    return f;
}

// bare product prod (1 - q^{mn})^r below q^n
inline FracQSeries eta_product(const EtaQuotientSpec& spec, Int n) { return int_series(eta_product_coeffs(spec, n), 0, 1); }

inline BigInt pow5(unsigned e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 5, e);
    return r;
}

inline FracQSeries u5(const FracQSeries& f) { return u_operator(f, 5, 1); }

}  // namespace detail

struct BaseFunctions {
    Int order = 0;
    FracQSeries A, A3, t, tinv, x, y, p0, p1;

    // t^n for any integer n
    FracQSeries tpow(Int n) const { return n >= 0 ? t.pow(n) : tinv.pow(-n); }
};

inline FracQSeries a3_series(Int order) {
    if (order <= 0) throw precondition_error("order must be positive");
    FracQSeries num = cpsi3_closed(make_rat(3, 2), order);
    FracQSeries den = cpsi3_closed(make_rat(3, 2), order / 25 + 1).scale_q(25);
    return (num * den.inverse()).shift_q(3).truncate(order);
}

inline BaseFunctions base_functions(Int order, bool with_a3 = true) {
    if (order < 8) throw precondition_error("order too small for the base functions");
    BaseFunctions b;
    b.order = order;
    b.A = detail::int_eta({{25, 4}, {3, 3}, {75, -3}, {1, -4}}, order);
    b.t = detail::int_eta({{5, 6}, {1, -6}}, order);
    b.tinv = b.t.inverse();
    b.x = detail::int_eta({{15, 5}, {5, 1}, {3, -1}, {1, -5}}, order);
    b.y = detail::int_eta({{5, 2}, {1, 2}, {15, -2}, {3, -2}}, order);
    FracQSeries xy = b.x * b.y;
    b.p0 = xy * make_rat(6) + b.x * make_rat(27) + (b.y - FracQSeries::constant(3)) * b.t;
    b.p1 = xy * make_rat(12) + b.x * make_rat(81) + b.y + (b.y * make_rat(12) - FracQSeries::constant(9)) * b.t;
    if (with_a3) b.A3 = a3_series(order);
    return b;
}

// ---------------------------------------------------------------------------
// the twenty U relations

// Laurent polynomial in t, power -> coefficient
using TPoly = std::map<Int, BigInt>;

struct URelation {
    std::string name;
    int op = 0;        // 0: U0(f) = U5(A f), 1: U1(f) = U5(f)
    int in_p = 0;      // f = t^n, p0 t^n or p1 t^n (0, 1, 2)
    Int n = 0;
    TPoly F, G;        // right side F(t) + G(t) p
    int out_p = 0;     // which p multiplies G
    std::string fix;   // set when the commonly printed form has to be corrected
};

inline std::vector<URelation> appendix_relations() {
    auto P = [](unsigned e) { return detail::pow5(e); };
    auto B = [](long v) { return BigInt(v); };
    std::vector<URelation> r;
    // U0 of t^-n
    r.push_back({"U0(1)", 0, 0, 0, {{3, P(7)}, {2, 9 * P(4)}, {1, 9 * P(1)}}, {{2, P(5)}, {1, 8 * P(2)}, {0, B(1)}}, 2});
    r.push_back({"U0(t^-1)", 0, 0, -1, {{1, -P(2)}}, {{0, B(-2)}}, 2});
    r.push_back({"U0(t^-2)", 0, 0, -2, {{2, P(5)}, {1, 6 * P(2)}}, {{1, 2 * P(3)}, {0, 4 * P(1)}}, 2});
    r.push_back({"U0(t^-3)", 0, 0, -3, {{2, -9 * P(5)}, {1, -9 * P(3)}, {0, B(1)}}, {{2, P(6)}, {1, -2 * P(4)}, {0, -37 * P(1)}}, 2});
    r.push_back({"U0(t^-4)",
                 0,
                 0,
                 -4,
                 {{4, P(11)}, {3, 3 * P(9)}, {2, 27 * P(6)}, {1, 79 * P(3)}, {0, -3 * P(1)}},
                 {{2, -P(8)}, {1, -12 * P(4)}, {0, 67 * P(2)}},
                 2,
                 "t^2 coefficient is 27*5^6, not 9*5^6"});
    // U0 of p0 t^-n
    r.push_back({"U0(p0)", 0, 1, 0, {}, {{4, P(9)}, {3, P(8)}, {2, 8 * P(5)}, {1, 4 * P(3)}, {0, B(1)}}, 2, "the 4*5^3 term carries a factor t"});
    r.push_back({"U0(p0 t^-1)", 0, 1, -1, {}, {{0, B(-1)}}, 2});
    r.push_back({"U0(p0 t^-2)", 0, 1, -2, {}, {{1, P(3)}, {0, B(14)}}, 2});
    r.push_back({"U0(p0 t^-3)", 0, 1, -3, {}, {{2, P(6)}, {0, -26 * P(1)}}, 2});
    r.push_back({"U0(p0 t^-4)", 0, 1, -4, {}, {{3, -P(9)}, {2, -38 * P(6)}, {1, -38 * P(4)}, {0, 228 * P(1)}}, 2});
    // U1 of t^-n
    r.push_back({"U1(1)", 1, 0, 0, {{0, B(1)}}, {}, 0});
    r.push_back({"U1(t^-1)", 1, 0, -1, {{1, -P(2)}, {0, B(-6)}}, {}, 0});
    r.push_back({"U1(t^-2)", 1, 0, -2, {{2, -P(5)}, {0, B(54)}}, {}, 0});
    r.push_back({"U1(t^-3)", 1, 0, -3, {{3, -P(8)}, {0, -102 * P(1)}}, {}, 0});
    r.push_back({"U1(t^-4)", 1, 0, -4, {{4, -P(11)}, {0, 966 * P(1)}}, {}, 0});
    // U1 of p1 t^-n
    r.push_back({"U1(p1)", 1, 2, 0, {{3, -18 * P(7)}, {2, -234 * P(4)}, {1, -126 * P(2)}}, {{3, P(9)}, {2, 14 * P(6)}, {1, 44 * P(3)}, {0, 2 * P(1)}}, 1});
    r.push_back({"U1(p1 t^-1)", 1, 2, -1, {{0, B(-18)}}, {{0, B(5)}}, 1});
    r.push_back({"U1(p1 t^-2)", 1, 2, -2, {{0, B(126)}}, {{1, P(4)}}, 1});
    r.push_back({"U1(p1 t^-3)", 1, 2, -3, {{0, -234 * P(1)}}, {{2, P(7)}}, 1});
    r.push_back({"U1(p1 t^-4)",
                 1,
                 2,
                 -4,
                 {{3, 18 * P(9)}, {2, 234 * P(6)}, {1, 126 * P(4)}, {0, 2268 * P(1)}},
                 {{3, -4 * P(10)}, {2, -14 * P(8)}, {1, -44 * P(5)}, {0, -2 * P(3)}, {-1, B(1)}},
                 1});
    return r;
}

// the two relations exactly as usually printed; both fail
inline std::vector<URelation> appendix_relations_as_printed() {
    std::vector<URelation> r;
    for (const URelation& x : appendix_relations()) {
        if (x.fix.empty()) continue;
        URelation y = x;
        if (y.name == "U0(t^-4)") y.F[2] = 9 * detail::pow5(6);
        if (y.name == "U0(p0)") {
            y.G.erase(1);
            y.G[0] = 4 * detail::pow5(3) + 1;
        }
        y.fix.clear();
        r.push_back(y);
    }
    return r;
}

struct RelationResult {
    std::string name;
    bool holds = false;
    Rational checked_below;  // both sides known below this exponent
};

struct AppendixReport {
    Int order = 0;
    std::vector<RelationResult> results;
    bool all_hold() const {
        return std::all_of(results.begin(), results.end(), [](const RelationResult& r) { return r.holds; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const RelationResult& r) { return !r.holds; }));
    }
};

namespace detail {

inline FracQSeries eval_tpoly(const TPoly& f, const BaseFunctions& b) {
    FracQSeries s = FracQSeries::constant(0);
    bool first = true;
    for (const auto& [n, c] : f) {
        FracQSeries term = b.tpow(n) * Rational(c);
        s = first ? term : s + term;
        first = false;
    }
    return s;
}

}  // namespace detail

// both sides of every relation with A, p0, p1 taken from the given functions;
// passing A3 and the pbar pair in their place checks the companion relations
inline AppendixReport verify_relations(const BaseFunctions& b, const FracQSeries& A, const FracQSeries& p0, const FracQSeries& p1, Int order,
                                       const std::vector<URelation>& rels) {
    AppendixReport rep;
    rep.order = order;
    for (const URelation& rel : rels) {
        FracQSeries f = b.tpow(rel.n);
        if (rel.in_p == 1) f = p0 * f;
        if (rel.in_p == 2) f = p1 * f;
        FracQSeries lhs = detail::u5(rel.op == 0 ? A * f : f);
        FracQSeries rhs = detail::eval_tpoly(rel.F, b);
        if (!rel.G.empty()) rhs = rhs + detail::eval_tpoly(rel.G, b) * (rel.out_p == 1 ? p0 : p1);
        Rational below = std::min(lhs.trunc_exponent(), rhs.trunc_exponent());
        if (below < order) throw truncation_error("relation " + rel.name + " only known below q^" + below.get_str());
        rep.results.push_back({rel.name, agree(lhs, rhs), below});
    }
    return rep;
}

// each U5 costs a factor 5 in precision, and the t^-4 inputs lose a few more terms
inline Int appendix_base_order(Int order) { return 5 * order + 40; }

inline AppendixReport verify_appendix_a(Int order) {
    if (order < 1) throw precondition_error("order must be positive");
    BaseFunctions b = base_functions(appendix_base_order(order), false);
    return verify_relations(b, b.A, b.p0, b.p1, order, appendix_relations());
}

// ---------------------------------------------------------------------------
// L and K sequences

namespace detail {

inline std::vector<FracQSeries> alternate_u(const FracQSeries& A, Int alpha_max, Int p, Int step) {
    if (alpha_max < 0) throw precondition_error("alpha_max must be nonnegative");
    std::vector<FracQSeries> L{FracQSeries::constant(1)};
    for (Int j = 1; j <= alpha_max; ++j) {
        const FracQSeries& prev = L.back();
        FracQSeries next = (j % 2 == 1) ? u_operator(A * prev, p, step) : u_operator(prev, p, step);
        // nothing left beyond the polar part and the constant
        if (next.trunc_exponent() <= 1) throw truncation_error("U sequence exhausted the truncation at step " + std::to_string(j));
        for (const auto& [e, c] : next.terms())
            if (!is_integer(c)) throw verification_error("U sequence produced a non-integral coefficient");
        L.push_back(next);
    }
    return L;
}

}  // namespace detail

// L_0 = 1, L_{2a+1} = U5(A L_{2a}), L_{2a+2} = U5(L_{2a+1})
inline std::vector<FracQSeries> l_sequence(Int alpha_max, Int order) {
    return detail::alternate_u(detail::int_eta({{25, 4}, {3, 3}, {75, -3}, {1, -4}}, order), alpha_max, 5, 1);
}

// same with A3 in place of A
inline std::vector<FracQSeries> k_sequence(Int alpha_max, Int order) { return detail::alternate_u(a3_series(order), alpha_max, 5, 1); }

// A_0 = q^{(p^2-1)(beta^2/2k - k/12)} CPsi(q)/CPsi(q^{p^2}), iterated with U_p'
inline FracQSeries a0_series(Int k, const Rational& beta, Int p, Int order) {
    if (p < 5 || !is_prime(p)) throw precondition_error("p must be a prime >= 5");
    FracQSeries num = cpsi(k, beta, order);
    FracQSeries den = cpsi(k, beta, order / (p * p) + 1).scale_q(p * p);
    Rational sh = make_rat(p * p - 1) * (beta * beta / (2 * k) - make_rat(k, 12));
    return (num * den.inverse()).truncate(order).shift_q(sh);
}

inline std::vector<FracQSeries> up_sequence(Int k, const Rational& beta, Int p, Int alpha_max, Int order) {
    UPrimeParams up = u_p_prime_params(k, beta, p);
    return detail::alternate_u(a0_series(k, beta, p, order), alpha_max, p, up.r_e);
}

// ---------------------------------------------------------------------------
// pbar0 and pbar1

struct PBar {
    FracQSeries p0, p1;                // from the U5 recursions
    FracQSeries p0_closed, p1_closed;  // from the eta product formulas
    bool integral = false;
    bool c3n1_vanish = false;
};

namespace detail {

// sum_n c_{3n+r} q^n below q^n_terms
inline FracQSeries trisect(const std::vector<BigInt>& c, Int r, Int n_terms) {
    FracQSeries f(1, n_terms);
    for (Int n = 0; n < n_terms; ++n) {
        std::size_t i = static_cast<std::size_t>(3 * n + r);
        if (i >= c.size()) throw truncation_error("trisect: coefficient list too short");
        if (c[i] != 0) f.set(n, Rational(c[i]));
    }
    return f;
}

inline bool all_integral(const FracQSeries& f) {
    for (const auto& [e, c] : f.terms())
        if (!is_integer(c)) return false;
    return true;
}

}  // namespace detail

inline std::pair<FracQSeries, FracQSeries> pbar_closed(Int order, bool* c3n1_vanish = nullptr) {
    using detail::eta_product;
    using detail::trisect;
    if (order < 1) throw precondition_error("order must be positive");
    Int N = order + 2, M = 3 * N + 3;
    auto a = detail::eta_product_coeffs({{1, 2}, {5, 5}}, M);
    auto b = detail::eta_product_coeffs({{1, 1}, {5, -2}}, M);
    auto c = detail::eta_product_coeffs({{5, 3}}, M);
    auto a1 = detail::eta_product_coeffs({{1, -1}, {5, 8}}, M);
    auto b1 = detail::eta_product_coeffs({{1, -2}, {5, 1}}, M);
    auto c1 = detail::eta_product_coeffs({{1, -3}, {5, 6}}, M);
    if (c3n1_vanish) {
        *c3n1_vanish = true;
        for (Int n = 0; 3 * n + 1 < M; ++n)
            if (c[static_cast<std::size_t>(3 * n + 1)] != 0) *c3n1_vanish = false;
    }
    FracQSeries t = detail::int_eta({{5, 6}, {1, -6}}, N);
    FracQSeries q1 = FracQSeries::monomial(1), q2 = FracQSeries::monomial(2);
    FracQSeries one = FracQSeries::constant(1);

    FracQSeries inv0 = cpsi3_closed(make_rat(3, 2), N).inverse();
    FracQSeries s0 = q2 * eta_product({{5, 8}, {1, -8}}, N) * trisect(b, 2, N) * make_rat(9) -
                     q1 * eta_product({{5, 1}, {1, -9}}, N) * trisect(a, 2, N) * make_rat(3);
    FracQSeries pb0 = (inv0 * s0 - t * make_rat(3)).truncate(order);

    FracQSeries inv1 = cpsi3_closed(make_rat(3, 2), N / 5 + 1).scale_q(5).inverse();
    FracQSeries s1 = eta_product({{1, 2}, {5, -2}}, N) * (one + t * make_rat(12)) * trisect(b1, 2, N) * make_rat(9) -
                     eta_product({{1, -3}, {5, -1}}, N) * trisect(c1, 1, N) * make_rat(12) -
                     eta_product({{1, -5}, {5, -3}}, N) * trisect(a1, 2, N) * make_rat(9);
    FracQSeries pb1 = (inv1 * q1 * s1 - t * make_rat(9)).truncate(order);
    return {pb0, pb1};
}

inline PBar pbar(Int order) {
    if (order < 1) throw precondition_error("order must be positive");
    Int R = 25 * order + 60;
    FracQSeries A3 = a3_series(R);
    FracQSeries t = detail::int_eta({{5, 6}, {1, -6}}, R);
    FracQSeries tinv = t.inverse();
    PBar out;
    out.p1 = t * make_rat(-25, 2) - detail::u5(A3 * tinv) * make_rat(1, 2);
    out.p0 = FracQSeries::constant(make_rat(18, 5)) + detail::u5(out.p1 * tinv) * make_rat(1, 5);
    if (out.p0.trunc_exponent() < order || out.p1.trunc_exponent() < order) throw truncation_error("pbar: recursion lost too much precision");
    out.p0 = out.p0.truncate(order);
    out.p1 = out.p1.truncate(order);
    auto [c0, c1] = pbar_closed(order, &out.c3n1_vanish);
    out.p0_closed = c0;
    out.p1_closed = c1;
    if (!agree(out.p0, c0) || !agree(out.p1, c1)) throw verification_error("pbar: the two constructions disagree");
    out.integral = detail::all_integral(out.p0) && detail::all_integral(out.p1) && detail::all_integral(c0) && detail::all_integral(c1);
    return out;
}

// ---------------------------------------------------------------------------
// X-set decomposition f = sum r_n t^n + sum s_n P t^n

struct XDecomposition {
    std::map<Int, Rational> tcoef;  // r_n
    std::map<Int, Rational> pcoef;  // s_n
    Int n_lo = 0, n_hi = 0;
    Int equations = 0;
};

namespace detail {

// exact row reduction of [A | b]; returns the solution or nullopt when
// inconsistent; throws when the solution is not unique
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m, std::size_t cols) {
    std::size_t rows = m.size(), r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j <= cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (m[i][cols] != 0) return std::nullopt;
    if (piv.size() != cols) throw truncation_error("decomposition is not unique at this precision");
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][cols];
    return x;
}

}  // namespace detail

// smallest top degree for which the q-expansion is matched exactly; the lowest
// degree is read off the valuation of f (P has valuation -1 or 0)
inline XDecomposition xset_decompose(const FracQSeries& f, const FracQSeries& t, const FracQSeries& tinv, const FracQSeries& P,
                                     Int max_degree = 64) {
    if (f.grid() != 1 || t.grid() != 1 || P.grid() != 1) throw precondition_error("xset_decompose works on integer exponents");
    XDecomposition out;
    if (f.terms().empty()) return out;
    Int v = f.valuation();
    Int pv = P.valuation();
    Int lo = std::min(v, v - pv);
    std::map<Int, FracQSeries> tp, pp;
    auto tpow = [&](Int n) -> const FracQSeries& {
        auto it = tp.find(n);
        if (it != tp.end()) return it->second;
        FracQSeries s = n >= 0 ? t.pow(n) : tinv.pow(-n);
        return tp.emplace(n, s).first->second;
    };
    auto ptp = [&](Int n) -> const FracQSeries& {
        auto it = pp.find(n);
        if (it != pp.end()) return it->second;
        return pp.emplace(n, P * tpow(n)).first->second;
    };
    for (Int hi = std::max(v, lo); hi <= max_degree; ++hi) {
        std::vector<const FracQSeries*> basis;
        std::vector<std::pair<int, Int>> tag;
        for (Int n = lo; n <= hi; ++n) {
            if (n >= v) {
                basis.push_back(&tpow(n));
                tag.emplace_back(0, n);
            }
            if (n + pv >= v) {
                basis.push_back(&ptp(n));
                tag.emplace_back(1, n);
            }
        }
        Int T = f.trunc();
        for (auto* s : basis) T = std::min(T, s->trunc());
        Int rows = T - v;
        if (rows < static_cast<Int>(basis.size()) + 4) throw truncation_error("xset_decompose: not enough precision for degree " + std::to_string(hi));
        std::vector<std::vector<Rational>> m(static_cast<std::size_t>(rows), std::vector<Rational>(basis.size() + 1));
        for (Int i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < basis.size(); ++j) m[i][j] = basis[j]->coeff_scaled(v + i);
            m[i][basis.size()] = f.coeff_scaled(v + i);
        }
        auto sol = detail::solve_exact(std::move(m), basis.size());
        if (!sol) continue;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if ((*sol)[j] == 0) continue;
            (tag[j].first == 0 ? out.tcoef : out.pcoef)[tag[j].second] = (*sol)[j];
        }
        out.n_lo = lo;
        out.n_hi = hi;
        out.equations = rows;
        return out;
    }
    throw verification_error("xset_decompose: f is not in the span up to the degree bound");
}

inline XDecomposition xset_decompose(const FracQSeries& f, int parity, const BaseFunctions& b, Int max_degree = 64) {
    if (parity != 0 && parity != 1) throw precondition_error("parity must be 0 or 1");
    return xset_decompose(f, b.t, b.tinv, parity == 0 ? b.p0 : b.p1, max_degree);
}

struct XSetCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

// f in 5^s X^(parity):
//   X^(0): p0 t^n (n >= 0) carries 5^{floor(5n/2)}, t^n (n >= 1) carries 5^{floor((5n-3)/2)}
//   X^(1): delta p1 + p1 t^n (n >= 1) with 5^{floor((5n-1)/2)}, t^n (n >= 1) with 5^{floor((5n-2)/2)}
inline XSetCheck xset_check(const XDecomposition& d, int parity, Int s) {
    XSetCheck r;
    auto need = [&](const Rational& c, Int e, const std::string& what) {
        if (!is_integer(c)) {
            r.ok = false;
            r.violations.push_back(what + ": coefficient " + c.get_str() + " is not integral");
            return;
        }
        if (c == 0) return;
        int v = valuation(c.get_num(), 5);
        if (v < s + e) {
            r.ok = false;
            r.violations.push_back(what + ": 5-adic valuation " + std::to_string(v) + " < " + std::to_string(s + e));
        }
    };
    for (const auto& [n, c] : d.tcoef) {
        std::string w = "t^" + std::to_string(n);
        if (n < 1) {
            r.ok = false;
            r.violations.push_back(w + " is outside the X-set support");
            continue;
        }
        need(c, parity == 0 ? floor_div(5 * n - 3, 2) : floor_div(5 * n - 2, 2), w);
    }
    for (const auto& [n, c] : d.pcoef) {
        std::string w = "p t^" + std::to_string(n);
        if (n < 0) {
            r.ok = false;
            r.violations.push_back(w + " is outside the X-set support");
            continue;
        }
        need(c, parity == 0 ? floor_div(5 * n, 2) : (n == 0 ? 0 : floor_div(5 * n - 1, 2)), w);
    }
    return r;
}

// ---------------------------------------------------------------------------
// scans

struct CongruenceReport {
    std::string family;
    Int k = 0;
    Rational beta;
    Int p = 5;
    Int alpha = 0;
    Int modulus = 1;
    Int step = 1;    // index = step n + offset
    Int offset = 0;
    Int n_max = -1;  // n runs over 0..n_max
    Int checked = 0;
    bool pass = true;
    std::vector<std::pair<Int, Int>> failures;  // (n, coefficient mod modulus)
    std::optional<Int> inferred;                // x_alpha for the k = 6 scan
    std::string note;
};

struct CongruenceFamily {
    std::string id;
    Int k;
    Rational beta;
    Int p;
    bool half_exponent;  // modulus p^{floor(alpha/2)} instead of p^alpha
};

inline const std::vector<CongruenceFamily>& congruence_families() {
    static const std::vector<CongruenceFamily> f = {
        {"cpsi3-12", 3, make_rat(1, 2), 5, true},
        {"cpsi3-32", 3, make_rat(3, 2), 5, true},
        {"cphi2", 2, 1, 5, false},
        {"cpsi2-0", 2, 0, 5, false},
        {"cpsi2-1", 2, 1, 5, false},
    };
    return f;
}

inline const CongruenceFamily& congruence_family(const std::string& id) {
    for (const auto& f : congruence_families())
        if (f.id == id) return f;
    throw precondition_error("unknown congruence family: " + id);
}

inline Int int_pow(Int b, Int e) {
    Int r = 1;
    for (Int i = 0; i < e; ++i) {
        if (r > (Int(1) << 62) / b) throw precondition_error("power overflows 64 bits");
        r *= b;
    }
    return r;
}

// least delta >= 0 with 24 k delta = 12 beta^2 - 2 k^2 mod m
inline Int progression_offset(Int k, const Rational& beta, Int m) {
    if (gcd(24 * k, m) != 1) throw precondition_error("24k must be invertible mod m");
    Rational rhs = 12 * beta * beta - 2 * k * k;
    if (!is_integer(rhs)) throw precondition_error("12 beta^2 - 2k^2 is not an integer");
    Int r = mod(to_int(rhs.get_num()) % m, m);
    using U = unsigned __int128;
    return static_cast<Int>(U(r) * U(inv_mod(mod(24 * k, m), m)) % U(m));
}

inline CongruenceReport congruence_scan(const CongruenceFamily& fam, Int alpha, Int n_max, Int order = 0) {
    if (alpha < 1) throw precondition_error("alpha must be positive");
    CongruenceReport rep;
    rep.family = fam.id;
    rep.k = fam.k;
    rep.beta = fam.beta;
    rep.p = fam.p;
    rep.alpha = alpha;
    rep.step = int_pow(fam.p, alpha);
    rep.modulus = int_pow(fam.p, fam.half_exponent ? alpha / 2 : alpha);
    rep.offset = progression_offset(fam.k, fam.beta, rep.step);
    rep.n_max = n_max;
    if (n_max < 0) return rep;
    Int need = rep.step * n_max + rep.offset + 1;
    if (order > 0 && order < need) throw truncation_error("order " + std::to_string(order) + " is below the needed " + std::to_string(need));
    if (rep.modulus == 1) {
        rep.checked = n_max + 1;
        rep.note = "modulus 1";
        return rep;
    }
    auto c = cpsi_mod(fam.k, fam.beta, need, rep.modulus);
    for (Int n = 0; n <= n_max; ++n) {
        Int v = c[static_cast<std::size_t>(rep.step * n + rep.offset)];
        ++rep.checked;
        if (v != 0) rep.failures.emplace_back(n, v);
    }
    rep.pass = rep.failures.empty();
    return rep;
}

inline CongruenceReport congruence_scan(const std::string& family, Int alpha, Int n_max, Int order = 0) {
    return congruence_scan(congruence_family(family), alpha, n_max, order);
}

// k = 4: cpsi_{4,beta}(n) = 0 mod 7^alpha on 24n = 3 beta^2 - 8 mod 7^{2 alpha - 1}
// k = 6: cpsi_{6,beta}(49n + 24 - 4 beta^2) = x cpsi_{6,beta}(n) mod 7^alpha on
//        12n = beta^2 - 6 mod 7^{2 alpha - 1}, x inferred from the first unit
inline CongruenceReport conjecture_scan(Int k, const Rational& beta, Int alpha, Int n_max) {
    if (k != 4 && k != 6) throw precondition_error("conjecture scans exist for k = 4 and k = 6");
    if (alpha < 1) throw precondition_error("alpha must be positive");
    require_beta(k, beta);
    CongruenceReport rep;
    rep.family = "conj-k" + std::to_string(k);
    rep.k = k;
    rep.beta = beta;
    rep.p = 7;
    rep.alpha = alpha;
    rep.modulus = int_pow(7, alpha);
    rep.step = int_pow(7, 2 * alpha - 1);
    rep.offset = progression_offset(k, beta, rep.step);
    rep.n_max = n_max;
    if (n_max < 0) return rep;
    Int top = rep.step * n_max + rep.offset;
    Int M = rep.modulus;
    if (k == 4) {
        auto c = cpsi_mod(k, beta, top + 1, M);
        for (Int j = 0; j <= n_max; ++j) {
            Int n = rep.step * j + rep.offset;
            ++rep.checked;
            if (c[static_cast<std::size_t>(n)] != 0) rep.failures.emplace_back(n, c[static_cast<std::size_t>(n)]);
        }
        rep.pass = rep.failures.empty();
        return rep;
    }
    Rational shift = 24 - 4 * beta * beta;
    if (!is_integer(shift)) throw precondition_error("24 - 4 beta^2 must be an integer");
    Int sh = to_int(shift.get_num());
    auto c = cpsi_mod(k, beta, 49 * top + std::max<Int>(sh, 0) + 1, M);
    std::vector<std::pair<Int, Int>> pairs;  // (lhs, rhs) residues
    std::vector<Int> ns;
    for (Int j = 0; j <= n_max; ++j) {
        Int n = rep.step * j + rep.offset;
        Int idx = 49 * n + sh;
        if (idx < 0) continue;
        pairs.emplace_back(c[static_cast<std::size_t>(idx)], c[static_cast<std::size_t>(n)]);
        ns.push_back(n);
    }
    for (const auto& [l, r] : pairs)
        if (r % 7 != 0) {
            rep.inferred = static_cast<Int>((static_cast<unsigned __int128>(l) * static_cast<unsigned __int128>(inv_mod(r, M))) % M);
            break;
        }
    if (!rep.inferred) rep.note = "no unit term in range, x not inferred; checking lhs = 0";
    Int x = rep.inferred.value_or(0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        ++rep.checked;
        Int want = static_cast<Int>((static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(pairs[i].second)) % M);
        if (pairs[i].first != want) rep.failures.emplace_back(ns[i], pairs[i].first);
    }
    rep.pass = rep.failures.empty();
    return rep;
}

}  // namespace frob
