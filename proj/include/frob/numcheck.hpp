#pragma once

// Floating point evaluation on the upper half plane and residual checks of the
// analytic transformation laws.
//
// Functions are evaluated through products (eta) and lattice sums (the theta
// numerator of f_{k,beta}), which converge at any point with Im tau > 0, so the
// evaluation points do not have to keep |q| small at every gamma tau.  Residuals
// are relative: |L - R| / max(|L|, |R|).

#include "frob/congruence.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace frob {

using cx = std::complex<double>;
using CFunc = std::function<cx(cx)>;

struct EvalConfig {
    std::vector<cx> points;  // empty: the registered points of the test
    Int order = 0;           // series truncation where a law uses exact series (0: test default)
    double tol = 1e-8;
};

namespace detail {

constexpr double kTwoPi = 2.0 * M_PI;

inline void require_uhp(cx tau) {
    if (!(tau.imag() > 0)) throw precondition_error("tau must lie in the upper half plane");
}

// exp(2 pi i n x) with the real part reduced first
inline cx unit_phase(double x) {
    double f = x - std::floor(x);
    return std::polar(1.0, kTwoPi * f);
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace detail

// e(r tau) = exp(2 pi i r tau)
inline cx qpow(cx tau, const Rational& r) {
    double e = detail::to_double(r);
    return std::exp(-detail::kTwoPi * e * tau.imag()) * detail::unit_phase(e * tau.real());
}

inline cx qpow(cx tau, double e) { return std::exp(-detail::kTwoPi * e * tau.imag()) * detail::unit_phase(e * tau.real()); }

// lowest Im tau the lattice evaluator accepts
inline constexpr double kMinHeight = 1e-5;

// eta(tau) = q^{1/24} prod (1 - q^n), stopped once |q|^n < 1e-18
inline cx eta_product_value(cx tau) {
    detail::require_uhp(tau);
    double y = tau.imag();
    if (y < kMinHeight) throw truncation_error("eta_product_value: Im tau too small for the product");
    Int n_max = static_cast<Int>(std::ceil(41.5 / (detail::kTwoPi * y))) + 1;
    cx p = 1;
    for (Int n = 1; n <= n_max; ++n) p *= 1.0 - qpow(tau, static_cast<double>(n));
    return qpow(tau, make_rat(1, 24)) * p;
}

// w = g tau in the standard fundamental domain, g in SL2(Z)
struct Reduced {
    cx w;
    Mat2 g;
};

inline Reduced reduce_point(cx tau) {
    detail::require_uhp(tau);
    Int a = 1, b = 0, c = 0, d = 1;
    cx w = tau;
    for (int it = 0; it < 100000; ++it) {
        double n = std::round(w.real());
        if (n != 0) {
            Int m = static_cast<Int>(n);
            w -= n;
            a -= m * c;
            b -= m * d;
        }
        if (std::norm(w) >= 1 - 1e-12) return {w, mat2(a, b, c, d)};
        w = -1.0 / w;
        std::swap(a, c);
        std::swap(b, d);
        a = -a;
        b = -b;
    }
    throw truncation_error("reduce_point: no reduction");
}

// eta through the reduction tau = g^-1 w, eta(g^-1 w) = chi_eta(g^-1) sqrt(c' w + d') eta(w)
inline cx eta_value(cx tau) {
    if (tau.imag() >= 0.5) return eta_product_value(tau);
    Reduced r = reduce_point(tau);
    Mat2 gi = r.g.inverse();
    double c = detail::to_double(gi.c()), d = detail::to_double(gi.d());
    cx j = gi.c() == 0 ? cx(d, 0.0) : c * r.w + d;
    return chi_eta(lift(gi)).to_complex() * std::sqrt(j) * eta_product_value(r.w);
}

// prod eta(m tau)^r
inline cx eta_quotient_value(const EtaQuotientSpec& spec, cx tau) {
    cx v = 1;
    for (const auto& [m, r] : spec) {
        if (m <= 0) throw precondition_error("eta quotient scales must be positive");
        cx e = eta_value(static_cast<double>(m) * tau);
        v *= r >= 0 ? std::pow(e, static_cast<int>(r)) : 1.0 / std::pow(e, static_cast<int>(-r));
    }
    return v;
}

// sum over x in Z^k with sum x = beta - k/2 of q^{(|x|^2 - (beta - k/2)^2/k)/2}
inline cx theta_numerator_value(Int k, const Rational& beta, cx tau) {
    require_beta(k, beta);
    detail::require_uhp(tau);
    double y = tau.imag();
    if (y < kMinHeight) throw truncation_error("theta_numerator_value: Im tau too small");
    Int r = to_int(Rational(beta - make_rat(k, 2)).get_num());
    Int X = static_cast<Int>(std::ceil(std::sqrt(41.5 / (M_PI * y)))) + std::abs(r) + 1;
    std::vector<cx> w(2 * X + 1);
    for (Int x = -X; x <= X; ++x) w[x + X] = qpow(tau, make_rat(x * x, 2));
    // acc[s + off] is the sum over partial tuples with coordinate sum s
    std::vector<cx> acc{1};
    Int off = 0;
    for (Int i = 0; i < k; ++i) {
        std::vector<cx> nxt(acc.size() + 2 * X);
        for (std::size_t a = 0; a < acc.size(); ++a) {
            if (acc[a] == cx(0)) continue;
            for (Int x = 0; x <= 2 * X; ++x) nxt[a + x] += acc[a] * w[x];
        }
        acc = std::move(nxt);
        off += X;
    }
    Int idx = r + off;
    if (idx < 0 || idx >= static_cast<Int>(acc.size())) return 0;
    return acc[idx] * qpow(tau, make_rat(-r * r, 2 * k));
}

// f_{k,beta}(tau) = h_beta / eta^k, the sign e(beta) (-1)^k being 1 on B_k
inline cx f_kbeta_value(Int k, const Rational& beta, cx tau) {
    return theta_numerator_value(k, beta, tau) / std::pow(eta_value(tau), static_cast<int>(k));
}

// ---------------------------------------------------------------------------
// series

struct SeriesValue {
    cx value;
    double tail = 0;     // geometric estimate of the truncated remainder
    bool reliable = true;
};

inline SeriesValue eval_series(const FracQSeries& f, cx tau, double tol = 1e-8) {
    detail::require_uhp(tau);
    SeriesValue out;
    const Int D = f.grid();
    for (const auto& [e, c] : f.terms()) out.value += detail::to_double(c) * qpow(tau, make_rat(e, D));
    if (f.exact()) return out;
    // the largest |c| among the last few terms, carried geometrically past the truncation
    double qa = std::exp(-detail::kTwoPi * tau.imag() / static_cast<double>(D));
    double big = 0;
    int seen = 0;
    for (auto it = f.terms().rbegin(); it != f.terms().rend() && seen < 8; ++it, ++seen)
        big = std::max(big, std::abs(detail::to_double(it->second)));
    if (qa >= 1) {
        out.tail = INFINITY;
    } else {
        double lead = std::pow(qa, static_cast<double>(f.trunc()));
        out.tail = big * lead / (1 - qa);
    }
    out.reliable = out.tail < tol / 10 * std::max(1.0, std::abs(out.value));
    return out;
}

// ---------------------------------------------------------------------------
// slash action

inline cx mobius(const Mat2& m, cx tau) {
    double a = detail::to_double(m.a()), b = detail::to_double(m.b()), c = detail::to_double(m.c()), d = detail::to_double(m.d());
    return (a * tau + b) / (c * tau + d);
}

// (eps sqrt(c' tau + d'))^{-2 weight} f(g tau), g scaled to determinant one
inline cx slash_numeric(const CFunc& f, const Rational& weight, const MetaElement& g, cx tau) {
    detail::require_uhp(tau);
    Rational n2 = -2 * weight;
    if (!is_integer(n2)) throw precondition_error("weight must be a half-integer");
    Rational D = g.m.det();
    if (D <= 0) throw precondition_error("slash needs a matrix of positive determinant");
    double s = 1.0 / std::sqrt(D.get_d());
    double c = detail::to_double(g.m.c()) * s, d = detail::to_double(g.m.d()) * s;
    // principal branch; for c = 0 the argument of a negative d is +pi
    cx j = g.m.c() == 0 ? cx(d, 0.0) : c * tau + d;
    cx root = static_cast<double>(g.eps) * std::sqrt(j);
    Int n = to_int(n2.get_num());
    cx fac = n >= 0 ? std::pow(root, static_cast<int>(n)) : 1.0 / std::pow(root, static_cast<int>(-n));
    cx z = mobius(g.m, tau);
    if (!(z.imag() > 0)) throw verification_error("slash: image point left the upper half plane");
    return fac * f(z);
}

inline cx slash_numeric(const CFunc& f, const Rational& weight, const AlgebraElement& M, cx tau) {
    cx s = 0;
    for (const auto& [g, coef] : M.terms()) s += coef.to_complex() * slash_numeric(f, weight, g, tau);
    return s;
}

inline CFunc slashed(CFunc f, Rational weight, AlgebraElement M) {
    return [f = std::move(f), weight = std::move(weight), M = std::move(M)](cx tau) { return slash_numeric(f, weight, M, tau); };
}

// (1/p) sum_x f((tau + step x)/p), x = 0..p-1
inline CFunc u_numeric(CFunc f, Int p, Int step) {
    if (p < 2 || step < 1) throw precondition_error("u_numeric: bad parameters");
    return [f = std::move(f), p, step](cx tau) {
        cx s = 0;
        for (Int x = 0; x < p; ++x) s += f((tau + static_cast<double>(step * x)) / static_cast<double>(p));
        return s / static_cast<double>(p);
    };
}

inline CFunc scaled_arg(CFunc f, double m) {
    return [f = std::move(f), m](cx tau) { return f(m * tau); };
}

inline double rel_residual(cx l, cx r) {
    double s = std::max(std::abs(l), std::abs(r));
    return s == 0 ? 0.0 : std::abs(l - r) / s;
}

// ---------------------------------------------------------------------------
// battery

struct LawResult {
    std::string id;
    double residual = 0;  // max relative residual over the points
    Int checks = 0;
    double tol = 1e-8;
    bool pass = false;
    std::string note;
};

namespace detail {

struct Acc {
    double worst = 0;
    Int n = 0;
    void add(cx l, cx r) {
        double e = rel_residual(l, r);
        // overflow or nan counts as a failed check
        worst = std::isfinite(e) ? std::max(worst, e) : INFINITY;
        ++n;
    }
};

inline std::vector<cx> pick(const EvalConfig& cfg, std::vector<cx> dflt) { return cfg.points.empty() ? dflt : cfg.points; }

inline Mat2 random_sl2(std::mt19937_64& rng, Int level, Int bound) {
    std::uniform_int_distribution<Int> dist(-bound, bound);
    for (;;) {
        Int a = dist(rng), c = level * (dist(rng) / level);
        if (a == 0 || gcd(a, c) != 1) continue;
        Int x, y;
        ext_gcd(a, c, x, y);
        Int t = std::uniform_int_distribution<Int>(-2, 2)(rng);
        Mat2 m = mat2(a, -y + t * a, c, x + t * c);
        if (m.det() == 1) return m;
    }
}

// tau with c tau + d = i (plus a small offset), which keeps tau and gamma tau at height 1/|c|
inline std::vector<cx> cusp_points(const Mat2& g, double h = 1.0) {
    double c = to_double(g.c()), d = to_double(g.d());
    if (c == 0) return {cx(0, 1), cx(0.3, 1.1)};
    double ac = std::abs(c);
    return {cx(-d / c, h / ac), cx((-d + 0.2) / c, 1.3 * h / ac)};
}

inline CFunc fk(Int k, Rational beta) {
    return [k, beta = std::move(beta)](cx tau) { return f_kbeta_value(k, beta, tau); };
}

inline CFunc eta_q(EtaQuotientSpec spec) {
    return [spec = std::move(spec)](cx tau) { return eta_quotient_value(spec, tau); };
}

inline CFunc times(CFunc f, CFunc g) {
    return [f = std::move(f), g = std::move(g)](cx tau) { return f(tau) * g(tau); };
}

inline CFunc series_func(FracQSeries s) {
    return [s = std::move(s)](cx tau) {
        SeriesValue v = eval_series(s, tau);
        if (!v.reliable) throw truncation_error("series evaluation is not converged at this point");
        return v.value;
    };
}

// sum_n c_{3n+r} q^n evaluated at tau
inline CFunc trisection_func(const std::vector<BigInt>& c, Int r) {
    std::vector<double> t;
    for (std::size_t i = static_cast<std::size_t>(r); i < c.size(); i += 3) t.push_back(c[i].get_d());
    return [t](cx tau) {
        cx s = 0;
        for (std::size_t n = 0; n < t.size(); ++n)
            if (t[n] != 0) s += t[n] * qpow(tau, static_cast<double>(n));
        return s;
    };
}

inline const Rational kWeight = make_rat(-1, 2);

// ---- individual laws

inline Acc law_st(const EvalConfig& cfg) {
    Acc acc;
    auto pts = pick(cfg, {cx(0, 1), cx(0.3, 1.1), cx(-0.45, 0.9)});
    for (Int k : {2, 3, 4}) {
        auto bs = beta_index(k);
        for (const MetaElement& g : {meta_S(), meta_T()}) {
            CMatrix rho = rho_k_of(k, g);
            for (cx tau : pts)
                for (std::size_t i = 0; i < bs.size(); ++i) {
                    cx lhs = slash_numeric(fk(k, bs[i]), kWeight, g, tau);
                    cx rhs = 0;
                    for (std::size_t j = 0; j < bs.size(); ++j) rhs += rho(i, j).to_complex() * f_kbeta_value(k, bs[j], tau);
                    acc.add(lhs, rhs);
                }
        }
    }
    return acc;
}

inline Acc law_gamma0(const EvalConfig& cfg) {
    Acc acc;
    std::mt19937_64 rng(4242);
    for (Int k : {2, 3}) {
        for (int i = 0; i < 20; ++i) {
            Mat2 m = random_sl2(rng, k, 24);
            for (cx tau : pick(cfg, cusp_points(m)))
                for (const Rational& b : beta_index(k)) {
                    cx lhs = slash_numeric(fk(k, b), kWeight, lift(m), tau);
                    cx rhs = p_beta(k, b, m).to_complex() * f_kbeta_value(k, t_beta(k, b, m), tau);
                    acc.add(lhs, rhs);
                }
        }
    }
    return acc;
}

struct GammaCase {
    Int k, p;
    Rational beta, beta2;
};

inline std::vector<GammaCase> gamma_cases() {
    auto h = [](Int n) { return make_rat(n, 2); };
    return {{2, 5, 1, 0}, {2, 5, 0, 1}, {2, 5, 1, 1}, {2, 7, 1, 0}, {3, 5, h(1), h(1)}, {3, 5, h(3), h(3)},
            {4, 5, 0, 2}, {4, 5, 1, 1}, {6, 5, 1, 2}, {6, 5, 0, 3}};
}

inline CFunc p2_quotient(Int k, const Rational& beta, Int p) {
    double p2 = static_cast<double>(p * p);
    return [k, beta, p2](cx tau) { return f_kbeta_value(k, beta, tau) / f_kbeta_value(k, beta, p2 * tau); };
}

inline Acc law_quotient(const EvalConfig& cfg) {
    Acc acc;
    for (const GammaCase& gc : gamma_cases()) {
        Mat2 g = find_gamma(gamma_search_spec(gc.k, gc.p, gc.beta, gc.beta2));
        CFunc lq = p2_quotient(gc.k, gc.beta, gc.p), rq = p2_quotient(gc.k, gc.beta2, gc.p);
        for (cx tau : pick(cfg, cusp_points(g))) acc.add(lq(mobius(g, tau)), rq(tau));
    }
    return acc;
}

// U_p'(L | gamma) = U_p'(L) | gamma for eta quotients L on Gamma0(p) and Gamma0(p^2)
inline Acc law_up_commute(const EvalConfig& cfg) {
    Acc acc;
    for (const GammaCase& gc : gamma_cases()) {
        GammaSearchSpec s = gamma_search_spec(gc.k, gc.p, gc.beta, gc.beta2);
        if (gcd(s.r, gc.p) != 1) continue;
        Mat2 g = find_gamma(s);
        Int e = 24 / (gc.p - 1);
        std::vector<CFunc> ls = {eta_q({{gc.p, e}, {1, -e}}), eta_q({{gc.p * gc.p, e}, {gc.p, -e}})};
        for (const CFunc& L : ls) {
            CFunc Lg = [L, g](cx z) { return L(mobius(g, z)); };
            CFunc lhs = u_numeric(Lg, gc.p, s.r_e), up = u_numeric(L, gc.p, s.r_e);
            // higher points: t has a pole at the cusp -d/c and overflows at height 1/c
            for (cx tau : pick(cfg, cusp_points(g, 10.0))) acc.add(lhs(tau), up(mobius(g, tau)));
        }
    }
    return acc;
}

inline std::vector<cx> m_points() { return {cx(-1, 10) / 60.0, cx(0.1, 0.2), cx(-0.37, 0.15)}; }

// product forms; the k3-forms law ties them to the lattice evaluation
inline cx f31_value(cx tau) { return 3.0 * eta_quotient_value({{3, 3}, {1, -4}}, tau); }
inline cx f33_value(cx tau) { return 1.0 / eta_value(3.0 * tau) + 9.0 * eta_quotient_value({{9, 3}, {3, -1}, {1, -3}}, tau); }
inline CFunc f31() { return f31_value; }

inline Acc law_m0m1(const EvalConfig& cfg) {
    Acc acc;
    AlgebraElement M0 = algebra_m0(), M1 = algebra_m1();
    for (cx tau : pick(cfg, m_points())) {
        acc.add(slash_numeric(f31(), kWeight, M0, tau), f_kbeta_value(3, make_rat(3, 2), tau));
        acc.add(slash_numeric(scaled_arg(f31(), 5), kWeight, M1, tau), f_kbeta_value(3, make_rat(3, 2), 5.0 * tau));
    }
    return acc;
}

// the two commutations with U5 over R = {0, 24, ..., 96}, for h = 1 and h = 1/t
inline Acc law_prop63(const EvalConfig& cfg) {
    Acc acc;
    AlgebraElement M0 = algebra_m0(), M1 = algebra_m1();
    CFunc tinv = eta_q({{1, 6}, {5, -6}});
    std::vector<CFunc> hs = {[](cx) { return cx(1); }, tinv};
    for (const CFunc& h : hs) {
        CFunc g0 = times(f31(), h), g1 = times(scaled_arg(f31(), 5), h);
        CFunc l0 = slashed(u_numeric(g0, 5, 24), kWeight, M1), r0 = u_numeric(slashed(g0, kWeight, M0), 5, 24);
        CFunc l1 = slashed(u_numeric(g1, 5, 24), kWeight, M0), r1 = u_numeric(slashed(g1, kWeight, M1), 5, 24);
        for (cx tau : pick(cfg, {cx(0.05, 0.6), cx(-0.3, 0.9)})) {
            acc.add(l0(tau), r0(tau));
            acc.add(l1(tau), r1(tau));
        }
    }
    return acc;
}

inline CFunc x_func() { return eta_q({{15, 5}, {5, 1}, {3, -1}, {1, -5}}); }
inline CFunc y_func() { return eta_q({{5, 2}, {1, 2}, {15, -2}, {3, -2}}); }

inline Acc law_lemma65(const EvalConfig& cfg) {
    Acc acc;
    AlgebraElement M0 = algebra_m0();
    const Int n = 600;
    auto a = eta_product_coeffs({{1, 2}, {5, 5}}, n);
    auto b = eta_product_coeffs({{1, 1}, {5, -2}}, n);
    auto c = eta_product_coeffs({{5, 3}}, n);
    CFunc a1 = trisection_func(a, 1), a2 = trisection_func(a, 2), b1 = trisection_func(b, 1), b2 = trisection_func(b, 2);
    CFunc c0 = trisection_func(c, 0), c1 = trisection_func(c, 1);
    CFunc x = x_func(), y = y_func();
    auto Q = [](cx tau, Int num, Int den) { return qpow(tau, make_rat(num, den)); };
    for (cx tau : pick(cfg, {cx(0.05, 0.3), cx(-0.21, 0.25)})) {
        cx l1 = slash_numeric(times(f31(), x), kWeight, M0, tau);
        cx r1 = eta_quotient_value({{1, -9}, {5, 1}}, tau) / 9.0 * Q(tau, 3, 8) * (Q(tau, 1, 3) * a1(tau) - Q(tau, 2, 3) * a2(tau));
        acc.add(l1, r1);
        cx l2 = slash_numeric(times(f31(), y), kWeight, M0, tau);
        cx r2 = eta_quotient_value({{1, -2}, {5, 2}}, tau) * 9.0 * Q(tau, -1, 8) * (-Q(tau, 1, 3) * b1(tau) + Q(tau, 2, 3) * b2(tau));
        acc.add(l2, r2);
        cx l3 = slash_numeric(times(f31(), times(x, y)), kWeight, M0, tau);
        cx r3 = eta_quotient_value({{1, -7}, {5, 3}}, tau) * Q(tau, 5, 24) * (c0(tau) - Q(tau, 1, 3) * c1(tau));
        acc.add(l3, r3);
    }
    return acc;
}

inline Acc law_lemma65_companion(const EvalConfig& cfg) {
    Acc acc;
    AlgebraElement M1 = algebra_m1();
    const Int n = 600;
    auto a = eta_product_coeffs({{1, -1}, {5, 8}}, n);
    auto b = eta_product_coeffs({{1, -2}, {5, 1}}, n);
    auto c = eta_product_coeffs({{1, -3}, {5, 6}}, n);
    CFunc a0 = trisection_func(a, 0), a2 = trisection_func(a, 2), b0 = trisection_func(b, 0), b2 = trisection_func(b, 2);
    CFunc c1 = trisection_func(c, 1), c2 = trisection_func(c, 2);
    CFunc x = x_func(), y = y_func(), f5 = scaled_arg(f31(), 5);
    auto Q = [](cx tau, Int num, Int den) { return qpow(tau, make_rat(num, den)); };
    for (cx tau : pick(cfg, {cx(0.05, 0.3), cx(-0.21, 0.25)})) {
        cx l1 = slash_numeric(times(f5, x), kWeight, M1, tau);
        cx r1 = eta_quotient_value({{1, -5}, {5, -3}}, tau) / 9.0 * Q(tau, 13, 24) * (a0(tau) - Q(tau, 2, 3) * a2(tau));
        acc.add(l1, r1);
        cx l2 = slash_numeric(times(f5, y), kWeight, M1, tau);
        cx r2 = eta_quotient_value({{1, 2}, {5, -2}}, tau) * 9.0 * Q(tau, 1, 24) * (-b0(tau) + Q(tau, 2, 3) * b2(tau));
        acc.add(l2, r2);
        cx l3 = slash_numeric(times(f5, times(x, y)), kWeight, M1, tau);
        cx r3 = eta_quotient_value({{1, -3}, {5, -1}}, tau) * Q(tau, 3, 8) * (-Q(tau, 1, 3) * c1(tau) + Q(tau, 2, 3) * c2(tau));
        acc.add(l3, r3);
    }
    return acc;
}

// pbar_0 = (f31 p0 | M0) / f33 and pbar_1 = (f31(5 tau) p1 | M1) / f33(5 tau)
inline Acc law_pbar(const EvalConfig& cfg) {
    Acc acc;
    Int order = cfg.order > 0 ? cfg.order : 60;
    PBar pb = pbar(order);
    BaseFunctions b = base_functions(order + 10, false);
    CFunc x = x_func(), y = y_func(), t = eta_q({{5, 6}, {1, -6}});
    CFunc p0 = [=](cx z) { return 6.0 * x(z) * y(z) + 27.0 * x(z) + (y(z) - 3.0) * t(z); };
    CFunc p1 = [=](cx z) { return 12.0 * x(z) * y(z) + 81.0 * x(z) + y(z) + (12.0 * y(z) - 9.0) * t(z); };
    // the closed p0, p1 agree with the series ones
    for (cx tau : pick(cfg, {cx(0.1, 0.5), cx(-0.3, 0.4)})) {
        acc.add(p0(tau), eval_series(b.p0, tau).value);
        acc.add(p1(tau), eval_series(b.p1, tau).value);
        cx l0 = slash_numeric(times(f31(), p0), kWeight, algebra_m0(), tau) / f_kbeta_value(3, make_rat(3, 2), tau);
        cx l1 = slash_numeric(times(scaled_arg(f31(), 5), p1), kWeight, algebra_m1(), tau) / f_kbeta_value(3, make_rat(3, 2), 5.0 * tau);
        SeriesValue s0 = eval_series(pb.p0, tau), s1 = eval_series(pb.p1, tau);
        if (!s0.reliable || !s1.reliable) throw truncation_error("pbar: series not converged at the evaluation point");
        acc.add(l0, s0.value);
        acc.add(l1, s1.value);
    }
    return acc;
}

// k = 3 product forms against the lattice evaluation
inline Acc law_k3_forms(const EvalConfig& cfg) {
    Acc acc;
    for (cx tau : pick(cfg, {cx(0, 1), cx(0.2, 0.05), cx(-0.49, 0.01), cx(0.013, 0.002)})) {
        acc.add(f_kbeta_value(3, make_rat(1, 2), tau), f31_value(tau));
        acc.add(f_kbeta_value(3, make_rat(3, 2), tau), f33_value(tau));
    }
    return acc;
}

inline Acc law_eta_multiplier(const EvalConfig& cfg) {
    Acc acc;
    std::mt19937_64 rng(777);
    for (int i = 0; i < 30; ++i) {
        MetaElement g(random_sl2(rng, 1, 12), i % 2 ? -1 : 1);
        for (cx tau : pick(cfg, {cx(0, 1), cx(0.3, 2)})) {
            // eta | g with weight 1/2 is eta times chi_eta
            acc.add(slash_numeric(eta_product_value, make_rat(1, 2), g, tau), chi_eta(g).to_complex() * eta_product_value(tau));
        }
    }
    return acc;
}

// (f | M1) | M2 = f | (M1 M2)
inline Acc law_slash_compose(const EvalConfig& cfg) {
    Acc acc;
    std::mt19937_64 rng(31337);
    auto rnd_alg = [&]() {
        AlgebraElement a;
        for (int j = 0; j < 2; ++j) {
            MetaElement g(random_sl2(rng, 1, 6), (rng() & 1) ? 1 : -1);
            a = a + AlgebraElement(cyclo(make_rat(static_cast<Int>(rng() % 12), 12)), g);
        }
        return a;
    };
    for (int i = 0; i < 6; ++i) {
        AlgebraElement A = rnd_alg(), B = rnd_alg();
        CFunc lhs = slashed(slashed(f31(), kWeight, A), kWeight, B);
        for (cx tau : pick(cfg, {cx(0.1, 0.8), cx(-0.2, 1.4)})) acc.add(lhs(tau), slash_numeric(f31(), kWeight, A * B, tau));
    }
    return acc;
}

inline Acc law_identity(const EvalConfig& cfg) {
    Acc acc;
    for (cx tau : pick(cfg, {cx(0, 1), cx(0.25, 0.5)})) acc.add(slash_numeric(f31(), kWeight, meta_identity(), tau), f31()(tau));
    return acc;
}

struct LawEntry {
    std::string id;
    std::string what;
    std::function<Acc(const EvalConfig&)> run;
};

inline const std::vector<LawEntry>& law_table() {
    static const std::vector<LawEntry> t = {
        {"identity", "f | 1 = f", law_identity},
        {"eta-multiplier", "eta(g tau) = chi_eta(g) sqrt(c tau + d) eta(tau), 30 random g", law_eta_multiplier},
        {"slash-compose", "(f | A) | B = f | AB on random algebra pairs", law_slash_compose},
        {"k3-forms", "lattice f_{3,beta} against the eta product forms", law_k3_forms},
        {"st-laws", "S and T laws for k = 2, 3, 4", law_st},
        {"gamma0-laws", "f_beta | g = p_beta f_{T_beta} for 20 random g in Gamma0(k), k = 2, 3", law_gamma0},
        {"quotient-laws", "f_beta(tau)/f_beta(p^2 tau) | gamma for find_gamma outputs", law_quotient},
        {"up-commute", "U_p'(L | gamma) = U_p'(L) | gamma for eta quotients L", law_up_commute},
        {"m0m1", "f_{3,1/2} | M0 = f_{3,3/2} and f_{3,1/2}(5 tau) | M1 = f_{3,3/2}(5 tau)", law_m0m1},
        {"prop63", "U5 over {0,24,...,96} commutes past M0, M1 (h = 1 and h = 1/t)", law_prop63},
        {"lemma65", "the three M0 displays for f x, f y, f x y", law_lemma65},
        {"lemma65-companion", "the three M1 displays for f(5 tau) x, y, x y", law_lemma65_companion},
        {"pbar", "pbar_0, pbar_1 series against their slash definitions", law_pbar},
    };
    return t;
}

}  // namespace detail

inline std::vector<std::string> battery_ids() {
    std::vector<std::string> ids;
    for (const auto& e : detail::law_table()) ids.push_back(e.id);
    return ids;
}

inline LawResult law_residual(const std::string& id, const EvalConfig& cfg = {}) {
    for (const auto& e : detail::law_table()) {
        if (e.id != id) continue;
        detail::Acc acc = e.run(cfg);
        LawResult r;
        r.id = id;
        r.residual = acc.worst;
        r.checks = acc.n;
        r.tol = cfg.tol;
        r.pass = acc.n > 0 && acc.worst < cfg.tol;
        r.note = e.what;
        return r;
    }
    throw precondition_error("unregistered law id: " + id);
}

inline std::vector<LawResult> run_battery(const EvalConfig& cfg = {}) {
    std::vector<LawResult> out;
    for (const auto& id : battery_ids()) out.push_back(law_residual(id, cfg));
    return out;
}

}  // namespace frob
