#include "frob/numcheck.hpp"

#include <gtest/gtest.h>

using namespace frob;

namespace {

Rational r(Int n, Int d = 1) { return make_rat(n, d); }

}  // namespace

TEST(Numcheck, EvalSeriesBasics) {
    EXPECT_EQ(eval_series(FracQSeries::constant(1), cx(0.2, 0.7)).value, cx(1));
    // Gamma(1/4) / (2 pi^{3/4})
    EXPECT_NEAR(std::abs(eval_series(eta_series(24 * 80), cx(0, 1)).value - 0.7682254223260566), 0, 1e-14);
    EXPECT_NEAR(std::abs(eta_product_value(cx(0, 1)) - 0.7682254223260566), 0, 1e-14);
    // tau -> tau + 1 multiplies q^{e/24} by e(e/24)
    FracQSeries f = f_kbeta(3, r(1, 2), 40);
    cx tau(0.13, 0.4);
    const Int D = f.grid();
    cx shifted = 0;
    for (const auto& [e, c] : f.terms()) shifted += c.get_d() * std::polar(1.0, 2 * M_PI * e / D) * qpow(tau, r(e, D));
    EXPECT_LT(rel_residual(eval_series(f, tau + 1.0).value, shifted), 1e-12);
    EXPECT_THROW(eval_series(f, cx(0.1, -1)), precondition_error);
}

TEST(Numcheck, TailFlag) {
    FracQSeries f = f_kbeta(3, r(1, 2), 10);
    EXPECT_TRUE(eval_series(f, cx(0, 2)).reliable);
    EXPECT_FALSE(eval_series(f, cx(0, 0.05)).reliable);
    EXPECT_TRUE(eval_series(FracQSeries::constant(3), cx(0, 0.01)).reliable);
}

TEST(Numcheck, ResidualShrinksWithOrder) {
    for (cx tau : {cx(0.1, 0.3), cx(-0.2, 0.5)}) {
        cx exact = f_kbeta_value(3, r(1, 2), tau);
        double lo = rel_residual(eval_series(f_kbeta(3, r(1, 2), 8), tau).value, exact);
        double hi = rel_residual(eval_series(f_kbeta(3, r(1, 2), 40), tau).value, exact);
        EXPECT_LT(hi, lo);
        EXPECT_LT(hi, 1e-10);
    }
}

TEST(Numcheck, LatticeAgreesWithSeries) {
    for (Int k = 1; k <= 6; ++k)
        for (const Rational& b : beta_index(k)) {
            FracQSeries f = f_kbeta(k, b, 60);
            for (cx tau : {cx(0, 0.6), cx(0.37, 0.45)})
                EXPECT_LT(rel_residual(f_kbeta_value(k, b, tau), eval_series(f, tau).value), 1e-11) << k << " " << b;
        }
}

TEST(Numcheck, ReducedEtaMatchesProduct) {
    for (cx tau : {cx(0.1, 0.05), cx(-0.31, 0.002), cx(0.49, 0.3), cx(3.7, 0.01)})
        EXPECT_LT(rel_residual(eta_value(tau), eta_product_value(tau)), 1e-10) << tau;
    Reduced red = reduce_point(cx(0.123, 0.001));
    EXPECT_TRUE(red.g.in_sl2z());
    EXPECT_GE(std::norm(red.w), 1 - 1e-9);
    EXPECT_LE(std::abs(red.w.real()), 0.5 + 1e-12);
    EXPECT_THROW(eta_product_value(cx(0, 1e-7)), truncation_error);
}

TEST(Numcheck, SlashConventions) {
    CFunc f = [](cx tau) { return f_kbeta_value(3, make_rat(1, 2), tau); };
    cx tau(0.2, 0.9);
    EXPECT_EQ(slash_numeric(f, r(-1, 2), meta_identity(), tau), f(tau));
    MetaElement g = lift(1, 1, 2, 3);
    MetaElement gm(g.m, -1);
    EXPECT_EQ(slash_numeric(f, r(-1, 2), gm, tau), -slash_numeric(f, r(-1, 2), g, tau));
    // even weight does not see the sign
    EXPECT_EQ(slash_numeric(f, r(2), gm, tau), slash_numeric(f, r(2), g, tau));
    // -I~: sqrt(-1) = i, so weight -1/2 gives i f
    EXPECT_LT(std::abs(slash_numeric(f, r(-1, 2), lift(-1, 0, 0, -1), tau) - cx(0, 1) * f(tau)), 1e-14);
    // scalar matrices act trivially after normalization
    EXPECT_LT(rel_residual(slash_numeric(f, r(-1, 2), lift(Rational(4) * mat2(1, 1, 2, 3)), tau), slash_numeric(f, r(-1, 2), g, tau)), 1e-14);
    EXPECT_THROW(slash_numeric(f, r(1, 3), g, tau), precondition_error);
    EXPECT_THROW(slash_numeric(f, r(-1, 2), lift(mat2(0, 1, 1, 0)), tau), precondition_error);
}

TEST(Numcheck, UNumericMatchesSeriesU) {
    FracQSeries f = f_kbeta(3, r(1, 2), 400);
    FracQSeries u = u_operator(f, 5, 24);
    CFunc fv = [](cx tau) { return f_kbeta_value(3, make_rat(1, 2), tau); };
    for (cx tau : {cx(0.1, 0.7), cx(-0.4, 1.2)}) {
        SeriesValue s = eval_series(u, tau);
        ASSERT_TRUE(s.reliable);
        EXPECT_LT(rel_residual(u_numeric(fv, 5, 24)(tau), s.value), 1e-10);
    }
}

class NumcheckBattery : public ::testing::TestWithParam<std::string> {};

TEST_P(NumcheckBattery, LawHolds) {
    LawResult res = law_residual(GetParam());
    EXPECT_TRUE(res.pass) << res.id << " residual " << res.residual;
    EXPECT_GT(res.checks, 0);
    EXPECT_LT(res.residual, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(All, NumcheckBattery, ::testing::ValuesIn(battery_ids()),
                         [](const auto& info) {
                             std::string s = info.param;
                             for (char& c : s)
                                 if (c == '-') c = '_';
                             return s;
                         });

TEST(Numcheck, BatteryRegistry) {
    EXPECT_THROW(law_residual("nope"), precondition_error);
    EXPECT_EQ(law_residual("identity").residual, 0.0);
    // a wrong right side is caught: f_{3,1/2} | M0 against f_{3,1/2}
    // (near the cusp 0 the two components nearly coincide, so test at i)
    CFunc f = [](cx tau) { return f_kbeta_value(3, make_rat(1, 2), tau); };
    cx tau(0, 1);
    EXPECT_GT(rel_residual(slash_numeric(f, r(-1, 2), algebra_m0(), tau), f(tau)), 1e-3);
    // user points override the registered ones
    EvalConfig cfg;
    cfg.points = {cx(0.11, 0.95)};
    LawResult st = law_residual("st-laws", cfg);
    EXPECT_TRUE(st.pass);
    EXPECT_EQ(st.checks, 2 * (2 + 2 + 3));
}
