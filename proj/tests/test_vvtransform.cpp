#include "frob/vvtransform.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace frob;

namespace {

Rational r(Int n, Int d = 1) { return make_rat(n, d); }

CMatrix from_ints(CycloNumber pre, const std::vector<std::vector<Int>>& rows) {
    CMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = pre * r(rows[i][j]);
    return m;
}

}  // namespace

TEST(VVTransform, ExampleMatrices) {
    auto [t2, s2] = rho_k_generators(2);
    EXPECT_EQ(t2, CMatrix::diagonal({cyclo(r(1, 6)), cyclo(r(-1, 12))}));
    EXPECT_EQ(s2, from_ints(cyclo(r(1, 8)) / sqrt_cyclo(2), {{-1, 1}, {1, 1}}));
    auto [t3, s3] = rho_k_generators(3);
    EXPECT_EQ(t3, CMatrix::diagonal({cyclo(r(5, 24)), cyclo(r(-1, 8))}));
    EXPECT_EQ(s3, from_ints(cyclo(r(1, 8)) / sqrt_cyclo(3), {{-1, 1}, {2, 1}}));
    auto [t4, s4] = rho_k_generators(4);
    EXPECT_EQ(t4, CMatrix::diagonal({cyclo(r(1, 3)), cyclo(r(5, 24)), cyclo(r(-1, 6))}));
    EXPECT_EQ(s4, from_ints(cyclo(r(1, 8)) * r(1, 2), {{1, -2, 1}, {-1, 0, 1}, {1, 2, 1}}));
    EXPECT_THROW(rho_k_generators(0), precondition_error);
}

TEST(VVTransform, GeneratorRelations) {
    for (Int k = 1; k <= 8; ++k) {
        auto [t, s] = rho_k_generators(k);
        std::size_t n = t.size();
        EXPECT_EQ(s.pow(8), CMatrix::identity(n)) << k;
        EXPECT_EQ((s * t).pow(3), s * s) << k;
        EXPECT_EQ(s.pow(4) * t, t * s.pow(4)) << k;
        EXPECT_EQ(rho_k_of(k, meta_S()), s);
        EXPECT_EQ(rho_k_of(k, meta_T()), t);
    }
}

TEST(VVTransform, SpecialScalarLaws) {
    for (Int k = 1; k <= 9; k += 2)
        EXPECT_EQ(rho_k_of(k, lift(1, 0, k, 1)), cyclo(r(k * k, 24)) * CMatrix::identity(beta_index(k).size())) << k;
    for (Int k = 2; k <= 8; k += 2)
        EXPECT_EQ(rho_k_of(k, lift(1, 0, 2 * k, 1)), cyclo(r(k * k, 12)) * CMatrix::identity(beta_index(k).size())) << k;
    EXPECT_EQ(rho_k_of(3, lift(1, 0, 3, 1)), cyclo(r(9, 24)) * CMatrix::identity(2));
    EXPECT_EQ(rho_k_of(2, lift(1, 0, 4, 1)), cyclo(r(1, 3)) * CMatrix::identity(2));
}

TEST(VVTransform, ClosedLawMatchesWords) {
    std::mt19937_64 rng(101);
    for (Int k : {1, 2, 3, 4, 5, 6}) {
        for (int i = 0; i < 50; ++i) {
            Mat2 m = testutil::random_gamma0(rng, k, 60);
            EXPECT_EQ(rho_k_closed(k, m), rho_k_of(k, lift(m))) << k << " " << m;
        }
    }
    EXPECT_THROW(t_beta(4, 1, mat2(1, 0, 2, 1)), precondition_error);
    EXPECT_THROW(p_beta(3, 1, mat2(1, 0, 3, 1)), precondition_error);
}

TEST(VVTransform, Homomorphism) {
    std::mt19937_64 rng(103);
    for (Int k : {2, 3, 5}) {
        for (int i = 0; i < 10; ++i) {
            MetaElement g1 = testutil::random_meta(rng, 1, 50), g2 = testutil::random_meta(rng, 1, 50);
            EXPECT_EQ(rho_k_of(k, g1 * g2), rho_k_of(k, g1) * rho_k_of(k, g2)) << k << " " << g1 << " " << g2;
        }
        CMatrix minus = rho_k_of(k, MetaElement(Mat2(), -1));
        EXPECT_EQ(minus, cyclo(r(1, 2)) * CMatrix::identity(minus.size()));
    }
}

TEST(VVTransform, InvariantHermitianForm) {
    // the f_{k,beta} basis is not orthonormal; diag(mu_beta) is preserved
    for (Int k = 1; k <= 8; ++k) {
        CMatrix s = rho_k_s(k);
        std::vector<CycloNumber> w;
        for (const Rational& b : beta_index(k)) w.push_back(CycloNumber(detail::mu(k, b)));
        CMatrix h = CMatrix::diagonal(w);
        EXPECT_EQ(s.conj().transpose() * h * s, h) << k;
    }
}

TEST(VVTransform, MultipliersAreRootsOfUnity) {
    std::mt19937_64 rng(107);
    for (Int k = 1; k <= 10; ++k)
        for (int i = 0; i < 20; ++i) {
            Mat2 m = testutil::random_gamma0(rng, k, 200);
            for (const Rational& b : beta_index(k)) {
                CycloNumber p = p_beta(k, b, m);
                EXPECT_EQ(p.pow(24 * 8 * k), CycloNumber(1)) << k << " " << m << " " << b;
            }
        }
}

TEST(VVTransform, EquivalenceClassTable) {
    // odd k listed by 2 beta
    std::map<Int, std::vector<std::vector<Int>>> table = {
        {1, {{1}}},
        {2, {{0, 1}}},
        {3, {{1}, {3}}},
        {4, {{0, 2}, {1}}},
        {5, {{1, 3}, {5}}},
        {6, {{0, 3}, {1, 2}}},
        {7, {{1, 3, 5}, {7}}},
        {8, {{0, 4}, {1, 3}, {2}}},
        {9, {{1, 5, 7}, {3}, {9}}},
        {10, {{0, 5}, {1, 2, 3, 4}}},
        {11, {{1, 3, 5, 7, 9}, {11}}},
        {12, {{0, 6}, {1, 5}, {2, 4}, {3}}},
        {13, {{1, 3, 5, 7, 9, 11}, {13}}},
        {14, {{0, 7}, {1, 2, 3, 4, 5, 6}}},
    };
    for (auto& [k, expect] : table) {
        std::set<std::vector<Int>> got, want(expect.begin(), expect.end());
        for (auto& cls : equivalence_classes(k)) {
            std::vector<Int> v;
            for (const Rational& b : cls) v.push_back(k % 2 ? to_int(Rational(2 * b).get_num()) : to_int(b.get_num()));
            got.insert(v);
        }
        EXPECT_EQ(got, want) << k;
    }
}

TEST(VVTransform, OrbitsEqualClasses) {
    std::mt19937_64 rng(109);
    for (Int k = 1; k <= 14; ++k) {
        auto classes = equivalence_classes(k);
        for (auto& cls : classes) {
            std::set<Rational> seen;
            for (int i = 0; i < 300; ++i) seen.insert(t_beta(k, cls.front(), testutil::random_gamma0(rng, k, 500)));
            EXPECT_EQ(seen, std::set<Rational>(cls.begin(), cls.end())) << k;
        }
    }
}

TEST(VVTransform, WeilBridge) {
    std::mt19937_64 rng(113);
    for (Int k : {1, 2, 3, 4}) {
        for (int i = 0; i < 30; ++i) {
            MetaElement g = testutil::random_meta(rng, 2, 40);
            EXPECT_TRUE(rho_weil_bridge_check(k, g)) << k << " " << g;
        }
    }
}

TEST(VVTransform, Gamma026Examples) {
    auto [u, v] = gamma026_action(mat2(1, 0, 50, 1), 0);
    CycloNumber z = cyclo(r(1, 3));
    EXPECT_EQ(u, cyclo(r(1, 4)) * (CycloNumber(2) + z) * r(1, 3));
    EXPECT_EQ(v, cyclo(r(1, 4)) * (CycloNumber(1) - z) * r(1, 3));
    auto [u2, v2] = gamma026_action(mat2(1, 0, 100, 1), 0);
    EXPECT_EQ(u2, CycloNumber(-1) * (CycloNumber(2) + z * z) * r(1, 3));
    EXPECT_EQ(v2, CycloNumber(-1) * (CycloNumber(1) - z * z) * r(1, 3));
    EXPECT_THROW(gamma026_action(mat2(1, 1, 0, 1), 0), precondition_error);
}

TEST(VVTransform, Gamma026MatchesWords) {
    std::mt19937_64 rng(127);
    int checked = 0;
    while (checked < 40) {
        Mat2 m = testutil::random_gamma0(rng, 2, 80);
        Int b = to_int(m.b().get_num());
        if (mod(b, 6) != 0) continue;
        Int s = static_cast<Int>(rng() % 7) - 3;
        CMatrix w = rho_k_of(3, lift(m) * meta_T(s));
        auto [u, v] = gamma026_action(m, s);
        EXPECT_EQ(w(0, 0), u) << m << " s=" << s;
        EXPECT_EQ(w(0, 1), v) << m << " s=" << s;
        ++checked;
    }
}

TEST(VVTransform, QuotientMultiplier) {
    std::mt19937_64 rng(131);
    for (Int k : {1, 2, 3, 4, 6}) {
        for (Int n : {3, 5, 9, 25}) {
            if (k % 2 == 0 && n % 2 == 0) continue;
            for (int i = 0; i < 10; ++i) {
                Mat2 m = testutil::random_gamma0(rng, n * lcm(2, k), 300);
                Int a = to_int(m.a().get_num()), b = to_int(m.b().get_num()), c = to_int(m.c().get_num()), d = to_int(m.d().get_num());
                Mat2 mn = mat2(a, n * b, c / n, d);
                for (const Rational& beta : beta_index(k)) {
                    PermAction q = quotient_multiplier(k, beta, n, m);
                    EXPECT_EQ(q.beta, t_beta(k, beta, mn));
                    EXPECT_EQ(q.factor, p_beta(k, beta, m) / p_beta(k, beta, mn)) << k << " " << n << " " << m << " " << beta;
                    if (n == 25) EXPECT_EQ(quotient_multiplier_p2(k, beta, 5, m), q.factor);
                }
            }
        }
    }
    EXPECT_THROW(quotient_multiplier(2, 0, 3, mat2(1, 0, 2, 1)), precondition_error);
    EXPECT_THROW(quotient_multiplier(2, 0, 2, mat2(1, 0, 8, 1)), precondition_error);
}
