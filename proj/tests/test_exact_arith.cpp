#include "frob/gauss.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace frob;

namespace {

// Legendre symbol by listing squares
int legendre_brute(Int m, Int p) {
    Int r = mod(m, p);
    if (r == 0) return 0;
    for (Int x = 1; x < p; ++x)
        if ((x * x) % p == r) return 1;
    return -1;
}

}  // namespace

TEST(Kronecker, SpecExamples) {
    EXPECT_EQ(kronecker(5, 1), 1);
    EXPECT_EQ(kronecker(-1, 0), 1);
    EXPECT_EQ(kronecker(1, 0), 1);
    EXPECT_EQ(kronecker(2, 0), 0);
    EXPECT_EQ(kronecker(2, 3), -1);
    EXPECT_EQ(kronecker(3, 2), -1);
    EXPECT_EQ(kronecker(7, 2), 1);
    EXPECT_EQ(kronecker(4, 2), 0);
    EXPECT_EQ(kronecker(5, -1), 1);
    EXPECT_EQ(kronecker(-5, -1), -1);
    EXPECT_EQ(kronecker(0, -1), 1);
}

TEST(Kronecker, LegendreOracle) {
    for (Int p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
        for (Int m = -70; m <= 70; ++m) EXPECT_EQ(kronecker(m, p), legendre_brute(m, p)) << m << " " << p;
}

TEST(Kronecker, CompletelyMultiplicative) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Int> dist(-300, 300);
    for (int it = 0; it < 2000; ++it) {
        Int m = dist(rng), a = dist(rng), b = dist(rng);
        if (a == 0 || b == 0) continue;
        EXPECT_EQ(kronecker(m, a * b), kronecker(m, a) * kronecker(m, b));
    }
}

TEST(Kronecker, Periodicity) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Int> dist(-200, 200);
    for (int it = 0; it < 3000; ++it) {
        Int m = dist(rng), n = dist(rng);
        if (m == 0 || n <= 0) continue;
        Int r = mod(m, 4);
        Int period = (r == 0 || r == 1) ? (m < 0 ? -m : m) : (r == 2 ? 4 * (m < 0 ? -m : m) : 0);
        if (period == 0) continue;
        EXPECT_EQ(kronecker(m, n), kronecker(m, n + period)) << m << " " << n;
    }
    // m -> (m/n) is n-periodic for odd positive n
    for (Int n = 1; n < 60; n += 2)
        for (Int m = -50; m < 50; ++m) EXPECT_EQ(kronecker(m, n), kronecker(m + n, n));
}

TEST(Cyclo, Basics) {
    EXPECT_EQ(cyclo(make_rat(1, 2)), CycloNumber(-1));
    EXPECT_EQ(cyclo(make_rat(1, 3)) + cyclo(make_rat(2, 3)), CycloNumber(-1));
    EXPECT_EQ(cyclo(make_rat(1, 8)).abs2(), CycloNumber(1));
    EXPECT_EQ(cyclo(make_rat(1, 4)) * cyclo(make_rat(1, 4)), CycloNumber(-1));
    EXPECT_EQ(cyclo(make_rat(7, 5)), cyclo(make_rat(2, 5)));
    EXPECT_EQ(cyclo(make_rat(-1, 6)), cyclo(make_rat(5, 6)));
    EXPECT_EQ(cyclo(make_rat(1, 12)).pow(12), CycloNumber(1));
    EXPECT_THROW(CycloNumber(0).inv(), std::domain_error);
}

TEST(Cyclo, FieldAxiomsRandom) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<Int> num(-5, 5), den(0, 7);
    const Int dens[] = {1, 2, 3, 4, 6, 8, 12, 24};
    auto rnd = [&]() {
        CycloNumber z(0);
        for (int t = 0; t < 3; ++t) z += cyclo(make_rat(num(rng), dens[den(rng)])) * make_rat(num(rng), 1 + (num(rng) + 5) % 3);
        return z;
    };
    for (int it = 0; it < 60; ++it) {
        CycloNumber a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a.conj().conj(), a);
        EXPECT_EQ(a.embed(a.conductor() * 6), a);
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inv(), CycloNumber(1));
        }
        // conjugation agrees with complex conjugation
        EXPECT_NEAR(std::abs(a.conj().to_complex() - std::conj(a.to_complex())), 0.0, 1e-9);
    }
}

TEST(Cyclo, SqrtIsExact) {
    for (Int n = 1; n <= 80; ++n) {
        CycloNumber s = sqrt_cyclo(n);
        EXPECT_EQ(s * s, CycloNumber(n)) << n;
        EXPECT_NEAR(s.to_complex().real(), std::sqrt(static_cast<double>(n)), 1e-9);
        EXPECT_NEAR(s.to_complex().imag(), 0.0, 1e-9);
    }
}

TEST(Gauss, Examples) {
    EXPECT_EQ(classical_gauss_sum(1, 1), CycloNumber(1));
    EXPECT_EQ(classical_gauss_sum(1, 4), CycloNumber(2) + CycloNumber(2) * ipow_i(1));
    EXPECT_EQ(classical_gauss_sum(1, 3), ipow_i(1) * sqrt_cyclo(3));
    EXPECT_EQ(classical_gauss_sum(1, 3), CycloNumber(1) + CycloNumber(2) * cyclo(make_rat(1, 3)));
    EXPECT_THROW(classical_gauss_sum(2, 4, Method::closed), precondition_error);
    EXPECT_THROW(classical_gauss_sum(1, -3, Method::closed), precondition_error);
}

TEST(Gauss, BruteEqualsClosed) {
    for (Int m = 1; m <= 60; ++m) {
        for (Int n = -m; n <= 2 * m; ++n) {
            if (gcd(mod(n, m), m) != 1) continue;
            CycloNumber b = classical_gauss_sum(n, m, Method::brute);
            CycloNumber c = classical_gauss_sum(n, m, Method::closed);
            ASSERT_EQ(b, c) << n << " " << m;
            Int expect = (m % 2 == 1) ? m : (m % 4 == 0 ? 2 * m : 0);
            ASSERT_EQ(b.abs2(), CycloNumber(expect));
        }
    }
}
