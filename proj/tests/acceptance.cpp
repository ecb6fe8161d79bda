// One line per acceptance criterion. Exit status is the number of failures.

#include "frob/gauss.hpp"
#include "frob/numcheck.hpp"
#include "frob/tables.hpp"
#include "frob/weilrep.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace frob;

namespace {

struct Verdict {
    bool pass = true;
    std::string note;
};

Rational r(Int n, Int d = 1) { return make_rat(n, d); }

CMatrix from_ints(CycloNumber pre, const std::vector<std::vector<Int>>& rows) {
    CMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = pre * r(rows[i][j]);
    return m;
}

// d != 0 and the level divides b c, as the closed Weil coefficient needs
MetaElement admissible(std::mt19937_64& rng, Int k, Int bound) {
    Int level = k % 2 == 0 ? k : 4 * k;
    for (;;) {
        Mat2 m = testutil::random_gamma0(rng, level, bound);
        if (rng() % 2) m = Mat2(m.d(), m.c(), m.b(), m.a());
        if (m.d() != 0) return lift(m);
    }
}

Mat2 random_rational_matrix(std::mt19937_64& rng) {
    std::uniform_int_distribution<Int> e(-4, 4), den(1, 3), zero(0, 3);
    for (;;) {
        Rational c = zero(rng) == 0 ? Rational(0) : make_rat(e(rng), den(rng));
        Mat2 m(make_rat(e(rng), den(rng)), make_rat(e(rng), den(rng)), c, make_rat(e(rng), den(rng)));
        if (m.det() > 0) return m;
    }
}

Verdict scan_ok(const std::string& fam, Int alpha, Int nmax, Int offset, Int modulus) {
    CongruenceReport rep = congruence_scan(fam, alpha, nmax);
    std::ostringstream os;
    os << fam << " " << rep.step << "n+" << rep.offset << " mod " << rep.modulus << " n<=" << nmax << ": " << rep.failures.size() << " failures";
    return {rep.pass && rep.offset == offset && rep.modulus == modulus && rep.checked == nmax + 1, os.str()};
}

Verdict c1() {
    auto [t2, s2] = rho_k_generators(2);
    auto [t3, s3] = rho_k_generators(3);
    auto [t4, s4] = rho_k_generators(4);
    bool ok = t2 == CMatrix::diagonal({cyclo(r(1, 6)), cyclo(r(-1, 12))}) &&
              s2 == from_ints(cyclo(r(1, 8)) / sqrt_cyclo(2), {{-1, 1}, {1, 1}}) &&
              t3 == CMatrix::diagonal({cyclo(r(5, 24)), cyclo(r(-1, 8))}) &&
              s3 == from_ints(cyclo(r(1, 8)) / sqrt_cyclo(3), {{-1, 1}, {2, 1}}) &&
              t4 == CMatrix::diagonal({cyclo(r(1, 3)), cyclo(r(5, 24)), cyclo(r(-1, 6))}) &&
              s4 == from_ints(cyclo(r(1, 8)) * r(1, 2), {{1, -2, 1}, {-1, 0, 1}, {1, 2, 1}});
    return {ok, "T and S for k = 2, 3, 4"};
}

Verdict c2() {
    bool a = cpsi3_closed(r(1, 2), 100) == cpsi(3, r(1, 2), 100);
    bool b = cpsi3_closed(r(3, 2), 100) == cpsi(3, r(3, 2), 100);
    return {a && b, "both k = 3 eta quotients to order 100"};
}

Verdict c3() {
    std::vector<Verdict> v = {scan_ok("cpsi3-12", 2, 200, 5, 5), scan_ok("cpsi3-32", 2, 200, 22, 5), scan_ok("cpsi3-12", 4, 20, 130, 25),
                              scan_ok("cpsi3-32", 4, 20, 547, 25)};
    Verdict out{true, ""};
    for (const auto& x : v) {
        out.pass = out.pass && x.pass;
        out.note += (out.note.empty() ? "" : "; ") + x.note;
    }
    return out;
}

Verdict c4() {
    std::vector<Verdict> v = {scan_ok("cphi2", 1, 200, 3, 5), scan_ok("cphi2", 2, 50, 23, 25), scan_ok("cpsi2-0", 1, 200, 4, 5)};
    Verdict out{true, ""};
    for (const auto& x : v) {
        out.pass = out.pass && x.pass;
        out.note += (out.note.empty() ? "" : "; ") + x.note;
    }
    return out;
}

Verdict c5() {
    AppendixReport rep = verify_appendix_a(60);
    bool below = std::all_of(rep.results.begin(), rep.results.end(), [](const RelationResult& x) { return x.checked_below >= 60; });
    BaseFunctions b = base_functions(appendix_base_order(60), false);
    AppendixReport printed = verify_relations(b, b.A, b.p0, b.p1, 60, appendix_relations_as_printed());
    std::ostringstream os;
    os << rep.results.size() - rep.failures() << "/" << rep.results.size() << " hold to order 60; " << printed.results.size()
       << " relations carry a transcription correction (" << printed.failures() << " of them fail as printed)";
    return {rep.results.size() == 20 && rep.all_hold() && below, os.str()};
}

Verdict c6() {
    PBar pb = pbar(60);
    bool ok = agree(pb.p0, pb.p0_closed) && agree(pb.p1, pb.p1_closed) && pb.p0.trunc_exponent() >= 60 && pb.p1.trunc_exponent() >= 60 && pb.integral;
    return {ok, "recursion route equals eta-product route to order 60, integral"};
}

Verdict c7() {
    std::mt19937_64 rng(101);
    int n = 0, bad = 0;
    for (Int k : {2, 3, 4, 6})
        for (int i = 0; i < 50; ++i, ++n) {
            Mat2 m = testutil::random_gamma0(rng, k, 60);
            if (rho_k_closed(k, m) != rho_k_of(k, lift(m))) ++bad;
        }
    int w = 0, wbad = 0;
    std::mt19937_64 rng2(37);
    for (Int k = 1; k <= 4; ++k) {
        DiscModule D(k);
        for (int i = 0; i < 10; ++i, ++w) {
            MetaElement g = admissible(rng2, k, 40);
            CMatrix words = weil_rho(k, g);
            bool same = true;
            for (Int y = 0; y < D.order; ++y)
                for (Int x = 0; x < D.order; ++x) same = same && weil_coeff_closed(k, g, y, x) == words(y, x);
            if (!same) ++wbad;
        }
    }
    std::ostringstream os;
    os << n << " Gamma0 samples (" << bad << " mismatches), " << w << " Weil samples (" << wbad << " mismatches)";
    return {bad == 0 && wbad == 0, os.str()};
}

Verdict c8() {
    int n = 0, bad = 0;
    for (Int k = 1; k <= 4; ++k)
        for (const Rational& b : beta_index(k)) {
            ++n;
            HComponent h = h_component(k, b / k, 70);
            Rational pre = h.prefactor.rational_value() * (k % 2 ? -1 : 1);
            FracQSeries rhs = h.series * eta_series(24 * 80).pow(-k) * pre;
            FracQSeries lhs = f_kbeta(k, b, 60);
            if (!agree(lhs, rhs) || std::min(lhs.trunc_exponent(), rhs.trunc_exponent()) < 59) ++bad;
        }
    std::ostringstream os;
    os << n << " (k, beta) pairs, " << bad << " mismatches";
    return {bad == 0, os.str()};
}

Verdict c9() {
    auto res = run_battery();
    double worst = 0;
    std::string failed;
    for (const auto& x : res) {
        worst = std::max(worst, x.residual);
        if (!x.pass) failed += " " + x.id;
    }
    std::ostringstream os;
    os << res.size() << " laws, worst residual " << worst;
    if (!failed.empty()) os << ", failing:" << failed;
    return {failed.empty() && worst < 1e-8, os.str()};
}

Verdict c10() {
    bool ex = lift(-1, 0, 1, -1) * lift(1, 0, 2, 1) == MetaElement(mat2(-1, 0, -1, -1), -1);
    std::mt19937_64 rng(29);
    int assoc = 0;
    for (int i = 0; i < 500; ++i) {
        MetaElement g1(random_rational_matrix(rng), 1), g2(random_rational_matrix(rng), -1);
        MetaElement g3 = testutil::random_meta(rng, 1, 20);
        if ((g1 * g2) * g3 != g1 * (g2 * g3)) ++assoc;
    }
    int words = 0;
    for (int i = 0; i < 200; ++i) {
        MetaElement h = testutil::random_meta(rng, 1, 1000000);
        if (eval_word(st_word(h)) != h) ++words;
    }
    int chi = 0;
    for (int i = 0; i < 200; ++i) {
        MetaElement g1 = testutil::random_meta(rng, 1, 300), g2 = testutil::random_meta(rng, 1, 300);
        if (chi_eta(g1 * g2) != chi_eta(g1) * chi_eta(g2)) ++chi;
    }
    std::ostringstream os;
    os << "example " << (ex ? "ok" : "wrong") << ", failures: associativity " << assoc << "/500, words " << words << "/200, chi_eta " << chi << "/200";
    return {ex && assoc == 0 && words == 0 && chi == 0, os.str()};
}

Verdict c11() {
    bool classes = true;
    for (Int k = 1; k <= 14; ++k) classes = classes && classes_match_table(k);
    bool mk = true;
    double margin = 0;
    for (Int k = 1; k <= 8; ++k) {
        MkResult x = m_k(k, k <= 6 ? MkMode::exact : MkMode::floating);
        mk = mk && mk_reference(k) && *mk_reference(k) == x.value;
        if (k > 6) margin = std::max(margin, std::abs(x.raw - static_cast<double>(x.value)));
    }
    std::ostringstream os;
    os << "classes k<=14 " << (classes ? "match" : "differ") << ", m_k k<=8 " << (mk ? "match" : "differ") << ", float rounding margin " << margin;
    return {classes && mk && margin < 1e-6, os.str()};
}

Verdict c12() {
    int bad = 0, sums = 0;
    for (Int m = 1; m <= 60; ++m)
        for (Int n = -m; n <= 2 * m; ++n) {
            if (gcd(mod(n, m), m) != 1) continue;
            ++sums;
            if (classical_gauss_sum(n, m, Method::brute) != classical_gauss_sum(n, m, Method::closed)) ++bad;
        }
    std::mt19937_64 rng(8);
    int gbad = 0;
    for (int i = 0; i < 30; ++i) {
        Int k = 1 + static_cast<Int>(rng() % 6);
        MetaElement g = admissible(rng, k, 30);
        Int d = to_int(g.m.d().get_num()), b = to_int(g.m.b().get_num());
        Int twob = 2 * static_cast<Int>(rng() % (2 * k)) + (k % 2);
        Rational beta = make_rat(twob, 2);
        if (frak_g_brute(k, b, d, beta / k) != frak_g_closed(k, g.m, beta)) ++gbad;
    }
    int vbad = 0, cells = 0;
    for (Int k = 1; k <= 5; ++k)
        for (Int d = -12; d <= 12; ++d) {
            DSubsets s = d_subsets(k, d);
            DiscModule D(k);
            std::set<Int> bullet(s.bullet.begin(), s.bullet.end());
            for (Int x = 0; x < D.order; ++x, ++cells)
                if (scr_g(k, d, x).is_zero() != (bullet.count(x) == 0)) ++vbad;
        }
    std::ostringstream os;
    os << "mismatches: classical " << bad << "/" << sums << ", frak g " << gbad << "/30, vanishing " << vbad << "/" << cells;
    return {bad == 0 && gbad == 0 && vbad == 0, os.str()};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: none
    std::function<Verdict()> run;
};

}  // namespace

int main() {
    std::vector<Criterion> all = {
        {1, "generator matrices k = 2, 3, 4", 1, c1},
        {2, "k = 3 closed forms", 10, c2},
        {3, "mod 5 and mod 25 families for k = 3", 120, c3},
        {4, "classical congruences", 0, c4},
        {5, "twenty U5 relations", 60, c5},
        {6, "pbar two routes", 0, c6},
        {7, "closed laws equal word products", 0, c7},
        {8, "Jacobi extraction equals h / eta^k", 0, c8},
        {9, "numeric law battery", 0, c9},
        {10, "metaplectic core", 0, c10},
        {11, "class table and m_k table", 600, c11},
        {12, "Gauss sums", 0, c12},
    };
    int failures = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && s > c.budget_s) {
            v.pass = false;
            v.note += "; over the time budget";
        }
        if (!v.pass) ++failures;
        std::printf("[%s] %2d %s (%.2fs): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, s, v.note.c_str());
        std::fflush(stdout);
    }
    return failures;
}
