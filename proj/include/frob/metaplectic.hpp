#pragma once

// The double cover of GL2+(R) restricted to rational matrices, S-T words for
// SL2(Z), the group algebra over cyclotomic coefficients, and the characters
// chi_eta and chi_k.

#include "frob/cyclo.hpp"

#include <array>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace frob {

// (a b; c d)
struct Mat2 {
    std::array<Rational, 4> e{Rational(1), Rational(0), Rational(0), Rational(1)};

    Mat2() = default;
    Mat2(Rational a, Rational b, Rational c, Rational d) : e{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    const Rational& a() const { return e[0]; }
    const Rational& b() const { return e[1]; }
    const Rational& c() const { return e[2]; }
    const Rational& d() const { return e[3]; }

    Rational det() const { return e[0] * e[3] - e[1] * e[2]; }
    bool is_integral() const {
        for (const auto& x : e)
            if (!is_integer(x)) return false;
        return true;
    }
    bool in_sl2z() const { return is_integral() && det() == 1; }

    Mat2 inverse() const {
        Rational D = det();
        if (D == 0) throw precondition_error("singular matrix");
        return Mat2(e[3] / D, -e[1] / D, -e[2] / D, e[0] / D);
    }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3],
                    x.e[2] * y.e[0] + x.e[3] * y.e[2], x.e[2] * y.e[1] + x.e[3] * y.e[3]);
    }
    friend Mat2 operator*(const Rational& s, const Mat2& x) { return Mat2(s * x.e[0], s * x.e[1], s * x.e[2], s * x.e[3]); }
    friend bool operator==(const Mat2& x, const Mat2& y) { return x.e == y.e; }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }
    friend bool operator<(const Mat2& x, const Mat2& y) { return x.e < y.e; }

    std::string str() const {
        return "(" + e[0].get_str() + " " + e[1].get_str() + "; " + e[2].get_str() + " " + e[3].get_str() + ")";
    }
};

inline Mat2 mat2(Int a, Int b, Int c, Int d) { return Mat2(make_rat(a), make_rat(b), make_rat(c), make_rat(d)); }
inline std::ostream& operator<<(std::ostream& os, const Mat2& m) { return os << m.str(); }

inline int sgn(const Rational& r) { return mpq_sgn(r.get_mpq_t()); }

// sigma(g1, g2) from the sign of the lower-left entries
inline int cocycle_sigma(const Mat2& g1, const Mat2& g2) {
    Mat2 g3 = g1 * g2;
    int c1 = sgn(g1.c()), c2 = sgn(g2.c()), c3 = sgn(g3.c());
    if (c1 == 0 && c2 == 0 && sgn(g1.d()) < 0 && sgn(g2.d()) < 0) return -1;
    if (c1 >= 0 && c2 >= 0 && c3 < 0) return -1;
    if (c1 < 0 && c2 < 0 && c3 >= 0) return -1;
    return 1;
}

struct MetaElement {
    Mat2 m;
    int eps = 1;

    MetaElement() = default;
    MetaElement(Mat2 mat, int e) : m(std::move(mat)), eps(e) {
        if (m.det() <= 0) throw precondition_error("metaplectic element needs positive determinant");
        if (e != 1 && e != -1) throw precondition_error("eps must be +1 or -1");
    }

    friend bool operator==(const MetaElement& x, const MetaElement& y) { return x.eps == y.eps && x.m == y.m; }
    friend bool operator!=(const MetaElement& x, const MetaElement& y) { return !(x == y); }
    friend bool operator<(const MetaElement& x, const MetaElement& y) {
        if (x.m != y.m) return x.m < y.m;
        return x.eps < y.eps;
    }
    std::string str() const { return "(" + m.str() + ", " + (eps > 0 ? "1" : "-1") + ")"; }
};

inline std::ostream& operator<<(std::ostream& os, const MetaElement& g) { return os << g.str(); }

inline MetaElement lift(const Mat2& m) { return MetaElement(m, 1); }
inline MetaElement lift(Int a, Int b, Int c, Int d) { return lift(mat2(a, b, c, d)); }
inline MetaElement meta_identity() { return lift(Mat2()); }
inline MetaElement meta_T(Int n = 1) { return lift(1, n, 0, 1); }
inline MetaElement meta_S() { return lift(0, -1, 1, 0); }

inline MetaElement meta_compose(const MetaElement& g1, const MetaElement& g2) {
    return MetaElement(g1.m * g2.m, g1.eps * g2.eps * cocycle_sigma(g1.m, g2.m));
}

inline MetaElement operator*(const MetaElement& g1, const MetaElement& g2) { return meta_compose(g1, g2); }

inline MetaElement meta_invert(const MetaElement& g) {
    Mat2 mi = g.m.inverse();
    return MetaElement(mi, g.eps * cocycle_sigma(g.m, mi));
}

inline MetaElement meta_pow(const MetaElement& g, Int n) {
    MetaElement base = n < 0 ? meta_invert(g) : g;
    MetaElement r = meta_identity();
    for (Int i = 0; i < (n < 0 ? -n : n); ++i) r = r * base;
    return r;
}

// ---------------------------------------------------------------------------
// S-T words

struct STLetter {
    char gen;   // 'T' or 'S'
    Int power;  // T^power; S letters have power 1
    friend bool operator==(const STLetter& x, const STLetter& y) { return x.gen == y.gen && x.power == y.power; }
};

// g = letters[0] * letters[1] * ... * S~^tail, tail in {0, 2, 4, 6};
// S~^2 = (-I, 1), S~^4 = (I, -1), S~^6 = (-I, -1)
struct STWord {
    std::vector<STLetter> letters;
    Int tail = 0;

    std::string str() const {
        std::string s;
        for (const auto& l : letters) {
            if (!s.empty()) s += " ";
            s += l.gen == 'T' ? "T^" + std::to_string(l.power) : std::string("S");
        }
        if (tail) s += (s.empty() ? "" : " ") + std::string("S^") + std::to_string(tail);
        return s.empty() ? "1" : s;
    }
};

inline void require_sl2z(const Mat2& m) {
    if (!m.in_sl2z()) throw precondition_error("not in SL2(Z): " + m.str());
}

inline MetaElement eval_word(const STWord& w) {
    MetaElement r = meta_identity();
    for (const auto& l : w.letters) r = r * (l.gen == 'T' ? meta_T(l.power) : meta_S());
    for (Int i = 0; i < w.tail; ++i) r = r * meta_S();
    return r;
}

inline STWord st_word(const MetaElement& g) {
    require_sl2z(g.m);
    STWord w;
    BigInt a = g.m.a().get_num(), b = g.m.b().get_num(), c = g.m.c().get_num(), d = g.m.d().get_num();
    // peel M = T^q S M'' with M'' = S^-1 T^-q M
    while (c != 0) {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
        if (q != 0) w.letters.push_back({'T', to_int(q)});
        w.letters.push_back({'S', 1});
        BigInt a1 = a - q * c, b1 = b - q * d;
        a = c;
        b = d;
        c = -a1;
        d = -b1;
    }
    // remaining (a b; 0 d) with a = d = +-1 equals (aI) T^(ab)
    BigInt x = a * b;
    if (x != 0) w.letters.push_back({'T', to_int(x)});
    MetaElement rest = meta_compose(meta_invert(eval_word(w)), g);
    // rest is (+-I, +-1)
    for (Int t = 0; t < 8; t += 2) {
        w.tail = t;
        if (eval_word(w) == g) return w;
    }
    throw verification_error("st_word: reconstruction failed for " + g.str() + " rest " + rest.str());
}

// ---------------------------------------------------------------------------
// characters

namespace detail {
inline Int int_entry(const Rational& r) { return to_int(r.get_num()); }
inline Int mod24(const Rational& r) {
    BigInt z = r.get_num();
    BigInt m;
    mpz_fdiv_r_ui(m.get_mpz_t(), z.get_mpz_t(), 24);
    return to_int(m);
}
}  // namespace detail

// multiplier system of the Dedekind eta function
inline CycloNumber chi_eta(const MetaElement& g) {
    require_sl2z(g.m);
    Int a = detail::mod24(g.m.a()), b = detail::mod24(g.m.b()), c = detail::mod24(g.m.c()), d = detail::mod24(g.m.d());
    Int cf = detail::int_entry(g.m.c()), df = detail::int_entry(g.m.d());
    Int e;
    int kr;
    if (cf % 2 != 0) {
        kr = kronecker(df, cf < 0 ? -cf : cf);
        e = (a + d - 3) * c - b * d * (c * c - 1);
    } else {
        kr = kronecker(cf, df);
        e = (a - 2 * d) * c - b * d * (c * c - 1) + 3 * d - 3;
    }
    return cyclo(make_rat(mod(e, 24), 24)) * make_rat(g.eps * kr);
}

// chi_H([v, w], 1) = (-1)^(vw + v + w)
inline int chi_h(Int v, Int w) { return (mod(v * w + v + w, 2) == 0) ? 1 : -1; }

// chi_k at (g, [0,0], 1) for g in the lift of Gamma0(2)
inline CycloNumber chi_k(Int k, const MetaElement& g) {
    if (k < 1) throw precondition_error("k must be positive");
    require_sl2z(g.m);
    Int c = detail::int_entry(g.m.c()), d = detail::int_entry(g.m.d());
    if (c % 2 != 0) throw precondition_error("not in Gamma0(2): c must be even");
    Int v = c / 2, w = (d - 1) / 2;
    int h = chi_h(mod(v, 2), mod(w, 2));
    CycloNumber r = chi_eta(g).pow(3 * k) * ipow_i(-k * mod(c / 2, 4));
    return (k % 2 == 0 || h == 1) ? r : -r;
}

// ---------------------------------------------------------------------------
// group algebra C[GL2+~] with cyclotomic coefficients

class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(const MetaElement& g) { terms_[g] = CycloNumber(1); }  // NOLINT
    AlgebraElement(const CycloNumber& c, const MetaElement& g) { add_term(c, g); }

    void add_term(const CycloNumber& c, const MetaElement& g) {
        auto it = terms_.find(g);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(g, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    const std::map<MetaElement, CycloNumber>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    friend AlgebraElement operator+(AlgebraElement x, const AlgebraElement& y) {
        for (const auto& [g, c] : y.terms_) x.add_term(c, g);
        return x;
    }
    friend AlgebraElement operator-(AlgebraElement x, const AlgebraElement& y) {
        for (const auto& [g, c] : y.terms_) x.add_term(-c, g);
        return x;
    }
    friend AlgebraElement operator*(const CycloNumber& s, const AlgebraElement& x) {
        AlgebraElement r;
        for (const auto& [g, c] : x.terms_) r.add_term(s * c, g);
        return r;
    }
    friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
        AlgebraElement r;
        for (const auto& [g1, c1] : x.terms_)
            for (const auto& [g2, c2] : y.terms_) r.add_term(c1 * c2, meta_compose(g1, g2));
        return r;
    }
    friend bool operator==(const AlgebraElement& x, const AlgebraElement& y) {
        if (x.terms_.size() != y.terms_.size()) return false;
        auto i = x.terms_.begin();
        for (auto j = y.terms_.begin(); j != y.terms_.end(); ++i, ++j)
            if (i->first != j->first || i->second != j->second) return false;
        return true;
    }
    friend bool operator!=(const AlgebraElement& x, const AlgebraElement& y) { return !(x == y); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [g, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "[" + c.str() + "] " + g.str();
        }
        return s;
    }

private:
    std::map<MetaElement, CycloNumber> terms_;
};

// gcd of the lower-left entries over the support
inline BigInt content(const AlgebraElement& x) {
    BigInt g = 0;
    for (const auto& [e, c] : x.terms()) {
        if (!is_integer(e.m.c())) throw precondition_error("content needs integral lower-left entries");
        BigInt cc = e.m.c().get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cc.get_mpz_t());
    }
    return g;
}

// zeta_12^-1 (1 0; 50 1)~ + zeta_3 (1 0; 100 1)~
inline AlgebraElement algebra_m0() {
    return AlgebraElement(cyclo(make_rat(-1, 12)), lift(1, 0, 50, 1)) + AlgebraElement(cyclo(make_rat(1, 3)), lift(1, 0, 100, 1));
}

// zeta_12^-1 (1 0; 10 1)~ + zeta_3 (1 0; 20 1)~
inline AlgebraElement algebra_m1() {
    return AlgebraElement(cyclo(make_rat(-1, 12)), lift(1, 0, 10, 1)) + AlgebraElement(cyclo(make_rat(1, 3)), lift(1, 0, 20, 1));
}

}  // namespace frob
