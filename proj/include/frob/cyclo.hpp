#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
// Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) reduced
// modulo the N-th cyclotomic polynomial, so equality is coefficientwise.

#include "frob/arith.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace frob {

namespace detail {

using IntPoly = std::vector<Int>;

// (x^d - 1) * p
inline IntPoly mul_xd_minus_1(const IntPoly& p, Int d) {
    IntPoly r(p.size() + d, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i + d] += p[i];
        r[i] -= p[i];
    }
    return r;
}

// p / (x^d - 1), exact
inline IntPoly div_xd_minus_1(const IntPoly& p, Int d) {
    // p = (x^d - 1) q  =>  q_i = q_{i-d} - p_i  (low to high)
    IntPoly q(p.size() - d, 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        Int prev = (i >= static_cast<std::size_t>(d)) ? q[i - d] : 0;
        q[i] = prev - p[i];
    }
    return q;
}

// Phi_N = prod_{d | N} (x^d - 1)^{mu(N/d)}
inline const IntPoly& cyclotomic_poly(Int n) {
    thread_local std::map<Int, IntPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    IntPoly p{1};
    std::vector<Int> den;
    for (Int d : divisors(n)) {
        int mu = moebius(n / d);
        if (mu == 1) p = mul_xd_minus_1(p, d);
        else if (mu == -1) den.push_back(d);
    }
    for (Int d : den) p = div_xd_minus_1(p, d);
    // normalize sign so that the polynomial is monic
    if (p.back() < 0)
        for (auto& x : p) x = -x;
    return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace detail

class CycloNumber {
public:
    CycloNumber() : n_(1), c_(1) {}
    CycloNumber(const Rational& r) : n_(1), c_{r} {}  // NOLINT
    CycloNumber(Int v) : n_(1), c_{make_rat(v)} {}    // NOLINT

    // e(r) = exp(2 pi i r)
    static CycloNumber root(const Rational& r) {
        Rational f = frac(r);
        Int n = to_int(f.get_den());
        Int a = to_int(f.get_num());
        std::vector<Rational> full(n);
        full[a] = 1;
        return CycloNumber(n, std::move(full));
    }
    static CycloNumber root(Int num, Int den) { return root(make_rat(num, den)); }

    // sum_j c_j zeta_n^j for arbitrary exponents j (taken mod n)
    static CycloNumber from_powers(Int n, const std::vector<Rational>& coeffs) {
        std::vector<Rational> full(n);
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (coeffs[j] != 0) full[j % n] += coeffs[j];
        return CycloNumber(n, std::move(full));
    }

    Int conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    // rational value if the element lies in Q
    bool is_rational() const {
        CycloNumber t = *this;
        return t.embed(n_).is_rational_here();
    }
    Rational rational_value() const {
        if (!is_rational_here()) throw std::domain_error("cyclotomic element is not rational");
        return c_[0];
    }

    CycloNumber embed(Int m) const {
        if (m % n_ != 0) throw precondition_error("embed: conductor must divide target");
        std::vector<Rational> full(m);
        Int s = m / n_;
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (c_[j] != 0) full[j * s] = c_[j];
        return CycloNumber(m, std::move(full));
    }

    // zeta -> zeta^a, gcd(a, N) = 1
    CycloNumber galois(Int a) const {
        if (gcd(mod(a, n_), n_) != 1 && n_ > 1) throw precondition_error("galois: exponent not a unit");
        std::vector<Rational> full(n_);
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (c_[j] != 0) full[mod(a * static_cast<Int>(j), n_)] += c_[j];
        return CycloNumber(n_, std::move(full));
    }

    CycloNumber conj() const { return galois(-1); }
    CycloNumber abs2() const { return *this * conj(); }

    CycloNumber inv() const {
        if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
        // extended Euclid in Q[x] against Phi_N
        using Poly = std::vector<Rational>;
        auto trim = [](Poly& p) {
            while (!p.empty() && p.back() == 0) p.pop_back();
        };
        const auto& phi = detail::cyclotomic_poly(n_);
        Poly r0(phi.begin(), phi.end()), r1 = c_;
        for (auto& x : r0) x.canonicalize();
        Poly s0, s1{Rational(1)};
        trim(r1);
        while (r1.size() > 1) {
            Poly q(r0.size() - r1.size() + 1);
            Poly r = r0;
            for (std::size_t i = r.size(); i-- >= r1.size();) {
                if (r[i] == 0) continue;
                Rational t = r[i] / r1.back();
                q[i - r1.size() + 1] = t;
                for (std::size_t j = 0; j < r1.size(); ++j) r[i - r1.size() + 1 + j] -= t * r1[j];
            }
            trim(r);
            Poly s(std::max(s0.size(), q.size() + s1.size()));
            for (std::size_t i = 0; i < s0.size(); ++i) s[i] += s0[i];
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) s[i + j] -= q[i] * s1[j];
            trim(s);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        Rational lead = r1[0];
        std::vector<Rational> full(n_);
        for (std::size_t i = 0; i < s1.size(); ++i) full[i % n_] += s1[i] / lead;
        return CycloNumber(n_, std::move(full));
    }

    CycloNumber operator-() const {
        CycloNumber r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
        if (a.n_ == b.n_) {
            CycloNumber r = a;
            for (std::size_t j = 0; j < r.c_.size(); ++j) r.c_[j] += b.c_[j];
            return r;
        }
        Int m = lcm(a.n_, b.n_);
        std::vector<Rational> full(m);
        a.scatter(full, m);
        b.scatter(full, m);
        return CycloNumber(m, std::move(full));
    }
    friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) { return a + (-b); }

    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
        Int m = lcm(a.n_, b.n_);
        Int sa = m / a.n_, sb = m / b.n_;
        std::vector<Rational> full(m);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                full[(static_cast<Int>(i) * sa + static_cast<Int>(j) * sb) % m] += a.c_[i] * b.c_[j];
            }
        }
        return CycloNumber(m, std::move(full));
    }
    friend CycloNumber operator*(const CycloNumber& a, const Rational& r) {
        CycloNumber t = a;
        for (auto& x : t.c_) x *= r;
        return t;
    }
    friend CycloNumber operator*(const Rational& r, const CycloNumber& a) { return a * r; }
    friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inv(); }

    CycloNumber& operator+=(const CycloNumber& b) { return *this = *this + b; }
    CycloNumber& operator-=(const CycloNumber& b) { return *this = *this - b; }
    CycloNumber& operator*=(const CycloNumber& b) { return *this = *this * b; }

    friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
        if (a.n_ == b.n_) return a.c_ == b.c_;
        return (a - b).is_zero();
    }
    friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

    CycloNumber pow(Int e) const {
        if (e < 0) return inv().pow(-e);
        CycloNumber r(1), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    std::complex<double> to_complex() const {
        std::complex<double> s = 0;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            double ang = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n_);
            s += c_[j].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return s;
    }

    // If this is a root of unity e(r), return r in [0,1); otherwise nullopt-style false.
    bool root_exponent(Rational& out) const {
        for (Int j = 0; j < 2 * n_; ++j) {
            Rational r = make_rat(j, 2 * n_);
            if (*this == root(r)) {
                out = r;
                return true;
            }
        }
        return false;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[j].get_str() << ")";
            if (j > 0) os << "*z" << n_ << "^" << j;
        }
        if (first) os << "0";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloNumber& z) { return os << z.str(); }

private:
    CycloNumber(Int n, std::vector<Rational> full) : n_(n) { reduce(std::move(full)); }

    bool is_rational_here() const {
        for (std::size_t j = 1; j < c_.size(); ++j)
            if (c_[j] != 0) return false;
        return true;
    }

    void scatter(std::vector<Rational>& full, Int m) const {
        Int s = m / n_;
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (c_[j] != 0) full[j * s] += c_[j];
    }

    // full has length n_, exponent j meaning zeta^j
    void reduce(std::vector<Rational> full) {
        const auto& phi = detail::cyclotomic_poly(n_);
        std::size_t deg = phi.size() - 1;
        for (std::size_t i = full.size(); i-- > deg;) {
            if (full[i] == 0) continue;
            Rational t = full[i];
            std::size_t shift = i - deg;
            for (std::size_t j = 0; j <= deg; ++j)
                if (phi[j] != 0) full[shift + j] -= t * static_cast<long>(phi[j]);
        }
        full.resize(deg);
        c_ = std::move(full);
    }

    Int n_;
    std::vector<Rational> c_;
};

inline CycloNumber cyclo(const Rational& r) { return CycloNumber::root(r); }

// i^n
inline CycloNumber ipow_i(Int n) { return CycloNumber::root(make_rat(mod(n, 4), 4)); }

// Exact sqrt(n) for n >= 1 as an element of a cyclotomic field.
// Built from sqrt(2) = z8 + z8^-1 and sqrt(p*) = sum (x/p) z_p^x.
inline CycloNumber sqrt_cyclo(Int n) {
    if (n < 1) throw precondition_error("sqrt_cyclo: n must be positive");
    CycloNumber r(1);
    Int sq = 1;
    Int m = n;
    for (Int p : prime_factors(n)) {
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        sq *= ipow(p, e / 2);
        if (e % 2 == 0) continue;
        if (p == 2) {
            r *= CycloNumber::root(1, 8) + CycloNumber::root(-1, 8);
        } else {
            std::vector<Rational> cs(p);
            for (Int x = 1; x < p; ++x) cs[x] = kronecker(x, p);
            CycloNumber g = CycloNumber::from_powers(p, cs);
            // g^2 = (-1)^((p-1)/2) p
            if (p % 4 == 3) g = g * ipow_i(-1);
            r *= g;
        }
    }
    return r * make_rat(sq);
}

}  // namespace frob
