#pragma once

// Integer and rational helpers shared by every other header.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace frob {

using Int = std::int64_t;
using BigInt = mpz_class;
using Rational = mpq_class;

struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct truncation_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }
inline Int lcm(Int a, Int b) { return (a == 0 || b == 0) ? 0 : std::lcm(a, b); }
inline int sgn(Int x) { return (x > 0) - (x < 0); }

inline Rational make_rat(Int n, Int d = 1) {
    if (d == 0) throw std::domain_error("zero denominator");
    Rational r(BigInt(static_cast<long>(n)), BigInt(static_cast<long>(d)));
    r.canonicalize();
    return r;
}

inline Int to_int(const BigInt& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
    return z.get_si();
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// r - floor(r), in [0, 1)
inline Rational frac(const Rational& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return r - Rational(q);
}

inline BigInt floor(const Rational& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw precondition_error("bad rational: " + s);
    if (r.get_den() == 0) throw precondition_error("bad rational: " + s);
    r.canonicalize();
    return r;
}

inline Int ipow(Int b, int e) {
    Int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// p-adic valuation of a nonzero integer
inline int valuation(BigInt z, Int p) {
    if (z == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    BigInt P(static_cast<long>(p));
    while (mpz_divisible_p(z.get_mpz_t(), P.get_mpz_t())) {
        z /= P;
        ++v;
    }
    return v;
}

inline bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<Int> prime_factors(Int n) {
    std::vector<Int> ps;
    if (n < 0) n = -n;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline std::vector<Int> divisors(Int n) {
    std::vector<Int> ds;
    for (Int d = 1; d <= n; ++d)
        if (n % d == 0) ds.push_back(d);
    return ds;
}

inline Int euler_phi(Int n) {
    Int r = n;
    for (Int p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

inline int moebius(Int n) {
    int m = 1;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

// x, y with a*x + b*y = g = gcd(a, b) >= 0
inline Int ext_gcd(Int a, Int b, Int& x, Int& y) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = floor_div(a, b);
        Int t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    x = x0;
    y = y0;
    return a;
}

inline Int inv_mod(Int a, Int m) {
    Int x, y;
    if (ext_gcd(mod(a, m), m, x, y) != 1) throw precondition_error("not invertible modulo m");
    return mod(x, m);
}

// Kronecker-Jacobi symbol (m/n), total on Z x Z.
inline int kronecker(Int m, Int n) {
    if (n == 0) return (m == 1 || m == -1) ? 1 : 0;
    int s = 1;
    if (n < 0) {
        n = -n;
        if (m < 0) s = -s;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (m % 2 == 0) return 0;
        Int r = mod(m, 8);
        if (r == 3 || r == 5) s = -s;
    }
    if (n == 1) return s;
    Int a = mod(m, n);
    Int b = n;
    // Jacobi symbol (a/b), b odd positive
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int r = b % 8;
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, b);
        if (a % 4 == 3 && b % 4 == 3) s = -s;
        a %= b;
    }
    return b == 1 ? s : 0;
}

}  // namespace frob
