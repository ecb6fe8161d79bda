#pragma once

// Truncated Laurent series in q with exponents on a grid (1/D)Z.
// A series is valid strictly below its truncation bound T (scaled by D).

#include "frob/arith.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

namespace frob {

class FracQSeries {
public:
    static constexpr Int kExact = INT64_MAX / 8;  // "no truncation"
    static constexpr int kInfValuation = INT_MAX;

    FracQSeries() : d_(1), t_(kExact) {}
    FracQSeries(Int grid, Int trunc) : d_(grid), t_(trunc) {
        if (grid <= 0) throw precondition_error("grid must be positive");
    }

    static FracQSeries constant(const Rational& c, Int grid = 1) {
        FracQSeries f(grid, kExact);
        if (c != 0) f.terms_[0] = c;
        return f;
    }
    // c * q^r, exact
    static FracQSeries monomial(const Rational& r, const Rational& c = 1) {
        Int g = to_int(r.get_den());
        FracQSeries f(g, kExact);
        if (c != 0) f.terms_[to_int(r.get_num())] = c;
        return f;
    }

    Int grid() const { return d_; }
    Int trunc() const { return t_; }
    bool exact() const { return t_ >= kExact; }
    Rational trunc_exponent() const { return make_rat(t_, d_); }
    const std::map<Int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // lowest stored scaled exponent, or T if there is none
    Int valuation() const { return terms_.empty() ? t_ : terms_.begin()->first; }
    Rational valuation_exponent() const { return make_rat(valuation(), d_); }

    void set(Int e, const Rational& c) {
        if (e >= t_) throw truncation_error("set beyond truncation");
        if (c == 0) terms_.erase(e);
        else terms_[e] = c;
    }
    void add_to(Int e, const Rational& c) {
        if (e >= t_ || c == 0) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coeff_scaled(Int e) const {
        if (e >= t_) throw truncation_error("coefficient requested at or beyond truncation");
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coeff_at(const Rational& r) const {
        Rational s = r * d_;
        if (!exact() && s >= t_) throw truncation_error("coefficient requested at or beyond truncation");
        if (!is_integer(s)) return 0;
        return coeff_scaled(to_int(s.get_num()));
    }

    // same series on the finer grid m (d_ | m)
    FracQSeries regrid(Int m) const {
        if (m % d_ != 0) throw precondition_error("regrid: grid must divide target");
        Int s = m / d_;
        FracQSeries r(m, exact() ? kExact : t_ * s);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e * s, c);
        return r;
    }

    FracQSeries truncate(const Rational& order) const {
        Rational s = order * d_;
        BigInt cut;
        mpz_cdiv_q(cut.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
        Int nt = std::min(t_, cut.fits_slong_p() ? cut.get_si() : kExact);
        FracQSeries r(d_, nt);
        for (const auto& [e, c] : terms_)
            if (e < nt) r.terms_.emplace(e, c);
        return r;
    }

    FracQSeries operator-() const {
        FracQSeries r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend FracQSeries operator+(const FracQSeries& a, const FracQSeries& b) {
        Int m = lcm(a.d_, b.d_);
        FracQSeries x = a.regrid(m), y = b.regrid(m);
        FracQSeries r(m, std::min(x.t_, y.t_));
        for (const auto& [e, c] : x.terms_) r.add_to(e, c);
        for (const auto& [e, c] : y.terms_) r.add_to(e, c);
        return r;
    }
    friend FracQSeries operator-(const FracQSeries& a, const FracQSeries& b) { return a + (-b); }

    friend FracQSeries operator*(const FracQSeries& a, const Rational& s) {
        FracQSeries r(a.d_, a.t_);
        if (s == 0) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }
    friend FracQSeries operator*(const Rational& s, const FracQSeries& a) { return a * s; }

    friend FracQSeries operator*(const FracQSeries& a, const FracQSeries& b) {
        Int m = lcm(a.d_, b.d_);
        FracQSeries x = a.regrid(m), y = b.regrid(m);
        Int va = x.valuation(), vb = y.valuation();
        Int t = std::min(sat_add(x.t_, vb), sat_add(y.t_, va));
        FracQSeries r(m, std::min(t, kExact));
        if (x.terms_.empty() || y.terms_.empty()) return r;
        // accumulate on the common stride of both supports
        Int stride = 0;
        for (const auto& [e, c] : x.terms_) stride = gcd(stride, e - va);
        for (const auto& [e, c] : y.terms_) stride = gcd(stride, e - vb);
        if (stride == 0) stride = 1;
        Int base = va + vb;
        Int hi = r.exact() ? x.terms_.rbegin()->first + y.terms_.rbegin()->first + 1 : r.t_;
        if (hi <= base) return r;
        std::vector<Rational> acc(static_cast<std::size_t>((hi - base + stride - 1) / stride));
        std::vector<std::pair<Int, const Rational*>> ya;
        ya.reserve(y.terms_.size());
        for (const auto& [e, c] : y.terms_) ya.emplace_back(e, &c);
        Rational tmp;
        for (const auto& [ea, ca] : x.terms_) {
            if (ea + vb >= hi) break;
            for (const auto& [eb, cb] : ya) {
                Int e = ea + eb;
                if (e >= hi) break;
                mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb->get_mpq_t());
                acc[(e - base) / stride] += tmp;
            }
        }
        for (std::size_t i = 0; i < acc.size(); ++i)
            if (acc[i] != 0) r.terms_.emplace_hint(r.terms_.end(), base + static_cast<Int>(i) * stride, std::move(acc[i]));
        return r;
    }

    FracQSeries& operator+=(const FracQSeries& b) { return *this = *this + b; }
    FracQSeries& operator-=(const FracQSeries& b) { return *this = *this - b; }
    FracQSeries& operator*=(const FracQSeries& b) { return *this = *this * b; }

    // 1/g for g with a nonzero leading term
    FracQSeries inverse() const {
        if (terms_.empty()) throw std::domain_error("inverse of a series with no known leading term");
        Int v = valuation();
        const Rational& lead = terms_.begin()->second;
        Int stride = 0;
        for (const auto& [e, c] : terms_) stride = gcd(stride, e - v);
        if (stride == 0) {
            // monomial
            FracQSeries r(d_, exact() ? kExact : t_ - 2 * v);
            r.terms_[-v] = 1 / lead;
            return r;
        }
        if (exact()) throw precondition_error("inverse of an exact non-monomial needs a truncation");
        Int rel = t_ - v;  // relative precision in scaled units
        Int n = (rel + stride - 1) / stride;
        std::vector<Rational> u(n), h(n);
        for (const auto& [e, c] : terms_) {
            Int i = (e - v) / stride;
            if (i < n) u[i] = c;
        }
        Rational il = 1 / lead;
        Rational tmp;
        for (Int i = 0; i < n; ++i) {
            Rational s = (i == 0) ? Rational(1) : Rational(0);
            for (Int j = 1; j <= i; ++j) {
                if (u[j] == 0 || h[i - j] == 0) continue;
                mpq_mul(tmp.get_mpq_t(), u[j].get_mpq_t(), h[i - j].get_mpq_t());
                s -= tmp;
            }
            h[i] = s * il;
        }
        FracQSeries r(d_, -v + rel);
        for (Int i = 0; i < n; ++i)
            if (h[i] != 0 && -v + i * stride < r.t_) r.terms_.emplace_hint(r.terms_.end(), -v + i * stride, h[i]);
        return r;
    }

    FracQSeries div_by_unit(const FracQSeries& g) const { return *this * g.inverse(); }

    FracQSeries pow(Int n) const {
        if (n < 0) return inverse().pow(-n);
        FracQSeries r = constant(1, d_), b = *this;
        while (n > 0) {
            if (n & 1) r *= b;
            n >>= 1;
            if (n > 0) b *= b;
        }
        return r;
    }

    // q -> q^m
    FracQSeries scale_q(Int m) const {
        if (m <= 0) throw precondition_error("scale_q needs a positive integer");
        FracQSeries r(d_, exact() ? kExact : t_ * m);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e * m, c);
        return r;
    }

    // multiply by q^r
    FracQSeries shift_q(const Rational& r) const {
        Int m = lcm(d_, to_int(r.get_den()));
        FracQSeries x = regrid(m);
        Int s = to_int(Rational(r * m).get_num());
        FracQSeries out(m, x.exact() ? kExact : x.t_ + s);
        for (const auto& [e, c] : x.terms_) out.terms_.emplace(e + s, c);
        return out;
    }

    // drop grid to the smallest D compatible with the stored exponents and T
    FracQSeries compact() const {
        Int g = exact() ? d_ : gcd(d_, t_);
        for (const auto& [e, c] : terms_) g = gcd(g, e);
        if (g <= 1) return *this;
        FracQSeries r(d_ / g, exact() ? kExact : t_ / g);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e / g, c);
        return r;
    }

    friend bool operator==(const FracQSeries& a, const FracQSeries& b) {
        Int m = lcm(a.d_, b.d_);
        FracQSeries x = a.regrid(m), y = b.regrid(m);
        return x.t_ == y.t_ && x.terms_ == y.terms_;
    }

    // agreement on all exponents below both truncations
    friend bool agree(const FracQSeries& a, const FracQSeries& b) {
        Int m = lcm(a.d_, b.d_);
        FracQSeries x = a.regrid(m), y = b.regrid(m);
        Int t = std::min(x.t_, y.t_);
        return x.truncate(make_rat(t, m)).terms_ == y.truncate(make_rat(t, m)).terms_;
    }

    std::string str(std::size_t max_terms = 12) const {
        std::ostringstream os;
        std::size_t n = 0;
        for (const auto& [e, c] : terms_) {
            if (n++ == max_terms) {
                os << " + ...";
                break;
            }
            if (n > 1) os << " + ";
            os << c.get_str() << "*q^(" << make_rat(e, d_).get_str() << ")";
        }
        if (!exact()) os << " + O(q^(" << make_rat(t_, d_).get_str() << "))";
        return os.str();
    }

private:
    static Int sat_add(Int a, Int b) {
        if (a >= kExact || b >= kExact) return kExact;
        return a + b;
    }

    Int d_;
    Int t_;
    std::map<Int, Rational> terms_;
};

inline void PrintTo(const FracQSeries& f, std::ostream* os) { *os << f.str(); }

using EtaQuotientSpec = std::vector<std::pair<Int, Int>>;  // (scale m, exponent r)

namespace detail {

inline BigInt sigma1(Int n) {
    BigInt s = 0;
    for (Int d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            s += static_cast<long>(d);
            if (d * d != n) s += static_cast<long>(n / d);
        }
    return s;
}

// Coefficients F_0..F_{n-1} of prod_m prod_j (1 - q^{m j})^{r_m}.
// n F_n = sum_{j>=1} c_j F_{n-j},  c_j = -sum_{m | j} r_m m sigma(j/m).
inline std::vector<BigInt> eta_product_coeffs(const EtaQuotientSpec& spec, Int n) {
    std::vector<BigInt> c(n + 1), f(n);
    for (Int j = 1; j < n; ++j)
        for (const auto& [m, r] : spec)
            if (j % m == 0) c[j] -= BigInt(static_cast<long>(r * m)) * sigma1(j / m);
    if (n > 0) f[0] = 1;
    BigInt s;
    for (Int i = 1; i < n; ++i) {
        s = 0;
        for (Int j = 1; j <= i; ++j)
            if (c[j] != 0 && f[i - j] != 0) s += c[j] * f[i - j];
        mpz_divexact_ui(f[i].get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return f;
}

}  // namespace detail

// q^{1/24} prod_{j>=1} (1 - q^j), grid 24, valid at least below order (scaled by 24)
inline FracQSeries eta_series(Int order) {
    if (order <= 0) throw precondition_error("eta_series: order must be positive");
    Int n = (order - 1 + 23) / 24 + 1;  // integer exponents 0..n-1 kept
    std::vector<Int> a(n, 0);
    a[0] = 1;
    for (Int j = 1; j < n; ++j)
        for (Int i = n - 1; i >= j; --i) a[i] -= a[i - j];
    FracQSeries f(24, 1 + 24 * n);
    for (Int i = 0; i < n; ++i)
        if (a[i] != 0) f.set(1 + 24 * i, a[i]);
    return f;
}

// prod eta(m tau)^r, grid 24, valid at least below order (scaled by 24)
inline FracQSeries eta_quotient(const EtaQuotientSpec& spec, Int order) {
    if (order <= 0) throw precondition_error("eta_quotient: order must be positive");
    Int off = 0;
    for (const auto& [m, r] : spec) {
        if (m <= 0) throw precondition_error("eta_quotient: scales must be positive");
        off += m * r;
    }
    if (spec.empty()) return FracQSeries::constant(1, 24);
    Int n = std::max<Int>(1, floor_div(order - off + 23, 24));
    auto coeffs = detail::eta_product_coeffs(spec, n);
    FracQSeries f(24, off + 24 * n);
    for (Int i = 0; i < n; ++i)
        if (coeffs[i] != 0) f.set(off + 24 * i, Rational(coeffs[i]));
    return f;
}

// (1/p) sum_{x in R} f((tau + x)/p) with R = {0, N, ..., (p-1)N}
inline FracQSeries u_operator(const FracQSeries& f, Int p, Int step) {
    if (step <= 0 || p <= 1) throw precondition_error("u_operator: bad parameters");
    if (gcd(step, p) != 1) throw precondition_error("u_operator: R is not a complete residue system");
    Int d = f.grid();
    // output exponents e/p may need the finer grid d*p when p | d
    Int g = (d % p == 0) ? d * p : d;
    Int s = g / d;
    FracQSeries r(g, f.exact() ? FracQSeries::kExact : floor_div(f.trunc() * s + p - 1, p));
    for (const auto& [e, c] : f.terms()) {
        if ((e * step) % d != 0) throw precondition_error("u_operator: series is not periodic under tau -> tau + N");
        Int m = e * step / d;
        if (m % p != 0) continue;
        Int es = e * s;
        if (es % p != 0) throw precondition_error("u_operator: grid bookkeeping failed");
        r.set(es / p, c);
    }
    if (g == d) return r;
    FracQSeries c = r.compact();
    return d % c.grid() == 0 ? c.regrid(d) : c;
}

// minimum p-adic valuation of the coefficients with exponent in [lo, hi)
inline int min_padic_valuation(const FracQSeries& f, Int p, const Rational& lo, const Rational& hi) {
    if (!f.exact() && hi > f.trunc_exponent()) throw truncation_error("valuation range beyond truncation");
    int best = FracQSeries::kInfValuation;
    for (const auto& [e, c] : f.terms()) {
        Rational x = make_rat(e, f.grid());
        if (x < lo || x >= hi) continue;
        if (!is_integer(c)) throw std::domain_error("min_padic_valuation: coefficient is not integral");
        best = std::min(best, valuation(c.get_num(), p));
    }
    return best;
}

}  // namespace frob
