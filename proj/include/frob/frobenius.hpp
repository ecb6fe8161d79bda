#pragma once

// Generating functions of generalized Frobenius partitions.
//
// CPsi_{k,beta} is the zeta^beta coefficient of (-theta(tau, z+1/2) / (q^{1/12} eta))^k with
// -theta(tau, z+1/2) = sum_{n in 1/2+Z} q^{n^2/2} zeta^n, so after removing q^{k/8}
// the numerator is sum over m in Z of q^{m(m+1)/2} zeta^{m+1/2}, raised to the k.

#include "frob/cyclo.hpp"
#include "frob/qseries.hpp"

#include <algorithm>
#include <functional>

namespace frob {

// Laurent series in q and zeta; zeta exponents are halves, stored doubled.
struct JacobiSeries {
    Int grid = 8;
    Int trunc = 0;  // scaled q-truncation
    std::map<std::pair<Int, Int>, Rational> terms;  // (e, 2w) -> coefficient

    Rational coeff(const Rational& qexp, const Rational& w) const {
        Rational s = qexp * grid;
        if (s >= trunc) throw truncation_error("jacobi coefficient beyond truncation");
        if (!is_integer(s) || !is_integer(Rational(2 * w))) return 0;
        auto it = terms.find({to_int(s.get_num()), to_int(Rational(2 * w).get_num())});
        return it == terms.end() ? Rational(0) : it->second;
    }
};

inline bool beta_on_grid(Int k, const Rational& beta) {
    Rational twice = 2 * beta;
    return is_integer(twice) && is_integer(beta - make_rat(k, 2));
}

inline void require_beta(Int k, const Rational& beta) {
    if (k < 1) throw precondition_error("k must be positive");
    if (!beta_on_grid(k, beta)) throw precondition_error("invalid beta: beta must lie in k/2 + Z");
}

// B_k = {0, 1, ..., k/2} or {1/2, 3/2, ..., k/2}
inline std::vector<Rational> beta_index(Int k) {
    std::vector<Rational> bs;
    for (Int b2 = k % 2; b2 <= k; b2 += 2) bs.push_back(make_rat(b2, 2));
    return bs;
}

// theta(tau, z + 1/2)^k, valid for q-exponents below order (integer order)
inline JacobiSeries theta_halfshift_power(Int k, Int order) {
    if (order <= 0 || k < 1) throw precondition_error("theta_halfshift_power: bad parameters");
    JacobiSeries th;
    th.grid = 8;
    th.trunc = 8 * order;
    // theta(tau, z+1/2) = -sum_{n in 1/2 + Z} q^{n^2/2} zeta^n
    std::map<std::pair<Int, Int>, Rational> one;
    for (Int n2 = 1;; n2 += 2) {
        Int e = n2 * n2;  // q^{n^2/2} = q^{(2n)^2/8}
        if (e >= th.trunc) break;
        one[{e, n2}] = -1;
        one[{e, -n2}] = -1;
    }
    std::map<std::pair<Int, Int>, Rational> acc{{{0, 0}, Rational(1)}};
    for (Int i = 0; i < k; ++i) {
        std::map<std::pair<Int, Int>, Rational> nxt;
        for (const auto& [a, ca] : acc)
            for (const auto& [b, cb] : one) {
                Int e = a.first + b.first;
                if (e >= th.trunc) continue;
                nxt[{e, a.second + b.second}] += ca * cb;
            }
        acc.clear();
        for (auto& [key, c] : nxt)
            if (c != 0) acc.emplace(key, c);
    }
    th.terms = std::move(acc);
    return th;
}

namespace detail {

// (sum of the m_i, sum of T(m_i)) over h-tuples with sum T < order, grouped by the first
inline std::map<Int, std::vector<std::pair<Int, Int>>> triangular_tuples(Int h, Int order, Int mmax) {
    std::vector<std::pair<Int, Int>> raw;
    auto tri = [](Int m) { return m * (m + 1) / 2; };
    std::function<void(Int, Int, Int)> rec = [&](Int left, Int e, Int s) {
        if (left == 0) {
            raw.emplace_back(s, e);
            return;
        }
        for (Int m = -mmax - 1; m <= mmax; ++m) {
            Int t = tri(m);
            if (e + t >= order) continue;
            rec(left - 1, e + t, s + m);
        }
    };
    rec(h, 0, 0);
    std::sort(raw.begin(), raw.end());
    std::map<Int, std::vector<std::pair<Int, Int>>> out;
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        while (j < raw.size() && raw[j] == raw[i]) ++j;
        out[raw[i].first].emplace_back(raw[i].second, static_cast<Int>(j - i));
        i = j;
    }
    return out;
}

// zeta^beta coefficient of (sum_m q^{m(m+1)/2} zeta^{m+1/2})^k, q-exponents < order.
// Meet in the middle: split the k factors in two halves and pair them by the m-sum.
inline std::vector<Int> theta_numerator(Int k, const Rational& beta, Int order) {
    std::vector<Int> num(order, 0);
    Int target = to_int(Rational(beta - make_rat(k, 2)).get_num());  // sum of the m_i
    Int mmax = 0;
    while ((mmax + 1) * (mmax + 2) / 2 < order) ++mmax;
    Int h1 = k / 2, h2 = k - h1;
    auto a = triangular_tuples(h1, order, mmax);
    auto b = h2 == h1 ? a : triangular_tuples(h2, order, mmax);
    for (const auto& [s1, la] : a) {
        auto it = b.find(target - s1);
        if (it == b.end()) continue;
        const auto& lb = it->second;
        for (const auto& [e1, c1] : la)
            for (const auto& [e2, c2] : lb) {
                if (e1 + e2 >= order) break;
                num[e1 + e2] += c1 * c2;
            }
    }
    return num;
}

inline FracQSeries int_series(const std::vector<BigInt>& c, Int grid_offset_scaled, Int grid) {
    FracQSeries f(grid, grid_offset_scaled + grid * static_cast<Int>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) f.set(grid_offset_scaled + grid * static_cast<Int>(i), Rational(c[i]));
    return f;
}

}  // namespace detail

// CPsi_{k,beta}(q), an integer-exponent series valid below q^order
inline FracQSeries cpsi(Int k, const Rational& beta, Int order) {
    require_beta(k, beta);
    if (order <= 0) throw precondition_error("order must be positive");
    auto num = detail::theta_numerator(k, beta, order);
    auto inv = detail::eta_product_coeffs({{1, -k}}, order);
    std::vector<BigInt> out(order);
    for (Int i = 0; i < order; ++i) {
        if (num[i] == 0) continue;
        for (Int j = 0; i + j < order; ++j)
            mpz_addmul_ui(out[i + j].get_mpz_t(), inv[j].get_mpz_t(), static_cast<unsigned long>(num[i]));
    }
    return detail::int_series(out, 0, 1);
}

// cpsi_{k,beta}(n) mod M for 0 <= n < order, machine integers only
inline std::vector<Int> cpsi_mod(Int k, const Rational& beta, Int order, Int M) {
    require_beta(k, beta);
    if (order <= 0) throw precondition_error("order must be positive");
    if (M < 1 || M > (Int(1) << 31)) throw precondition_error("modulus out of range");
    using U = unsigned __int128;
    auto num = detail::theta_numerator(k, beta, order);
    // 1/(q;q)^k by k divisions through the pentagonal series
    std::vector<std::pair<Int, Int>> pent;  // (exponent, sign)
    for (Int j = 1;; ++j) {
        Int g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
        if (g1 >= order) break;
        Int sg = (j % 2) ? 1 : -1;  // coefficient of q^g in (q;q) is (-1)^j
        pent.emplace_back(g1, -sg);
        if (g2 < order) pent.emplace_back(g2, -sg);
    }
    std::vector<Int> inv(order, 0);
    inv[0] = 1 % M;
    for (Int r = 0; r < k; ++r)
        for (Int n = 1; n < order; ++n) {
            Int acc = inv[n];
            for (const auto& [g, sg] : pent) {
                if (g > n) break;
                // g_n = f_n - sum P_g g_{n-g}
                acc = mod(acc - sg * inv[n - g], M);
            }
            inv[n] = acc;
        }
    std::vector<Int> out(order, 0);
    for (Int i = 0; i < order; ++i) {
        Int c = mod(num[i], M);
        if (c == 0) continue;
        for (Int j = 0; i + j < order; ++j)
            out[i + j] = static_cast<Int>((U(out[i + j]) + U(c) * U(inv[j])) % U(M));
    }
    return out;
}

// f_{k,beta} = q^{k/12 - beta^2/(2k)} CPsi_{k,beta}, grid 24k
inline FracQSeries f_kbeta(Int k, const Rational& beta, Int order) {
    require_beta(k, beta);
    Rational shift = make_rat(k, 12) - beta * beta / (2 * k);
    return cpsi(k, beta, order).regrid(24 * k).shift_q(shift);
}

// number of x in Z^k with sum x^2 = m and sum x = r, for all m <= mmax
inline std::vector<BigInt> repcount(Int k, Int r, Int mmax) {
    Int xmax = 0;
    while ((xmax + 1) * (xmax + 1) <= mmax) ++xmax;
    Int smax = k * xmax;
    Int w = 2 * smax + 1;
    // dp[m][s + smax]
    std::vector<std::vector<BigInt>> dp(mmax + 1, std::vector<BigInt>(w));
    dp[0][smax] = 1;
    for (Int i = 0; i < k; ++i) {
        std::vector<std::vector<BigInt>> nx(mmax + 1, std::vector<BigInt>(w));
        for (Int m = 0; m <= mmax; ++m)
            for (Int s = 0; s < w; ++s) {
                if (dp[m][s] == 0) continue;
                for (Int x = -xmax; x <= xmax; ++x) {
                    Int m2 = m + x * x;
                    Int s2 = s + x;
                    if (m2 > mmax || s2 < 0 || s2 >= w) continue;
                    nx[m2][s2] += dp[m][s];
                }
            }
        dp = std::move(nx);
    }
    std::vector<BigInt> out(mmax + 1);
    if (r < -smax || r > smax) return out;
    for (Int m = 0; m <= mmax; ++m) out[m] = dp[m][r + smax];
    return out;
}

// h_t^{(k)} = prefactor * series, prefactor = e(kt)
struct HComponent {
    CycloNumber prefactor;
    FracQSeries series;
};

inline HComponent h_component(Int k, const Rational& t, Int order) {
    if (k < 1) throw precondition_error("k must be positive");
    Rational kt = t * k;
    bool on_grid = (k % 2 == 0) ? is_integer(kt) : is_integer(Rational(2 * kt));
    if (!on_grid) throw precondition_error("invalid t: off the dual-lattice grid");
    Rational rr = kt - make_rat(k, 2);
    Int grid = 2 * k;
    HComponent h{cyclo(kt), FracQSeries(grid, grid * order)};
    if (!is_integer(rr)) return h;  // no lattice vector has a half-integral sum
    Int r = to_int(rr.get_num());
    // exponent n = (m - r^2/k)/2 < order  <=>  m < 2 order + r^2/k
    Int mmax = to_int(floor(Rational(2 * order + make_rat(r * r, k)))) + 1;
    auto counts = repcount(k, r, mmax);
    for (Int m = 0; m <= mmax; ++m) {
        if (counts[m] == 0) continue;
        Rational n = (Rational(m) - make_rat(r * r, k)) / 2;
        Rational s = n * grid;
        if (s >= h.series.trunc()) continue;
        h.series.set(to_int(s.get_num()), Rational(counts[m]));
    }
    return h;
}

// the closed eta-quotient forms for k = 3
inline FracQSeries cpsi3_closed(const Rational& beta, Int order) {
    if (order <= 0) throw precondition_error("order must be positive");
    if (beta == make_rat(1, 2)) {
        FracQSeries f = eta_quotient({{3, 3}, {1, -4}}, 24 * order + 5);
        return (f.shift_q(make_rat(-5, 24)) * make_rat(3)).compact().truncate(order);
    }
    if (beta == make_rat(3, 2)) {
        FracQSeries a = eta_quotient({{3, -1}}, 24 * order - 3);
        FracQSeries b = eta_quotient({{9, 3}, {3, -1}, {1, -3}}, 24 * order - 3);
        return ((a + b * make_rat(9)).shift_q(make_rat(1, 8))).compact().truncate(order);
    }
    throw precondition_error("cpsi3_closed: only beta = 1/2 and 3/2 are supported");
}

}  // namespace frob
