#pragma once

// The character norm m_k of rho_k, summed over a system of representatives of
// Gamma(N) \ SL2(Z), N = 24k, assembled as T^j (a b_a; N d_a) gamma with gamma
// running over the Gamma0(N) coset list I, S T^i, S T^n S T^i.
//
// The j-sum covers full periods of the T eigenvalues, so it collapses by
// orthogonality to N times a sum over pairs beta, beta' with equal eigenvalue;
// inside such a class the i-dependence of the S T^i words cancels.  That leaves
// one term per (a, gamma-without-i), small enough for exact cyclotomic sums up to
// k = 6.  mk_brute_float walks every representative and serves as the oracle.

#include "frob/vvtransform.hpp"

#include <complex>
#include <set>

namespace frob {

// [SL2(Z) : Gamma(N)] = N^3 prod_{p | N} (1 - 1/p^2)
inline Int sl2_index(Int N) {
    if (N < 1) throw precondition_error("N must be positive");
    Rational r = Rational(N) * N * N;
    Int m = N;
    for (Int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            r *= 1 - make_rat(1, p * p);
            while (m % p == 0) m /= p;
        }
    if (m > 1) r *= 1 - make_rat(1, m * m);
    return to_int(r.get_num());
}

// [SL2(Z) : Gamma0(N)] = N prod_{p | N} (1 + 1/p)
inline Int gamma0_index(Int N) {
    Rational r = N;
    Int m = N;
    for (Int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            r *= 1 + make_rat(1, p);
            while (m % p == 0) m /= p;
        }
    if (m > 1) r *= 1 + make_rat(1, m);
    return to_int(r.get_num());
}

struct R0Word {
    // S T^n S T^i when has_n, S T^i when has_s only, I otherwise
    bool has_s = false;
    bool has_n = false;
    Int n = 0;
    Int i_count = 1;  // number of i values, 1 for I

    Mat2 matrix(Int i) const {
        const Mat2 S = mat2(0, -1, 1, 0);
        auto T = [](Int e) { return mat2(1, e, 0, 1); };
        if (!has_s) return Mat2();
        if (!has_n) return S * T(i);
        return S * T(n) * S * T(i);
    }
};

struct CosetSystem {
    Int N = 1;
    std::map<Int, std::vector<Int>> nd;  // d -> N_d
    std::vector<Int> ns;                 // the union of the N_d
    std::vector<Int> units;              // a with (a, N) = 1
    std::vector<Mat2> gamma0_layer;      // (a b_a; N d_a), one per unit
    std::vector<R0Word> r0;

    Int r0_size() const {
        Int s = 0;
        for (const auto& w : r0) s += w.i_count;
        return s;
    }
    Int count() const { return N * static_cast<Int>(units.size()) * r0_size(); }

    // every representative; only sensible for small N
    std::vector<Mat2> all() const {
        std::vector<Mat2> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (Int j = 0; j < N; ++j)
            for (const Mat2& A : gamma0_layer)
                for (const auto& w : r0)
                    for (Int i = 0; i < w.i_count; ++i) out.push_back(mat2(1, j, 0, 1) * A * w.matrix(i));
        return out;
    }
};

inline CosetSystem coset_reps(Int N) {
    if (N < 1) throw precondition_error("coset_reps: N must be positive");
    CosetSystem cs;
    cs.N = N;
    for (Int a = 0; a < N; ++a) {
        if (gcd(a, N) != 1) continue;
        cs.units.push_back(a);
        if (N == 1) {
            cs.gamma0_layer.push_back(Mat2());
            continue;
        }
        Int d = inv_mod(a, N);
        BigInt bn = BigInt(a) * d - 1;
        if (bn % N != 0) throw verification_error("coset_reps: b_a not integral");
        cs.gamma0_layer.push_back(Mat2(Rational(a), Rational(BigInt(bn / N)), Rational(N), Rational(d)));
    }
    if (N == 1) {
        cs.units = {0};
        cs.r0.push_back(R0Word{});
        return cs;
    }
    // A_d: smallest x in [0, N/d) prime to N/d in each unit class mod (d, N/d)
    for (Int d = 2; d < N; ++d) {
        if (N % d != 0) continue;
        Int nd = N / d, g = gcd(d, nd);
        std::vector<Int> xs;
        std::set<Int> classes;
        for (Int x = 0; x < nd; ++x) {
            if (gcd(x, nd) != 1 || gcd(x, g) != 1) continue;
            if (classes.insert(mod(x, g)).second) xs.push_back(d * x);
        }
        Int phi_g = 0;
        for (Int u = 0; u < g; ++u)
            if (gcd(u, g) == 1) ++phi_g;
        if (g == 1) phi_g = 1;
        if (static_cast<Int>(xs.size()) != phi_g) throw verification_error("coset_reps: A_d misses a unit class");
        cs.nd[d] = xs;
        for (Int n : xs) cs.ns.push_back(n);
    }
    std::sort(cs.ns.begin(), cs.ns.end());
    if (std::adjacent_find(cs.ns.begin(), cs.ns.end()) != cs.ns.end()) throw verification_error("coset_reps: the N_d overlap");
    cs.r0.push_back(R0Word{});
    cs.r0.push_back(R0Word{true, false, 0, N});
    for (Int n : cs.ns) {
        Int L = N / gcd(N, n * n);
        cs.r0.push_back(R0Word{true, true, n, L});
    }
    if (cs.r0_size() != gamma0_index(N)) throw verification_error("coset_reps: Gamma0(N) coset count mismatch");
    if (cs.count() != sl2_index(N)) throw verification_error("coset_reps: representative count mismatch");
    return cs;
}

// all representatives distinct mod N (Gamma(N) \ SL2(Z) is SL2(Z/N))
inline bool cosets_disjoint(const CosetSystem& cs) {
    std::set<std::array<Int, 4>> seen;
    for (const Mat2& g : cs.all()) {
        if (!g.in_sl2z()) return false;
        std::array<Int, 4> key{};
        for (int i = 0; i < 4; ++i) {
            BigInt v = g.e[i].get_num();
            BigInt r = v % cs.N;
            if (r < 0) r += cs.N;
            key[i] = to_int(r);
        }
        if (!seen.insert(key).second) return false;
    }
    return static_cast<Int>(seen.size()) == cs.count();
}

// ---------------------------------------------------------------------------
// m_k

enum class MkMode { exact, floating };

struct MkResult {
    Int k = 1;
    Int value = 0;
    MkMode mode = MkMode::exact;
    double raw = 0;  // unrounded value in floating mode
    Int index = 0;
    Int terms = 0;   // (a, word) pairs summed
};

namespace detail {

inline std::complex<double> to_value(const CycloNumber& c, std::complex<double>*) { return c.to_complex(); }
inline CycloNumber to_value(const CycloNumber& c, CycloNumber*) { return c; }
inline std::complex<double> from_int(Int v, std::complex<double>*) { return static_cast<double>(v); }
inline CycloNumber from_int(Int v, CycloNumber*) { return CycloNumber(v); }
inline std::complex<double> conj_value(const std::complex<double>& z) { return std::conj(z); }
inline CycloNumber conj_value(const CycloNumber& z) { return z.conj(); }

template <class V>
using VMat = std::vector<std::vector<V>>;

template <class V>
VMat<V> to_vmat(const CMatrix& m) {
    VMat<V> r(m.size(), std::vector<V>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r[i][j] = to_value(m(i, j), static_cast<V*>(nullptr));
    return r;
}

template <class V>
VMat<V> vmul(const VMat<V>& x, const VMat<V>& y) {
    std::size_t n = x.size();
    VMat<V> r(n, std::vector<V>(n, from_int(0, static_cast<V*>(nullptr))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) r[i][j] += x[i][k] * y[k][j];
    return r;
}

// the class structure of beta by T eigenvalue
inline std::vector<std::vector<std::size_t>> t_classes(Int k) {
    auto bs = beta_index(k);
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> used(bs.size());
    for (std::size_t i = 0; i < bs.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> cls{i};
        used[i] = true;
        for (std::size_t j = i + 1; j < bs.size(); ++j)
            if (is_integer(Rational((bs[i] * bs[i] - bs[j] * bs[j]) / (2 * k)))) {
                cls.push_back(j);
                used[j] = true;
            }
        out.push_back(cls);
    }
    return out;
}

template <class V>
V mk_total(Int k, Int& terms) {
    const Int N = 24 * k;
    CosetSystem cs = coset_reps(N);
    auto bs = beta_index(k);
    const std::size_t n = bs.size();
    auto classes = t_classes(k);
    VMat<V> S = to_vmat<V>(rho_k_s(k));
    auto diag = [&](Int e) {
        auto t = rho_k_t_diagonal(k, e);
        VMat<V> D(n, std::vector<V>(n, from_int(0, static_cast<V*>(nullptr))));
        for (std::size_t i = 0; i < n; ++i) D[i][i] = to_value(t[i], static_cast<V*>(nullptr));
        return D;
    };
    // the Gamma0(N) layer: permutation and phases per unit
    struct Layer {
        std::vector<std::size_t> perm;
        std::vector<V> phase;
    };
    std::vector<Layer> layers;
    for (const Mat2& A : cs.gamma0_layer) {
        Layer L;
        for (const Rational& b : bs) {
            L.perm.push_back(beta_pos(k, t_beta(k, b, A)));
            L.phase.push_back(to_value(p_beta(k, b, A), static_cast<V*>(nullptr)));
        }
        layers.push_back(std::move(L));
    }
    V total = from_int(0, static_cast<V*>(nullptr));
    terms = 0;
    for (const R0Word& w : cs.r0) {
        VMat<V> R;
        if (!w.has_s) {
            R.assign(n, std::vector<V>(n, from_int(0, static_cast<V*>(nullptr))));
            for (std::size_t i = 0; i < n; ++i) R[i][i] = from_int(1, static_cast<V*>(nullptr));
        } else if (!w.has_n) {
            R = S;
        } else {
            R = vmul(vmul(S, diag(w.n)), S);
        }
        V part = from_int(0, static_cast<V*>(nullptr));
        for (const Layer& L : layers) {
            for (const auto& cls : classes) {
                V s = from_int(0, static_cast<V*>(nullptr));
                for (std::size_t b : cls) s += L.phase[b] * R[L.perm[b]][b];
                part += s * conj_value(s);
            }
            ++terms;
        }
        total += part * from_int(w.i_count, static_cast<V*>(nullptr));
    }
    return total * from_int(N, static_cast<V*>(nullptr));
}

}  // namespace detail

inline MkResult m_k(Int k, MkMode mode) {
    if (k < 1) throw precondition_error("k must be positive");
    MkResult r;
    r.k = k;
    r.mode = mode;
    r.index = sl2_index(24 * k);
    if (mode == MkMode::exact) {
        CycloNumber t = detail::mk_total<CycloNumber>(k, r.terms);
        if (!t.is_rational()) throw verification_error("m_k: character norm sum is not rational");
        Rational v = t.rational_value() / r.index;
        if (!is_integer(v) || v < 1) throw verification_error("m_k: character norm is not a positive integer");
        r.value = to_int(v.get_num());
        r.raw = v.get_d();
        return r;
    }
    std::complex<double> t = detail::mk_total<std::complex<double>>(k, r.terms);
    r.raw = t.real() / static_cast<double>(r.index);
    double rounded = std::round(r.raw);
    if (std::abs(r.raw - rounded) >= 1e-6 || std::abs(t.imag()) / static_cast<double>(r.index) >= 1e-6)
        throw verification_error("m_k: floating value is not within 1e-6 of an integer");
    if (rounded < 1) throw verification_error("m_k: character norm below one");
    r.value = static_cast<Int>(rounded);
    return r;
}

// default mode: exact up to k = 6
inline MkResult m_k(Int k) { return m_k(k, k <= 6 ? MkMode::exact : MkMode::floating); }

// every representative T^j A gamma and every j, no orthogonality shortcut
inline double mk_brute_float(Int k) {
    if (k < 1) throw precondition_error("k must be positive");
    const Int N = 24 * k;
    CosetSystem cs = coset_reps(N);
    auto bs = beta_index(k);
    const std::size_t n = bs.size();
    using C = std::complex<double>;
    auto S = detail::to_vmat<C>(rho_k_s(k));
    std::vector<C> t;
    for (const auto& c : rho_k_t_diagonal(k)) t.push_back(c.to_complex());
    auto tpow = [&](Int e) {
        std::vector<C> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = std::pow(t[i], static_cast<int>(e));
        return d;
    };
    auto rmul_diag = [&](detail::VMat<C> m, const std::vector<C>& d) {
        for (auto& row : m)
            for (std::size_t j = 0; j < n; ++j) row[j] *= d[j];
        return m;
    };
    double total = 0;
    for (const Mat2& A : cs.gamma0_layer) {
        auto RA = detail::to_vmat<C>(rho_k_closed(k, A));
        for (const R0Word& w : cs.r0) {
            for (Int i = 0; i < w.i_count; ++i) {
                detail::VMat<C> R(n, std::vector<C>(n, 0.0));
                for (std::size_t x = 0; x < n; ++x) R[x][x] = 1;
                if (w.has_s) {
                    R = rmul_diag(S, tpow(i));
                    if (w.has_n) R = detail::vmul(rmul_diag(S, tpow(w.n)), R);
                }
                auto P = detail::vmul(RA, R);
                for (Int j = 0; j < N; ++j) {
                    C tr = 0;
                    auto d = tpow(j);
                    for (std::size_t x = 0; x < n; ++x) tr += d[x] * P[x][x];
                    total += std::norm(tr);
                }
            }
        }
    }
    return total / static_cast<double>(sl2_index(N));
}

}  // namespace frob
