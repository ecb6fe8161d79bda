#pragma once

// Classical quadratic Gauss sums G(n, m) = sum_{x mod |m|} e(n x^2 / m).

#include "frob/cyclo.hpp"

namespace frob {

enum class Method { brute, closed };

inline CycloNumber classical_gauss_sum(Int n, Int m, Method method = Method::brute) {
    if (m == 0) throw precondition_error("gauss sum: m must be nonzero");
    if (method == Method::brute) {
        Int am = m < 0 ? -m : m;
        std::vector<Rational> cs(am);
        for (Int x = 0; x < am; ++x) cs[mod(mod(n, am) * ((x * x) % am), am)] += 1;
        // e(n x^2 / m) with negative m is the conjugate exponent
        CycloNumber s = CycloNumber::from_powers(am, cs);
        return m > 0 ? s : s.conj();
    }
    if (m <= 0 || gcd(mod(n, m), m) != 1) throw precondition_error("closed gauss sum needs m > 0 and gcd(n, m) = 1");
    if (m % 2 == 1) return sqrt_cyclo(m) * make_rat(kronecker(2 * n, m)) * cyclo(make_rat(1 - m, 8));
    if (m % 4 == 0) return sqrt_cyclo(2 * m) * make_rat(kronecker(2 * m, n)) * cyclo(make_rat(n, 8));
    return CycloNumber(0);
}

}  // namespace frob
