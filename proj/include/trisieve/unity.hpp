#ifndef TRISIEVE_UNITY_HPP
#define TRISIEVE_UNITY_HPP

#include <map>
#include <numeric>
#include <vector>

#include "trisieve/heights.hpp"

namespace trisieve {

// Root-of-unity detection by exact cyclotomic comparison: a nonzero algebraic
// number is a primitive N-th root of unity iff its minimal polynomial equals
// the N-th cyclotomic polynomial. Since phi(N) >= sqrt(N/2), only N <= 2k^2
// can have phi(N) = k, so the candidate orders form a short list.

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace unitydetail {
inline const IntPoly& cyclotomic_memo(unsigned long n, std::map<unsigned long, IntPoly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    IntPoly num = IntPoly::x_power(static_cast<unsigned>(n)) - IntPoly{1};
    for (unsigned long d = 1; d <= n / 2; ++d) {
        if (n % d != 0) continue;
        num = div_exact(num, cyclotomic_memo(d, memo));
    }
    return memo.emplace(n, std::move(num)).first->second;
}
} // namespace unitydetail

inline IntPoly cyclotomic_poly(unsigned long n) {
    if (n == 0) throw input_error("cyclotomic polynomial of order 0");
    std::map<unsigned long, IntPoly> memo;
    return unitydetail::cyclotomic_memo(n, memo);
}

struct UnityVerdict {
    bool is_root_of_unity = false;
    unsigned long order = 0; // present iff is_root_of_unity
};

inline UnityVerdict root_of_unity_test(const FieldElement& a) {
    if (is_zero(a)) throw input_error("root_of_unity_test of zero");
    IntPoly p = minimal_poly(a);
    const int k = p.degree();
    // Quick rejections: the minimal polynomial of a root of unity is monic
    // with constant term +-1 and coefficients bounded by binomial(k, k/2).
    if (p.lc() != 1) return {};
    if (abs(p.c[0]) != 1) return {};
    Int bound;
    mpz_bin_uiui(bound.get_mpz_t(), static_cast<unsigned long>(k),
                 static_cast<unsigned long>(k / 2));
    for (const auto& v : p.c)
        if (abs(v) > bound) return {};
    std::map<unsigned long, IntPoly> memo;
    unsigned long limit = 2UL * static_cast<unsigned long>(k) * static_cast<unsigned long>(k);
    for (unsigned long n = 1; n <= limit; ++n) {
        if (euler_phi(n) != static_cast<unsigned long>(k)) continue;
        if (p == unitydetail::cyclotomic_memo(n, memo)) {
            // certificate: a^n = 1 and a^(n/q) != 1 for every prime q | n
            if (a.pow(static_cast<long>(n)) != FieldElement::one(a.field()))
                throw soundness_error("cyclotomic match but a^n != 1");
            unsigned long m = n;
            for (unsigned long q = 2; q * q <= m; ++q)
                if (m % q == 0) {
                    while (m % q == 0) m /= q;
                    if (a.pow(static_cast<long>(n / q)) == FieldElement::one(a.field()))
                        throw soundness_error("matched order is not minimal");
                }
            if (m > 1 && a.pow(static_cast<long>(n / m)) == FieldElement::one(a.field()))
                throw soundness_error("matched order is not minimal");
            return {true, n};
        }
    }
    return {};
}

struct EquivalenceClassification {
    std::vector<std::vector<int>> classes; // 0-based indices, each sorted
    int class_count = 0;
};

// Partition of Omega by the relation "alpha/beta is a root of unity". The
// full pairwise matrix is computed and checked to be an equivalence relation
// (it must be: quotients of roots of unity are roots of unity).
inline EquivalenceClassification classify_omega(const OmegaSet& omega) {
    const int n = static_cast<int>(omega.elements.size());
    std::vector<std::vector<bool>> eq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        eq[i][i] = true;
        for (int j = i + 1; j < n; ++j) {
            bool e = root_of_unity_test(omega.elements[i] / omega.elements[j]).is_root_of_unity;
            eq[i][j] = eq[j][i] = e;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (eq[i][j] && eq[j][k] && !eq[i][k])
                    throw soundness_error("equivalence relation is not transitive");
    std::vector<int> cls(n, -1);
    EquivalenceClassification out;
    for (int i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        std::vector<int> group;
        for (int j = i; j < n; ++j)
            if (eq[i][j]) {
                cls[j] = out.class_count;
                group.push_back(j);
            }
        out.classes.push_back(std::move(group));
        ++out.class_count;
    }
    return out;
}

} // namespace trisieve

#endif
