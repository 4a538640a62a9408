#ifndef TRISIEVE_LEMMA_LAB_HPP
#define TRISIEVE_LEMMA_LAB_HPP

#include <array>
#include <optional>
#include <vector>

#include "trisieve/unity.hpp"

namespace trisieve {

// Mechanical instance checkers for the combinatorial structure behind the
// search: the six-term determinant identity for three roots of a candidate
// trinomial, the decomposition of its vanishing sum into primitive blocks,
// and the two multiset statements that power the finiteness argument.

// The ordered six terms
//   (a^m b^n, -a^n b^m, -a^m c^n, a^n c^m, b^m c^n, -b^n c^m)
// whose sum equals det [[a^m, a^n, 1], [b^m, b^n, 1], [c^m, c^n, 1]].
struct SixTermSystem {
    FieldElement alpha, beta, gamma;
    long m, n;
    std::array<FieldElement, 6> terms;

    FieldElement total() const {
        FieldElement s = terms[0];
        for (int i = 1; i < 6; ++i) s = s + terms[i];
        return s;
    }
};

inline SixTermSystem build_six_terms(const FieldElement& alpha, const FieldElement& beta,
                                     const FieldElement& gamma, long m, long n) {
    if (is_zero(alpha) || is_zero(beta) || is_zero(gamma))
        throw input_error("six-term system requires nonzero elements");
    if (m == n || m == 0 || n == 0)
        throw input_error("six-term system requires m != n and m, n != 0");
    FieldElement am = alpha.pow(m), an = alpha.pow(n);
    FieldElement bm = beta.pow(m), bn = beta.pow(n);
    FieldElement cm = gamma.pow(m), cn = gamma.pow(n);
    SixTermSystem sys{alpha, beta, gamma, m, n,
                      {am * bn, -(an * bm), -(am * cn), an * cm, bm * cn, -(bn * cm)}};
    // verify against an independent cofactor expansion of the determinant
    FieldElement one = FieldElement::one(alpha.field());
    FieldElement det = am * (bn - cn) - an * (bm - cm) + one * (bm * cn - bn * cm);
    if (sys.total() != det) throw soundness_error("six-term sum differs from determinant");
    return sys;
}

struct PartitionType {
    std::vector<int> v, w;    // 0-based positions, disjoint, union {0..5}
    std::pair<int, int> signature; // (#V, #W) in {(3,3), (4,2), (6,0)}
};

namespace lemmadetail {
inline bool subset_sum_vanishes(const SixTermSystem& sys, unsigned mask) {
    std::optional<FieldElement> s;
    for (int i = 0; i < 6; ++i)
        if (mask & (1u << i)) s = s ? *s + sys.terms[i] : sys.terms[i];
    return s && is_zero(*s);
}

inline bool is_primitive_vanishing(unsigned mask, const std::vector<bool>& vanishes) {
    if (!vanishes[mask]) return false;
    for (unsigned sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask)
        if (vanishes[sub]) return false;
    return true;
}

inline std::vector<int> mask_to_indices(unsigned mask) {
    std::vector<int> out;
    for (int i = 0; i < 6; ++i)
        if (mask & (1u << i)) out.push_back(i);
    return out;
}
} // namespace lemmadetail

// Decompose the vanishing six-term sum into two primitive vanishing blocks
// (V, W), signature in {(3,3), (4,2), (6,0)}; W may be empty. When several
// decompositions exist the lexicographically least V wins; for (3,3) the
// block containing position 0 is V. If only finer decompositions exist
// (pair-cancellation structure) the instance contradicts the three-class
// hypothesis and is reported as an error.
inline PartitionType vanishing_subsum_decomposition(const SixTermSystem& sys) {
    using namespace lemmadetail;
    if (!is_zero(sys.total())) throw input_error("six-term sum does not vanish");
    std::vector<bool> vanishes(64, false);
    for (unsigned mask = 1; mask < 64; ++mask) vanishes[mask] = subset_sum_vanishes(sys, mask);

    std::vector<PartitionType> found;
    const unsigned full = 63;
    if (is_primitive_vanishing(full, vanishes))
        found.push_back({mask_to_indices(full), {}, {6, 0}});
    for (unsigned v = 1; v < 63; ++v) {
        unsigned w = full & ~v;
        int cv = __builtin_popcount(v), cw = __builtin_popcount(w);
        if (!((cv == 3 && cw == 3) || (cv == 4 && cw == 2))) continue;
        if (cv == 3 && !(v & 1u)) continue; // canonical (3,3): position 0 in V
        if (!is_primitive_vanishing(v, vanishes)) continue;
        if (!is_primitive_vanishing(w, vanishes)) continue;
        found.push_back({mask_to_indices(v), mask_to_indices(w), {cv, cw}});
    }
    if (found.empty())
        throw input_error(
            "no primitive decomposition with signature (3,3), (4,2) or (6,0): "
            "the instance has pair-cancellation structure excluded by the "
            "three-class hypothesis");
    std::sort(found.begin(), found.end(),
              [](const PartitionType& a, const PartitionType& b) { return a.v < b.v; });
    return found.front();
}

namespace lemmadetail {
// All 15 perfect matchings of {0..5} into three pairs.
inline const std::vector<std::array<std::pair<int, int>, 3>>& pairings() {
    static const auto all = [] {
        std::vector<std::array<std::pair<int, int>, 3>> out;
        int rest0[] = {1, 2, 3, 4, 5};
        for (int i = 0; i < 5; ++i) {
            std::vector<int> rem;
            for (int v : rest0)
                if (v != rest0[i]) rem.push_back(v);
            for (int j = 1; j < 4; ++j) {
                std::array<std::pair<int, int>, 3> m;
                m[0] = {0, rest0[i]};
                m[1] = {rem[0], rem[j]};
                std::vector<int> last;
                for (int t = 1; t < 4; ++t)
                    if (t != j) last.push_back(rem[t]);
                m[2] = {last[0], last[1]};
                out.push_back(m);
            }
        }
        return out;
    }();
    return all;
}

// Unsigned multiset S = {a^m b^n, a^n b^m, a^m c^n, a^n c^m, b^m c^n, b^n c^m}.
inline std::array<FieldElement, 6> unsigned_terms(const FieldElement& a, const FieldElement& b,
                                                  const FieldElement& c, long m, long n) {
    return {a.pow(m) * b.pow(n), a.pow(n) * b.pow(m), a.pow(m) * c.pow(n),
            a.pow(n) * c.pow(m), b.pow(m) * c.pow(n), b.pow(n) * c.pow(m)};
}

inline bool base_quotient_is_unity(const FieldElement& a, const FieldElement& b,
                                   const FieldElement& c) {
    return root_of_unity_test(a / b).is_root_of_unity ||
           root_of_unity_test(a / c).is_root_of_unity ||
           root_of_unity_test(b / c).is_root_of_unity;
}
} // namespace lemmadetail

// Instance check of the pairing statement: if S splits into three pairs with
// root-of-unity quotients, then one of a/b, a/c, b/c is a root of unity.
// Returns true iff the implication holds on this instance (a false return is
// a soundness bug, the statement being a theorem).
inline bool pairing_implication_check(const FieldElement& a, const FieldElement& b,
                                      const FieldElement& c, long m, long n) {
    using namespace lemmadetail;
    if (is_zero(a) || is_zero(b) || is_zero(c))
        throw input_error("pairing check requires nonzero elements");
    if (m == n || m == 0 || n == 0)
        throw input_error("pairing check requires m != n and m, n != 0");
    auto s = unsigned_terms(a, b, c, m, n);
    bool pairing_exists = false;
    for (const auto& match : pairings()) {
        bool all_unity = true;
        for (const auto& [x, y] : match)
            if (!root_of_unity_test(s[x] / s[y]).is_root_of_unity) {
                all_unity = false;
                break;
            }
        if (all_unity) {
            pairing_exists = true;
            break;
        }
    }
    return !pairing_exists || base_quotient_is_unity(a, b, c);
}

// The two positionally matched six-element multisets built from (m, n) and
// (m', n'): s[i] and s_prime[i] use the same base pair, so the ratios
// s[i]/s_prime[i] are the objects the partition statement constrains.
struct LemmaSets {
    std::array<FieldElement, 6> s, s_prime;
};

inline LemmaSets build_lemma_sets(const FieldElement& a, const FieldElement& b,
                                  const FieldElement& c, long m, long n, long mp, long np) {
    if (is_zero(a) || is_zero(b) || is_zero(c))
        throw input_error("lemma sets require nonzero elements");
    if (m == n || m == 0 || n == 0 || mp == np || mp == 0 || np == 0 || (m == mp && n == np))
        throw input_error("lemma sets: exponent constraints violated");
    return {lemmadetail::unsigned_terms(a, b, c, m, n),
            lemmadetail::unsigned_terms(a, b, c, mp, np)};
}

// Instance check of the ratio-partition statement: if S = T u U with
// x/x' constant on T and on U (x' built from (m', n')), then one of a/b,
// a/c, b/c is a root of unity.
inline bool ratio_partition_implication_check(const FieldElement& a, const FieldElement& b,
                                              const FieldElement& c, long m, long n, long mp,
                                              long np) {
    using namespace lemmadetail;
    LemmaSets sets = build_lemma_sets(a, b, c, m, n, mp, np);
    const auto& s = sets.s;
    const auto& sp = sets.s_prime;
    std::array<FieldElement, 6> ratio = {s[0] / sp[0], s[1] / sp[1], s[2] / sp[2],
                                         s[3] / sp[3], s[4] / sp[4], s[5] / sp[5]};
    auto constant_on = [&](unsigned mask) {
        int first = -1;
        for (int i = 0; i < 6; ++i) {
            if (!(mask & (1u << i))) continue;
            if (first < 0)
                first = i;
            else if (ratio[i] != ratio[first])
                return false;
        }
        return true;
    };
    bool partition_exists = false;
    for (unsigned t = 0; t < 64; ++t)
        if (constant_on(t) && constant_on(63u & ~t)) {
            partition_exists = true;
            break;
        }
    return !partition_exists || base_quotient_is_unity(a, b, c);
}

// Equal-modulus check: three exact roots of X^m + A X^n + B with pairwise
// equal moduli must have two equal m-th powers (the intersection of the two
// circles carrying them holds at most two points), forcing a root-of-unity
// quotient. Verifies the conclusion on an instance whose premises are
// checked exactly.
inline bool equal_modulus_trinomial_check(const FieldElement& a, const FieldElement& b,
                                          const FieldElement& c, long m, long n,
                                          const FieldElement& big_a, const FieldElement& big_b) {
    if (m <= n || n <= 0) throw input_error("equal modulus check requires m > n > 0");
    if (is_zero(big_b)) throw input_error("equal modulus check requires B != 0");
    for (const FieldElement* w : {&a, &b, &c}) {
        if (is_zero(*w)) throw input_error("equal modulus check requires nonzero roots");
        FieldElement val = w->pow(m) + big_a * w->pow(n) + big_b;
        if (!is_zero(val)) throw input_error("element is not a root of the given trinomial");
    }
    if (compare_modulus(a, b) != ModulusOrder::Equal ||
        compare_modulus(a, c) != ModulusOrder::Equal ||
        compare_modulus(b, c) != ModulusOrder::Equal)
        throw input_error("equal modulus check requires pairwise equal moduli");
    FieldElement am = a.pow(m), bm = b.pow(m), cm = c.pow(m);
    bool two_equal = (am == bm) || (am == cm) || (bm == cm);
    if (two_equal) {
        // the forced quotient really is a root of unity
        const FieldElement &x = (am == bm) ? a : ((am == cm) ? a : b);
        const FieldElement &y = (am == bm) ? b : c;
        if (!root_of_unity_test(x / y).is_root_of_unity)
            throw soundness_error("equal m-th powers but quotient not a root of unity");
    }
    return two_equal;
}

} // namespace trisieve

#endif
