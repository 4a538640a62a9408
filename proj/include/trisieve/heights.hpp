#ifndef TRISIEVE_HEIGHTS_HPP
#define TRISIEVE_HEIGHTS_HPP

#include <tuple>
#include <vector>

#include "trisieve/numberfield.hpp"

namespace trisieve {

// Rigorous enclosures (natural-log scale) of absolute logarithmic heights.
// For an algebraic number with primitive minimal polynomial P of degree k,
//   h(a) = (log|lc P| + sum over roots of log max(1, |root|)) / k,
// and for a projective point over a degree-D field,
//   h(a_0:...:a_n) = archimedean part + finite part with
//   archimedean = (1/D) sum over embeddings of log max_i |a_i|,
//   finite = -(1/D) log content(prod over embeddings of the coefficient form).
// The finite-place identity is the Gauss lemma: the content of the conjugate
// product collects exactly the non-archimedean contributions.

using HeightValue = Ival; // enclosure in natural-log scale

struct OmegaSet {
    FieldPtr field;
    std::vector<FieldElement> elements;

    OmegaSet(FieldPtr k, std::vector<FieldElement> elems)
        : field(std::move(k)), elements(std::move(elems)) {
        if (elements.empty()) throw input_error("empty element set");
        for (const auto& e : elements) {
            if (e.field() != field) throw input_error("element outside the ambient field");
            if (is_zero(e)) throw input_error("zero element in the set");
        }
    }
};

// h(a) via the Mahler-measure form of the minimal polynomial; h(0) = 0 by
// convention. Roots are enclosed by certified isolation, |root| handled as
// |root|^2 to stay rational.
inline HeightValue height_of_element(const FieldElement& a, const Rat& eps) {
    if (sgn(eps) <= 0) throw input_error("height requires eps > 0");
    if (is_zero(a)) return Ival(Rat(0));
    IntPoly p = minimal_poly(a);
    const int k = p.degree();
    std::vector<Rect> boxes = isolate_all_roots(p);
    Rat series_eps = eps / (4 * (k + 1));
    Ival lc_log = log_encl(Rat(abs(p.lc())), series_eps);
    Rat delta = rat(1, 16);
    while (true) {
        Ival sum = lc_log;
        for (auto& box : boxes) {
            box = refine_box_below(p, box, delta);
            Ival m = ival_max(Ival(Rat(1)), box.abs_sq());
            Ival l = log_ival(m, series_eps);
            sum = sum + Ival(l.lo / 2, l.hi / 2);
        }
        Ival h(sum.lo / k, sum.hi / k);
        if (sgn(h.lo) < 0) h.lo = 0; // heights are nonnegative
        if (h.width() <= eps) return h;
        delta /= 16;
        series_eps /= 16;
    }
}

// Height of (a_0 : ... : a_n), all in one field, not all zero.
inline HeightValue height_of_projective_point(const std::vector<FieldElement>& coords,
                                              const Rat& eps) {
    if (coords.empty()) throw input_error("projective point needs coordinates");
    if (sgn(eps) <= 0) throw input_error("height requires eps > 0");
    const FieldPtr& k = coords.front().field();
    std::vector<FieldElement> cs;
    for (const auto& c : coords) {
        if (c.field() != k) throw input_error("projective coordinates in different fields");
        if (!is_zero(c)) cs.push_back(c);
    }
    if (cs.empty()) throw input_error("projective point with all coordinates zero");
    for (const auto& c : coords)
        if (is_zero(c)) cs.push_back(c); // order is irrelevant; nonzero first
    const int n = static_cast<int>(cs.size()) - 1;
    const int D = k->degree();
    if (n == 0) return Ival(Rat(0));

    // Finite part from the content of the conjugate product of the
    // coefficient form F(Y) = a_0 Y^n + ... + a_n (a_0 nonzero).
    std::vector<QPoly> coeff_y(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) coeff_y[static_cast<std::size_t>(n - i)] = cs[i].as_poly();
    QPoly prod = product_over_conjugates(k->defining_poly(), std::move(coeff_y));
    Int num_gcd(0), den_lcm(1);
    for (const auto& v : prod.c) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
    }
    Rat content = Rat(num_gcd) / Rat(den_lcm); // > 0
    Rat series_eps = eps / (8 * (D + 1));
    Ival fin = log_encl(content, series_eps);
    fin = Ival(-fin.hi / D, -fin.lo / D);

    Rat delta = rat(1, 16);
    while (true) {
        std::vector<Rect> conj = k->conjugate_boxes_below(delta);
        Ival arch(Rat(0));
        bool need_refine = false;
        for (const auto& box : conj) {
            Ival m(Rat(0));
            for (const auto& c : cs) {
                Rect val;
                for (std::size_t i = c.coords().size(); i-- > 0;)
                    val = val * box + Rect(Ival(c.coords()[i]), Ival(Rat(0)));
                m = ival_max(m, val.abs_sq());
            }
            if (sgn(m.lo) <= 0) { // coarse boxes can mask the nonzero max
                need_refine = true;
                break;
            }
            Ival l = log_ival(m, series_eps);
            arch = arch + Ival(l.lo / 2, l.hi / 2);
        }
        if (!need_refine) {
            Ival h = fin + Ival(arch.lo / D, arch.hi / D);
            if (sgn(h.lo) < 0) h.lo = 0;
            if (h.width() <= eps) return h;
        }
        delta /= 16;
        series_eps /= 16;
    }
}

// (h(Omega), h~(Omega)): the max of element heights and the max of heights
// of pairwise quotients.
inline std::pair<HeightValue, HeightValue> omega_heights(const OmegaSet& omega, const Rat& eps) {
    Ival h(Rat(0));
    for (const auto& e : omega.elements) h = ival_max(h, height_of_element(e, eps));
    Ival ht(Rat(0));
    for (std::size_t i = 0; i < omega.elements.size(); ++i)
        for (std::size_t j = i + 1; j < omega.elements.size(); ++j)
            ht = ival_max(ht, height_of_element(omega.elements[i] / omega.elements[j], eps));
    // h~ <= 2 h(Omega); a certified violation is a bug
    if (ht.lo > 2 * h.hi + 4 * eps)
        throw soundness_error("quotient height exceeds twice the set height");
    return {h, ht};
}

// Self-test of the Liouville inequality exp(-d h(a)) <= |a| <= exp(d h(a))
// with d = deg(a). Returns false only if the certified enclosures show a
// violation, which would mean a soundness bug; equality cases (e.g. a = 2)
// are reported as true.
inline bool liouville_check(const FieldElement& a) {
    if (is_zero(a)) throw input_error("liouville_check of zero");
    IntPoly p = minimal_poly(a);
    long d = p.degree();
    Rat eps = rat(1, 1 << 20);
    Ival h = height_of_element(a, eps);
    Rat delta = rat(1, 1024);
    Ival s(Rat(0));
    for (int tries = 0; tries < 80; ++tries) {
        s = refine_embedding(a, delta).abs_sq();
        if (sgn(s.lo) > 0) break;
        delta /= 16;
    }
    if (sgn(s.lo) <= 0) throw soundness_error("could not separate |a| from 0");
    Ival up = exp_encl(2 * Rat(d) * h.hi, eps);   // encloses e^{2 d h_hi} >= |a|^2
    Ival dn = exp_encl(-2 * Rat(d) * h.hi, eps);  // encloses e^{-2 d h_hi} <= |a|^2
    bool upper_violated = s.lo > up.hi;
    bool lower_violated = s.hi < dn.lo;
    return !(upper_violated || lower_violated);
}

// Certified lower bound, in log scale, for the modulus gap of theta: if
// |theta| != 1 then |1 - |theta|| >= e^g for every g in the returned
// enclosure's lower end; the value is -D^2 (h(theta) + log 2) with D the
// ambient degree.
inline HeightValue modulus_gap(const FieldElement& theta) {
    if (is_zero(theta)) throw input_error("modulus_gap of zero");
    long D = theta.field()->degree();
    Ival h = height_of_element(theta, rat(1, 1 << 24));
    Ival s = h + log2_const();
    Rat dd(D * D);
    return Ival(-dd * s.hi, -dd * s.lo);
}

} // namespace trisieve

#endif
