#ifndef TRISIEVE_BOUNDS_HPP
#define TRISIEVE_BOUNDS_HPP

#include <vector>

#include "trisieve/heights.hpp"

namespace trisieve {

// Effective bound evaluation, all in natural-log scale as exact rational
// intervals. Constants like 10^60 never materialise as integers: only their
// logarithms are operationally meaningful (search caps, reporting).

struct MatveevInput {
    long s = 0;             // number of logarithms
    long d = 1;             // field degree
    std::vector<Rat> big_a; // A_1..A_s, each >= 0.16
    Rat big_b = 1;          // >= max |b_i|, >= 1

    void validate() const {
        if (s < 1 || static_cast<std::size_t>(s) != big_a.size())
            throw input_error("Matveev input: s must match the A list");
        if (d < 1) throw input_error("Matveev input: d >= 1 required");
        const Rat floor_a = rat(4, 25); // 0.16
        for (const auto& a : big_a)
            if (a < floor_a) throw input_error("Matveev input: every A_k must be >= 0.16");
        if (big_b < 1) throw input_error("Matveev input: B >= 1 required");
    }
};

// Lower bound for a nonzero linear form in s logarithms over a degree-d
// field: log|Lambda| >= -2^(6s+20) d^2 (1+log d) A_1...A_s (1+log B).
// Returns the (negative) right-hand side as an enclosure.
inline HeightValue matveev_lower_bound(const MatveevInput& in) {
    in.validate();
    Rat series_eps = Rat(1) / int_pow(Int(2), 96);
    Int two_pow = Int(1) << static_cast<unsigned>(6 * in.s + 20);
    Ival acc(Rat(two_pow * in.d * in.d));
    Ival one(Rat(1));
    acc = acc * (one + (in.d == 1 ? Ival(Rat(0)) : log_encl(Rat(in.d), series_eps)));
    for (const auto& a : in.big_a) acc = acc * Ival(a);
    acc = acc * (one + (in.big_b == 1 ? Ival(Rat(0)) : log_encl(in.big_b, series_eps)));
    return -acc;
}

struct BoundReport {
    long d = 1;
    HeightValue h_omega, h_tilde;
    HeightValue log_n_max;             // bound on n
    HeightValue log_mn_max;            // bound on m - n
    HeightValue log_degree_max;        // sharp chain bound on m
    HeightValue log_degree_max_theorem; // rounded headline form
    HeightValue log_height_max;         // sharp chain bound on h(1:A:B)
    HeightValue log_height_max_theorem; // rounded headline form
};

// The complete bound chain for a set with >= 3 equivalence classes in a
// degree-d field:
//   n     <= 10^50 e^{5 d^2 (h~+1)}
//   m - n <= 10^30 e^{3 d^2 (h~+1)}
//   m     <= 10^60 e^{5 d^2 (h~+1)} and (via h~ <= 2h) <= 10^60 e^{10 d^2 (h+1)}
//   h(1:A:B) <= 10^65 e^{10 d^2 (h+1)}, rounded headline 10^70 e^{10 d^2 (h+1)}.
inline BoundReport bound_chain(long d, const HeightValue& h_tilde, const HeightValue& h_omega) {
    if (d < 1) throw input_error("bound_chain: d >= 1 required");
    const Ival& l10 = log10_const();
    Rat dd(d * d);
    Ival t_tilde = dd * (h_tilde + Ival(Rat(1)));
    Ival t_omega = dd * (h_omega + Ival(Rat(1)));
    BoundReport r;
    r.d = d;
    r.h_omega = h_omega;
    r.h_tilde = h_tilde;
    r.log_n_max = Rat(50) * l10 + Rat(5) * t_tilde;
    r.log_mn_max = Rat(30) * l10 + Rat(3) * t_tilde;
    Ival degree_chain = Rat(60) * l10 + Rat(5) * t_tilde;
    r.log_degree_max_theorem = Rat(60) * l10 + Rat(10) * t_omega;
    r.log_degree_max = ival_min(degree_chain, r.log_degree_max_theorem);
    r.log_height_max = Rat(65) * l10 + Rat(10) * t_omega;
    r.log_height_max_theorem = Rat(70) * l10 + Rat(10) * t_omega;
    // chain consistency: the degree bound dominates both components
    if (r.log_degree_max.hi < r.log_n_max.lo || r.log_degree_max.hi < r.log_mn_max.lo)
        throw soundness_error("bound chain inconsistent");
    return r;
}

struct CorollaryInput {
    long d = 1;  // [K:Q]
    long nu = 1; // [K(alpha):K]
    HeightValue h_alpha;
};

// Single-element form: trinomials over K vanishing at alpha with
// [K(alpha^k):K] >= 3 for all k have degree at most 10^60 e^{10 d^2 nu^6 (h+1)}
// and height at most 10^70 e^{10 d^2 nu^6 (h+1)}, d = [K:Q], nu = [K(alpha):K].
inline BoundReport corollary_bounds(long d, long nu, const HeightValue& h_alpha) {
    if (d < 1 || nu < 1) throw input_error("corollary_bounds: d, nu >= 1 required");
    const Ival& l10 = log10_const();
    Rat factor = Rat(d * d) * rat_pow(Rat(nu), 6);
    Ival t = factor * (h_alpha + Ival(Rat(1)));
    BoundReport r;
    r.d = d;
    r.h_omega = h_alpha;
    r.h_tilde = h_alpha;
    r.log_degree_max = Rat(60) * l10 + Rat(10) * t;
    r.log_degree_max_theorem = r.log_degree_max;
    r.log_height_max = Rat(70) * l10 + Rat(10) * t;
    r.log_height_max_theorem = r.log_height_max;
    r.log_n_max = r.log_degree_max;
    r.log_mn_max = r.log_degree_max;
    return r;
}

inline BoundReport corollary_bounds(const CorollaryInput& in) {
    return corollary_bounds(in.d, in.nu, in.h_alpha);
}

// Certified positive lower bound on log|alpha/beta| when |alpha| > |beta|:
// (1/2) e^{-d^2 (h(alpha/beta)+1)} with d the ambient degree.
inline HeightValue log_ratio_lower_bound(const FieldElement& alpha, const FieldElement& beta) {
    if (compare_modulus(alpha, beta) != ModulusOrder::Greater)
        throw input_error("log_ratio_lower_bound requires |alpha| > |beta|");
    long d = alpha.field()->degree();
    Ival h = height_of_element(alpha / beta, Rat(1) / int_pow(Int(2), 40));
    Ival expo = -(Rat(d * d) * (h + Ival(Rat(1))));
    Ival e = exp_ival(expo, Rat(1) / int_pow(Int(2), 80));
    return Ival(e.lo / 2, e.hi / 2);
}

// Certified lower bound, log scale, on |alpha^k - beta^k| for |a| >= |b|,
// a^k != b^k:
//   |a| > |b|: k log|a| - d^2 (h(a/b) + 1)
//   |a| = |b|: k log|a| - 10^12 d^4 (h(a/b) + 1) log(k+1)
inline HeightValue power_difference_lower_bound(const FieldElement& alpha,
                                                const FieldElement& beta, long k) {
    if (k < 1) throw input_error("power_difference_lower_bound: k >= 1 required");
    if (is_zero(alpha) || is_zero(beta)) throw input_error("power difference of zero elements");
    if (alpha.pow(k) == beta.pow(k))
        throw input_error("power_difference_lower_bound: alpha^k = beta^k is degenerate");
    ModulusOrder ord = compare_modulus(alpha, beta);
    if (ord == ModulusOrder::Less)
        throw input_error("power_difference_lower_bound requires |alpha| >= |beta|: swap arguments");
    long d = alpha.field()->degree();
    Rat eps = Rat(1) / int_pow(Int(2), 40);
    Ival h = height_of_element(alpha / beta, eps);

    // enclosure of log|alpha| = (1/2) log |alpha|^2
    Rat delta = rat(1, 1024);
    Ival s(Rat(0));
    while (true) {
        s = refine_embedding(alpha, delta).abs_sq();
        if (sgn(s.lo) > 0) {
            Ival l = log_ival(s, eps);
            l = Ival(l.lo / 2, l.hi / 2);
            if (l.width() <= rat(1, 1 << 20)) {
                s = l;
                break;
            }
        }
        delta /= 16;
    }
    Ival k_log_a = Rat(k) * s;

    if (ord == ModulusOrder::Greater) {
        Ival penalty = Rat(d * d) * (h + Ival(Rat(1)));
        return k_log_a - penalty;
    }
    Ival logk1 = log_encl(Rat(k + 1), eps);
    Ival penalty = (Rat(int_pow(Int(10), 12)) * rat_pow(Rat(d), 4)) * ((h + Ival(Rat(1))) * logk1);
    return k_log_a - penalty;
}

} // namespace trisieve

#endif
