#ifndef TRISIEVE_TRANSCEND_HPP
#define TRISIEVE_TRANSCEND_HPP

#include "trisieve/interval.hpp"

namespace trisieve {

// Certified enclosures of log, exp and a few constants, evaluated in exact
// rational arithmetic from Taylor/atanh series with explicit tail bounds.
// No floating point enters any certified path.

namespace detail {

// Directed rounding to a dyadic with denominator 2^prec. Series inputs are
// coarsened this way first: exact rationals arriving here can carry enormous
// denominators (e.g. endpoints of other enclosures), and Taylor arithmetic
// on them is prohibitively heavy, while the coarsening error is absorbed
// into the requested eps.
inline Rat dyadic_round(const Rat& x, unsigned prec, int dir) {
    Int num = x.get_num() << prec;
    Int q;
    if (dir < 0)
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    else
        mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    Rat r(q, Int(1) << prec);
    r.canonicalize();
    return r;
}

// bits needed to resolve eps: smallest k with 2^-k <= eps (roughly)
inline unsigned eps_bits(const Rat& eps) {
    std::size_t nb = mpz_sizeinbase(eps.get_num().get_mpz_t(), 2);
    std::size_t db = mpz_sizeinbase(eps.get_den().get_mpz_t(), 2);
    long k = static_cast<long>(db) - static_cast<long>(nb) + 2;
    if (k < 1) k = 1;
    return static_cast<unsigned>(k);
}

inline bool denominator_exceeds(const Rat& x, unsigned bits) {
    return mpz_sizeinbase(x.get_den().get_mpz_t(), 2) > bits;
}

// Enclosure of atanh(u) for |u| <= 1/2 with tail bound after N terms.
inline Ival atanh_encl(const Rat& u, int terms) {
    Rat sum(0), up = u, u2 = u * u;
    for (int i = 0; i < terms; ++i) {
        sum += up / Rat(2 * i + 1);
        up *= u2;
    }
    // |tail| <= |u|^(2N+1) / ((2N+1)(1-u^2))
    Rat tail = abs_rat(up) / (Rat(2 * terms + 1) * (1 - u2));
    return {sum - tail, sum + tail};
}

inline Ival log2_raw(int terms) { // log 2 = 2 atanh(1/3)
    Ival a = atanh_encl(rat(1, 3), terms);
    return {2 * a.lo, 2 * a.hi};
}

} // namespace detail

// Enclosure of log x for rational x > 0 with width <= eps.
inline Ival log_encl(const Rat& x, const Rat& eps) {
    if (sgn(x) <= 0) throw input_error("log of non-positive value");
    if (x == 1) return Ival(Rat(0));
    long e = 0;
    Rat y = x;
    const Rat hi_cut = rat(4, 3), lo_cut = rat(2, 3);
    while (y > hi_cut) { y /= 2; ++e; }
    while (y < lo_cut) { y *= 2; --e; }
    // log x = e*log2 + 2*atanh(u), u = (y-1)/(y+1), |u| <= 1/5.
    Rat u = (y - 1) / (y + 1);
    Rat budget = eps / 2;
    // coarsen u: |atanh'| <= 25/24 on [-1/5, 1/5], so a dyadic error of
    // 2^-prec costs at most (25/12) 2^-prec, kept under budget/4
    unsigned prec = detail::eps_bits(budget) + 6;
    Rat u_lo = u, u_hi = u;
    if (detail::denominator_exceeds(u, prec)) {
        u_lo = detail::dyadic_round(u, prec, -1);
        u_hi = detail::dyadic_round(u, prec, +1);
    }
    Ival acc(Rat(0));
    if (e != 0) {
        Rat part = (budget / 2) / Rat(std::abs(e));
        int terms = 8;
        Ival l2 = detail::log2_raw(terms);
        while (l2.width() > part) { terms *= 2; l2 = detail::log2_raw(terms); }
        acc = Rat(e) * l2;
    }
    if (sgn(u_lo) != 0 || sgn(u_hi) != 0) {
        int terms = 8;
        while (true) {
            Ival a = detail::atanh_encl(u_lo, terms);
            if (u_hi != u_lo) a = hull(a, detail::atanh_encl(u_hi, terms));
            if (2 * a.width() <= budget) {
                acc = acc + Ival(2 * a.lo, 2 * a.hi);
                break;
            }
            terms *= 2;
        }
    }
    return acc;
}

// Enclosure of log over an interval with positive lower end.
inline Ival log_ival(const Ival& v, const Rat& eps) {
    if (sgn(v.lo) <= 0) throw input_error("log of interval touching 0");
    if (v.is_point()) return log_encl(v.lo, eps);
    return hull(log_encl(v.lo, eps), log_encl(v.hi, eps));
}

// Enclosure of exp x with width <= eps. Exponents of large magnitude are
// rejected: the library compares astronomically scaled quantities in log
// scale instead of materialising them.
inline Ival exp_encl(const Rat& x, const Rat& eps) {
    if (sgn(x) == 0) return Ival(Rat(1));
    if (abs_rat(x) > 200000) throw input_error("exp argument too large for exact evaluation");
    // coarsen x: an input error of 2^-prec costs a relative e^(2^-prec) - 1,
    // so prec covers both eps and the magnitude e^x <= 2^(1.5 x)
    Rat x_lo = x, x_hi = x;
    {
        long x_ceil = 0;
        if (sgn(x) > 0) {
            Int c;
            mpz_cdiv_q(c.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
            x_ceil = c.get_si();
        }
        unsigned prec = detail::eps_bits(eps) + 8 + static_cast<unsigned>((3 * x_ceil) / 2 + 2);
        if (detail::denominator_exceeds(x, prec)) {
            x_lo = detail::dyadic_round(x, prec, -1);
            x_hi = detail::dyadic_round(x, prec, +1);
        }
    }
    auto exp_point_lo = [&eps](const Rat& v, int terms) -> Ival {
        int halvings = 0;
        Rat r = v;
        const Rat half = rat(1, 2);
        while (abs_rat(r) > half) { r /= 2; ++halvings; }
        while (true) {
            Rat term(1), sum(1);
            for (int i = 1; i <= terms; ++i) {
                term = term * r / Rat(i);
                sum += term;
            }
            Rat tail = 2 * abs_rat(term * r) / Rat(terms + 1);
            Ival w(sum - tail, sum + tail);
            if (sgn(w.lo) <= 0) { terms *= 2; continue; }
            for (int i = 0; i < halvings; ++i) w = Ival(w.lo * w.lo, w.hi * w.hi);
            if (w.width() <= eps / 4) return w;
            terms *= 2;
        }
    };
    Ival lo_part = exp_point_lo(x_lo, 8);
    if (x_hi == x_lo) return lo_part;
    return hull(lo_part, exp_point_lo(x_hi, 8));
}

inline Ival exp_ival(const Ival& v, const Rat& eps) {
    if (v.is_point()) return exp_encl(v.lo, eps);
    return hull(exp_encl(v.lo, eps), exp_encl(v.hi, eps));
}

namespace detail {
inline Ival atan_inv_encl(long q, int terms) { // atan(1/q), alternating series
    Rat x = rat(1, q), x2 = x * x, up = x, sum(0);
    for (int i = 0; i < terms; ++i) {
        Rat t = up / Rat(2 * i + 1);
        sum += (i % 2 == 0) ? t : Rat(-t);
        up *= x2;
    }
    Rat tail = up / Rat(2 * terms + 1);
    return {sum - tail, sum + tail};
}
} // namespace detail

// Cached constants, enclosed to ~60 decimal digits and widened outward.
inline const Ival& log2_const() {
    static const Ival v = [] {
        Ival l = detail::log2_raw(80);
        Rat pad = Rat(1) / int_pow(Int(10), 60);
        return Ival(l.lo - pad, l.hi + pad);
    }();
    return v;
}

inline const Ival& log10_const() {
    static const Ival v = [] {
        Rat eps = Rat(1) / int_pow(Int(10), 62);
        Ival l = log_encl(Rat(10), eps);
        Rat pad = Rat(1) / int_pow(Int(10), 60);
        return Ival(l.lo - pad, l.hi + pad);
    }();
    return v;
}

inline const Ival& pi_const() { // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    static const Ival v = [] {
        Ival a = detail::atan_inv_encl(5, 50), b = detail::atan_inv_encl(239, 20);
        Ival p = Ival(16 * a.lo, 16 * a.hi) - Ival(4 * b.lo, 4 * b.hi);
        Rat pad = Rat(1) / int_pow(Int(10), 60);
        return Ival(p.lo - pad, p.hi + pad);
    }();
    return v;
}

inline const Ival& e_const() {
    static const Ival v = [] {
        Rat eps = Rat(1) / int_pow(Int(10), 62);
        Ival l = exp_encl(Rat(1), eps);
        Rat pad = Rat(1) / int_pow(Int(10), 60);
        return Ival(l.lo - pad, l.hi + pad);
    }();
    return v;
}

} // namespace trisieve

#endif
