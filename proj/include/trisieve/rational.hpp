#ifndef TRISIEVE_RATIONAL_HPP
#define TRISIEVE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "trisieve/errors.hpp"

namespace trisieve {

// Arbitrary-precision integers and rationals. mpq_class keeps values
// canonical (gcd(num, den) = 1, den >= 1) as long as canonicalize() is called
// after raw numerator/denominator surgery; all operators preserve it.
using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Int& x) { return sgn(x) == 0; }

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_pow(const Rat& x, unsigned long e) {
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(x.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(x.get_mpq_t()), e);
    return r; // canonical since x is
}

inline Int int_pow(const Int& x, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

inline Rat abs_rat(const Rat& x) { return sgn(x) < 0 ? Rat(-x) : x; }

// Parses "p", "-p" or "p/q" with decimal digits only; the canonical exchange
// format for rationals throughout the JSON interfaces.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    auto bad = [&] { throw input_error("malformed rational literal '" + s + "'"); };
    std::size_t slash = s.find('/');
    auto check_int = [&](std::size_t from, std::size_t to) {
        if (from >= to) bad();
        std::size_t i = from;
        if (s[i] == '-' || s[i] == '+') ++i;
        if (i >= to) bad();
        for (; i < to; ++i)
            if (s[i] < '0' || s[i] > '9') bad();
    };
    check_int(0, slash == std::string::npos ? s.size() : slash);
    if (slash != std::string::npos) check_int(slash + 1, s.size());
    Rat r;
    if (r.set_str(s, 10) != 0) bad();
    if (sgn(r.get_den()) == 0) throw input_error("rational with zero denominator '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

// Decimal rendering of x with `digits` fractional digits, rounded toward
// -infinity (dir < 0), +infinity (dir > 0) or truncated toward zero (dir = 0).
inline std::string rat_to_decimal(const Rat& x, unsigned digits, int dir) {
    Int scale = int_pow(Int(10), digits);
    Int num = x.get_num() * scale;
    Int den = x.get_den();
    Int q;
    if (dir < 0)
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    else if (dir > 0)
        mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    else
        mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    bool neg = sgn(q) < 0;
    Int aq = abs(q);
    Int ip = aq / scale, fp = aq % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string out = (neg ? "-" : "") + ip.get_str();
    if (digits > 0) out += "." + frac;
    return out;
}

} // namespace trisieve

#endif
