#ifndef TRISIEVE_INT_POLY_HPP
#define TRISIEVE_INT_POLY_HPP

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "trisieve/rect.hpp"

namespace trisieve {

struct QPoly;

// Dense univariate polynomial over Z, constant term first. The zero
// polynomial has an empty coefficient vector; otherwise the leading
// coefficient is nonzero.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c.emplace_back(v);
        normalize();
    }
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    const Int& lc() const { return c.back(); }
    const Int& operator[](std::size_t i) const { return c[i]; }

    static IntPoly x_power(unsigned k, Int coeff = Int(1)) {
        IntPoly p;
        p.c.assign(k + 1, Int(0));
        p.c[k] = std::move(coeff);
        p.normalize();
        return p;
    }

    bool operator==(const IntPoly&) const = default;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        IntPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), Int(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.normalize();
        return r;
    }
    friend IntPoly operator-(const IntPoly& a) {
        IntPoly r = a;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        IntPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        r.normalize();
        return r;
    }
    friend IntPoly operator*(const Int& s, const IntPoly& a) {
        if (sgn(s) == 0) return {};
        IntPoly r = a;
        for (auto& v : r.c) v *= s;
        return r;
    }

    IntPoly derivative() const {
        IntPoly r;
        for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(Int(i) * c[i]);
        r.normalize();
        return r;
    }

    Int content() const { // gcd of coefficients, >= 0; 0 for the zero polynomial
        Int g(0);
        for (const auto& v : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        return g;
    }

    IntPoly primitive_part() const { // sign preserved
        if (is_zero()) return {};
        Int g = content();
        IntPoly r = *this;
        for (auto& v : r.c) v /= g;
        return r;
    }

    IntPoly primitive_positive() const { // primitive with positive leading coefficient
        IntPoly r = primitive_part();
        if (!r.is_zero() && sgn(r.lc()) < 0)
            for (auto& v : r.c) v = -v;
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + Rat(c[i]);
        return acc;
    }

    Int eval_int(const Int& x) const {
        Int acc(0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    // Exact value of p(x + iy) as a pair (real, imaginary).
    std::pair<Rat, Rat> eval_complex(const Rat& x, const Rat& y) const {
        Rat re(0), im(0);
        for (std::size_t i = c.size(); i-- > 0;) {
            Rat nre = re * x - im * y + Rat(c[i]);
            Rat nim = re * y + im * x;
            re = nre;
            im = nim;
        }
        return {re, im};
    }

    // Interval Horner evaluation; encloses {p(z) : z in r}.
    Rect eval_rect(const Rect& r) const {
        Rect acc;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + Rect(Rat(c[i]));
        return acc;
    }

    // Cauchy bound: every complex root has |root| < 1 + max |c_i| / |lc|.
    Rat root_bound() const {
        if (degree() < 1) return Rat(1);
        Rat m(0);
        for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, Rat(abs(c[i])));
        return 1 + m / Rat(abs(lc()));
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (sgn(c[i]) == 0) continue;
            if (!s.empty()) s += sgn(c[i]) > 0 ? " + " : " - ";
            else if (sgn(c[i]) < 0) s += "-";
            Int a = abs(c[i]);
            if (a != 1 || i == 0) s += a.get_str();
            if (i >= 1) s += "x";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }
};

// Pseudo-remainder: returns R with lc(b)^(deg a - deg b + 1) * a = q*b + R.
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw input_error("pseudo_rem by zero polynomial");
    IntPoly r = a;
    const Int& d = b.lc();
    long e = a.degree() - b.degree() + 1;
    if (e < 0) e = 0;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        IntPoly s = IntPoly::x_power(static_cast<unsigned>(r.degree() - b.degree()), r.lc()) * b;
        r = d * r - s;
        --e;
    }
    if (e > 0) r = int_pow(d, static_cast<unsigned long>(e)) * r;
    return r;
}

// Primitive gcd, positive leading coefficient. Content of the inputs is
// deliberately discarded.
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
    if (a.is_zero() && b.is_zero()) throw input_error("gcd of two zero polynomials");
    a = a.primitive_positive();
    b = b.primitive_positive();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_rem(a, b).primitive_positive();
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive_positive();
}

// Exact division over Z; throws soundness_error if b does not divide a.
inline IntPoly div_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw input_error("division by zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) throw soundness_error("div_exact: degree mismatch");
    std::vector<Rat> rem(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) rem[i] = Rat(a.c[i]);
    int dr = a.degree(), db = b.degree();
    std::vector<Rat> q(static_cast<std::size_t>(dr - db) + 1, Rat(0));
    Rat blc(b.lc());
    while (dr >= db) {
        while (dr >= 0 && sgn(rem[dr]) == 0) --dr;
        if (dr < db) break;
        Rat f = rem[dr] / blc;
        q[dr - db] = f;
        for (int i = 0; i <= db; ++i) rem[dr - db + i] -= f * Rat(b.c[i]);
        --dr;
    }
    for (int i = 0; i < db; ++i)
        if (sgn(rem[i]) != 0) throw soundness_error("div_exact: nonzero remainder");
    IntPoly out;
    out.c.reserve(q.size());
    for (auto& v : q) {
        if (v.get_den() != 1) throw soundness_error("div_exact: non-integral quotient");
        out.c.push_back(v.get_num());
    }
    out.normalize();
    return out;
}

// p divided by gcd(p, p'), primitive with positive leading coefficient: the
// product of the distinct irreducible factors of p.
inline IntPoly squarefree_part(const IntPoly& p) {
    if (p.is_zero()) throw input_error("squarefree part of zero polynomial");
    IntPoly pp = p.primitive_positive();
    if (pp.degree() == 0) return IntPoly{1};
    IntPoly g = poly_gcd(pp, pp.derivative());
    return div_exact(pp, g).primitive_positive();
}

inline bool is_squarefree(const IntPoly& p) {
    return !p.is_zero() && (p.degree() <= 0 || poly_gcd(p, p.derivative()).degree() == 0);
}

namespace detail {
// Sylvester resultant by the subresultant PRS.
inline Int resultant_sylvester(IntPoly a, IntPoly b) {
    int sign = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() * b.degree()) % 2 != 0) sign = -sign;
        std::swap(a, b);
    }
    if (b.degree() == 0) {
        Int r = int_pow(b.c[0], static_cast<unsigned long>(a.degree()));
        return sign > 0 ? r : Int(-r);
    }
    Int ca = a.content(), cb = b.content();
    a = a.primitive_part();
    b = b.primitive_part();
    Int t = int_pow(ca, static_cast<unsigned long>(b.degree())) *
            int_pow(cb, static_cast<unsigned long>(a.degree()));
    Int g(1), h(1);
    while (true) {
        long delta = a.degree() - b.degree();
        if ((a.degree() % 2) != 0 && (b.degree() % 2) != 0) sign = -sign;
        IntPoly r = pseudo_rem(a, b);
        a = std::move(b);
        Int div = g * int_pow(h, static_cast<unsigned long>(delta));
        b = r;
        for (auto& v : b.c) {
            Int q;
            mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), div.get_mpz_t());
            v = q;
        }
        b.normalize();
        g = a.lc();
        if (delta == 1) {
            h = g;
        } else if (delta >= 2) { // h <- g^delta / h^(delta-1), exact
            Int num = int_pow(g, static_cast<unsigned long>(delta));
            Int den = int_pow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        } // delta == 0 (first round with equal degrees): h unchanged
        if (b.is_zero()) return Int(0);
        if (b.degree() == 0) break;
    }
    // h' = lc(b)^{deg a} / h^{deg a - 1}
    Int num = int_pow(b.c[0], static_cast<unsigned long>(a.degree()));
    Int den = int_pow(h, static_cast<unsigned long>(a.degree() - 1));
    Int hp;
    mpz_divexact(hp.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int res = t * hp;
    return sign > 0 ? res : Int(-res);
}
} // namespace detail

// Resultant with the convention res(p, q) = lc(q)^deg(p) * prod p(beta) over
// the roots beta of q; equals the Sylvester determinant times
// (-1)^(deg p * deg q). With this convention res(x-3, x-5) = 2.
inline Int resultant(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) throw input_error("resultant of zero polynomial");
    if (p.degree() == 0) return int_pow(p.c[0], static_cast<unsigned long>(q.degree()));
    if (q.degree() == 0) return int_pow(q.c[0], static_cast<unsigned long>(p.degree()));
    Int r = detail::resultant_sylvester(p, q);
    if ((p.degree() % 2) != 0 && (q.degree() % 2) != 0) r = -r;
    return r;
}

// ---------------------------------------------------------------------------
// Rational polynomials: a light companion used for edge parametrisations,
// exact long division and interpolation. Constant term first.
struct QPoly {
    std::vector<Rat> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { normalize(); }
    explicit QPoly(const IntPoly& p) {
        c.reserve(p.c.size());
        for (const auto& v : p.c) c.emplace_back(v);
    }

    void normalize() {
        while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rat& lc() const { return c.back(); }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        QPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.normalize();
        return r;
    }
    friend QPoly operator-(const QPoly& a) {
        QPoly r = a;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        QPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        r.normalize();
        return r;
    }
    friend QPoly operator*(const Rat& s, const QPoly& a) {
        if (sgn(s) == 0) return {};
        QPoly r = a;
        for (auto& v : r.c) v *= s;
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    // Multiply by (a + b*t).
    QPoly mul_linear(const Rat& a, const Rat& b) const {
        QPoly r;
        r.c.assign(c.size() + 1, Rat(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            r.c[i] += a * c[i];
            r.c[i + 1] += b * c[i];
        }
        r.normalize();
        return r;
    }

    // Integer polynomial with the same roots and signs (scaled by the
    // positive lcm of denominators).
    IntPoly clear_denominators() const {
        Int l(1);
        for (const auto& v : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
        IntPoly out;
        out.c.reserve(c.size());
        for (const auto& v : c) out.c.push_back(v.get_num() * (l / v.get_den()));
        out.normalize();
        return out;
    }
};

// Quotient and remainder of a by b over Q (b nonzero).
inline std::pair<QPoly, QPoly> qpoly_divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw input_error("division by zero polynomial");
    QPoly rem = a, q;
    if (a.degree() >= b.degree())
        q.c.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        Rat f = rem.lc() / b.lc();
        int shift = rem.degree() - b.degree();
        q.c[shift] = f;
        for (int i = 0; i <= b.degree(); ++i) rem.c[shift + i] -= f * b.c[i];
        rem.normalize();
    }
    q.normalize();
    return {q, rem};
}

// Lagrange interpolation through (x_i, y_i), pairwise distinct x_i.
inline QPoly qpoly_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    QPoly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        QPoly basis(std::vector<Rat>{Rat(1)});
        Rat denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis.mul_linear(-xs[j], Rat(1));
            denom *= xs[i] - xs[j];
        }
        acc = acc + (ys[i] / denom) * basis;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Sturm sequences and real-root counting for squarefree integer polynomials.

inline std::vector<IntPoly> sturm_chain(const IntPoly& p) {
    std::vector<IntPoly> chain;
    chain.push_back(p);
    if (p.degree() < 1) return chain;
    chain.push_back(p.derivative());
    while (chain.back().degree() > 0) {
        const IntPoly& a = chain[chain.size() - 2];
        const IntPoly& b = chain.back();
        IntPoly r = pseudo_rem(a, b);
        if (r.is_zero()) break;
        // prem scaled the true remainder by lc(b)^e; flip so the chain keeps
        // the sign pattern of the rational remainder sequence.
        long e = a.degree() - b.degree() + 1;
        bool flip = sgn(b.lc()) < 0 && (e % 2) != 0;
        IntPoly next = flip ? r : -r;
        chain.push_back(next.primitive_part());
    }
    return chain;
}

inline int sign_variations_at(const std::vector<IntPoly>& chain, const Rat& x) {
    int var = 0, prev = 0;
    for (const auto& f : chain) {
        int s = sgn(f.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Number of roots of squarefree p in the open interval (a, b); requires
// p(a) != 0 and p(b) != 0.
inline int count_real_roots_open(const std::vector<IntPoly>& chain, const Rat& a, const Rat& b) {
    if (a >= b) return 0;
    return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

} // namespace trisieve

#endif
