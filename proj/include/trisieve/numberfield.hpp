#ifndef TRISIEVE_NUMBERFIELD_HPP
#define TRISIEVE_NUMBERFIELD_HPP

#include <limits>
#include <memory>
#include <mutex>
#include <vector>

#include "trisieve/roots.hpp"
#include "trisieve/transcend.hpp"

namespace trisieve {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// A fixed number field Q[x]/(f) together with one designated complex
// embedding, pinned down by a rectangle isolating exactly one root of f.
// Irreducibility of f is an input assertion that is trusted (testing it
// would require factorisation); squarefreeness is verified, which keeps all
// certified checks sound. If f is reducible, results refer to the given
// ring and division may fail.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static FieldPtr make(IntPoly f, Rect embedding) {
        if (f.degree() < 1) throw input_error("defining polynomial must have degree >= 1");
        if (!is_squarefree(f)) throw input_error("defining polynomial is not squarefree");
        BoxCount c = count_distinct_roots(f, embedding);
        if (c.boundary_hit) throw input_error("root not isolated: a root lies on the rectangle boundary");
        if (c.count != 1)
            throw input_error("root not isolated: rectangle contains " + std::to_string(c.count) +
                              " roots of the defining polynomial");
        return FieldPtr(new NumberField(std::move(f), std::move(embedding)));
    }

    // Q presented as Q[x]/(x) with generator 0; a process-wide singleton so
    // rationals constructed independently live in the same field.
    static const FieldPtr& rationals() {
        static const FieldPtr q = make(IntPoly{0, 1}, Rect(Ival(Rat(0)), Ival(Rat(0))));
        return q;
    }

    const IntPoly& defining_poly() const { return f_; }
    int degree() const { return deg_; }
    const Rect& initial_box() const { return initial_; }

    // Monotonically refined isolating rectangle of the designated root.
    Rect generator_box_below(const Rat& size) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (refined_.max_side() >= size) refined_ = refine_isolating_box(f_, refined_);
        return refined_;
    }

    // Isolating boxes for all conjugates (roots of f), each refined below
    // size; sorted by (re.lo, im.lo) of the initial isolation.
    std::vector<Rect> conjugate_boxes_below(const Rat& size) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (conjugates_.empty()) conjugates_ = isolate_all_roots(f_);
        for (auto& box : conjugates_)
            while (box.max_side() >= size) box = refine_isolating_box(f_, box);
        return conjugates_;
    }

    // Remainder of p modulo the defining polynomial as a full-length
    // coordinate vector.
    std::vector<Rat> reduce(const QPoly& p) const {
        QPoly rem = qpoly_divmod(p, QPoly(f_)).second;
        std::vector<Rat> out(static_cast<std::size_t>(deg_), Rat(0));
        for (std::size_t i = 0; i < rem.c.size(); ++i) out[i] = rem.c[i];
        return out;
    }

private:
    NumberField(IntPoly f, Rect box)
        : f_(std::move(f)), deg_(f_.degree()), initial_(box), refined_(std::move(box)) {}

    IntPoly f_;
    int deg_;
    Rect initial_;
    mutable std::mutex mu_;
    mutable Rect refined_;
    mutable std::vector<Rect> conjugates_;
};

// Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g.
inline std::tuple<QPoly, QPoly, QPoly> qpoly_xgcd(QPoly a, QPoly b) {
    QPoly s0(std::vector<Rat>{Rat(1)}), s1, t0, t1(std::vector<Rat>{Rat(1)});
    while (!b.is_zero()) {
        auto [q, r] = qpoly_divmod(a, b);
        QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    return {a, s0, t0};
}

class FieldElement {
public:
    FieldElement(FieldPtr field, std::vector<Rat> coords)
        : k_(std::move(field)), co_(std::move(coords)) {
        if (!k_) throw input_error("element without a field");
        if (static_cast<int>(co_.size()) != k_->degree())
            throw input_error("coordinate vector length != field degree");
    }

    static FieldElement zero(const FieldPtr& k) {
        return FieldElement(k, std::vector<Rat>(k->degree(), Rat(0)));
    }
    static FieldElement one(const FieldPtr& k) { return from_rat(k, Rat(1)); }
    static FieldElement from_rat(const FieldPtr& k, const Rat& v) {
        std::vector<Rat> c(k->degree(), Rat(0));
        c[0] = v;
        return FieldElement(k, std::move(c));
    }
    static FieldElement generator(const FieldPtr& k) {
        if (k->degree() == 1) {
            // generator is the unique root of the degree-1 defining polynomial
            Rat root(-k->defining_poly()[0], k->defining_poly()[1]);
            root.canonicalize();
            return from_rat(k, root);
        }
        std::vector<Rat> c(k->degree(), Rat(0));
        c[1] = 1;
        return FieldElement(k, std::move(c));
    }

    const FieldPtr& field() const { return k_; }
    const std::vector<Rat>& coords() const { return co_; }

    friend bool is_zero(const FieldElement& a) {
        for (const auto& v : a.co_)
            if (sgn(v) != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < co_.size(); ++i)
            if (sgn(co_[i]) != 0) return false;
        return true;
    }
    const Rat& rational_value() const {
        if (!is_rational()) throw input_error("element is not rational");
        return co_[0];
    }

    bool operator==(const FieldElement& o) const { return k_ == o.k_ && co_ == o.co_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        std::vector<Rat> c(a.co_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.co_[i];
        return FieldElement(a.k_, std::move(c));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        std::vector<Rat> c(a.co_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.co_[i];
        return FieldElement(a.k_, std::move(c));
    }
    friend FieldElement operator-(const FieldElement& a) {
        std::vector<Rat> c(a.co_);
        for (auto& v : c) v = -v;
        return FieldElement(a.k_, std::move(c));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        QPoly prod = a.as_poly() * b.as_poly();
        return FieldElement(a.k_, a.k_->reduce(prod));
    }
    friend FieldElement operator*(const Rat& s, const FieldElement& a) {
        std::vector<Rat> c(a.co_);
        for (auto& v : c) v *= s;
        return FieldElement(a.k_, std::move(c));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }

    FieldElement inverse() const {
        if (is_zero(*this)) throw input_error("division by zero field element");
        auto [g, s, t] = qpoly_xgcd(as_poly(), QPoly(k_->defining_poly()));
        (void)t;
        if (g.degree() != 0)
            throw input_error("element not invertible (is the defining polynomial irreducible?)");
        QPoly inv = (Rat(1) / g.c[0]) * s;
        return FieldElement(k_, k_->reduce(inv));
    }

    FieldElement pow(long e) const {
        if (e == std::numeric_limits<long>::min()) throw input_error("exponent out of range");
        if (e < 0) return inverse().pow(-e);
        FieldElement acc = one(k_);
        FieldElement base = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u > 0) {
            if (u & 1UL) acc = acc * base;
            base = base * base;
            u >>= 1;
        }
        return acc;
    }

    QPoly as_poly() const {
        QPoly p;
        p.c = co_;
        p.normalize();
        return p;
    }

private:
    void check_same(const FieldElement& o) const {
        if (k_ != o.k_) throw input_error("elements of different number fields");
    }

    FieldPtr k_;
    std::vector<Rat> co_;

    friend class NumberField;
};

// Product over all conjugate embeddings sigma of F(sigma, Y), where F is
// given by its Y-coefficients as rational polynomials in the generator:
// F(x, Y) = sum coeff_y[k](x) * Y^k. Computed through univariate resultants
// at interpolation points, entirely in exact arithmetic. The leading
// Y-coefficient must be a nonzero element of the field.
inline QPoly product_over_conjugates(const IntPoly& f, std::vector<QPoly> coeff_y) {
    while (!coeff_y.empty() && coeff_y.back().is_zero()) coeff_y.pop_back();
    if (coeff_y.empty()) throw input_error("product over conjugates of the zero polynomial");
    const int deg_y = static_cast<int>(coeff_y.size()) - 1;
    const int d = f.degree();

    // Clear denominators globally: L * F has integer-polynomial coefficients.
    Int den_lcm(1);
    for (const auto& q : coeff_y)
        for (const auto& v : q.c)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<IntPoly> ic(coeff_y.size());
    int deg_x = 0;
    for (std::size_t k = 0; k < coeff_y.size(); ++k) {
        IntPoly p;
        p.c.reserve(coeff_y[k].c.size());
        for (const auto& v : coeff_y[k].c) p.c.push_back(v.get_num() * (den_lcm / v.get_den()));
        p.normalize();
        deg_x = std::max(deg_x, p.degree());
        ic[k] = std::move(p);
    }
    if (deg_x < 0) deg_x = 0;

    const int points_needed = deg_y * d + 1;
    std::vector<Rat> xs, ys;
    Rat lcf_pow(int_pow(f.lc(), static_cast<unsigned long>(deg_x)));
    for (long t = 0; static_cast<int>(xs.size()) < points_needed; ++t) {
        long y = (t % 2 == 0) ? t / 2 : -(t / 2 + 1); // 0, -1, 1, -2, 2, ...
        IntPoly pt;
        for (std::size_t k = 0; k < ic.size(); ++k)
            pt = pt + int_pow(Int(y), static_cast<unsigned long>(k)) * ic[k];
        if (pt.is_zero() || pt.degree() != deg_x) continue; // leading x-coefficient dropped
        Int res = resultant(pt, f);
        xs.emplace_back(y);
        ys.push_back(Rat(res) / lcf_pow);
        if (t > 8L * points_needed + 16)
            throw soundness_error("could not find enough interpolation points");
    }
    QPoly prod_scaled = qpoly_interpolate(xs, ys); // product of (L*F)(sigma, Y)
    if (prod_scaled.degree() != deg_y * d)
        throw soundness_error("conjugate product has wrong degree (reducible defining polynomial?)");
    Rat scale = Rat(1) / rat_pow(Rat(den_lcm), static_cast<unsigned long>(d));
    return scale * prod_scaled;
}

// The monic minimal polynomial over Q of a, returned as a primitive integer
// polynomial with positive leading coefficient: the squarefree part of the
// characteristic polynomial prod_sigma (Y - a(sigma)).
inline IntPoly minimal_poly(const FieldElement& a) {
    if (is_zero(a)) return IntPoly{0, 1};
    std::vector<QPoly> coeff_y(2);
    coeff_y[0] = -a.as_poly();
    coeff_y[1] = QPoly(std::vector<Rat>{Rat(1)});
    QPoly charpoly = product_over_conjugates(a.field()->defining_poly(), std::move(coeff_y));
    return squarefree_part(charpoly.clear_denominators());
}

// Rectangle of width and height < eps certified to contain the image of a
// under the designated embedding.
inline Rect refine_embedding(const FieldElement& a, const Rat& eps) {
    if (sgn(eps) <= 0) throw input_error("refine_embedding requires eps > 0");
    const NumberField& k = *a.field();
    Rat delta = eps;
    while (true) {
        Rect gen = k.generator_box_below(delta);
        Rect val; // Horner over the generator box
        for (std::size_t i = a.coords().size(); i-- > 0;)
            val = val * gen + Rect(Ival(a.coords()[i]), Ival(Rat(0)));
        if (val.re.width() < eps && val.im.width() < eps) return val;
        delta /= 16;
    }
}

enum class ModulusOrder { Less, Equal, Greater };

// Exact trichotomy for |a| vs |b|. Separation is detected by refining
// enclosures; exact equality is certified through the modulus gap: a complex
// algebraic number theta of degree at most D with |theta| != 1 satisfies
// |1 - |theta|| >= exp(-D^2 (h(theta) + log 2)), so once the enclosure of
// |theta| is inside the gap window around 1, |theta| = 1 exactly. The crude
// height bound from the minimal polynomial suffices here.
inline ModulusOrder compare_modulus(const FieldElement& a, const FieldElement& b) {
    if (is_zero(a) || is_zero(b)) throw input_error("compare_modulus with zero element");
    FieldElement theta = a / b;
    if (theta.is_rational()) {
        Rat av = abs_rat(theta.rational_value());
        if (av < 1) return ModulusOrder::Less;
        if (av > 1) return ModulusOrder::Greater;
        return ModulusOrder::Equal;
    }

    IntPoly p = minimal_poly(theta);
    int k = p.degree();
    // h(theta) <= (log|lc| + k log max(1, Cauchy bound)) / k
    Rat eps0 = rat(1, 1000000);
    Ival h_up = log_encl(Rat(abs(p.lc())), eps0);
    Rat bound = p.root_bound();
    if (bound > 1) h_up = h_up + Rat(k) * log_encl(bound, eps0);
    Rat h_top = h_up.hi / k;
    long D = a.field()->degree();
    Rat expo = -Rat(D * D) * (h_top + log2_const().hi);
    Rat gap = exp_encl(expo, rat(1, 1000)).lo; // may be conservative, must be > 0
    if (sgn(gap) <= 0) throw soundness_error("modulus gap underflow");
    Rat win_lo = (1 - gap) * (1 - gap), win_hi = (1 + gap) * (1 + gap);

    Rat delta = rat(1, 16);
    while (true) {
        Rect ba = refine_embedding(a, delta), bb = refine_embedding(b, delta);
        Ival sa = ba.abs_sq(), sb = bb.abs_sq();
        if (sa.lo > sb.hi) return ModulusOrder::Greater;
        if (sa.hi < sb.lo) return ModulusOrder::Less;
        if (sgn(sa.lo) > 0 && sgn(sb.lo) > 0) {
            Ival ratio = sa / sb;
            if (ratio.lo > win_lo && ratio.hi < win_hi) return ModulusOrder::Equal;
        }
        delta /= 16;
    }
}

} // namespace trisieve

#endif
