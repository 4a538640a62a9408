#ifndef TRISIEVE_RECT_HPP
#define TRISIEVE_RECT_HPP

#include <string>

#include "trisieve/interval.hpp"

namespace trisieve {

// Axis-aligned rectangle in the complex plane with rational corners. Used
// both as the value domain of certified evaluation and as isolating region
// for a chosen root of a polynomial (this is how an embedding is pinned
// down). Degenerate rectangles (segments, points) are allowed and are the
// natural representation of real embeddings.
struct Rect {
    Ival re, im;

    Rect() = default;
    Rect(Ival r, Ival i) : re(std::move(r)), im(std::move(i)) {}
    explicit Rect(const Rat& x) : re(x), im(Rat(0)) {}
    Rect(const Rat& x, const Rat& y) : re(x), im(y) {}

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool contains_point(const Rat& x, const Rat& y) const { return re.contains(x) && im.contains(y); }
    bool contains(const Rect& o) const { return re.contains(o.re) && im.contains(o.im); }
    bool is_point() const { return re.is_point() && im.is_point(); }
    Rat max_side() const { return std::max(re.width(), im.width()); }

    friend Rect operator+(const Rect& a, const Rect& b) { return {a.re + b.re, a.im + b.im}; }
    friend Rect operator-(const Rect& a, const Rect& b) { return {a.re - b.re, a.im - b.im}; }
    friend Rect operator-(const Rect& a) { return {-a.re, -a.im}; }

    friend Rect operator*(const Rect& a, const Rect& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    friend Rect operator*(const Rat& c, const Rect& a) { return {c * a.re, c * a.im}; }

    Rect conj() const { return {re, -im}; }

    // Tight enclosure of {|z|^2 : z in this}.
    Ival abs_sq() const { return re.sq() + im.sq(); }

    // z/w = z * conj(w) / |w|^2; requires 0 outside w. Conservative, not tight.
    friend Rect operator/(const Rect& a, const Rect& b) {
        if (b.contains_zero()) throw input_error("rectangle division by rectangle containing 0");
        Ival n = b.abs_sq();
        Rect t = a * b.conj();
        return {t.re / n, t.im / n};
    }

    bool operator==(const Rect&) const = default;

    std::string str() const { return re.str() + " + " + im.str() + " i"; }
};

inline bool disjoint(const Rect& a, const Rect& b) {
    return disjoint(a.re, b.re) || disjoint(a.im, b.im);
}

} // namespace trisieve

#endif
