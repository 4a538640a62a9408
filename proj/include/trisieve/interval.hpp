#ifndef TRISIEVE_INTERVAL_HPP
#define TRISIEVE_INTERVAL_HPP

#include <algorithm>
#include <string>

#include "trisieve/rational.hpp"

namespace trisieve {

// Closed interval with rational endpoints. All arithmetic is exact, so the
// usual outward-rounding concerns reduce to picking min/max of endpoint
// combinations; every operation returns a superset of the pointwise image.
struct Ival {
    Rat lo, hi;

    Ival() : lo(0), hi(0) {}
    explicit Ival(const Rat& v) : lo(v), hi(v) {}
    Ival(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw input_error("interval with lo > hi");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains(const Ival& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }

    friend bool disjoint(const Ival& a, const Ival& b) { return a.hi < b.lo || b.hi < a.lo; }

    friend Ival operator+(const Ival& a, const Ival& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Ival operator-(const Ival& a, const Ival& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Ival operator-(const Ival& a) { return {-a.hi, -a.lo}; }

    friend Ival operator*(const Ival& a, const Ival& b) {
        Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }

    friend Ival operator*(const Rat& c, const Ival& a) {
        return sgn(c) >= 0 ? Ival(c * a.lo, c * a.hi) : Ival(c * a.hi, c * a.lo);
    }

    friend Ival operator/(const Ival& a, const Ival& b) {
        if (b.contains_zero()) throw input_error("interval division by interval containing 0");
        Ival inv(Rat(1) / b.hi, Rat(1) / b.lo);
        return a * inv;
    }

    bool operator==(const Ival&) const = default;

    // Tight enclosure of {x^2 : x in this}.
    Ival sq() const {
        Rat a = lo * lo, b = hi * hi;
        if (contains_zero()) return {Rat(0), std::max(a, b)};
        return {std::min(a, b), std::max(a, b)};
    }

    std::string str() const { return "[" + rat_to_string(lo) + ", " + rat_to_string(hi) + "]"; }
};

inline Ival ival_max(const Ival& a, const Ival& b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Ival ival_min(const Ival& a, const Ival& b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

inline Ival hull(const Ival& a, const Ival& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

} // namespace trisieve

#endif
