#ifndef TRISIEVE_ROOTS_HPP
#define TRISIEVE_ROOTS_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "trisieve/int_poly.hpp"

namespace trisieve {

// Certified root counting and isolation for squarefree integer polynomials
// in rectangles with rational corners. Counting in a nondegenerate rectangle
// uses the argument principle: the winding number of p along the boundary
// equals the number of interior roots, and the winding number is recovered
// from the sequence of quadrants the boundary image visits. Every decision
// reduces to Sturm counts and exact sign evaluations; no root is ever
// approximated numerically.

struct BoxCount {
    bool boundary_hit = false; // a root lies on the boundary; count undefined
    int count = 0;
};

namespace rootdetail {

// Location of one real root: an exact rational point, or an interval (lo, hi)
// containing it strictly, with the polynomial nonzero at both ends.
struct RootLoc {
    bool exact = false;
    Rat lo, hi; // exact: lo == hi == the root
};

struct Sturm {
    IntPoly p; // squarefree
    std::vector<IntPoly> chain;

    explicit Sturm(IntPoly q) : p(std::move(q)), chain(sturm_chain(p)) {}

    // Roots in (a, b]. With the zero-skipping variation convention this is
    // valid even when p vanishes at an endpoint (p squarefree).
    int count_half_open(const Rat& a, const Rat& b) const {
        if (a >= b) return 0;
        return sign_variations_at(chain, a) - sign_variations_at(chain, b);
    }
    int count_open(const Rat& a, const Rat& b) const {
        int n = count_half_open(a, b);
        if (n > 0 && sgn(p.eval(b)) == 0) --n;
        return n;
    }
};

// Isolate all roots of st.p in the open interval (a, b). Intervals come out
// left-to-right, pairwise disjoint, with nonzero endpoint values; exact
// rational roots are reported as points.
inline void isolate_open(const Sturm& st, const Rat& a, const Rat& b,
                         std::vector<RootLoc>& out) {
    int n = st.count_open(a, b);
    if (n == 0) return;
    if (n == 1 && sgn(st.p.eval(a)) != 0 && sgn(st.p.eval(b)) != 0) {
        out.push_back({false, a, b});
        return;
    }
    Rat m = (a + b) / 2;
    isolate_open(st, a, m, out);
    if (sgn(st.p.eval(m)) == 0) out.push_back({true, m, m});
    isolate_open(st, m, b, out);
}

// Halve an isolating interval, possibly collapsing it to an exact root.
inline void refine_loc(const Sturm& st, RootLoc& loc) {
    if (loc.exact) return;
    Rat m = (loc.lo + loc.hi) / 2;
    if (sgn(st.p.eval(m)) == 0) {
        loc = {true, m, m};
        return;
    }
    if (st.count_open(loc.lo, m) == 1)
        loc.hi = m;
    else
        loc.lo = m;
}

// Number of distinct real roots of nonzero g in the closed interval [a, b].
inline int count_real_closed(IntPoly g, const Rat& a, const Rat& b) {
    if (g.is_zero()) throw input_error("count_real_closed on zero polynomial");
    if (a > b) return 0;
    g = squarefree_part(g);
    if (g.degree() < 1) return 0;
    int endpoint_roots = 0;
    auto deflate_at = [&](const Rat& e) {
        if (!g.is_zero() && g.degree() >= 1 && sgn(g.eval(e)) == 0) {
            ++endpoint_roots;
            QPoly lin(std::vector<Rat>{Rat(-e), Rat(1)});
            g = qpoly_divmod(QPoly(g), lin).first.clear_denominators();
        }
    };
    deflate_at(a);
    if (a == b) return endpoint_roots;
    deflate_at(b);
    if (g.degree() < 1) return endpoint_roots;
    Sturm st(g);
    return endpoint_roots + st.count_open(a, b);
}

// One boundary edge: z(t) = (a + b t) + (c + d t) i for t in [t0, t1].
struct Edge {
    Rat a, b, c, d;
    Rat t0, t1;
};

inline std::array<Edge, 4> rect_edges(const Rect& r) {
    const Rat &x0 = r.re.lo, &x1 = r.re.hi, &y0 = r.im.lo, &y1 = r.im.hi;
    // counterclockwise: bottom, right, top (right-to-left), left (top-down)
    return {Edge{Rat(0), Rat(1), y0, Rat(0), x0, x1},
            Edge{x1, Rat(0), Rat(0), Rat(1), y0, y1},
            Edge{Rat(0), Rat(-1), y1, Rat(0), -x1, -x0},
            Edge{x0, Rat(0), Rat(0), Rat(-1), -y1, -y0}};
}

// Real and imaginary parts of p(z(t)) as integer polynomials in t, scaled by
// one common positive constant. A shared scale is essential: rotations mix
// the two parts, so their relative magnitudes must stay faithful.
inline std::pair<IntPoly, IntPoly> edge_parts(const IntPoly& p, const Edge& e) {
    QPoly re, im;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        QPoly nre = re.mul_linear(e.a, e.b) - im.mul_linear(e.c, e.d);
        QPoly nim = re.mul_linear(e.c, e.d) + im.mul_linear(e.a, e.b);
        nre = nre + QPoly(std::vector<Rat>{Rat(p.c[i])});
        re = std::move(nre);
        im = std::move(nim);
    }
    Int l(1);
    for (const auto& v : re.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    for (const auto& v : im.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    auto scale = [&](const QPoly& q) {
        IntPoly out;
        out.c.reserve(q.c.size());
        for (const auto& v : q.c) out.c.push_back(v.get_num() * (l / v.get_den()));
        out.normalize();
        return out;
    };
    return {scale(re), scale(im)};
}

// Common roots of the real/imaginary parts along an edge = roots of p there.
inline IntPoly common_root_poly(const IntPoly& R, const IntPoly& I) {
    if (R.is_zero() && I.is_zero())
        throw soundness_error("polynomial vanishes on a whole edge");
    if (R.is_zero()) return I;
    if (I.is_zero()) return R;
    return poly_gcd(R, I);
}

struct Crossing {
    int edge;
    RootLoc loc;
    int axis; // 0: root of rotated real part, 1: of rotated imaginary part
};

inline int quadrant(int sr, int si) {
    if (sr > 0 && si > 0) return 0;
    if (sr < 0 && si > 0) return 1;
    if (sr < 0 && si < 0) return 2;
    if (sr > 0 && si < 0) return 3;
    throw soundness_error("sample point landed on an axis");
}

} // namespace rootdetail

// Count the distinct roots of squarefree p inside box: the open interior for
// a nondegenerate box, the closed segment or point itself for degenerate
// ones. boundary_hit is reported when a root lies on a nondegenerate box's
// boundary, in which case the caller must perturb the box.
inline BoxCount count_distinct_roots(const IntPoly& p, const Rect& box) {
    using namespace rootdetail;
    if (p.is_zero()) throw input_error("root counting on zero polynomial");
    if (p.degree() < 1) return {false, 0};

    const bool deg_re = box.re.is_point(), deg_im = box.im.is_point();
    if (deg_re && deg_im) {
        auto [vr, vi] = p.eval_complex(box.re.lo, box.im.lo);
        return {false, (sgn(vr) == 0 && sgn(vi) == 0) ? 1 : 0};
    }
    if (deg_re || deg_im) {
        Edge e = deg_im ? Edge{Rat(0), Rat(1), box.im.lo, Rat(0), box.re.lo, box.re.hi}
                        : Edge{box.re.lo, Rat(0), Rat(0), Rat(1), box.im.lo, box.im.hi};
        auto [R, I] = edge_parts(p, e);
        IntPoly g = common_root_poly(R, I);
        if (g.degree() < 1) return {false, 0};
        return {false, count_real_closed(g, e.t0, e.t1)};
    }

    auto edges = rect_edges(box);
    std::array<std::pair<IntPoly, IntPoly>, 4> parts;
    for (int i = 0; i < 4; ++i) parts[i] = edge_parts(p, edges[i]);

    for (int i = 0; i < 4; ++i) {
        IntPoly g = common_root_poly(parts[i].first, parts[i].second);
        if (g.degree() >= 1 && count_real_closed(g, edges[i].t0, edges[i].t1) > 0)
            return {true, 0};
    }

    // Rotate the image curve by a constant u+iv so that no edge image lies
    // inside an axis; the winding number is unchanged.
    static const std::pair<int, int> rotations[] = {{1, 0}, {2, 1}, {1, 2}, {1, 1}, {3, 1}, {1, 3},
                                                    {2, 3}, {3, 2}, {5, 1}, {1, 5}, {4, 1}, {1, 4}};
    std::array<std::pair<IntPoly, IntPoly>, 4> rot;
    bool ok = false;
    for (auto [u, v] : rotations) {
        ok = true;
        for (int i = 0; i < 4; ++i) {
            const auto& [R, I] = parts[i];
            IntPoly Rp = Int(u) * R - Int(v) * I;
            IntPoly Ip = Int(v) * R + Int(u) * I;
            if (Rp.is_zero() || Ip.is_zero()) {
                ok = false;
                break;
            }
            rot[i] = {std::move(Rp), std::move(Ip)};
        }
        if (ok) break;
    }
    if (!ok) throw soundness_error("no usable rotation for winding computation");

    // Collect axis crossings per edge over [t0, t1); the t1 corner belongs to
    // the next edge. Refine until crossings are pairwise disjoint and every
    // interval lies strictly inside (t0, t1).
    std::vector<Crossing> crossings;
    for (int i = 0; i < 4; ++i) {
        const Edge& e = edges[i];
        Sturm stR(squarefree_part(rot[i].first));
        Sturm stI(squarefree_part(rot[i].second));
        std::vector<Crossing> cr;
        const bool corner_r = sgn(rot[i].first.eval(e.t0)) == 0;
        const bool corner_i = sgn(rot[i].second.eval(e.t0)) == 0;
        if (corner_r && corner_i) throw soundness_error("corner root after boundary check");
        if (corner_r) cr.push_back({i, {true, e.t0, e.t0}, 0});
        if (corner_i) cr.push_back({i, {true, e.t0, e.t0}, 1});
        std::vector<RootLoc> locs;
        isolate_open(stR, e.t0, e.t1, locs);
        for (auto& l : locs) cr.push_back({i, l, 0});
        locs.clear();
        isolate_open(stI, e.t0, e.t1, locs);
        for (auto& l : locs) cr.push_back({i, l, 1});

        auto sturm_of = [&](const Crossing& c) -> const Sturm& { return c.axis == 0 ? stR : stI; };
        for (auto& c : cr) // keep interval ends strictly inside (t0, t1)
            while (!c.loc.exact && (c.loc.lo <= e.t0 || c.loc.hi >= e.t1))
                refine_loc(sturm_of(c), c.loc);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t x = 0; x < cr.size(); ++x)
                for (std::size_t y = x + 1; y < cr.size(); ++y) {
                    Crossing &A = cr[x], &B = cr[y];
                    if (A.loc.hi < B.loc.lo || B.loc.hi < A.loc.lo) continue;
                    if (A.loc.exact && B.loc.exact)
                        throw soundness_error("coincident axis crossings");
                    if (!A.loc.exact) refine_loc(sturm_of(A), A.loc);
                    if (!B.loc.exact) refine_loc(sturm_of(B), B.loc);
                    changed = true;
                }
        }
        std::sort(cr.begin(), cr.end(),
                  [](const Crossing& a, const Crossing& b) { return a.loc.lo < b.loc.lo; });
        for (auto& c : cr) crossings.push_back(std::move(c));
    }

    if (crossings.empty()) return {false, 0}; // image never leaves one quadrant

    // One sample strictly between each pair of cyclically consecutive
    // crossings; between samples the image crosses exactly one axis, so
    // consecutive quadrants differ by at most one quarter turn.
    const std::size_t M = crossings.size();
    std::vector<int> quad(M);
    for (std::size_t k = 0; k < M; ++k) {
        const Crossing& cur = crossings[k];
        const Crossing* nxt = (k + 1 < M) ? &crossings[k + 1] : nullptr;
        int ei = cur.edge;
        Rat tau;
        if (nxt && nxt->edge == cur.edge)
            tau = (cur.loc.hi + nxt->loc.lo) / 2;
        else
            tau = (cur.loc.hi + edges[ei].t1) / 2;
        int sr = sgn(rot[ei].first.eval(tau));
        int si = sgn(rot[ei].second.eval(tau));
        quad[k] = quadrant(sr, si);
    }

    long turns = 0;
    for (std::size_t k = 0; k < M; ++k) {
        int d = (quad[(k + 1) % M] - quad[k] + 4) % 4;
        if (d == 1)
            ++turns;
        else if (d == 3)
            --turns;
        else if (d == 2)
            throw soundness_error("diagonal quadrant jump in winding computation");
    }
    if (turns % 4 != 0) throw soundness_error("winding number not an integer");
    long w = turns / 4;
    if (w < 0) throw soundness_error("negative winding number");
    return {false, static_cast<int>(w)};
}

// Refinement step: halve a box containing exactly one root, keeping count 1.
inline Rect refine_isolating_box(const IntPoly& p, const Rect& box) {
    using namespace rootdetail;
    if (box.is_point()) return box;

    const bool deg_re = box.re.is_point(), deg_im = box.im.is_point();
    if (deg_re || deg_im) {
        const Ival& axis = deg_im ? box.re : box.im;
        Rat m = (axis.lo + axis.hi) / 2;
        auto seg = [&](Ival v) { return deg_im ? Rect(std::move(v), box.im) : Rect(box.re, std::move(v)); };
        Rect probe = seg(Ival(m));
        if (count_distinct_roots(p, probe).count == 1) return probe; // landed on the root
        Rect lohalf = seg(Ival(axis.lo, m));
        if (count_distinct_roots(p, lohalf).count == 1) return lohalf;
        return seg(Ival(m, axis.hi));
    }

    static const std::pair<int, int> fracs[] = {{1, 2}, {5, 11}, {7, 13}, {9, 19}, {11, 23},
                                                {13, 27}, {1, 3}, {2, 3}, {3, 7}, {4, 7}};
    bool split_re = box.re.width() >= box.im.width();
    const Ival& axis = split_re ? box.re : box.im;
    for (auto [n, d] : fracs) {
        Rat m = axis.lo + rat(n, d) * axis.width();
        Rect lohalf = split_re ? Rect(Ival(axis.lo, m), box.im) : Rect(box.re, Ival(axis.lo, m));
        BoxCount c = count_distinct_roots(p, lohalf);
        if (c.boundary_hit) continue;
        if (c.count == 1) return lohalf;
        return split_re ? Rect(Ival(m, axis.hi), box.im) : Rect(box.re, Ival(m, axis.hi));
    }
    throw soundness_error("box refinement failed: all split lines hit roots");
}

inline Rect refine_box_below(const IntPoly& p, Rect box, const Rat& size) {
    while (box.max_side() >= size) box = refine_isolating_box(p, box);
    return box;
}

// Isolating boxes for all distinct complex roots of p, sorted by
// (re.lo, im.lo). Quadtree over a Cauchy-bound box.
inline std::vector<Rect> isolate_all_roots(const IntPoly& p) {
    using namespace rootdetail;
    if (p.is_zero()) throw input_error("isolating roots of the zero polynomial");
    IntPoly q = squarefree_part(p);
    int total = q.degree();
    std::vector<Rect> done;
    if (total == 0) return done;
    Rat b = q.root_bound() + rat(1, 3);
    struct Item {
        Rect box;
        int count;
    };
    std::vector<Item> work;
    {
        Rect whole(Ival(-b, b), Ival(-b, b));
        BoxCount c = count_distinct_roots(q, whole);
        if (c.boundary_hit || c.count != total)
            throw soundness_error("root bound box failed to capture all roots");
        work.push_back({whole, total});
    }
    static const std::pair<int, int> fracs[] = {{1, 2}, {5, 11}, {7, 13}, {9, 19}, {11, 23},
                                                {13, 27}, {1, 3}, {2, 3}, {3, 7}, {4, 7}};
    while (!work.empty()) {
        Item it = std::move(work.back());
        work.pop_back();
        if (it.count == 0) continue;
        if (it.count == 1) {
            done.push_back(it.box);
            continue;
        }
        bool split_re = it.box.re.width() >= it.box.im.width();
        const Ival& axis = split_re ? it.box.re : it.box.im;
        bool split_done = false;
        for (auto [n, d] : fracs) {
            Rat m = axis.lo + rat(n, d) * axis.width();
            Rect lohalf =
                split_re ? Rect(Ival(axis.lo, m), it.box.im) : Rect(it.box.re, Ival(axis.lo, m));
            BoxCount c = count_distinct_roots(q, lohalf);
            if (c.boundary_hit) continue;
            Rect hihalf =
                split_re ? Rect(Ival(m, axis.hi), it.box.im) : Rect(it.box.re, Ival(m, axis.hi));
            work.push_back({lohalf, c.count});
            work.push_back({hihalf, it.count - c.count});
            split_done = true;
            break;
        }
        if (!split_done) throw soundness_error("quadtree split failed: all lines hit roots");
    }
    std::sort(done.begin(), done.end(), [](const Rect& a, const Rect& b) {
        if (a.re.lo != b.re.lo) return a.re.lo < b.re.lo;
        return a.im.lo < b.im.lo;
    });
    if (static_cast<int>(done.size()) != total)
        throw soundness_error("isolation produced wrong root count");
    return done;
}

} // namespace trisieve

#endif
