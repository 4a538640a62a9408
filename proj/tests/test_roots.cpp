#include "doctest.h"

#include <random>

#include "trisieve/roots.hpp"

using namespace trisieve;

namespace {
std::mt19937_64 rng(987654321);

Rect box(long rl, long rh, long il, long ih, long den = 1) {
    return Rect(Ival(rat(rl, den), rat(rh, den)), Ival(rat(il, den), rat(ih, den)));
}
} // namespace

TEST_SUITE("root counting") {
    TEST_CASE("single root of x at the origin") {
        IntPoly p{0, 1};
        CHECK(count_distinct_roots(p, box(-1, 1, -1, 1)).count == 1);
        CHECK(count_distinct_roots(p, box(1, 2, 1, 2)).count == 0);
        CHECK(count_distinct_roots(p, box(-7, -3, -2, 5)).count == 0);
    }

    TEST_CASE("x^2+1: conjugate pair") {
        IntPoly p{1, 0, 1};
        CHECK(count_distinct_roots(p, box(-2, 2, -2, 2)).count == 2);
        CHECK(count_distinct_roots(p, box(-1, 1, 1, 3, 2)).count == 1);  // around i
        CHECK(count_distinct_roots(p, box(-1, 1, -3, -1, 2)).count == 1); // around -i
        // bottom edge exactly on the real axis: image of an edge is real
        CHECK(count_distinct_roots(p, box(-2, 2, 0, 2)).count == 1);
        CHECK(count_distinct_roots(p, box(-2, 2, -2, 0)).count == 1);
    }

    TEST_CASE("x^2-2: real roots in complex boxes and segments") {
        IntPoly p{-2, 0, 1};
        CHECK(count_distinct_roots(p, box(1, 2, -1, 1)).count == 1);
        CHECK(count_distinct_roots(p, box(-2, 2, -1, 1)).count == 2);
        // degenerate: the real segment [1, 2]
        CHECK(count_distinct_roots(p, Rect(Ival(Rat(1), Rat(2)), Ival(Rat(0)))).count == 1);
        CHECK(count_distinct_roots(p, Rect(Ival(Rat(-1), Rat(1)), Ival(Rat(0)))).count == 0);
        // point rectangles
        CHECK(count_distinct_roots(IntPoly{-4, 0, 1}, Rect(Rat(2), Rat(0))).count == 1);
        CHECK(count_distinct_roots(IntPoly{-4, 0, 1}, Rect(Rat(3), Rat(0))).count == 0);
    }

    TEST_CASE("segments away from the real axis") {
        IntPoly p{1, 0, 1}; // roots +-i
        // horizontal segment through i
        CHECK(count_distinct_roots(p, Rect(Ival(Rat(-1), Rat(1)), Ival(Rat(1)))).count == 1);
        CHECK(count_distinct_roots(p, Rect(Ival(Rat(-1), Rat(1)), Ival(rat(1, 2)))).count == 0);
        // vertical segment through i
        CHECK(count_distinct_roots(p, Rect(Ival(Rat(0)), Ival(Rat(0), Rat(2)))).count == 1);
        CHECK(count_distinct_roots(p, Rect(Ival(rat(1, 3)), Ival(Rat(0), Rat(2)))).count == 0);
    }

    TEST_CASE("root on the boundary is reported") {
        IntPoly p{-1, 0, 1}; // roots +-1
        BoxCount c = count_distinct_roots(p, box(1, 2, -1, 1)); // root at left edge
        CHECK(c.boundary_hit);
        BoxCount c2 = count_distinct_roots(p, box(-1, 1, -1, 1)); // both on vertical edges
        CHECK(c2.boundary_hit);
    }

    TEST_CASE("vanishing at a corner is a boundary hit") {
        IntPoly p{1, 0, 1}; // roots +-i
        BoxCount c = count_distinct_roots(p, box(0, 2, 1, 3)); // corner at i
        CHECK(c.boundary_hit);
    }

    TEST_CASE("composite squarefree polynomial across boxes") {
        IntPoly p = IntPoly{1, 0, 1} * IntPoly{-2, 0, 1} * IntPoly{-3, 1}; // +-i, +-sqrt2, 3
        CHECK(count_distinct_roots(p, box(-4, 4, -4, 4)).count == 5);
        // +-i sit exactly on a re = 0 edge, so that line must be avoided
        CHECK(count_distinct_roots(p, box(0, 4, -4, 4)).boundary_hit);
        CHECK(count_distinct_roots(p, box(1, 8, -8, 8, 2)).count == 2);   // sqrt2 and 3
        CHECK(count_distinct_roots(p, box(-8, -1, -8, 8, 2)).count == 1); // -sqrt2
        CHECK(count_distinct_roots(p, box(-1, 1, 0, 4, 2)).count == 1);   // i only
    }

    TEST_CASE("high-multiplicity factors are counted once after squarefree part") {
        IntPoly p = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{-2, 1};
        CHECK(count_distinct_roots(squarefree_part(p), box(0, 3, -1, 1)).count == 2);
    }
}

TEST_SUITE("winding stress") {
    // Independent oracle: polynomials assembled from factors with known
    // rational-coordinate roots re0 +- i*im0, so box membership is an exact
    // rational comparison. The winding count must match the membership count
    // whenever no root lies on the boundary.
    TEST_CASE("random boxes against exact membership counts") {
        std::uniform_int_distribution<long> dr(-8, 8), dd(1, 3), dbox(-10, 10);
        int done = 0, boundary_hits = 0;
        while (done < 120) {
            struct Root {
                Rat re, im; // im >= 0; im > 0 stands for the conjugate pair
            };
            std::vector<Root> roots;
            QPoly poly(std::vector<Rat>{Rat(1)});
            std::uniform_int_distribution<int> dcount(1, 3);
            int nf = dcount(rng);
            bool dup = false;
            for (int i = 0; i < nf; ++i) {
                Rat re0 = rat(dr(rng), dd(rng)), im0 = rat(dr(rng), dd(rng));
                if (sgn(im0) < 0) im0 = -im0;
                for (const auto& r : roots)
                    if (r.re == re0 && r.im == im0) dup = true;
                roots.push_back({re0, im0});
                if (sgn(im0) == 0) { // linear factor (x - re0)
                    poly = poly * QPoly(std::vector<Rat>{-re0, Rat(1)});
                } else { // (x - re0)^2 + im0^2
                    poly = poly *
                           QPoly(std::vector<Rat>{re0 * re0 + im0 * im0, Rat(-2) * re0, Rat(1)});
                }
            }
            if (dup) continue; // keep the polynomial squarefree
            IntPoly p = poly.clear_denominators();
            Rat x0 = rat(dbox(rng), 2), x1 = rat(dbox(rng), 2);
            Rat y0 = rat(dbox(rng), 2), y1 = rat(dbox(rng), 2);
            if (x0 >= x1 || y0 >= y1) continue;
            Rect box(Ival(x0, x1), Ival(y0, y1));
            int expect = 0;
            bool on_boundary = false;
            auto tally = [&](const Rat& re, const Rat& im) {
                bool in_re = x0 < re && re < x1, in_im = y0 < im && im < y1;
                bool edge_re = re == x0 || re == x1, edge_im = im == y0 || im == y1;
                if ((edge_re && (in_im || edge_im)) || (edge_im && (in_re || edge_re)))
                    on_boundary = true;
                else if (in_re && in_im)
                    ++expect;
            };
            for (const auto& r : roots) {
                tally(r.re, r.im);
                if (sgn(r.im) > 0) tally(r.re, -r.im);
            }
            BoxCount got = count_distinct_roots(p, box);
            if (on_boundary) {
                CHECK(got.boundary_hit);
                ++boundary_hits;
            } else {
                REQUIRE(!got.boundary_hit);
                CHECK(got.count == expect);
            }
            ++done;
        }
        (void)boundary_hits;
    }

    TEST_CASE("random segments against exact membership counts") {
        std::uniform_int_distribution<long> dr(-6, 6), dbox(-8, 8);
        int done = 0;
        while (done < 80) {
            std::vector<Rat> rts;
            QPoly poly(std::vector<Rat>{Rat(1)});
            std::uniform_int_distribution<int> dcount(1, 4);
            int nf = dcount(rng);
            bool dup = false;
            for (int i = 0; i < nf; ++i) {
                Rat r0 = rat(dr(rng), 2);
                for (const auto& r : rts) dup = dup || r == r0;
                rts.push_back(r0);
                poly = poly * QPoly(std::vector<Rat>{-r0, Rat(1)});
            }
            if (dup) continue;
            IntPoly p = poly.clear_denominators();
            Rat x0 = rat(dbox(rng), 2), x1 = rat(dbox(rng), 2);
            if (x0 >= x1) continue;
            int expect = 0;
            for (const auto& r : rts)
                if (x0 <= r && r <= x1) ++expect; // segments are closed
            BoxCount got = count_distinct_roots(p, Rect(Ival(x0, x1), Ival(Rat(0))));
            CHECK(got.count == expect);
            ++done;
        }
    }
}

TEST_SUITE("isolation") {
    TEST_CASE("all roots of small polynomials") {
        IntPoly p = IntPoly{1, 0, 1} * IntPoly{-2, 0, 1} * IntPoly{-3, 1};
        auto boxes = isolate_all_roots(p);
        REQUIRE(boxes.size() == 5);
        for (const auto& b : boxes) CHECK(count_distinct_roots(squarefree_part(p), b).count == 1);
        // freshly isolated boxes may share edges; refinement separates them
        for (auto& b : boxes) b = refine_box_below(squarefree_part(p), b, rat(1, 64));
        for (std::size_t i = 0; i < boxes.size(); ++i)
            for (std::size_t j = i + 1; j < boxes.size(); ++j) CHECK(disjoint(boxes[i], boxes[j]));
    }

    TEST_CASE("isolation counts match degrees on random squarefree products") {
        std::uniform_int_distribution<long> dc(-6, 6);
        int done = 0;
        while (done < 25) {
            // product of distinct linear and quadratic factors
            IntPoly p{1};
            for (int k = 0; k < 3; ++k) {
                long a = dc(rng), b = dc(rng);
                IntPoly f = (k % 2 == 0) ? IntPoly{a, 1} : IntPoly{b, a, 1};
                if (f.degree() < 1) continue;
                p = p * f;
            }
            if (p.degree() < 2) continue;
            IntPoly q = squarefree_part(p);
            auto boxes = isolate_all_roots(q);
            CHECK(static_cast<int>(boxes.size()) == q.degree());
            ++done;
        }
    }

    TEST_CASE("refinement shrinks while keeping the root") {
        IntPoly p{-2, 0, 1};
        Rect b = Rect(Ival(Rat(0), Rat(2)), Ival(Rat(-1), Rat(1)));
        REQUIRE(count_distinct_roots(p, b).count == 1);
        Rect r = refine_box_below(p, b, rat(1, 100));
        CHECK(r.max_side() < rat(1, 100));
        CHECK(count_distinct_roots(p, r).count == 1);
        // sqrt(2) = 1.41421356...: the refined box contains it and excludes -3/2
        CHECK(r.re.lo < rat(14143, 10000));
        CHECK(r.re.hi > rat(14142, 10000));
        CHECK(!r.contains_point(rat(-3, 2), Rat(0)));
    }

    TEST_CASE("exact rational roots collapse to points on segments") {
        IntPoly p{-4, 0, 1}; // roots +-2
        Rect seg(Ival(Rat(0), Rat(3)), Ival(Rat(0)));
        REQUIRE(count_distinct_roots(p, seg).count == 1);
        Rect r = refine_box_below(p, seg, rat(1, 1000000));
        CHECK(r.contains_point(Rat(2), Rat(0)));
    }
}
