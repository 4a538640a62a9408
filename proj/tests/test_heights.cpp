#include "doctest.h"

#include <random>

#include "trisieve/heights.hpp"
#include "trisieve/unity.hpp"

using namespace trisieve;

namespace {
std::mt19937_64 rng(424242);

FieldPtr sqrt2_field() {
    return NumberField::make(IntPoly{-2, 0, 1}, Rect(Ival(Rat(1), Rat(2)), Ival(Rat(0))));
}
FieldPtr omega_field() {
    return NumberField::make(IntPoly{1, 1, 1},
                             Rect(Ival(Rat(-1), Rat(0)), Ival(rat(1, 4), Rat(1))));
}
FieldPtr quartic_field() { // Q[x]/(x^4 - x - 1), real root near 1.2207
    return NumberField::make(IntPoly{-1, -1, 0, 0, 1}, Rect(Ival(Rat(1), Rat(2)), Ival(Rat(0))));
}

FieldElement random_elem(const FieldPtr& k) {
    std::uniform_int_distribution<long> d(-3, 3);
    std::vector<Rat> c;
    for (int i = 0; i < k->degree(); ++i) c.push_back(rat(d(rng), 1 + (d(rng) & 1)));
    return FieldElement(k, std::move(c));
}

const Rat eps12 = Rat(1) / int_pow(Int(10), 12);
} // namespace

TEST_SUITE("element heights") {
    TEST_CASE("h(2) = log 2") {
        auto k = NumberField::rationals();
        Ival h = height_of_element(FieldElement::from_rat(k, Rat(2)), eps12);
        Ival l2 = log_encl(Rat(2), eps12);
        CHECK(h.width() <= eps12);
        CHECK(!disjoint(h, l2));
    }

    TEST_CASE("h(p/q) = log max(|p|, q)") {
        auto k = NumberField::rationals();
        auto h = [&](long p, long q) {
            return height_of_element(FieldElement::from_rat(k, rat(p, q)), eps12);
        };
        CHECK(!disjoint(h(3, 2), log_encl(Rat(3), eps12)));
        CHECK(!disjoint(h(-1, 5), log_encl(Rat(5), eps12)));
        CHECK(h(1, 1).lo == 0);
        CHECK(h(1, 1).hi <= eps12);
    }

    TEST_CASE("h(omega) = 0 for the cube root of unity") {
        auto k = omega_field();
        Ival h = height_of_element(FieldElement::generator(k), eps12);
        CHECK(h.lo == 0);
        CHECK(h.hi < rat(1, 1000000000));
    }

    TEST_CASE("h(sqrt2) = (1/2) log 2 (numeric Mahler oracle)") {
        auto k = sqrt2_field();
        Ival h = height_of_element(FieldElement::generator(k), eps12);
        Ival l2 = log_encl(Rat(2), eps12);
        CHECK(!disjoint(h, Ival(l2.lo / 2, l2.hi / 2)));
    }

    TEST_CASE("h(0) = 0 by convention") {
        auto k = sqrt2_field();
        CHECK(height_of_element(FieldElement::zero(k), eps12) == Ival(Rat(0)));
    }

    TEST_CASE("h(a^n) = |n| h(a) via enclosure overlap") {
        for (const auto& k : {sqrt2_field(), omega_field(), quartic_field()}) {
            int done = 0;
            while (done < 6) {
                FieldElement a = random_elem(k);
                if (is_zero(a)) continue;
                Ival ha = height_of_element(a, eps12);
                for (long n : {-3L, -2L, 2L, 3L}) {
                    Ival hn = height_of_element(a.pow(n), eps12);
                    Rat f = Rat(std::abs(n));
                    Ival scaled(f * ha.lo, f * ha.hi);
                    CHECK(!disjoint(hn, scaled));
                }
                ++done;
            }
        }
    }

    TEST_CASE("subadditivity: h(ab) and h(a+b) within the standard envelopes") {
        auto k = quartic_field();
        Ival l2 = log_encl(Rat(2), eps12);
        for (int i = 0; i < 10; ++i) {
            FieldElement a = random_elem(k), b = random_elem(k);
            if (is_zero(a) || is_zero(b)) continue;
            Ival ha = height_of_element(a, eps12), hb = height_of_element(b, eps12);
            Ival hab = height_of_element(a * b, eps12);
            Rat slack = ha.width() + hb.width() + hab.width();
            CHECK(hab.lo <= ha.hi + hb.hi + slack);
            Ival hsum = height_of_element(a + b, eps12);
            CHECK(hsum.lo <= ha.hi + hb.hi + l2.hi + slack + hsum.width());
        }
    }
}

TEST_SUITE("projective heights") {
    TEST_CASE("(1:2:3) has height log 3") {
        auto k = NumberField::rationals();
        std::vector<FieldElement> pt{FieldElement::one(k), FieldElement::from_rat(k, Rat(2)),
                                     FieldElement::from_rat(k, Rat(3))};
        Ival h = height_of_projective_point(pt, eps12);
        CHECK(!disjoint(h, log_encl(Rat(3), eps12)));
    }

    TEST_CASE("(1:1) has height 0") {
        auto k = NumberField::rationals();
        Ival h = height_of_projective_point({FieldElement::one(k), FieldElement::one(k)}, eps12);
        CHECK(h.hi < eps12);
    }

    TEST_CASE("(1:1:sqrt2) has height (1/2) log 2") {
        auto k = sqrt2_field();
        Ival h = height_of_projective_point(
            {FieldElement::one(k), FieldElement::one(k), FieldElement::generator(k)}, eps12);
        Ival l2 = log_encl(Rat(2), eps12);
        CHECK(!disjoint(h, Ival(l2.lo / 2, l2.hi / 2)));
    }

    TEST_CASE("scaling invariance and cross-check against element heights") {
        auto k = quartic_field();
        int done = 0;
        while (done < 8) {
            FieldElement a = random_elem(k);
            if (is_zero(a)) continue;
            Ival h1 = height_of_element(a, eps12);
            Ival h2 = height_of_projective_point({FieldElement::one(k), a}, eps12);
            CHECK(!disjoint(h1, h2)); // the two routes must agree
            FieldElement s = random_elem(k);
            if (!is_zero(s)) {
                Ival h3 = height_of_projective_point({s, s * a}, eps12);
                CHECK(!disjoint(h1, h3));
            }
            ++done;
        }
    }

    TEST_CASE("non-monic ambient field: both routes agree on h(1/sqrt2)") {
        auto k = NumberField::make(IntPoly{-1, 0, 2}, Rect(Ival(Rat(0), Rat(1)), Ival(Rat(0))));
        FieldElement g = FieldElement::generator(k); // 1/sqrt2
        Ival h1 = height_of_element(g, eps12);
        Ival h2 = height_of_projective_point({FieldElement::one(k), g}, eps12);
        Ival l2 = log_encl(Rat(2), eps12);
        CHECK(!disjoint(h1, Ival(l2.lo / 2, l2.hi / 2)));
        CHECK(!disjoint(h1, h2));
    }

    TEST_CASE("denominators feed the finite part: (1/2:1) has height log 2") {
        auto k = NumberField::rationals();
        Ival h = height_of_projective_point(
            {FieldElement::from_rat(k, rat(1, 2)), FieldElement::one(k)}, eps12);
        CHECK(!disjoint(h, log_encl(Rat(2), eps12)));
    }

    TEST_CASE("all-zero input is rejected") {
        auto k = sqrt2_field();
        CHECK_THROWS_AS(height_of_projective_point({FieldElement::zero(k)}, eps12), input_error);
    }
}

TEST_SUITE("omega heights") {
    TEST_CASE("Omega = {1, 2}") {
        auto k = NumberField::rationals();
        OmegaSet omega(k, {FieldElement::one(k), FieldElement::from_rat(k, Rat(2))});
        auto [h, ht] = omega_heights(omega, eps12);
        Ival l2 = log_encl(Rat(2), eps12);
        CHECK(!disjoint(h, l2));
        CHECK(!disjoint(ht, l2));
    }

    TEST_CASE("roots of unity have vanishing heights") {
        auto k = omega_field();
        FieldElement w = FieldElement::generator(k);
        OmegaSet omega(k, {w, w * w});
        auto [h, ht] = omega_heights(omega, eps12);
        CHECK(h.hi < rat(1, 1000000000));
        CHECK(ht.hi < rat(1, 1000000000));
    }

    TEST_CASE("singleton set has vanishing quotient height") {
        auto k = sqrt2_field();
        OmegaSet omega(k, {FieldElement::generator(k)});
        auto [h, ht] = omega_heights(omega, eps12);
        CHECK(ht == Ival(Rat(0)));
        CHECK(h.lo > rat(3, 10)); // (1/2) log 2 = 0.3465...
    }

    TEST_CASE("zero elements are rejected at construction") {
        auto k = sqrt2_field();
        CHECK_THROWS_AS(OmegaSet(k, {FieldElement::zero(k)}), input_error);
        CHECK_THROWS_AS(OmegaSet(k, {}), input_error);
    }
}

TEST_SUITE("liouville and the modulus gap") {
    TEST_CASE("spot values") {
        auto q = NumberField::rationals();
        CHECK(liouville_check(FieldElement::from_rat(q, Rat(2))));
        CHECK(liouville_check(FieldElement::one(q)));
        auto k = sqrt2_field();
        CHECK(liouville_check(FieldElement::generator(k)));
    }

    TEST_CASE("100 random nonzero elements across fields of degree <= 4") {
        std::vector<FieldPtr> fields{NumberField::rationals(), sqrt2_field(), omega_field(),
                                     quartic_field()};
        int done = 0;
        while (done < 100) {
            const auto& k = fields[static_cast<std::size_t>(done) % fields.size()];
            FieldElement a = random_elem(k);
            if (is_zero(a)) continue;
            CHECK(liouville_check(a));
            ++done;
        }
    }

    TEST_CASE("gap bound: theta = 2 over Q gives exponent -2 log 2") {
        auto q = NumberField::rationals();
        Ival g = modulus_gap(FieldElement::from_rat(q, Rat(2)));
        Ival expect = Rat(-2) * log_encl(Rat(2), eps12);
        CHECK(!disjoint(g, expect));
        // |1 - 2| = 1 >= e^g = 1/4
        CHECK(exp_encl(g.lo, eps12).hi <= Rat(1));
    }

    TEST_CASE("gap bound: theta = 1/2 over Q") {
        auto q = NumberField::rationals();
        Ival g = modulus_gap(FieldElement::from_rat(q, rat(1, 2)));
        // gap e^g = 1/4 <= |1 - 1/2|
        CHECK(exp_encl(g.lo, eps12).hi <= rat(1, 2));
    }

    TEST_CASE("gap bound: theta = sqrt2, exponent -4(h + log 2) = -6 log 2") {
        auto k = sqrt2_field();
        Ival g = modulus_gap(FieldElement::generator(k));
        Ival l2 = log_encl(Rat(2), eps12);
        Ival expect = Rat(-6) * l2; // -4((1/2)log2 + log2)
        CHECK(!disjoint(g, expect));
        // |1 - sqrt2| = 0.414... >= 2^-6
        CHECK(exp_encl(g.lo, eps12).hi <= rat(414, 1000));
    }
}
