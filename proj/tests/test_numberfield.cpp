#include "doctest.h"

#include <atomic>
#include <random>
#include <thread>

#include "trisieve/numberfield.hpp"

using namespace trisieve;

namespace {
std::mt19937_64 rng(777);

FieldPtr sqrt2_field() { // Q(sqrt 2), positive root
    return NumberField::make(IntPoly{-2, 0, 1}, Rect(Ival(Rat(1), Rat(2)), Ival(Rat(0))));
}
FieldPtr gauss_field() { // Q(i), upper root
    return NumberField::make(IntPoly{1, 0, 1},
                             Rect(Ival(rat(-1, 2), rat(1, 2)), Ival(rat(1, 2), rat(3, 2))));
}
FieldPtr omega_field() { // Q(omega), omega = (-1+sqrt(-3))/2, upper root
    return NumberField::make(IntPoly{1, 1, 1},
                             Rect(Ival(Rat(-1), Rat(0)), Ival(rat(1, 4), Rat(1))));
}

FieldElement random_elem(const FieldPtr& k) {
    std::uniform_int_distribution<long> d(-4, 4);
    std::vector<Rat> c;
    for (int i = 0; i < k->degree(); ++i) c.push_back(rat(d(rng), 1 + (d(rng) & 1)));
    return FieldElement(k, std::move(c));
}
} // namespace

TEST_SUITE("numberfield construction") {
    TEST_CASE("squarefree and isolation are enforced") {
        CHECK_THROWS_AS(NumberField::make(IntPoly{1, -2, 1}, Rect(Ival(Rat(0), Rat(2)), Ival(Rat(0)))),
                        input_error); // (x-1)^2
        // rectangle containing both roots of x^2-2
        CHECK_THROWS_AS(NumberField::make(IntPoly{-2, 0, 1}, Rect(Ival(Rat(-2), Rat(2)), Ival(Rat(0)))),
                        input_error);
        // rectangle containing neither root
        CHECK_THROWS_AS(NumberField::make(IntPoly{-2, 0, 1}, Rect(Ival(Rat(3), Rat(4)), Ival(Rat(0)))),
                        input_error);
        CHECK(sqrt2_field()->degree() == 2);
        CHECK(NumberField::rationals()->degree() == 1);
    }
}

TEST_SUITE("element arithmetic") {
    TEST_CASE("sqrt2 * sqrt2 = 2") {
        auto k = sqrt2_field();
        FieldElement x = FieldElement::generator(k);
        CHECK(x * x == FieldElement::from_rat(k, Rat(2)));
    }

    TEST_CASE("omega^3 = 1") {
        auto k = omega_field();
        FieldElement w = FieldElement::generator(k);
        CHECK(w.pow(3) == FieldElement::one(k));
        CHECK(w.pow(2) == -w - FieldElement::one(k));
    }

    TEST_CASE("1/sqrt2 = sqrt2/2") {
        auto k = sqrt2_field();
        FieldElement x = FieldElement::generator(k);
        FieldElement inv = FieldElement::one(k) / x;
        CHECK(inv == rat(1, 2) * x);
        CHECK(x.pow(-2) == FieldElement::from_rat(k, rat(1, 2)));
    }

    TEST_CASE("division by zero and mixed fields are rejected") {
        auto k = sqrt2_field(), k2 = gauss_field();
        CHECK_THROWS_AS(FieldElement::one(k) / FieldElement::zero(k), input_error);
        CHECK_THROWS_AS(FieldElement::one(k) + FieldElement::one(k2), input_error);
        CHECK_THROWS_AS(FieldElement::zero(k).pow(-1), input_error);
        CHECK(FieldElement::zero(k).pow(0) == FieldElement::one(k));
    }

    TEST_CASE("field axioms on random elements") {
        auto k = omega_field();
        for (int i = 0; i < 50; ++i) {
            FieldElement a = random_elem(k), b = random_elem(k), c = random_elem(k);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK((a - b) + b == a);
            if (!is_zero(b)) CHECK((a / b) * b == a);
        }
    }
}

TEST_SUITE("minimal polynomials") {
    TEST_CASE("x+1 in Q(sqrt2) has minimal polynomial y^2 - 2y - 1") {
        auto k = sqrt2_field();
        FieldElement a = FieldElement::generator(k) + FieldElement::one(k);
        CHECK(minimal_poly(a) == IntPoly{-1, -2, 1});
    }

    TEST_CASE("rational elements give linear polynomials") {
        auto k = sqrt2_field();
        CHECK(minimal_poly(FieldElement::from_rat(k, rat(3, 2))) == IntPoly{-3, 2});
        CHECK(minimal_poly(FieldElement::zero(k)) == IntPoly{0, 1});
    }

    TEST_CASE("degree collapse: sqrt2^2 has minimal polynomial y - 2") {
        auto k = sqrt2_field();
        FieldElement a = FieldElement::generator(k).pow(2);
        CHECK(minimal_poly(a) == IntPoly{-2, 1});
    }

    TEST_CASE("minimal polynomial annihilates the element, degree divides field degree") {
        for (const auto& k : {sqrt2_field(), gauss_field(), omega_field()}) {
            for (int i = 0; i < 20; ++i) {
                FieldElement a = random_elem(k);
                IntPoly p = minimal_poly(a);
                CHECK(k->degree() % p.degree() == 0);
                FieldElement acc = FieldElement::zero(k);
                for (std::size_t j = p.c.size(); j-- > 0;)
                    acc = acc * a + FieldElement::from_rat(k, Rat(p.c[j]));
                CHECK(is_zero(acc));
            }
        }
    }
}

TEST_SUITE("embeddings") {
    TEST_CASE("rational one embeds tightly") {
        auto k = sqrt2_field();
        Rect r = refine_embedding(FieldElement::one(k), rat(1, 1000));
        CHECK(r.contains_point(Rat(1), Rat(0)));
        CHECK(r.re.width() < rat(1, 1000));
    }

    TEST_CASE("generator of Q(sqrt2) embeds near 1.4142, away from -1.5") {
        auto k = sqrt2_field();
        Rect r = refine_embedding(FieldElement::generator(k), rat(1, 100));
        // bisection oracle: sqrt2 in [1.4142, 1.4143]
        CHECK(r.re.hi >= rat(14142, 10000));
        CHECK(r.re.lo <= rat(14143, 10000));
        CHECK(!r.contains_point(rat(-3, 2), Rat(0)));
        CHECK(r.im == Ival(Rat(0)));
    }

    TEST_CASE("generator of Q(i) embeds at +i (upper choice)") {
        auto k = gauss_field();
        Rect r = refine_embedding(FieldElement::generator(k), rat(1, 100));
        CHECK(r.im.lo > rat(9, 10));
        CHECK(r.im.hi < rat(11, 10));
        CHECK(r.re.lo <= Rat(0));
        CHECK(r.re.hi >= Rat(0));
    }

    TEST_CASE("embedding of a product intersects the product of embeddings") {
        auto k = omega_field();
        for (int i = 0; i < 10; ++i) {
            FieldElement a = random_elem(k), b = random_elem(k);
            Rect ra = refine_embedding(a, rat(1, 1000));
            Rect rb = refine_embedding(b, rat(1, 1000));
            Rect rab = refine_embedding(a * b, rat(1, 1000));
            Rect prod = ra * rb;
            CHECK(!disjoint(rab, prod));
        }
    }
}

TEST_SUITE("modulus comparison") {
    TEST_CASE("2 vs 1+i: Greater") {
        auto k = gauss_field();
        FieldElement two = FieldElement::from_rat(k, Rat(2));
        FieldElement opi = FieldElement::one(k) + FieldElement::generator(k);
        CHECK(compare_modulus(two, opi) == ModulusOrder::Greater);
        CHECK(compare_modulus(opi, two) == ModulusOrder::Less);
    }

    TEST_CASE("conjugates have equal moduli") {
        auto k = gauss_field();
        FieldElement i = FieldElement::generator(k);
        FieldElement a = FieldElement::one(k) + i, b = FieldElement::one(k) - i;
        CHECK(compare_modulus(a, b) == ModulusOrder::Equal);
    }

    TEST_CASE("x vs x-1 in Q[x]/(x^3-x^2+1), real embedding: Less") {
        // high-precision oracle: the real root is about -0.7549, so
        // |x| < 1 < |x - 1| = 1.7549...
        auto k = NumberField::make(IntPoly{1, 0, -1, 1}, Rect(Ival(Rat(-1), Rat(0)), Ival(Rat(0))));
        FieldElement x = FieldElement::generator(k);
        CHECK(compare_modulus(x, x - FieldElement::one(k)) == ModulusOrder::Less);
    }

    TEST_CASE("antisymmetry and agreement with refined enclosures") {
        auto k = omega_field();
        int checked = 0;
        for (int i = 0; checked < 12 && i < 60; ++i) {
            FieldElement a = random_elem(k), b = random_elem(k);
            if (is_zero(a) || is_zero(b)) continue;
            ModulusOrder ab = compare_modulus(a, b), ba = compare_modulus(b, a);
            if (ab == ModulusOrder::Less) CHECK(ba == ModulusOrder::Greater);
            if (ab == ModulusOrder::Greater) CHECK(ba == ModulusOrder::Less);
            if (ab == ModulusOrder::Equal) CHECK(ba == ModulusOrder::Equal);
            Rat eps = Rat(1) / int_pow(Int(10), 30);
            Ival sa = refine_embedding(a, eps).abs_sq(), sb = refine_embedding(b, eps).abs_sq();
            if (sa.lo > sb.hi) CHECK(ab == ModulusOrder::Greater);
            if (sa.hi < sb.lo) CHECK(ab == ModulusOrder::Less);
            ++checked;
        }
    }

    TEST_CASE("zero arguments are rejected") {
        auto k = sqrt2_field();
        CHECK_THROWS_AS(compare_modulus(FieldElement::zero(k), FieldElement::one(k)), input_error);
    }

    TEST_CASE("random elements of Q(i) match their conjugates in modulus") {
        auto k = gauss_field();
        std::uniform_int_distribution<long> d(-5, 5);
        int done = 0;
        while (done < 10) {
            Rat u = rat(d(rng), 2), v = rat(d(rng), 2);
            if (sgn(u) == 0 && sgn(v) == 0) continue;
            FieldElement a(k, {u, v}), conj(k, {u, Rat(-v)});
            CHECK(compare_modulus(a, conj) == ModulusOrder::Equal);
            ++done;
        }
    }
}

TEST_SUITE("concurrent refinement") {
    TEST_CASE("threads hammering the shared caches agree") {
        auto k = NumberField::make(IntPoly{-1, -1, 0, 0, 1},
                                   Rect(Ival(Rat(1), Rat(2)), Ival(Rat(0))));
        FieldElement g = FieldElement::generator(k);
        std::vector<std::thread> threads;
        std::vector<Rect> results(4, Rect(Rat(0)));
        std::atomic<int> failures{0};
        for (int t = 0; t < 4; ++t)
            threads.emplace_back([&, t] {
                try {
                    Rat eps = Rat(1) / int_pow(Int(2), 20 + 7 * t);
                    Rect r = refine_embedding(g + FieldElement::from_rat(k, rat(t, 3)), eps);
                    results[static_cast<std::size_t>(t)] = r;
                    if (compare_modulus(g, FieldElement::one(k)) != ModulusOrder::Greater)
                        ++failures;
                } catch (...) {
                    ++failures;
                }
            });
        for (auto& th : threads) th.join();
        CHECK(failures == 0);
        // all enclosures sit where they should: generator is about 1.2207
        for (int t = 0; t < 4; ++t) {
            const Rect& r = results[static_cast<std::size_t>(t)];
            CHECK(r.re.lo > Rat(1) + rat(t, 3) - rat(1, 4));
            CHECK(r.re.hi < Rat(2) + rat(t, 3));
        }
    }
}

TEST_SUITE("non-monic defining polynomials") {
    TEST_CASE("Q[x]/(2x^2-1): arithmetic, minimal polynomials, embeddings") {
        // generator is 1/sqrt2, the positive root
        auto k = NumberField::make(IntPoly{-1, 0, 2}, Rect(Ival(Rat(0), Rat(1)), Ival(Rat(0))));
        FieldElement g = FieldElement::generator(k);
        CHECK(g * g == FieldElement::from_rat(k, rat(1, 2)));
        CHECK(minimal_poly(g) == IntPoly{-1, 0, 2});
        CHECK(minimal_poly(g + g) == IntPoly{-2, 0, 1}); // 2/sqrt2 = sqrt2
        Rect e = refine_embedding(g, rat(1, 1000));
        // 1/sqrt2 = 0.7071...
        CHECK(e.re.lo < rat(7072, 10000));
        CHECK(e.re.hi > rat(7071, 10000));
        CHECK(compare_modulus(g, FieldElement::one(k)) == ModulusOrder::Less);
    }
}
