#ifndef TRISIEVE_SPLITTING_HPP
#define TRISIEVE_SPLITTING_HPP

#include <array>

#include "trisieve/linalg.hpp"
#include "trisieve/numberfield.hpp"

namespace trisieve {

// Construction of a degree-6 ambient field in which a monic irreducible
// cubic with non-square discriminant splits, with the three roots as
// explicit coordinate vectors. This is the standard presentation needed to
// feed a full conjugate set into the search: pick the first root r1 in
// K1 = Q[x]/(f), split off the quadratic cofactor q = f/(X - r1), adjoin a
// root r2 of q, and collapse the tower to Q[z]/(F) via the primitive element
// z = r2 + t*r1. The construction self-certifies: it verifies f(r_i) = 0
// exactly and that the roots are pairwise distinct.
//
// Cubics with square discriminant split already in the degree-3 field; they
// must be presented directly and are rejected here.

struct SplitCubic {
    FieldPtr field;                     // degree 6
    std::array<FieldElement, 3> roots;  // the roots of the cubic in that field
};

inline SplitCubic split_cubic_field(const IntPoly& cubic) {
    if (cubic.degree() != 3) throw input_error("split_cubic_field requires a cubic");
    if (cubic.lc() != 1) throw input_error("split_cubic_field requires a monic cubic");
    if (!is_squarefree(cubic)) throw input_error("cubic is not squarefree");
    if (sgn(cubic[0]) == 0) throw input_error("cubic has root 0; it is reducible over Q");
    // Rational roots of a monic integer cubic divide the constant term.
    // (Skipped for huge constants; a reducible cubic that slips through is
    // caught by the self-certification below.)
    {
        Int c0 = abs(cubic[0]);
        if (c0 < 1000000000) {
            for (Int d(1); d * d <= c0; ++d) {
                if (c0 % d != 0) continue;
                for (const Int& r : {d, Int(c0 / d)})
                    for (int s : {1, -1})
                        if (sgn(cubic.eval(Rat(s * r))) == 0)
                            throw input_error("cubic has a rational root; it is reducible over Q");
            }
        }
    }
    // discriminant of x^3 + ax^2 + bx + c
    const Rat a(cubic[2]), b(cubic[1]), c(cubic[0]);
    Rat disc = 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
    if (sgn(disc) > 0) {
        Int n = disc.get_num(); // integral for a monic integer cubic
        if (mpz_perfect_square_p(n.get_mpz_t()))
            throw input_error(
                "cubic has square discriminant: it splits in the degree-3 field already; "
                "present that field directly");
    }

    // Roots of the cubic, deterministically ordered.
    std::vector<Rect> cubic_roots = isolate_all_roots(cubic);
    if (cubic_roots.size() != 3) throw soundness_error("cubic root isolation failed");

    // q = f / (X - r1) over K1, monic quadratic q(Y) = Y^2 + q1 Y + q0 with
    // q1 = r1 + a, q0 = r1^2 + a r1 + b (synthetic division).
    // Tower basis: e_{i,j} = x^i y^j, i < 3, j < 2, with y^2 = -(q1 y + q0).
    struct TowerElem {
        std::array<QPoly, 2> comp; // comp[j] = coefficient of y^j, a poly in x
    };
    IntPoly f = cubic;
    QPoly fx(f);
    auto reduce_x = [&](QPoly p) { return qpoly_divmod(p, fx).second; };
    QPoly q1 = reduce_x(QPoly(std::vector<Rat>{a, Rat(1)}));            // x + a
    QPoly q0 = reduce_x(QPoly(std::vector<Rat>{b, a, Rat(1)}));         // x^2 + a x + b
    auto mul_tower = [&](const TowerElem& u, const TowerElem& v) {
        // (u0 + u1 y)(v0 + v1 y) = u0 v0 + (u0 v1 + u1 v0) y + u1 v1 y^2
        QPoly w0 = u.comp[0] * v.comp[0];
        QPoly w1 = u.comp[0] * v.comp[1] + u.comp[1] * v.comp[0];
        QPoly w2 = u.comp[1] * v.comp[1];
        w0 = reduce_x(w0 - w2 * q0);
        w1 = reduce_x(w1 - w2 * q1);
        return TowerElem{{w0, w1}};
    };

    for (long t : {1, -1, 2, -2, 3, -3, 4, -4}) {
        // minimal polynomial F of z = y + t x: product over the conjugates of
        // K1 of q(Z - t x), a degree-6 polynomial in Z.
        std::vector<QPoly> coeff_z(3);
        // q(Z - tx) = (Z - tx)^2 + q1(x) (Z - tx) + q0(x)
        QPoly tx(std::vector<Rat>{Rat(0)});
        {
            std::vector<Rat> v{Rat(0), Rat(t)};
            tx = QPoly(std::move(v)); // t*x as poly in x
        }
        coeff_z[2] = QPoly(std::vector<Rat>{Rat(1)});
        coeff_z[1] = (Rat(-2) * tx) + q1;
        coeff_z[0] = tx * tx - q1 * tx + q0;
        QPoly bigF_q = product_over_conjugates(f, coeff_z);
        IntPoly bigF = bigF_q.clear_denominators().primitive_positive();
        if (bigF.degree() != 6) throw soundness_error("primitive element poly has wrong degree");
        if (!is_squarefree(bigF)) continue; // t collides conjugates; try the next one

        // Coordinates: express x in powers of z by solving the 6x6 system
        // [z^0 ... z^5] * coeffs = x over the tower basis.
        TowerElem z{{QPoly(std::vector<Rat>{Rat(0), Rat(t)}), QPoly(std::vector<Rat>{Rat(1)})}};
        TowerElem zk{{QPoly(std::vector<Rat>{Rat(1)}), QPoly()}};
        std::vector<std::vector<Rat>> mat(6, std::vector<Rat>(6, Rat(0)));
        for (int col = 0; col < 6; ++col) {
            for (int j = 0; j < 2; ++j)
                for (int i = 0; i < 3; ++i) {
                    Rat coeff = (i < static_cast<int>(zk.comp[j].c.size())) ? zk.comp[j].c[i] : Rat(0);
                    mat[static_cast<std::size_t>(3 * j + i)][static_cast<std::size_t>(col)] = coeff;
                }
            if (col < 5) zk = mul_tower(zk, z);
        }
        std::vector<Rat> rhs(6, Rat(0));
        rhs[1] = 1; // the element x = e_{1,0}
        auto sol = gauss_solve(mat, rhs);
        if (sol.kind != SolveKind::Unique) continue; // z does not generate; next t

        // Embedding: r1 = the first cubic root, r2 = the second; refine until
        // the box of z = r2 + t r1 isolates exactly one root of F.
        Rect b1 = cubic_roots[0], b2 = cubic_roots[1];
        FieldPtr field;
        for (int round = 0; round < 256 && !field; ++round) {
            Rect zbox = b2 + Rat(t) * b1;
            BoxCount cnt = count_distinct_roots(bigF, zbox);
            if (!cnt.boundary_hit && cnt.count == 1) {
                field = NumberField::make(bigF, zbox);
                break;
            }
            b1 = refine_isolating_box(cubic, b1);
            b2 = refine_isolating_box(cubic, b2);
        }
        if (!field) throw soundness_error("could not isolate the primitive element");

        FieldElement r1(field, sol.solution);
        FieldElement z_el = FieldElement::generator(field);
        FieldElement r2 = z_el - Rat(t) * r1;
        FieldElement r3 = FieldElement::from_rat(field, -a) - r1 - r2;
        // self-certification
        for (const FieldElement* r : {&r1, &r2, &r3}) {
            FieldElement val = FieldElement::from_rat(field, c) +
                               *r * (FieldElement::from_rat(field, b) +
                                     *r * (FieldElement::from_rat(field, a) + *r));
            if (!is_zero(val)) throw soundness_error("claimed root does not satisfy the cubic");
        }
        if (r1 == r2 || r1 == r3 || r2 == r3)
            throw soundness_error("cubic roots are not pairwise distinct");
        return {field, {r1, r2, r3}};
    }
    throw soundness_error("no primitive element found for the splitting field");
}

} // namespace trisieve

#endif
