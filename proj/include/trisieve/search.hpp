#ifndef TRISIEVE_SEARCH_HPP
#define TRISIEVE_SEARCH_HPP

#include <atomic>
#include <numeric>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "trisieve/bounds.hpp"
#include "trisieve/lemma_lab.hpp"

namespace trisieve {

// End-to-end decision procedure: classify Omega into root-of-unity
// equivalence classes; with <= 2 classes report the infinite family with a
// divisor witness, otherwise evaluate the effective bounds and enumerate all
// suitable exponent pairs up to the cap, recovering coefficients by exact
// linear algebra and certifying every hit.

struct SearchRequest {
    OmegaSet omega;
    long max_degree = 200;
    bool emit_binomials = true;
    int parallel_width = 0; // 0: hardware concurrency
    Rat eps = Rat(1) / int_pow(Int(2), 53);
};

struct CertifiedTrinomial {
    long m = 0, n = 0;           // X^m + A X^n + B, m > n > 0
    FieldElement a, b;           // B != 0
    HeightValue height;          // projective height of (1 : A : B)
    std::vector<bool> vanishing; // per-element exact-zero confirmation
    std::optional<PartitionType> subsum; // for |Omega| >= 3
    bool binomial = false;               // A == 0
};

// Divisor witness for the infinite-family cases: g(X^k) vanishes on all of
// Omega (deg g <= 2), and the concrete trinomial X^m + A X^n + B is a
// multiple of g(X^k), verified by exact division.
struct FamilyWitness {
    unsigned long k = 1;
    std::vector<FieldElement> g; // monic, constant term first
    long m = 0, n = 0;
    FieldElement a, b;
};

enum class Classification { InfiniteFamily, FiniteSearch };

struct SearchOutcome {
    Classification cls = Classification::FiniteSearch;
    EquivalenceClassification classes;
    std::optional<BoundReport> bounds;    // finite case
    std::optional<FamilyWitness> witness; // infinite case
    std::vector<CertifiedTrinomial> hits; // sorted by (m, n)
    bool theorem_complete = false;
    long cap = 0;
};

struct Inconsistent {};
struct Underdetermined {};
using RecoverResult = std::variant<std::pair<FieldElement, FieldElement>, Inconsistent, Underdetermined>;

namespace searchdetail {

// Solve w_i^m + A w_i^n + B = 0 given precomputed powers (w_i^n, w_i^m).
inline RecoverResult recover_from_powers(const std::vector<FieldElement>& pow_n,
                                         const std::vector<FieldElement>& pow_m) {
    const std::size_t cnt = pow_n.size();
    std::size_t i0 = 0, i1 = cnt;
    for (std::size_t j = 1; j < cnt; ++j)
        if (pow_n[j] != pow_n[i0]) {
            i1 = j;
            break;
        }
    if (i1 == cnt) { // rank < 2: all w_i^n equal
        for (std::size_t j = 1; j < cnt; ++j)
            if (pow_m[j] != pow_m[i0]) return Inconsistent{};
        return Underdetermined{};
    }
    FieldElement a = -((pow_m[i0] - pow_m[i1]) / (pow_n[i0] - pow_n[i1]));
    FieldElement b = -(pow_m[i0] + a * pow_n[i0]);
    for (std::size_t j = 0; j < cnt; ++j)
        if (!is_zero(pow_m[j] + a * pow_n[j] + b)) return Inconsistent{};
    return std::make_pair(std::move(a), std::move(b));
}

// Dense polynomial over the field, for witness division. Constant term first.
struct ElemPoly {
    std::vector<FieldElement> c;

    void normalize() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero_poly() const { return c.empty(); }
};

// Remainder of dividend by a monic divisor.
inline ElemPoly elem_poly_rem(ElemPoly num, const ElemPoly& den) {
    if (den.is_zero_poly() || !(is_zero(den.c.back() - FieldElement::one(den.c.back().field()))))
        throw input_error("witness division requires a monic divisor");
    num.normalize();
    const int dd = den.degree();
    while (!num.is_zero_poly() && num.degree() >= dd) {
        FieldElement f = num.c.back();
        int shift = num.degree() - dd;
        for (int i = 0; i <= dd; ++i)
            num.c[static_cast<std::size_t>(shift + i)] =
                num.c[static_cast<std::size_t>(shift + i)] - f * den.c[static_cast<std::size_t>(i)];
        num.normalize();
    }
    return num;
}

} // namespace searchdetail

// Recover (A, B) with w^m + A w^n + B = 0 for all w in Omega by exact
// elimination: unique solution at rank 2, Underdetermined at lower rank,
// Inconsistent when no solution exists.
inline RecoverResult recover_coefficients(const OmegaSet& omega, long m, long n) {
    if (!(m > n && n > 0)) throw input_error("recover_coefficients requires m > n > 0");
    std::vector<FieldElement> pow_n, pow_m;
    for (const auto& w : omega.elements) {
        pow_n.push_back(w.pow(n));
        pow_m.push_back(w.pow(m));
    }
    return searchdetail::recover_from_powers(pow_n, pow_m);
}

inline bool verify_trinomial(const OmegaSet& omega, const CertifiedTrinomial& t) {
    if (!(t.m > t.n && t.n > 0)) return false;
    if (is_zero(t.b)) return false;
    for (const auto& w : omega.elements)
        if (!is_zero(w.pow(t.m) + t.a * w.pow(t.n) + t.b)) return false;
    return true;
}

// classification + bounds (the latter only when >= 3 classes).
inline std::pair<EquivalenceClassification, std::optional<BoundReport>> classify_and_bound(
    const OmegaSet& omega, const Rat& eps = Rat(1) / int_pow(Int(2), 53)) {
    EquivalenceClassification cls = classify_omega(omega);
    std::optional<BoundReport> report;
    if (cls.class_count >= 3) {
        auto [h, ht] = omega_heights(omega, eps);
        report = bound_chain(omega.field->degree(), ht, h);
    }
    return {std::move(cls), std::move(report)};
}

namespace searchdetail {

// Witness construction for <= 2 classes. With |Omega| <= 2 take k = 1 and
// g = prod (Y - w) over the distinct elements; otherwise k = lcm of the
// orders of the in-class quotients and g = prod (Y - rep^k) over classes.
// A trinomial multiple of g(X^k) is then built from the roots of g.
inline FamilyWitness build_family_witness(const OmegaSet& omega,
                                          const EquivalenceClassification& cls) {
    const FieldPtr& field = omega.field;
    unsigned long k = 1;
    std::vector<FieldElement> roots; // roots of g (in the Y = X^k world)
    if (omega.elements.size() <= 2) {
        for (const auto& w : omega.elements) {
            bool dup = false;
            for (const auto& r : roots) dup = dup || r == w;
            if (!dup) roots.push_back(w);
        }
    } else {
        for (const auto& group : cls.classes) {
            const FieldElement& rep = omega.elements[static_cast<std::size_t>(group.front())];
            for (int idx : group) {
                UnityVerdict v =
                    root_of_unity_test(omega.elements[static_cast<std::size_t>(idx)] / rep);
                if (!v.is_root_of_unity) throw soundness_error("class member quotient not unity");
                k = std::lcm(k, v.order);
            }
        }
        for (const auto& group : cls.classes)
            roots.push_back(
                omega.elements[static_cast<std::size_t>(group.front())].pow(static_cast<long>(k)));
    }
    if (roots.size() > 2) throw soundness_error("family witness with more than two roots");

    FieldElement one = FieldElement::one(field), zero = FieldElement::zero(field);
    std::vector<FieldElement> g;
    if (roots.size() == 1)
        g = {-roots[0], one};
    else
        g = {roots[0] * roots[1], -(roots[0] + roots[1]), one};

    // trinomial multiple P(Y) of g with nonzero middle and constant term;
    // roots c1 (and c2) of g plus a spare rational root t.
    long stretch = 1; // trinomial lives in Y' = Y^stretch
    FieldElement c1 = roots[0];
    std::optional<FieldElement> c2;
    if (roots.size() == 2) {
        if (is_zero(roots[0] + roots[1])) { // c2 = -c1: pass to Y^2
            stretch = 2;
            c1 = roots[0] * roots[0];
        } else {
            c2 = roots[1];
        }
    }
    long wm = 0, wn = 0;
    std::optional<FieldElement> wa, wb;
    if (c2) {
        // P(Y) = (Y - c1)(Y - c2), already trinomial-shaped
        wm = 2 * static_cast<long>(k);
        wn = static_cast<long>(k);
        wa = -(c1 + *c2);
        wb = c1 * *c2;
    } else {
        // P(Y') = (Y' - c1)(Y' - t) with rational t giving A, B != 0
        FieldElement t = zero;
        for (long cand : {1, -1, 2, -2, 3}) {
            FieldElement tc = FieldElement::from_rat(field, Rat(cand));
            if (!is_zero(tc + c1)) { // A = -(c1 + t) must be nonzero
                t = tc;
                break;
            }
        }
        if (is_zero(t)) throw soundness_error("no spare witness root");
        wm = 2 * static_cast<long>(k) * stretch;
        wn = static_cast<long>(k) * stretch;
        wa = -(c1 + t);
        wb = c1 * t;
    }
    FamilyWitness wit{k, std::move(g), wm, wn, *wa, *wb};
    if (is_zero(wit.b)) throw soundness_error("family witness trinomial has B = 0");

    // validation 1: the witness trinomial vanishes on all of Omega
    for (const auto& w : omega.elements)
        if (!is_zero(w.pow(wit.m) + wit.a * w.pow(wit.n) + wit.b))
            throw soundness_error("family witness trinomial does not vanish on Omega");
    // validation 2: g(X^k) divides the trinomial, by exact division
    ElemPoly divisor;
    divisor.c.assign(static_cast<std::size_t>(wit.g.size() - 1) * k + 1, zero);
    for (std::size_t i = 0; i < wit.g.size(); ++i) divisor.c[i * k] = wit.g[i];
    divisor.normalize();
    ElemPoly tri;
    tri.c.assign(static_cast<std::size_t>(wit.m) + 1, zero);
    tri.c[0] = wit.b;
    tri.c[static_cast<std::size_t>(wit.n)] = wit.a;
    tri.c[static_cast<std::size_t>(wit.m)] = one;
    if (!elem_poly_rem(tri, divisor).is_zero_poly())
        throw soundness_error("family witness division left a remainder");
    return wit;
}

} // namespace searchdetail

// Public entry for the infinite-family witness (classify-mode callers).
inline FamilyWitness family_witness(const OmegaSet& omega,
                                    const EquivalenceClassification& cls) {
    if (cls.class_count > 2)
        throw input_error("family witness only exists for at most two classes");
    return searchdetail::build_family_witness(omega, cls);
}

inline SearchOutcome run_search(const SearchRequest& req) {
    using namespace searchdetail;
    if (req.max_degree < 2) throw input_error("max_degree must be at least 2");
    const OmegaSet& omega = req.omega;
    SearchOutcome out;
    auto [cls, report] = classify_and_bound(omega, req.eps);
    out.classes = std::move(cls);
    out.cap = req.max_degree;

    if (out.classes.class_count <= 2) {
        out.cls = Classification::InfiniteFamily;
        out.witness = build_family_witness(omega, out.classes);
        return out;
    }
    out.cls = Classification::FiniteSearch;
    out.bounds = std::move(report);

    // Full power tables w^0..w^cap per element, shared read-only by workers.
    const std::size_t cnt = omega.elements.size();
    std::vector<std::vector<FieldElement>> pw(cnt);
    for (std::size_t i = 0; i < cnt; ++i) {
        pw[i].reserve(static_cast<std::size_t>(req.max_degree) + 1);
        pw[i].push_back(FieldElement::one(omega.field));
        for (long e = 1; e <= req.max_degree; ++e) pw[i].push_back(pw[i].back() * omega.elements[i]);
    }

    unsigned jobs = req.parallel_width > 0 ? static_cast<unsigned>(req.parallel_width)
                                           : std::max(1u, std::thread::hardware_concurrency());
    long lo_m = 2, hi_m = req.max_degree;
    long span = hi_m - lo_m + 1;
    long block = std::max<long>(1, (span + 4 * static_cast<long>(jobs) - 1) / (4 * jobs));
    struct Block {
        long m0, m1;
        std::vector<std::pair<long, long>> found; // (m, n) with consistent solution, B != 0
    };
    std::vector<Block> blocks;
    for (long m0 = lo_m; m0 <= hi_m; m0 += block) blocks.push_back({m0, std::min(hi_m, m0 + block - 1), {}});

    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(blocks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t bi = next.fetch_add(1);
            if (bi >= blocks.size()) return;
            try {
                Block& blk = blocks[bi];
                std::vector<FieldElement> pn, pm;
                for (long m = blk.m0; m <= blk.m1; ++m)
                    for (long n = 1; n < m; ++n) {
                        pn.clear();
                        pm.clear();
                        for (std::size_t i = 0; i < cnt; ++i) {
                            pn.push_back(pw[i][static_cast<std::size_t>(n)]);
                            pm.push_back(pw[i][static_cast<std::size_t>(m)]);
                        }
                        RecoverResult r = recover_from_powers(pn, pm);
                        if (auto* sol = std::get_if<std::pair<FieldElement, FieldElement>>(&r)) {
                            if (is_zero(sol->second))
                                throw soundness_error(
                                    "consistent solution with B = 0 under three classes");
                            blk.found.emplace_back(m, n);
                        } else if (std::holds_alternative<Underdetermined>(r)) {
                            throw soundness_error(
                                "underdetermined system under three classes");
                        }
                    }
            } catch (...) {
                errors[bi] = std::current_exception();
                return;
            }
        }
    };
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e); // fail loudly, no partial results

    // representatives of the first three classes, for the subsum typing and
    // the two-root coefficient cross-check
    const FieldElement& r1 = omega.elements[static_cast<std::size_t>(out.classes.classes[0][0])];
    const FieldElement& r2 = omega.elements[static_cast<std::size_t>(out.classes.classes[1][0])];
    const FieldElement& r3 = omega.elements[static_cast<std::size_t>(out.classes.classes[2][0])];

    for (const auto& blk : blocks)
        for (auto [m, n] : blk.found) {
            RecoverResult r = recover_coefficients(omega, m, n);
            auto* sol = std::get_if<std::pair<FieldElement, FieldElement>>(&r);
            if (!sol) throw soundness_error("hit did not re-solve");
            CertifiedTrinomial hit{m, n, sol->first, sol->second, Ival(Rat(0)), {}, std::nullopt,
                                   is_zero(sol->first)};
            // A binomial can vanish only on a single equivalence class, so a
            // hit with A = 0 cannot arise here (emit_binomials never filters
            // anything on the three-class path).
            if (hit.binomial) throw soundness_error("binomial hit under three classes");
            // exact vanishing certificates
            for (const auto& w : omega.elements) {
                bool ok = is_zero(w.pow(m) + hit.a * w.pow(n) + hit.b);
                if (!ok) throw soundness_error("hit fails exact vanishing");
                hit.vanishing.push_back(ok);
            }
            // cross-check against the closed two-root formulas when usable
            if (r1.pow(n) != r2.pow(n)) {
                FieldElement a_direct = -((r1.pow(m) - r2.pow(m)) / (r1.pow(n) - r2.pow(n)));
                FieldElement b_direct =
                    -((r1.pow(m - n) - r2.pow(m - n)) / (r1.pow(-n) - r2.pow(-n)));
                if (a_direct != hit.a || b_direct != hit.b)
                    throw soundness_error("closed-form coefficients disagree with elimination");
            }
            hit.height = height_of_projective_point(
                {FieldElement::one(omega.field), hit.a, hit.b}, req.eps);
            hit.subsum = vanishing_subsum_decomposition(build_six_terms(r1, r2, r3, m, n));
            // theorem consistency in log scale (certified-violation check)
            const BoundReport& br = *out.bounds;
            if (log_encl(Rat(m), rat(1, 1000)).lo > br.log_degree_max.hi)
                throw soundness_error("hit degree exceeds the effective bound");
            if (hit.height.hi > 1 &&
                log_encl(hit.height.hi, rat(1, 1000)).lo > br.log_height_max_theorem.hi)
                throw soundness_error("hit height exceeds the effective bound");
            out.hits.push_back(std::move(hit));
        }
    std::sort(out.hits.begin(), out.hits.end(), [](const CertifiedTrinomial& x, const CertifiedTrinomial& y) {
        if (x.m != y.m) return x.m < y.m;
        return x.n < y.n;
    });
    // cap >= e^{log_degree_max} would make the enumeration theorem-complete;
    // compare in log scale.
    out.theorem_complete =
        log_encl(Rat(req.max_degree), rat(1, 1000)).lo >= out.bounds->log_degree_max.hi;
    return out;
}

} // namespace trisieve

#endif
