#ifndef TRISIEVE_JOB_HPP
#define TRISIEVE_JOB_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trisieve/search.hpp"
#include "trisieve/splitting.hpp"

namespace trisieve {

// JSON job interface. Rationals travel as strings ("p/q" or "n"); no
// floating-point numbers appear anywhere on the wire. Unknown keys are
// rejected. Indices in the output (classes, subsum positions) are 1-based.

using Json = nlohmann::ordered_json;

enum class JobMode { Classify, Bounds, Search, Diagnose, Verify };

struct JobSpec {
    JobMode mode = JobMode::Classify;
    std::optional<FieldPtr> field;
    std::vector<FieldElement> elements;
    long max_degree = 200;
    bool emit_binomials = true;
    int parallel_width = 0;
    Rat eps = Rat(1) / int_pow(Int(2), 53);
    // bounds mode, direct form
    std::optional<long> direct_d, direct_nu;
    std::optional<Ival> direct_h_omega, direct_h_tilde, direct_h_alpha;
    // diagnose mode
    std::string check;
    long m = 0, n = 0, m_prime = 0, n_prime = 0;
    std::optional<FieldElement> coeff_a, coeff_b;
    // verify mode
    std::vector<CertifiedTrinomial> hits;
};

namespace jobdetail {

inline void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const auto& k : allowed) known = known || it.key() == k;
        if (!known) throw input_error("unknown key '" + it.key() + "' in " + where);
    }
}

inline Rat parse_rat(const Json& v, const std::string& where) {
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    throw input_error("expected a rational string at " + where);
}

inline Int parse_int(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
    if (v.is_string()) {
        Rat r = rat_from_string(v.get<std::string>());
        if (r.get_den() != 1) throw input_error("expected an integer at " + where);
        return r.get_num();
    }
    throw input_error("expected an integer at " + where);
}

inline Ival parse_interval_endpoints(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2)
        throw input_error(where + " must be a two-element array [lo, hi]");
    return Ival(parse_rat(v[0], where + "[0]"), parse_rat(v[1], where + "[1]"));
}

inline FieldPtr parse_field(const Json& f) {
    reject_unknown_keys(f, {"poly", "root"}, "field");
    if (!f.contains("poly") || !f.contains("root"))
        throw input_error("field requires 'poly' and 'root'");
    const Json& poly = f["poly"];
    if (!poly.is_array() || poly.empty()) throw input_error("field.poly must be a nonempty array");
    IntPoly p;
    for (std::size_t i = 0; i < poly.size(); ++i)
        p.c.push_back(parse_int(poly[i], "field.poly[" + std::to_string(i) + "]"));
    p.normalize();
    const Json& root = f["root"];
    reject_unknown_keys(root, {"re", "im"}, "field.root");
    if (!root.contains("re") || !root.contains("im"))
        throw input_error("field.root requires 're' and 'im'");
    Rect box(parse_interval_endpoints(root["re"], "field.root.re"),
             parse_interval_endpoints(root["im"], "field.root.im"));
    return NumberField::make(std::move(p), std::move(box));
}

inline FieldElement parse_element(const FieldPtr& k, const Json& v, const std::string& where) {
    if (!v.is_array()) throw input_error(where + " must be a coordinate array");
    if (static_cast<int>(v.size()) != k->degree())
        throw input_error(where + " must have " + std::to_string(k->degree()) + " coordinates");
    std::vector<Rat> c;
    for (std::size_t i = 0; i < v.size(); ++i)
        c.push_back(parse_rat(v[i], where + "[" + std::to_string(i) + "]"));
    return FieldElement(k, std::move(c));
}

inline std::string render_decimal(const Rat& x, unsigned digits) {
    return rat_to_decimal(x, digits, 0);
}

inline Json interval_json(const Ival& v) {
    // decimal midpoint with a certified +- error no smaller than the full
    // width of the enclosure (plus the rendering truncation)
    const unsigned digits = 20;
    Rat err = v.width() + Rat(1) / int_pow(Int(10), digits);
    Json out;
    out["lo"] = rat_to_string(v.lo);
    out["hi"] = rat_to_string(v.hi);
    out["decimal"] = render_decimal(v.mid(), digits);
    out["error"] = rat_to_decimal(err, digits + 2, +1);
    return out;
}

inline Json element_json(const FieldElement& e) {
    Json arr = Json::array();
    for (const auto& c : e.coords()) arr.push_back(rat_to_string(c));
    return arr;
}

inline Json classes_json(const EquivalenceClassification& cls) {
    Json arr = Json::array();
    for (const auto& group : cls.classes) {
        Json g = Json::array();
        for (int idx : group) g.push_back(idx + 1); // 1-based
        arr.push_back(std::move(g));
    }
    return arr;
}

inline Json bounds_json(const BoundReport& r) {
    Json out;
    out["d"] = r.d;
    out["h_omega"] = interval_json(r.h_omega);
    out["h_tilde"] = interval_json(r.h_tilde);
    out["log_n_max"] = interval_json(r.log_n_max);
    out["log_mn_max"] = interval_json(r.log_mn_max);
    out["log_degree_max_chain"] = interval_json(r.log_degree_max);
    out["log_degree_max_theorem"] = interval_json(r.log_degree_max_theorem);
    out["log_height_max_chain"] = interval_json(r.log_height_max);
    out["log_height_max_theorem"] = interval_json(r.log_height_max_theorem);
    return out;
}

inline Json witness_json(const FamilyWitness& w) {
    Json out;
    out["k"] = w.k;
    Json g = Json::array();
    for (const auto& c : w.g) g.push_back(element_json(c));
    out["g"] = std::move(g);
    Json tri;
    tri["m"] = w.m;
    tri["n"] = w.n;
    tri["A"] = element_json(w.a);
    tri["B"] = element_json(w.b);
    out["trinomial"] = std::move(tri);
    return out;
}

inline Json hit_json(const CertifiedTrinomial& h) {
    Json out;
    out["m"] = h.m;
    out["n"] = h.n;
    out["A"] = element_json(h.a);
    out["B"] = element_json(h.b);
    out["binomial"] = h.binomial;
    out["height"] = interval_json(h.height);
    Json van = Json::array();
    for (bool v : h.vanishing) van.push_back(v);
    out["vanishing"] = std::move(van);
    if (h.subsum) {
        Json sub;
        Json v = Json::array(), w = Json::array();
        for (int i : h.subsum->v) v.push_back(i + 1);
        for (int i : h.subsum->w) w.push_back(i + 1);
        sub["V"] = std::move(v);
        sub["W"] = std::move(w);
        sub["signature"] = Json::array({h.subsum->signature.first, h.subsum->signature.second});
        out["subsum"] = std::move(sub);
    }
    return out;
}

} // namespace jobdetail

inline JobSpec parse_job(const std::string& text) {
    using namespace jobdetail;
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw input_error("job must be a JSON object");
    reject_unknown_keys(
        j, {"mode", "field", "elements", "search", "bounds", "diagnose", "verify", "eps"}, "job");
    JobSpec spec;
    if (!j.contains("mode")) throw input_error("job requires 'mode'");
    std::string mode = j["mode"].get<std::string>();
    if (mode == "classify")
        spec.mode = JobMode::Classify;
    else if (mode == "bounds")
        spec.mode = JobMode::Bounds;
    else if (mode == "search")
        spec.mode = JobMode::Search;
    else if (mode == "diagnose")
        spec.mode = JobMode::Diagnose;
    else if (mode == "verify")
        spec.mode = JobMode::Verify;
    else
        throw input_error("unknown mode '" + mode + "'");

    if (j.contains("eps")) {
        spec.eps = parse_rat(j["eps"], "eps");
        if (sgn(spec.eps) <= 0) throw input_error("eps must be positive");
    }
    if (j.contains("field")) spec.field = parse_field(j["field"]);
    if (j.contains("elements")) {
        if (!spec.field) throw input_error("elements given without a field");
        const Json& els = j["elements"];
        if (!els.is_array()) throw input_error("elements must be an array");
        for (std::size_t i = 0; i < els.size(); ++i)
            spec.elements.push_back(
                parse_element(*spec.field, els[i], "elements[" + std::to_string(i) + "]"));
    }
    if (j.contains("search")) {
        const Json& s = j["search"];
        reject_unknown_keys(s, {"max_degree", "emit_binomials", "parallel_width"}, "search");
        if (s.contains("max_degree")) spec.max_degree = s["max_degree"].get<long>();
        if (s.contains("emit_binomials")) spec.emit_binomials = s["emit_binomials"].get<bool>();
        if (s.contains("parallel_width")) spec.parallel_width = s["parallel_width"].get<int>();
        if (spec.max_degree < 2) throw input_error("search.max_degree must be at least 2");
        if (spec.parallel_width < 0) throw input_error("search.parallel_width must be positive");
    }
    if (j.contains("bounds")) {
        if (spec.mode != JobMode::Bounds) throw input_error("'bounds' only applies to bounds mode");
        const Json& b = j["bounds"];
        reject_unknown_keys(b, {"d", "nu", "h_omega", "h_tilde", "h_alpha"}, "bounds");
        if (!b.contains("d")) throw input_error("bounds requires 'd'");
        spec.direct_d = b["d"].get<long>();
        if (b.contains("nu")) spec.direct_nu = b["nu"].get<long>();
        auto hv = [&](const char* key) -> std::optional<Ival> {
            if (!b.contains(key)) return std::nullopt;
            return Ival(parse_rat(b[key], std::string("bounds.") + key));
        };
        spec.direct_h_omega = hv("h_omega");
        spec.direct_h_tilde = hv("h_tilde");
        spec.direct_h_alpha = hv("h_alpha");
    }
    if (j.contains("diagnose")) {
        if (spec.mode != JobMode::Diagnose)
            throw input_error("'diagnose' only applies to diagnose mode");
        const Json& d = j["diagnose"];
        reject_unknown_keys(d, {"check", "m", "n", "m_prime", "n_prime", "A", "B"}, "diagnose");
        if (!d.contains("check")) throw input_error("diagnose requires 'check'");
        spec.check = d["check"].get<std::string>();
        if (d.contains("m")) spec.m = d["m"].get<long>();
        if (d.contains("n")) spec.n = d["n"].get<long>();
        if (d.contains("m_prime")) spec.m_prime = d["m_prime"].get<long>();
        if (d.contains("n_prime")) spec.n_prime = d["n_prime"].get<long>();
        if (!spec.field) throw input_error("diagnose requires a field");
        if (d.contains("A")) spec.coeff_a = parse_element(*spec.field, d["A"], "diagnose.A");
        if (d.contains("B")) spec.coeff_b = parse_element(*spec.field, d["B"], "diagnose.B");
    }
    if (j.contains("verify")) {
        if (spec.mode != JobMode::Verify) throw input_error("'verify' only applies to verify mode");
        const Json& v = j["verify"];
        reject_unknown_keys(v, {"hits"}, "verify");
        if (!v.contains("hits") || !v["hits"].is_array())
            throw input_error("verify requires a 'hits' array");
        if (!spec.field) throw input_error("verify requires a field");
        for (const auto& h : v["hits"]) {
            reject_unknown_keys(h, {"m", "n", "A", "B"}, "verify.hits[]");
            if (!h.contains("m") || !h.contains("n") || !h.contains("A") || !h.contains("B"))
                throw input_error("each hit requires m, n, A, B");
            CertifiedTrinomial t{h["m"].get<long>(),
                                 h["n"].get<long>(),
                                 parse_element(*spec.field, h["A"], "verify.hits[].A"),
                                 parse_element(*spec.field, h["B"], "verify.hits[].B"),
                                 Ival(Rat(0)),
                                 {},
                                 std::nullopt,
                                 false};
            spec.hits.push_back(std::move(t));
        }
    }
    // mode-specific requirements
    if (spec.mode == JobMode::Classify || spec.mode == JobMode::Search) {
        if (!spec.field || spec.elements.empty())
            throw input_error("this mode requires 'field' and 'elements'");
    }
    if (spec.mode == JobMode::Bounds && !spec.direct_d &&
        (!spec.field || spec.elements.empty()))
        throw input_error("bounds mode requires either direct values or field + elements");
    if (spec.mode == JobMode::Diagnose && spec.elements.size() < 3)
        throw input_error("diagnose mode requires three elements");
    if (spec.mode == JobMode::Verify && (!spec.field || spec.elements.empty()))
        throw input_error("verify mode requires 'field' and 'elements'");
    return spec;
}

// Canonical serialisation of a parsed job; parse-serialise is idempotent.
inline Json serialize_job(const JobSpec& spec) {
    using namespace jobdetail;
    Json j;
    switch (spec.mode) {
        case JobMode::Classify: j["mode"] = "classify"; break;
        case JobMode::Bounds: j["mode"] = "bounds"; break;
        case JobMode::Search: j["mode"] = "search"; break;
        case JobMode::Diagnose: j["mode"] = "diagnose"; break;
        case JobMode::Verify: j["mode"] = "verify"; break;
    }
    if (spec.field) {
        Json field;
        Json poly = Json::array();
        for (const auto& c : (*spec.field)->defining_poly().c) poly.push_back(c.get_str());
        field["poly"] = std::move(poly);
        const Rect& box = (*spec.field)->initial_box();
        field["root"] = Json{{"re", Json::array({rat_to_string(box.re.lo), rat_to_string(box.re.hi)})},
                             {"im", Json::array({rat_to_string(box.im.lo), rat_to_string(box.im.hi)})}};
        j["field"] = std::move(field);
    }
    if (!spec.elements.empty()) {
        Json els = Json::array();
        for (const auto& e : spec.elements) els.push_back(element_json(e));
        j["elements"] = std::move(els);
    }
    if (spec.mode == JobMode::Search) {
        j["search"] = Json{{"max_degree", spec.max_degree},
                           {"emit_binomials", spec.emit_binomials},
                           {"parallel_width", spec.parallel_width}};
    }
    if (spec.mode == JobMode::Bounds && spec.direct_d) {
        Json b;
        b["d"] = *spec.direct_d;
        if (spec.direct_nu) b["nu"] = *spec.direct_nu;
        if (spec.direct_h_omega) b["h_omega"] = rat_to_string(spec.direct_h_omega->lo);
        if (spec.direct_h_tilde) b["h_tilde"] = rat_to_string(spec.direct_h_tilde->lo);
        if (spec.direct_h_alpha) b["h_alpha"] = rat_to_string(spec.direct_h_alpha->lo);
        j["bounds"] = std::move(b);
    }
    if (spec.mode == JobMode::Diagnose) {
        Json d;
        d["check"] = spec.check;
        d["m"] = spec.m;
        d["n"] = spec.n;
        if (spec.check == "ratio_partition") {
            d["m_prime"] = spec.m_prime;
            d["n_prime"] = spec.n_prime;
        }
        if (spec.coeff_a) d["A"] = element_json(*spec.coeff_a);
        if (spec.coeff_b) d["B"] = element_json(*spec.coeff_b);
        j["diagnose"] = std::move(d);
    }
    if (spec.mode == JobMode::Verify) {
        Json hits = Json::array();
        for (const auto& h : spec.hits)
            hits.push_back(Json{{"m", h.m}, {"n", h.n}, {"A", element_json(h.a)},
                                {"B", element_json(h.b)}});
        j["verify"] = Json{{"hits", std::move(hits)}};
    }
    j["eps"] = rat_to_string(spec.eps);
    return j;
}

inline Json run_job(const JobSpec& spec) {
    using namespace jobdetail;
    Json out;
    switch (spec.mode) {
        case JobMode::Classify: {
            out["mode"] = "classify";
            OmegaSet omega(*spec.field, spec.elements);
            EquivalenceClassification cls = classify_omega(omega);
            out["class_count"] = cls.class_count;
            out["classes"] = classes_json(cls);
            out["family"] = cls.class_count <= 2 ? "infinite" : "finite";
            if (cls.class_count <= 2)
                out["witness"] = witness_json(family_witness(omega, cls));
            break;
        }
        case JobMode::Bounds: {
            out["mode"] = "bounds";
            if (spec.direct_d) {
                BoundReport r =
                    spec.direct_nu
                        ? corollary_bounds(*spec.direct_d, *spec.direct_nu,
                                           spec.direct_h_alpha.value_or(Ival(Rat(0))))
                        : bound_chain(*spec.direct_d,
                                      spec.direct_h_tilde.value_or(
                                          spec.direct_h_omega
                                              ? Ival(2 * spec.direct_h_omega->lo,
                                                     2 * spec.direct_h_omega->hi)
                                              : Ival(Rat(0))),
                                      spec.direct_h_omega.value_or(Ival(Rat(0))));
                out["bounds"] = bounds_json(r);
            } else {
                OmegaSet omega(*spec.field, spec.elements);
                auto [cls, report] = classify_and_bound(omega, spec.eps);
                out["class_count"] = cls.class_count;
                out["classes"] = classes_json(cls);
                out["family"] = cls.class_count <= 2 ? "infinite" : "finite";
                if (report) out["bounds"] = bounds_json(*report);
            }
            break;
        }
        case JobMode::Search: {
            out["mode"] = "search";
            OmegaSet omega(*spec.field, spec.elements);
            SearchRequest req{omega, spec.max_degree, spec.emit_binomials, spec.parallel_width,
                              spec.eps};
            SearchOutcome res = run_search(req);
            out["class_count"] = res.classes.class_count;
            out["classes"] = classes_json(res.classes);
            out["family"] = res.cls == Classification::InfiniteFamily ? "infinite" : "finite";
            if (res.witness) out["witness"] = witness_json(*res.witness);
            if (res.bounds) out["bounds"] = bounds_json(*res.bounds);
            Json hits = Json::array();
            for (const auto& h : res.hits) hits.push_back(hit_json(h));
            out["hits"] = std::move(hits);
            Json comp;
            comp["type"] = res.theorem_complete ? "theorem_complete" : "up_to_cap";
            comp["cap"] = res.cap;
            out["completeness"] = std::move(comp);
            break;
        }
        case JobMode::Diagnose: {
            out["mode"] = "diagnose";
            out["check"] = spec.check;
            const FieldElement &a = spec.elements[0], &b = spec.elements[1],
                               &c = spec.elements[2];
            if (spec.check == "six_terms") {
                SixTermSystem s = build_six_terms(a, b, c, spec.m, spec.n);
                Json terms = Json::array();
                for (const auto& t : s.terms) terms.push_back(element_json(t));
                out["terms"] = std::move(terms);
                out["sum_is_zero"] = is_zero(s.total());
            } else if (spec.check == "subsum") {
                SixTermSystem s = build_six_terms(a, b, c, spec.m, spec.n);
                PartitionType p = vanishing_subsum_decomposition(s);
                Json v = Json::array(), w = Json::array();
                for (int i : p.v) v.push_back(i + 1);
                for (int i : p.w) w.push_back(i + 1);
                out["V"] = std::move(v);
                out["W"] = std::move(w);
                out["signature"] = Json::array({p.signature.first, p.signature.second});
            } else if (spec.check == "pairing") {
                out["result"] = pairing_implication_check(a, b, c, spec.m, spec.n);
            } else if (spec.check == "ratio_partition") {
                out["result"] = ratio_partition_implication_check(a, b, c, spec.m, spec.n,
                                                                  spec.m_prime, spec.n_prime);
            } else if (spec.check == "equal_modulus") {
                if (!spec.coeff_a || !spec.coeff_b)
                    throw input_error("equal_modulus check requires A and B");
                out["result"] = equal_modulus_trinomial_check(a, b, c, spec.m, spec.n,
                                                              *spec.coeff_a, *spec.coeff_b);
            } else {
                throw input_error("unknown diagnose check '" + spec.check + "'");
            }
            break;
        }
        case JobMode::Verify: {
            out["mode"] = "verify";
            OmegaSet omega(*spec.field, spec.elements);
            Json results = Json::array();
            bool all = true;
            for (const auto& h : spec.hits) {
                bool ok = verify_trinomial(omega, h);
                all = all && ok;
                results.push_back(ok);
            }
            out["results"] = std::move(results);
            out["all_valid"] = all;
            break;
        }
    }
    return out;
}

// Built-in presets: worked examples that double as schema documentation.
inline std::string preset_job(const std::string& name, const std::string& mode) {
    Json j;
    j["mode"] = mode;
    if (name == "x3-x2+1") {
        // the three roots of x^3 - x^2 + 1 presented in their degree-6
        // splitting field, computed on the fly and serialised exactly
        SplitCubic sc = split_cubic_field(IntPoly{1, 0, -1, 1});
        Json field;
        Json poly = Json::array();
        for (const auto& c : sc.field->defining_poly().c) poly.push_back(c.get_str());
        field["poly"] = std::move(poly);
        Json root;
        const Rect& box = sc.field->initial_box();
        root["re"] = Json::array({rat_to_string(box.re.lo), rat_to_string(box.re.hi)});
        root["im"] = Json::array({rat_to_string(box.im.lo), rat_to_string(box.im.hi)});
        field["root"] = std::move(root);
        j["field"] = std::move(field);
        Json els = Json::array();
        for (const auto& r : sc.roots) els.push_back(jobdetail::element_json(r));
        j["elements"] = std::move(els);
        j["search"] = Json{{"max_degree", 30}};
    } else if (name == "cube-roots") {
        // omega and omega^2, the primitive cube roots of unity
        j["field"] = Json{{"poly", Json::array({1, 1, 1})},
                          {"root", Json{{"re", Json::array({"-1", "0"})},
                                        {"im", Json::array({"1/4", "1"})}}}};
        j["elements"] = Json::array({Json::array({"0", "1"}), Json::array({"-1", "-1"})});
    } else if (name == "x2-x-1") {
        // both roots of x^2 - x - 1: the generator (golden ratio embedding)
        // and 1 - x
        j["field"] = Json{{"poly", Json::array({-1, -1, 1})},
                          {"root", Json{{"re", Json::array({"1", "2"})},
                                        {"im", Json::array({"0", "0"})}}}};
        j["elements"] = Json::array({Json::array({"0", "1"}), Json::array({"1", "-1"})});
    } else {
        throw input_error("unknown preset '" + name + "' (available: x3-x2+1, cube-roots, x2-x-1)");
    }
    return j.dump(2);
}

} // namespace trisieve

#endif
