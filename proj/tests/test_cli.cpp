#include "doctest.h"

#include "trisieve/job.hpp"

using namespace trisieve;

namespace {
const std::string sqrt2_field_json =
    R"("field": {"poly": [-2, 0, 1], "root": {"re": ["1", "2"], "im": ["0", "0"]}})";

std::string job(const std::string& body) { return "{" + body + "}"; }
} // namespace

TEST_SUITE("job parsing") {
    TEST_CASE("the schema example: Omega = {sqrt2} in Q(sqrt2)") {
        JobSpec spec = parse_job(job(
            R"("mode": "classify", )" + sqrt2_field_json + R"(, "elements": [["0", "1"]])"));
        CHECK(spec.mode == JobMode::Classify);
        REQUIRE(spec.field.has_value());
        CHECK((*spec.field)->degree() == 2);
        REQUIRE(spec.elements.size() == 1);
        CHECK(spec.elements[0] == FieldElement::generator(*spec.field));
    }

    TEST_CASE("omega pair in Q(omega)") {
        JobSpec spec = parse_job(job(
            R"("mode": "classify",
               "field": {"poly": [1, 1, 1], "root": {"re": ["-1", "0"], "im": ["1/4", "1"]}},
               "elements": [["0", "1"], ["-1", "-1"]])"));
        CHECK(spec.elements.size() == 2);
        CHECK(spec.elements[1] == spec.elements[0] * spec.elements[0]);
    }

    TEST_CASE("a rectangle containing both roots is rejected") {
        CHECK_THROWS_WITH_AS(
            parse_job(job(
                R"("mode": "classify",
                   "field": {"poly": [-2, 0, 1], "root": {"re": ["-2", "2"], "im": ["0", "0"]}},
                   "elements": [["0", "1"]])")),
            doctest::Contains("root not isolated"), input_error);
    }

    TEST_CASE("zero elements and unknown keys are rejected") {
        CHECK_THROWS_AS(
            run_job(parse_job(job(R"("mode": "classify", )" + sqrt2_field_json +
                                  R"(, "elements": [["0", "0"]])"))),
            input_error);
        CHECK_THROWS_WITH_AS(
            parse_job(job(R"("mode": "classify", "frobnicate": 1, )" + sqrt2_field_json +
                          R"(, "elements": [["0", "1"]])")),
            doctest::Contains("unknown key"), input_error);
        CHECK_THROWS_AS(parse_job(job(
                            R"("mode": "classify",
                               "field": {"poly": [-2, 0, 1], "extra": 0,
                                         "root": {"re": ["1", "2"], "im": ["0", "0"]}},
                               "elements": [["0", "1"]])")),
                        input_error);
    }

    TEST_CASE("malformed rationals and wrong arity are rejected") {
        CHECK_THROWS_AS(parse_job(job(R"("mode": "classify", )" + sqrt2_field_json +
                                      R"(, "elements": [["1.5", "0"]])")),
                        input_error);
        CHECK_THROWS_AS(parse_job(job(R"("mode": "classify", )" + sqrt2_field_json +
                                      R"(, "elements": [["1"]])")),
                        input_error);
        CHECK_THROWS_AS(parse_job("not json at all"), input_error);
        CHECK_THROWS_AS(parse_job(job(R"("mode": "frobnicate")")), input_error);
    }

    TEST_CASE("mode requirements") {
        CHECK_THROWS_AS(parse_job(job(R"("mode": "classify")")), input_error);
        CHECK_THROWS_AS(parse_job(job(R"("mode": "search", )" + sqrt2_field_json)), input_error);
        // bounds with direct values needs no field
        JobSpec spec = parse_job(job(R"("mode": "bounds", "bounds": {"d": 2, "h_omega": "1/2"})"));
        CHECK(spec.direct_d == 2);
    }
}

TEST_SUITE("job execution") {
    TEST_CASE("classify {omega, omega^2}: infinite family with witness") {
        Json out = run_job(parse_job(preset_job("cube-roots", "classify")));
        CHECK(out["mode"] == "classify");
        CHECK(out["class_count"] == 1);
        CHECK(out["family"] == "infinite");
        CHECK(out["classes"] == Json::array({Json::array({1, 2})}));
        REQUIRE(out.contains("witness"));
        CHECK(out["witness"]["k"] == 1);
        // g = Y^2 + Y + 1
        CHECK(out["witness"]["g"] == Json::array({Json::array({"1", "0"}),
                                                  Json::array({"1", "0"}),
                                                  Json::array({"1", "0"})}));
    }

    TEST_CASE("search {1,2,3} cap 10: empty hits, complete up to cap") {
        Json out = run_job(parse_job(job(
            R"("mode": "search",
               "field": {"poly": [0, 1], "root": {"re": ["0", "0"], "im": ["0", "0"]}},
               "elements": [["1"], ["2"], ["3"]],
               "search": {"max_degree": 10})")));
        CHECK(out["mode"] == "search");
        CHECK(out["family"] == "finite");
        CHECK(out["hits"].empty());
        CHECK(out["completeness"]["type"] == "up_to_cap");
        CHECK(out["completeness"]["cap"] == 10);
    }

    TEST_CASE("bounds for d=1, h=0: headline form near 148.155") {
        Json out = run_job(parse_job(job(R"("mode": "bounds", "bounds": {"d": 1, "h_omega": "0"})")));
        std::string dec = out["bounds"]["log_degree_max_theorem"]["decimal"].get<std::string>();
        CHECK(dec.substr(0, 7) == "148.155");
    }

    TEST_CASE("verify round-trip: search hits re-validate, tampered ones fail") {
        std::string base =
            R"("field": {"poly": [0, 1], "root": {"re": ["0", "0"], "im": ["0", "0"]}},
               "elements": [["1"], ["2"], ["-3"]])";
        Json search_out = run_job(parse_job(job(
            R"("mode": "search", )" + base + R"(, "search": {"max_degree": 5})")));
        REQUIRE(search_out["hits"].size() == 1);
        Json hit = search_out["hits"][0];
        std::string verify_text = job(
            R"("mode": "verify", )" + base + R"(, "verify": {"hits": [{"m": )" +
            hit["m"].dump() + R"(, "n": )" + hit["n"].dump() + R"(, "A": )" + hit["A"].dump() +
            R"(, "B": )" + hit["B"].dump() + "}]}");
        Json ver = run_job(parse_job(verify_text));
        CHECK(ver["all_valid"] == true);
        // tamper with B
        Json bad = Json::parse(verify_text);
        bad["verify"]["hits"][0]["B"][0] = "7";
        Json ver2 = run_job(parse_job(bad.dump()));
        CHECK(ver2["all_valid"] == false);
    }

    TEST_CASE("diagnose six_terms and subsum on a genuine trinomial instance") {
        std::string base =
            R"("field": {"poly": [0, 1], "root": {"re": ["0", "0"], "im": ["0", "0"]}},
               "elements": [["1"], ["2"], ["-3"]])";
        Json six = run_job(parse_job(job(
            R"("mode": "diagnose", )" + base +
            R"(, "diagnose": {"check": "six_terms", "m": 3, "n": 1})")));
        CHECK(six["sum_is_zero"] == true);
        Json sub = run_job(parse_job(job(
            R"("mode": "diagnose", )" + base +
            R"(, "diagnose": {"check": "subsum", "m": 3, "n": 1})")));
        CHECK(sub["signature"] == Json::array({6, 0}));
        Json pair = run_job(parse_job(job(
            R"("mode": "diagnose", )" + base +
            R"(, "diagnose": {"check": "pairing", "m": 2, "n": 1})")));
        CHECK(pair["result"] == true);
    }

    TEST_CASE("serialisation is canonical and byte-stable across parallel widths") {
        std::string base = preset_job("x2-x-1", "classify");
        Json a = run_job(parse_job(base));
        Json b = run_job(parse_job(base));
        CHECK(a.dump(2) == b.dump(2));
        // parallel width must not leak into search output
        std::string s1 = job(
            R"("mode": "search",
               "field": {"poly": [0, 1], "root": {"re": ["0", "0"], "im": ["0", "0"]}},
               "elements": [["1"], ["2"], ["-3"]],
               "search": {"max_degree": 8, "parallel_width": 1})");
        std::string s8 = job(
            R"("mode": "search",
               "field": {"poly": [0, 1], "root": {"re": ["0", "0"], "im": ["0", "0"]}},
               "elements": [["1"], ["2"], ["-3"]],
               "search": {"max_degree": 8, "parallel_width": 8})");
        CHECK(run_job(parse_job(s1)).dump(2) == run_job(parse_job(s8)).dump(2));
    }

    TEST_CASE("serialize(parse(x)) is canonical and idempotent") {
        std::vector<std::string> inputs{
            preset_job("cube-roots", "classify"),
            preset_job("x2-x-1", "search"),
            job(R"("mode": "bounds", "bounds": {"d": 2, "nu": 3, "h_alpha": "1/2"})"),
            job(R"("mode": "diagnose", )" + sqrt2_field_json +
                R"(, "elements": [["1","0"],["2","0"],["0","1"]],
                   "diagnose": {"check": "pairing", "m": 2, "n": 1})"),
        };
        for (const auto& text : inputs) {
            std::string once = serialize_job(parse_job(text)).dump(2);
            std::string twice = serialize_job(parse_job(once)).dump(2);
            CHECK(once == twice);
        }
    }

    TEST_CASE("presets parse and carry the announced content") {
        Json x3 = Json::parse(preset_job("x3-x2+1", "search"));
        CHECK(x3["field"]["poly"].size() == 7); // degree-6 ambient field
        CHECK(x3["elements"].size() == 3);
        JobSpec spec = parse_job(preset_job("x3-x2+1", "classify"));
        // the claimed roots really satisfy the cubic, pairwise distinct
        for (const auto& r : spec.elements) {
            FieldElement v = r.pow(3) - r.pow(2) + FieldElement::one(*spec.field);
            CHECK(is_zero(v));
        }
        CHECK_THROWS_AS(preset_job("nope", "classify"), input_error);
    }
}
