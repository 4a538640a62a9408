// trinomial-sieve: exact determination of the trinomials X^m + A X^n + B
// vanishing on a finite set of algebraic numbers.
//
// One job per invocation, JSON in (file or stdin), JSON out on stdout.
// Exit codes: 0 success, 1 input error, 2 internal soundness failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trisieve/job.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw trisieve::input_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonOpts {
    std::string input = "-";
    std::string preset;
    long max_degree = 0;
    int jobs = 0;
    std::string eps;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool search_opts) {
    cmd->add_option("--input", o.input, "job JSON file, or - for stdin");
    cmd->add_option("--preset", o.preset,
                    "built-in job instead of --input (x3-x2+1, cube-roots, x2-x-1)");
    if (search_opts) {
        cmd->add_option("--max-degree", o.max_degree, "enumeration cap on m");
        cmd->add_option("--jobs", o.jobs,
                        "worker threads (falls back to TRINOMIAL_SIEVE_JOBS, then all cores)");
    }
    cmd->add_option("--eps", o.eps, "enclosure width target as a rational p/q");
    cmd->add_flag("--timing", o.timing,
                  "append wall-clock timing to the output (off by default: timing breaks "
                  "byte-for-byte reproducibility)");
}

int run_mode(const std::string& mode, const CommonOpts& o) {
    std::string text = o.preset.empty() ? read_input(o.input) : trisieve::preset_job(o.preset, mode);
    trisieve::Json parsed;
    try {
        parsed = trisieve::Json::parse(text);
    } catch (const std::exception& e) {
        throw trisieve::input_error(std::string("JSON parse error: ") + e.what());
    }
    if (parsed.is_object()) {
        if (!parsed.contains("mode")) parsed["mode"] = mode;
        if (parsed["mode"] != mode)
            throw trisieve::input_error("job mode '" + parsed["mode"].get<std::string>() +
                                        "' does not match the subcommand '" + mode + "'");
    }
    trisieve::JobSpec spec = trisieve::parse_job(parsed.dump());
    if (o.max_degree > 0) spec.max_degree = o.max_degree;
    if (o.jobs > 0) {
        spec.parallel_width = o.jobs;
    } else if (const char* env = std::getenv("TRINOMIAL_SIEVE_JOBS")) {
        spec.parallel_width = std::max(0, std::atoi(env));
    }
    if (!o.eps.empty()) {
        spec.eps = trisieve::rat_from_string(o.eps);
        if (sgn(spec.eps) <= 0) throw trisieve::input_error("--eps must be positive");
    }
    auto t0 = std::chrono::steady_clock::now();
    trisieve::Json out = trisieve::run_job(spec);
    auto t1 = std::chrono::steady_clock::now();
    if (o.timing)
        out["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    if (mode == "search" && out.contains("family") && out["family"] == "infinite")
        std::cerr << "note: the set splits into at most two equivalence classes, so infinitely "
                     "many trinomials vanish on it; the enumeration was skipped and a divisor "
                     "witness is reported instead\n";
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "trinomial-sieve: exact search for trinomials X^m + A X^n + B vanishing on a set of "
        "algebraic numbers, with certified classification, effective bounds and witnesses"};
    app.require_subcommand(1);
    app.footer(R"FOOTER(Job schema (all rationals are strings "p/q" or "n"; unknown keys are rejected):
  {
    "mode": "classify" | "bounds" | "search" | "diagnose" | "verify",
    "field": {
      "poly": [c0, c1, ...],                 # defining polynomial, constant first
      "root": {"re": ["lo","hi"], "im": ["lo","hi"]}   # isolates exactly one root
    },
    "elements": [["a0", ..., "a(d-1)"], ...], # coordinates in the generator
    "search":  {"max_degree": N, "emit_binomials": true, "parallel_width": N},
    "bounds":  {"d": N, "h_omega": "p/q", "h_tilde": "p/q"}      # direct form, or
               {"d": N, "nu": N, "h_alpha": "p/q"},              # single-element form
    "diagnose": {"check": "six_terms"|"subsum"|"pairing"|"ratio_partition"|"equal_modulus",
                 "m": N, "n": N, "m_prime": N, "n_prime": N, "A": [...], "B": [...]},
    "verify":  {"hits": [{"m": N, "n": N, "A": [...], "B": [...]}]},
    "eps": "p/q"                             # enclosure width target, default 1/2^53
  }
Output indices (classes, subsum positions) are 1-based. Exit codes: 0 ok,
1 input error, 2 internal soundness failure.)FOOTER");

    CommonOpts o;
    std::vector<std::pair<std::string, CLI::App*>> cmds;
    cmds.emplace_back("classify",
                      app.add_subcommand("classify", "partition the set into root-of-unity "
                                                     "equivalence classes"));
    cmds.emplace_back("bounds", app.add_subcommand("bounds", "evaluate the effective degree and "
                                                             "height bounds"));
    cmds.emplace_back("search", app.add_subcommand("search", "enumerate and certify all "
                                                             "trinomials up to the cap"));
    cmds.emplace_back("diagnose", app.add_subcommand("diagnose", "run a six-term/subsum/pairing "
                                                                 "instance check"));
    cmds.emplace_back("verify", app.add_subcommand("verify", "re-check previously emitted hits"));
    for (auto& [name, cmd] : cmds) add_common(cmd, o, name == "search");

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto& [name, cmd] : cmds)
            if (cmd->parsed()) return run_mode(name, o);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const trisieve::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal soundness failure: " << e.what() << "\n";
        return 2;
    }
}
