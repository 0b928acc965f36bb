#include "opschur/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "opschur/io.hpp"

namespace opschur::cli {

namespace {

using io::json;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << io::dump(j);
    else
        io::write_json_file(out_path, j);
}

struct Options {
    std::string input;
    std::string out;
    double tol = 1e-9;
    int trials = 1000;
    std::uint64_t seed = 0;
    std::string fill = "reject";
    int n = 0, k = 0;
};

int cmd_chordal(const Options& opt) {
    const pattern::Pattern p = io::pattern_from_json(io::load_json_file(opt.input));
    const pattern::ChordalityResult res = pattern::is_chordal(p);
    json j{{"chordal", res.chordal}};
    if (res.chordal) {
        j["order"] = res.order;
        std::cout << "chordal; elimination order:";
        for (int v : res.order) std::cout << ' ' << v;
        std::cout << '\n';
    } else {
        j["cycle"] = res.cycle;
        std::cout << "not chordal; chordless cycle:";
        for (int v : res.cycle) std::cout << ' ' << v;
        std::cout << '\n';
    }
    if (!opt.out.empty()) io::write_json_file(opt.out, j);
    return res.chordal ? kExitOk : kExitStructural;
}

int cmd_admissible(const Options& opt) {
    const auto phi = io::multiplier_from_json(io::load_json_file(opt.input));
    json j;
    bool admissible;
    if (pattern::is_chordal(phi.pattern()).chordal) {
        const multiplier::AdmissibilityResult res = multiplier::admissible_chordal(phi, opt.tol);
        admissible = res.admissible;
        j = {{"admissible", res.admissible}, {"method", "chordal-exact"}, {"conclusive", true}};
        if (!res.admissible) {
            j["clique"] = res.clique;
            j["min_eig"] = res.min_eig;
        }
    } else {
        const multiplier::SampledAdmissibility res =
            multiplier::admissible_sampled(phi, opt.trials, opt.seed, opt.tol);
        admissible = !res.violation_found;
        j = {{"admissible", !res.violation_found},
             {"method", "sampled"},
             {"conclusive", res.violation_found},
             {"trials", opt.trials}};
        if (res.violation_found) {
            j["kernel"] = io::to_json(res.kernel);
            j["min_eig"] = res.min_eig;
            j["trial"] = res.trial;
        } else {
            std::cerr << "warning: pattern is not chordal; no violation found in " << opt.trials
                      << " sampled kernels, which does not prove admissibility\n";
        }
    }
    std::cout << (admissible ? "admissible" : "not admissible") << '\n';
    emit(j, opt.out);
    return admissible ? kExitOk : kExitAdmissibility;
}

int cmd_complete(const Options& opt) {
    const auto phi = io::multiplier_from_json(io::load_json_file(opt.input));
    const bool chordal = pattern::is_chordal(phi.pattern()).chordal;
    completion::CompletionResult res = [&] {
        if (chordal) return completion::complete(phi, opt.tol);
        if (opt.fill != "auto") throw NotChordalError(pattern::is_chordal(phi.pattern()).cycle);
        std::cerr << "warning: pattern is not chordal; extending it via fill-in first. "
                     "This route is heuristic and may fail on extendable input.\n";
        return completion::complete_with_fill_in(phi, opt.tol);
    }();
    // modest verification defaults; the library call takes larger budgets
    const completion::ExtensionReport rep =
        completion::verify_extension(phi, res.psi, std::min(opt.trials, 16), 2, opt.seed, opt.tol);

    json j = io::to_json(res);
    j["verify"] = io::to_json(rep);
    std::cout << "completed; filled " << res.filled.size() << " pairs; min eigenvalue "
              << res.min_eig << '\n';
    emit(j, opt.out);
    return kExitOk;
}

int cmd_factorize(const Options& opt) {
    const auto phi = io::multiplier_from_json(io::load_json_file(opt.input));
    if (!phi.pattern().is_full()) {
        std::cerr << "factorize needs a fully defined multiplier; run 'complete' first\n";
        return kExitUsage;
    }
    const multiplier::BlockMultiplier full(phi);
    const factorization::TwoSidedFactorization f = factorization::factorize(full, opt.tol);
    const double lower =
        factorization::cb_norm_lower_sampled(full, std::min(opt.trials, 200), opt.seed);
    std::cout << "m = " << f.m << ", row bound " << f.row_bound << ", column bound "
              << f.col_bound << ", cb norm in [" << lower << ", "
              << factorization::cb_norm_upper(f) << "]"
              << (f.symmetric ? ", symmetric (B_i = A_i*)" : "") << '\n';
    json j = io::to_json(f);
    j["cb_norm_lower_sampled"] = lower;
    emit(j, opt.out);
    return kExitOk;
}

int cmd_apply(const Options& opt) {
    const json in = io::load_json_file(opt.input);
    if (!in.contains("multiplier") || !in.contains("kernel"))
        throw Error("apply input needs 'multiplier' and 'kernel' fields");
    const auto phi = io::multiplier_from_json(in["multiplier"]);
    if (!phi.pattern().is_full()) {
        std::cerr << "apply needs a fully defined multiplier; run 'complete' first\n";
        return kExitUsage;
    }
    const multiplier::ScalarKernel k = io::kernel_from_json(in["kernel"]);
    const linalg::ComplexMatrix image = schur_apply(multiplier::BlockMultiplier(phi), k);
    emit(io::to_json(image), opt.out);
    return kExitOk;
}

int cmd_verify_pmn(const Options& opt) {
    if (opt.n < 1 || opt.k < 1 || opt.n * opt.k > 64) {
        std::cerr << "verify-pmn requires 1 <= n*k <= 64\n";
        return kExitInput;
    }
    const cones::ConeEquivalenceReport rep =
        cones::verify_cone_equivalence(opt.n, opt.k, opt.trials, opt.seed);
    std::cout << rep.trials << " trials, " << rep.breaches << " breaches, max reconstruction error "
              << rep.max_err << '\n';
    emit(io::to_json(rep), opt.out);
    return rep.breaches == 0 ? kExitOk : kExitStructural;
}

int cmd_counterexample(const Options& opt) {
    const completion::C4Demonstration demo = completion::counterexample_c4();
    std::cout << "grid max of min eigenvalue " << demo.grid_max_min_eig << " over "
              << demo.grid_points << " points; epsilon " << demo.epsilon << '\n';
    emit(io::to_json(demo), opt.out);
    return demo.epsilon > 0.0 ? kExitOk : kExitStructural;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"positive completion and factorization of operator-valued Schur multipliers"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool with_input) {
        if (with_input) sub->add_option("input", opt.input, "input JSON file")->required();
        sub->add_option("--out", opt.out, "write the JSON report to this file");
        sub->add_option("--tol", opt.tol, "relative tolerance")->check(CLI::NonNegativeNumber);
        sub->add_option("--trials", opt.trials, "sampling trials")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "random seed");
    };

    CLI::App* chordal = app.add_subcommand("chordal", "chordality of a pattern");
    add_common(chordal, true);
    CLI::App* admissible = app.add_subcommand("admissible", "admissibility of a partial multiplier");
    add_common(admissible, true);
    CLI::App* complete = app.add_subcommand("complete", "positive completion on a chordal pattern");
    add_common(complete, true);
    complete->add_option("--fill", opt.fill, "non-chordal handling: reject or auto")
        ->check(CLI::IsMember({"reject", "auto"}));
    CLI::App* factorize = app.add_subcommand("factorize", "two-sided factorization with cb bounds");
    add_common(factorize, true);
    CLI::App* apply = app.add_subcommand("apply", "Schur action on a scalar kernel");
    add_common(apply, true);
    CLI::App* verify = app.add_subcommand("verify-pmn", "cone equivalence check over M_k");
    verify->add_option("n", opt.n, "outer size")->required();
    verify->add_option("k", opt.k, "inner size")->required();
    add_common(verify, false);
    CLI::App* counter = app.add_subcommand("counterexample", "4-cycle non-completability record");
    add_common(counter, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    // failure reports still land in --out so pipelines can read the reason
    auto emit_failure = [&](json j) {
        if (!opt.out.empty()) io::write_json_file(opt.out, j);
    };

    try {
        if (chordal->parsed()) return cmd_chordal(opt);
        if (admissible->parsed()) return cmd_admissible(opt);
        if (complete->parsed()) return cmd_complete(opt);
        if (factorize->parsed()) return cmd_factorize(opt);
        if (apply->parsed()) return cmd_apply(opt);
        if (verify->parsed()) return cmd_verify_pmn(opt);
        if (counter->parsed()) return cmd_counterexample(opt);
    } catch (const NotChordalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        emit_failure({{"error", "not_chordal"}, {"cycle", e.cycle}});
        return kExitStructural;
    } catch (const NotAdmissible& e) {
        std::cerr << "error: " << e.what() << " clique:";
        for (int v : e.clique) std::cerr << ' ' << v;
        std::cerr << '\n';
        emit_failure(
            {{"error", "not_admissible"}, {"clique", e.clique}, {"min_eig", e.min_eig}});
        return kExitAdmissibility;
    } catch (const CompletionFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        emit_failure({{"error", "completion_failure"}, {"min_eig", e.min_eig}});
        return kExitAdmissibility;
    } catch (const UnspecifiedEntry& e) {
        std::cerr << "error: " << e.what() << "; run 'complete' first\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitUsage;
}

}  // namespace opschur::cli
