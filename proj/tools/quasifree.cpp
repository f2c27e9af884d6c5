// Command-line frontend: quasifree <classify|decompose|scaling|verify|eval> --spec FILE [...]

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "quasifree/quasifree.hpp"

namespace {

using namespace quasifree;

struct Options {
    std::string spec_path;
    std::string out_path;
    std::string dot_path;
    std::optional<std::size_t> truncation;
    std::optional<std::size_t> max_terms;
    std::optional<unsigned> precision_depth;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> x_set;
    std::optional<std::string> gamma0;
    std::optional<std::size_t> samples;
    std::string expression;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--spec", o.spec_path, "problem spec (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out_path, "write the JSON result here instead of stdout");
    cmd->add_option("--truncation", o.truncation, "word-length truncation for matrix-unit checks");
    cmd->add_option("--max-terms", o.max_terms, "term cap for expansions and enumerations");
    cmd->add_option("--precision-depth", o.precision_depth, "bisection depth for real comparisons");
    cmd->add_option("--seed", o.seed, "seed for randomized suites");
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::argument, "cli_frontend", "cannot open spec file", path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        fail(ErrorKind::argument, "cli_frontend", std::string("spec is not valid JSON: ") + e.what(), path);
    }
}

Json parse_flag_json(const std::string& text, const char* flag) {
    try {
        return Json::parse(text);
    } catch (const Json::exception&) {
        fail(ErrorKind::argument, "cli_frontend", std::string(flag) + " must be JSON (e.g. [[0]] or [1])", text);
    }
}

ProblemSpec load(const Options& o) {
    Json raw = read_json(o.spec_path);
    if (o.x_set) raw["x_set"] = parse_flag_json(*o.x_set, "--x-set");
    if (o.gamma0) raw["gamma0"] = parse_flag_json(*o.gamma0, "--gamma0");
    ProblemSpec spec = ProblemSpec::from_json(raw);
    if (o.truncation) spec.truncation = o.truncation;
    if (o.max_terms) spec.caps.max_terms = spec.caps.max_nodes = *o.max_terms;
    if (o.precision_depth) spec.limits.precision_depth = *o.precision_depth;
    if (o.seed) spec.seed = o.seed;
    return spec;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) fail(ErrorKind::argument, "cli_frontend", "cannot write output file", path);
    out << text;
}

Json error_json(const Error& e) {
    return Json{{"error", {{"kind", to_string(e.kind())}, {"module", e.module()}, {"query", e.query()}, {"message", e.what()}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crossed products of Cuntz algebras by quasi-free actions: classification and certificates"};
    app.require_subcommand(1);
    Options o;

    auto* classify_cmd = app.add_subcommand("classify", "classify the crossed product and emit certificates");
    add_common(classify_cmd, o);
    auto* decompose_cmd = app.add_subcommand("decompose", "build and verify the finite-dimensional decomposition");
    add_common(decompose_cmd, o);
    decompose_cmd->add_option("--dot", o.dot_path, "write a DOT diagram (one node per summand)");
    auto* scaling_cmd = app.add_subcommand("scaling", "construct and verify a scaling element");
    add_common(scaling_cmd, o);
    scaling_cmd->add_option("--x-set", o.x_set, "finite set X as JSON, e.g. [[0]]");
    scaling_cmd->add_option("--gamma0", o.gamma0, "point outside X as JSON, e.g. [1]");
    auto* verify_cmd = app.add_subcommand("verify", "run the randomized algebra property suite");
    add_common(verify_cmd, o);
    verify_cmd->add_option("--samples", o.samples, "random instances per property (default 100)");
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression to canonical form");
    add_common(eval_cmd, o);
    eval_cmd->add_option("expression", o.expression, "expression text (defaults to the spec's \"expression\")");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ProblemSpec spec = load(o);
        Json result;
        if (*classify_cmd) {
            result = cmd_classify(spec);
        } else if (*decompose_cmd) {
            auto out = cmd_decompose(spec);
            result = std::move(out.report);
            if (!o.dot_path.empty()) emit(o.dot_path, out.dot);
        } else if (*scaling_cmd) {
            result = cmd_scaling(spec);
        } else if (*verify_cmd) {
            result = cmd_verify(spec, o.samples.value_or(100));
        } else {
            std::string text = o.expression.empty() ? spec.expression.value_or("") : o.expression;
            if (text.empty()) fail(ErrorKind::argument, "cli_frontend", "eval needs an expression");
            result = cmd_eval(spec, text);
        }
        emit(o.out_path, result.dump(2) + "\n");
        if (*verify_cmd && !result.at("passed").get<bool>()) return 1;
        return 0;
    } catch (const Error& e) {
        std::cerr << error_json(e).dump(2) << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump(2) << "\n";
        return 1;
    }
}
