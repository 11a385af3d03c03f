#include "taylorlab/lab.hpp"
#include "taylorlab/serialize.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace taylorlab;

struct CommonOptions {
    std::string function = "exp";
    double x0 = 0.0;
    std::string x0_text = "0";
    std::string epsilon_text = "1";
    int degree = 0;
    std::string method = "normal";
    std::string mode = "float";
    std::string output;  // empty = stdout
    std::string format;  // command default when empty
};

void validate_mode(const CommonOptions& opt) {
    if (opt.mode != "float" && opt.mode != "rational") {
        throw CLI::ValidationError("--mode must be float or rational");
    }
    if (opt.mode == "rational" && opt.function.rfind("poly:", 0) != 0) {
        throw CLI::ValidationError(
            "rational mode requires an exact polynomial function (poly:<c0,c1,...>)");
    }
}

void validate_format(const CommonOptions& opt, const std::string& expected) {
    if (!opt.format.empty() && opt.format != expected) {
        throw CLI::ValidationError("this command emits " + expected + " only");
    }
}

Rational parse_rational_or_fail(const std::string& text, const std::string& flag) {
    auto value = parse_rational(text);
    if (!value) {
        throw CLI::ValidationError(flag + ": cannot parse '" + text + "' as a rational");
    }
    return *value;
}

double parse_double_or_fail(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag + ": cannot parse '" + text + "' as a number");
    }
}

SweepMethod parse_sweep_method(const std::string& name) {
    if (name == "normal") return SweepMethod::normal_equations;
    if (name == "legendre") return SweepMethod::legendre_projection;
    if (name == "remez") return SweepMethod::remez;
    throw CLI::ValidationError("--method must be normal, legendre, or remez");
}

int run_approx(const CommonOptions& opt) {
    validate_format(opt, "json");
    validate_mode(opt);
    if (opt.mode == "rational") {
        FunctionSpec f = registry_lookup(opt.function);
        Rational eps = parse_rational_or_fail(opt.epsilon_text, "--epsilon");
        Rational x0 = parse_rational_or_fail(opt.x0_text, "--x0");
        ExactApprox result = solve_normal_exact(*f.exact_poly(), x0, eps, opt.degree);
        Polynomial taylor = taylor_truncation_exact(*f.exact_poly(), x0, opt.degree);
        write_output(opt.output, exact_approx_to_json(result, taylor, eps).dump(2) + "\n");
        return 0;
    }
    FunctionSpec f = registry_lookup(opt.function);
    double eps = parse_double_or_fail(opt.epsilon_text, "--epsilon");
    ApproxResult result = opt.method == "legendre"
                              ? solve_legendre(f, opt.x0, eps, opt.degree)
                              : solve_normal(f, opt.x0, eps, opt.degree);
    Polynomial taylor = taylor_truncation(f, opt.x0, opt.degree);
    write_output(opt.output, approx_to_json(result, taylor).dump(2) + "\n");
    return 0;
}

std::string sweep_exact_csv(const Polynomial& f_poly, const Rational& x0, int k,
                            const std::vector<double>& grid) {
    Polynomial taylor = taylor_truncation_exact(f_poly, x0, k);
    std::ostringstream out;
    out << "epsilon,i,a_i,taylor_i,abs_err,bound,method,status\n";
    for (double eps_d : grid) {
        Rational eps(eps_d);  // exact binary-to-rational conversion
        ExactApprox solved = solve_normal_exact(f_poly, x0, eps, k);
        for (int i = 0; i <= k; ++i) {
            Rational err = rational_abs(solved.poly.coeff(i).rat() - taylor.coeff(i).rat());
            out << shortest_double_string(eps_d) << ',' << i << ','
                << solved.poly.coeff(i).str() << ',' << taylor.coeff(i).str() << ','
                << rational_to_string(err) << ",0,normal_equations,ok\n";
        }
    }
    for (int i = 0; i <= k; ++i) {
        out << "slope_" << i << ',' << i
            << ",,,,,normal_equations,fit refused: all errors exactly zero\n";
    }
    return out.str();
}

int run_sweep(const CommonOptions& opt, double eps_max, double eps_min, int steps) {
    validate_format(opt, "csv");
    validate_mode(opt);
    FunctionSpec f = registry_lookup(opt.function);
    if (opt.mode == "rational") {
        Rational x0 = parse_rational_or_fail(opt.x0_text, "--x0");
        auto grid = log_spaced_grid(eps_max, eps_min, steps);
        write_output(opt.output, sweep_exact_csv(*f.exact_poly(), x0, opt.degree, grid));
        return 0;
    }
    auto records = sweep(f, opt.x0, opt.degree, eps_max, eps_min, steps,
                         parse_sweep_method(opt.method));
    auto fits = fit_slopes(records);
    write_output(opt.output, sweep_to_csv(records, fits));
    for (const auto& rec : records) {
        if (rec.failed) return 1;
    }
    return 0;
}

int run_remez(const CommonOptions& opt) {
    validate_format(opt, "json");
    FunctionSpec f = registry_lookup(opt.function);
    double eps = parse_double_or_fail(opt.epsilon_text, "--epsilon");
    RemezResult result = solve_remez(f, opt.x0, eps, opt.degree);
    write_output(opt.output, remez_to_json(result, eps).dump(2) + "\n");
    if (!result.converged) {
        std::cerr << "remez: no convergence after " << result.iterations
                  << " iterations; payload holds the last iterate\n";
        return 1;
    }
    return 0;
}

int run_duel(const CommonOptions& opt, const std::string& challenger_text,
             const std::string& norm_name, double eps_max, double eps_min, int steps) {
    validate_format(opt, "csv");
    FunctionSpec f = registry_lookup(opt.function);
    std::vector<Scalar> coeffs;
    std::stringstream stream(challenger_text);
    std::string piece;
    while (std::getline(stream, piece, ',')) {
        coeffs.emplace_back(parse_double_or_fail(piece, "--challenger"));
    }
    if (coeffs.empty()) throw CLI::ValidationError("--challenger: empty coefficient list");
    Polynomial challenger(Scalar(opt.x0), std::move(coeffs));
    ErrorNorm norm = ErrorNorm::l2;
    if (norm_name == "linf") {
        norm = ErrorNorm::linf;
    } else if (norm_name != "l2") {
        throw CLI::ValidationError("--norm must be l2 or linf");
    }
    auto grid = log_spaced_grid(eps_max, eps_min, steps);
    DuelReport report = duel(f, opt.x0, opt.degree, challenger, grid, norm);
    write_output(opt.output, duel_to_csv(report));
    return 0;
}

int run_matrix(const std::string& action, int degree,
               const std::vector<std::string>& eps_texts, const std::string& mode,
               const std::string& output, const std::string& format) {
    if (!format.empty() && format != "json") {
        throw CLI::ValidationError("matrix commands emit json only");
    }
    auto parse_eps = [&](const std::string& text) {
        if (mode == "float") {
            return Scalar(parse_double_or_fail(text, "--epsilon"));
        }
        return Scalar(parse_rational_or_fail(text, "--epsilon"));
    };
    if (action == "det") {
        Scalar eps = parse_eps(eps_texts.empty() ? "1" : eps_texts.front());
        write_output(output, matrix_det_report(degree, eps).dump(2) + "\n");
        return 0;
    }
    if (action == "blocks") {
        write_output(output, matrix_blocks_report(degree).dump(2) + "\n");
        return 0;
    }
    if (action == "inverse") {
        std::vector<Scalar> eps_list;
        if (eps_texts.empty()) {
            eps_list = {Scalar(Rational(1, 2)), Scalar(Rational(1)), Scalar(Rational(3))};
            if (mode == "float") eps_list = {Scalar(0.5), Scalar(1.0), Scalar(3.0)};
        } else {
            for (const auto& text : eps_texts) eps_list.push_back(parse_eps(text));
        }
        write_output(output, matrix_inverse_report(degree, eps_list).dump(2) + "\n");
        return 0;
    }
    throw CLI::ValidationError("matrix action must be det, blocks, or inverse");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local polynomial approximation laboratory"};
    app.require_subcommand(1);

    CommonOptions opt;
    double eps_max = 0.1, eps_min = 1e-3;
    int steps = 10;
    std::string challenger_text;
    std::string norm_name = "l2";
    std::vector<std::string> matrix_eps;
    std::string matrix_mode = "rational";

    auto add_common = [&](CLI::App* cmd, bool with_function) {
        if (with_function) {
            cmd->add_option("--function", opt.function,
                            "registry name (exp, sin, cos, log1p, atan, runge, poly:<...>)");
            cmd->add_option("--x0", opt.x0_text, "expansion point (default 0)");
        }
        cmd->add_option("--degree", opt.degree, "polynomial degree bound k")->required();
        cmd->add_option("--mode", opt.mode, "float | rational");
        cmd->add_option("--output", opt.output, "output path (default stdout)");
        cmd->add_option("--format", opt.format, "csv | json (command default)");
    };

    auto* approx = app.add_subcommand("approx", "best L2 polynomial for one interval");
    add_common(approx, true);
    approx->add_option("--epsilon", opt.epsilon_text, "interval half-width")->required();
    approx->add_option("--method", opt.method, "normal | legendre");

    auto* sweep_cmd = app.add_subcommand("sweep", "coefficient errors over an eps grid");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--eps-max", eps_max, "largest eps (default 0.1)");
    sweep_cmd->add_option("--eps-min", eps_min, "smallest eps (default 1e-3)");
    sweep_cmd->add_option("--steps", steps, "grid size (default 10)");
    sweep_cmd->add_option("--method", opt.method, "normal | legendre | remez");

    auto* matrix_cmd = app.add_subcommand("matrix", "structured-matrix reports");
    matrix_cmd->require_subcommand(1);
    int matrix_degree = 0;
    std::string matrix_output, matrix_format;
    for (const char* action : {"det", "blocks", "inverse"}) {
        auto* sub = matrix_cmd->add_subcommand(action);
        sub->add_option("--degree", matrix_degree, "degree k")->required();
        sub->add_option("--epsilon", matrix_eps, "interval half-width (repeatable)");
        sub->add_option("--mode", matrix_mode, "rational (default) | float");
        sub->add_option("--output", matrix_output, "output path (default stdout)");
        sub->add_option("--format", matrix_format, "json");
    }

    auto* remez_cmd = app.add_subcommand("remez", "best uniform polynomial");
    add_common(remez_cmd, true);
    remez_cmd->add_option("--epsilon", opt.epsilon_text, "interval half-width")->required();

    auto* duel_cmd = app.add_subcommand("duel",
                                        "series truncation vs a challenger polynomial");
    add_common(duel_cmd, true);
    duel_cmd->add_option("--challenger", challenger_text, "c0,c1,... about x0")->required();
    duel_cmd->add_option("--eps-max", eps_max, "largest eps (default 0.1)");
    duel_cmd->add_option("--eps-min", eps_min, "smallest eps (default 1e-3)");
    duel_cmd->add_option("--steps", steps, "grid size (default 10)");
    duel_cmd->add_option("--norm", norm_name, "l2 | linf");

    CLI11_PARSE(app, argc, argv);

    try {
        // "--x0" accepts both decimal and p/q text; float paths use the
        // double view, exact paths re-read the text as a rational.
        opt.x0 = opt.x0_text.empty()
                     ? 0.0
                     : rational_to_double(parse_rational_or_fail(opt.x0_text, "--x0"));
        if (approx->parsed()) return run_approx(opt);
        if (sweep_cmd->parsed()) return run_sweep(opt, eps_max, eps_min, steps);
        if (remez_cmd->parsed()) return run_remez(opt);
        if (duel_cmd->parsed()) {
            return run_duel(opt, challenger_text, norm_name, eps_max, eps_min, steps);
        }
        if (matrix_cmd->parsed()) {
            for (auto* sub : matrix_cmd->get_subcommands()) {
                return run_matrix(sub->get_name(), matrix_degree, matrix_eps, matrix_mode,
                                  matrix_output, matrix_format);
            }
        }
    } catch (const CLI::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    std::cerr << "error: no command\n";
    return 1;
}
