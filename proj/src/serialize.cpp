#include "taylorlab/serialize.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace taylorlab {

namespace {

nlohmann::json scalar_json(const Scalar& value) {
    if (value.is_exact()) return value.str();
    return value.dbl();
}

nlohmann::json coeff_array(const Polynomial& poly) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : poly.coeffs()) out.push_back(scalar_json(c));
    return out;
}

std::string csv_number(double value) { return shortest_double_string(value); }

}  // namespace

nlohmann::json approx_to_json(const ApproxResult& result, const Polynomial& taylor) {
    nlohmann::json out;
    out["center"] = result.poly.center().to_double();
    out["epsilon"] = result.epsilon;
    out["method"] = method_name(result.method);
    out["coefficients"] = coeff_array(result.poly);
    out["residual_l2"] = result.residual_l2;
    out["taylor"] = coeff_array(taylor);
    nlohmann::json errors = nlohmann::json::array();
    for (int i = 0; i <= result.poly.degree_bound(); ++i) {
        errors.push_back(std::abs(result.poly.coeff(i).to_double() -
                                  taylor.coeff(i).to_double()));
    }
    out["coef_errors"] = errors;
    return out;
}

nlohmann::json exact_approx_to_json(const ExactApprox& result, const Polynomial& taylor,
                                    const Rational& eps) {
    nlohmann::json out;
    out["center"] = result.poly.center().str();
    out["epsilon"] = rational_to_string(eps);
    out["method"] = "normal_equations";
    out["coefficients"] = coeff_array(result.poly);
    out["residual_l2"] = std::sqrt(rational_to_double(result.residual_sq));
    out["taylor"] = coeff_array(taylor);
    nlohmann::json errors = nlohmann::json::array();
    for (int i = 0; i <= result.poly.degree_bound(); ++i) {
        errors.push_back(rational_to_string(
            rational_abs(result.poly.coeff(i).rat() - taylor.coeff(i).rat())));
    }
    out["coef_errors"] = errors;
    return out;
}

nlohmann::json remez_to_json(const RemezResult& result, double eps) {
    nlohmann::json out;
    out["center"] = result.poly.center().to_double();
    out["epsilon"] = eps;
    out["coefficients"] = coeff_array(result.poly);
    out["max_error"] = result.max_error;
    out["alternation_points"] = result.alternation_points;
    out["alternation_residuals"] = result.alternation_residuals;
    out["iterations"] = result.iterations;
    out["converged"] = result.converged;
    return out;
}

nlohmann::json matrix_det_report(int k, const Scalar& eps) {
    Scalar direct = det_direct(k, eps);
    Scalar factorized = det_via_factorization(k, eps);

    // Third route: the block determinants, carried back through the
    // factorization prefactor.
    auto blocks = block_decompose(k);
    Scalar det_b{0.0}, det_c{0.0}, product{0.0};
    if (eps.is_exact()) {
        Rational db = det_bareiss(blocks.b_block);
        Rational dc = det_bareiss(blocks.c_block);
        Rational pre = rational_pow(Rational(2), k + 1) *
                       rational_pow(eps.rat(), static_cast<long>(k + 1) * (k + 1));
        det_b = Scalar(db);
        det_c = Scalar(dc);
        product = Scalar(pre * db * dc);
    } else {
        double db = rational_to_double(det_bareiss(blocks.b_block));
        double dc = rational_to_double(det_bareiss(blocks.c_block));
        double pre = std::pow(2.0, k + 1) *
                     std::pow(eps.dbl(), static_cast<double>(k + 1) * (k + 1));
        det_b = Scalar(db);
        det_c = Scalar(dc);
        product = Scalar(pre * db * dc);
    }

    bool agree;
    if (eps.is_exact()) {
        agree = direct == factorized && factorized == product;
    } else {
        double scale = std::max({1e-300, std::abs(direct.dbl())});
        agree = std::abs(direct.dbl() - factorized.dbl()) < 1e-10 * scale &&
                std::abs(direct.dbl() - product.dbl()) < 1e-10 * scale;
    }

    nlohmann::json out;
    out["degree"] = k;
    out["epsilon"] = eps.str();
    out["det_direct"] = scalar_json(direct);
    out["det_factorized"] = scalar_json(factorized);
    out["det_blocks"] = scalar_json(product);
    out["agree"] = agree;
    return out;
}

nlohmann::json matrix_blocks_report(int k) {
    auto blocks = block_decompose(k);
    nlohmann::json out;
    out["degree"] = k;
    out["u"] = blocks.shape.u;
    out["v"] = blocks.shape.v;
    out["permutation"] = blocks.shape.permutation;

    auto emit = [](const Mat<Rational>& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) {
                row.push_back(rational_to_string(m(i, j)));
            }
            rows.push_back(row);
        }
        return rows;
    };
    out["b_block"] = emit(blocks.b_block);
    out["c_block"] = emit(blocks.c_block);

    Rational det_b = det_bareiss(blocks.b_block);
    Rational det_c = det_bareiss(blocks.c_block);
    Rational det_normalized =
        det_bareiss(normalize(build_moment(k, Scalar(Rational(1)))).exact_entries());
    out["det_b"] = rational_to_string(det_b);
    out["det_c"] = rational_to_string(det_c);
    out["det_normalized"] = rational_to_string(det_normalized);
    out["det_product_check"] = det_b * det_c == det_normalized;
    return out;
}

nlohmann::json matrix_inverse_report(int k, const std::vector<Scalar>& eps_list) {
    InverseStructure inv = inverse_structure(k, eps_list);
    nlohmann::json out;
    out["degree"] = k;
    nlohmann::json eps_json = nlohmann::json::array();
    for (const auto& e : eps_list) eps_json.push_back(e.str());
    out["epsilons"] = eps_json;
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r <= k; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int s = 0; s <= k; ++s) {
            row.push_back(scalar_json(inv.alpha(static_cast<std::size_t>(r),
                                                static_cast<std::size_t>(s))));
        }
        rows.push_back(row);
    }
    out["alpha"] = rows;
    out["parity_zeros"] = inv.parity_zeros;
    out["cross_epsilon_agree"] = inv.cross_epsilon_agree;
    return out;
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records,
                         const std::vector<SlopeFit>& fits) {
    std::ostringstream out;
    out << "epsilon,i,a_i,taylor_i,abs_err,bound,method,status\n";
    for (const auto& rec : records) {
        if (rec.failed) {
            out << csv_number(rec.epsilon) << ",,,,,," << rec.method << ",failed: "
                << rec.failure << "\n";
            continue;
        }
        for (std::size_t i = 0; i < rec.coefficients.size(); ++i) {
            out << csv_number(rec.epsilon) << ',' << i << ','
                << csv_number(rec.coefficients[i]) << ',' << csv_number(rec.taylor[i])
                << ',' << csv_number(rec.coef_errors[i]) << ','
                << csv_number(rec.bounds[i]) << ',' << rec.method << ",ok\n";
        }
    }
    for (const auto& fit : fits) {
        out << "slope_" << fit.index << ',' << fit.index << ',';
        if (fit.fitted) {
            out << csv_number(fit.slope) << ',' << csv_number(fit.r_squared) << ",,,"
                << (records.empty() ? "" : records.front().method) << ",ok\n";
        } else {
            out << ",,,," << (records.empty() ? "" : records.front().method) << ','
                << fit.note << "\n";
        }
    }
    return out.str();
}

std::string duel_to_csv(const DuelReport& report) {
    std::ostringstream out;
    out << "epsilon,err_taylor,err_challenger,winner\n";
    for (const auto& row : report.grid) {
        out << csv_number(row.epsilon) << ',' << csv_number(row.err_taylor) << ','
            << csv_number(row.err_challenger) << ','
            << (row.err_taylor < row.err_challenger ? "taylor" : "challenger") << "\n";
    }
    out << "threshold=";
    if (report.threshold) {
        out << csv_number(*report.threshold);
    } else {
        out << "none";
    }
    out << "\n";
    return out.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path temp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open output file " + temp.string());
        }
        out << content;
    }
    fs::rename(temp, target);
}

}  // namespace taylorlab
