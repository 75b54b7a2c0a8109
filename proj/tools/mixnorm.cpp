#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixnorm/exponents.hpp"
#include "mixnorm/extremal.hpp"
#include "mixnorm/lab.hpp"
#include "mixnorm/mixed_norm.hpp"
#include "mixnorm/norms.hpp"
#include "mixnorm/schemes.hpp"
#include "mixnorm/specfun.hpp"
#include "mixnorm/tensor_io.hpp"
#include "mixnorm/version.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

double parse_exponent(const std::string& text) {
    if (text == "inf")
        return mixnorm::infinite_exponent;
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number or 'inf': " + text);
    }
    if (consumed != text.size())
        throw std::invalid_argument("not a number or 'inf': " + text);
    return value;
}

ordered_json exponent_json(double p) {
    if (mixnorm::is_infinite_exponent(p))
        return "inf";
    return p;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::vector<double> parse_exponent_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : split_csv(text))
        out.push_back(parse_exponent(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const std::string& item : split_csv(text)) {
        std::size_t consumed = 0;
        int value = 0;
        try {
            value = std::stoi(item, &consumed);
        } catch (const std::exception&) {
            throw std::invalid_argument("not an integer: " + item);
        }
        if (consumed != item.size())
            throw std::invalid_argument("not an integer: " + item);
        out.push_back(value);
    }
    return out;
}

int workers_from_env() {
    const char* raw = std::getenv("MIXNORM_WORKERS");
    if (raw == nullptr || *raw == '\0')
        return 1;
    std::size_t consumed = 0;
    int value = 0;
    try {
        value = std::stoi(raw, &consumed);
    } catch (const std::exception&) {
        value = 0;
    }
    if (consumed != std::string(raw).size() || value < 1)
        throw std::invalid_argument("MIXNORM_WORKERS must be a positive integer");
    return value;
}

void emit_envelope(const std::string& command, ordered_json parameters,
                   ordered_json results, std::uint64_t seed) {
    ordered_json envelope;
    envelope["command"] = command;
    envelope["parameters"] = std::move(parameters);
    envelope["results"] = std::move(results);
    envelope["tool_version"] = mixnorm::tool_version;
    envelope["seed"] = seed;
    std::cout << envelope.dump(2) << "\n";
}

std::string format_sig17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_gap_csv(const std::string& path, const std::vector<mixnorm::lab::GapRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open CSV output: " + path);
    out << "x,upper,lower,diff\n";
    for (const auto& row : rows)
        out << format_sig17(row.x) << ',' << format_sig17(row.upper) << ','
            << format_sig17(row.lower) << ',' << format_sig17(row.diff) << '\n';
}

// Standalone SVG with the two bound curves over [2, p0/(p0-1)] plus plain
// axes; no external assets.
void write_gap_svg(const std::string& path, const std::vector<mixnorm::lab::GapRow>& rows) {
    constexpr double width = 800.0, height = 500.0, margin = 60.0;
    double y_min = rows.front().lower, y_max = rows.front().upper;
    for (const auto& row : rows) {
        y_min = std::min(y_min, row.lower);
        y_max = std::max(y_max, row.upper);
    }
    const double y_pad = std::max((y_max - y_min) * 0.05, 1e-6);
    y_min -= y_pad;
    y_max += y_pad;
    const double x_min = rows.front().x, x_max = rows.back().x;

    auto sx = [&](double x) {
        return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
    };
    auto sy = [&](double y) {
        return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
    };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };
    auto polyline = [&](auto select) {
        std::string pts;
        for (const auto& row : rows) {
            pts += fmt(sx(row.x));
            pts += ',';
            pts += fmt(sy(select(row)));
            pts += ' ';
        }
        if (!pts.empty())
            pts.pop_back();
        return pts;
    };

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open SVG output: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    out << "  <rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
        << width - margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << margin << "\" y=\"" << height - margin + 20
        << "\" font-size=\"12\">" << fmt(x_min) << "</text>\n";
    out << "  <text x=\"" << width - margin - 30 << "\" y=\"" << height - margin + 20
        << "\" font-size=\"12\">" << fmt(x_max) << "</text>\n";
    out << "  <text x=\"" << 5 << "\" y=\"" << height - margin << "\" font-size=\"12\">"
        << fmt(y_min) << "</text>\n";
    out << "  <text x=\"" << 5 << "\" y=\"" << margin << "\" font-size=\"12\">"
        << fmt(y_max) << "</text>\n";
    out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\""
        << polyline([](const auto& r) { return r.upper; }) << "\"/>\n";
    out << "  <polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\""
        << polyline([](const auto& r) { return r.lower; }) << "\"/>\n";
    out << "</svg>\n";
}

const char* kind_name(mixnorm::norms::CertificateKind kind) {
    return kind == mixnorm::norms::CertificateKind::Exact ? "exact" : "lower-bound";
}

ordered_json certificate_json(const mixnorm::norms::NormCertificate& cert) {
    ordered_json out;
    out["value"] = cert.value;
    out["kind"] = kind_name(cert.kind);
    out["evaluations"] = cert.evaluations;
    out["witnesses"] = cert.witnesses;
    return out;
}

const char* violation_name(mixnorm::forms::AdmissibilityViolation v) {
    using mixnorm::forms::AdmissibilityViolation;
    switch (v) {
        case AdmissibilityViolation::None: return "none";
        case AdmissibilityViolation::ExponentReciprocalSum: return "p-reciprocal-sum";
        case AdmissibilityViolation::OuterExponentRange: return "outer-exponent-range";
        case AdmissibilityViolation::ExponentSumBound: return "exponent-sum-bound";
    }
    return "unknown";
}

const char* regime_name(mixnorm::lab::ConstantRegime regime) {
    using mixnorm::lab::ConstantRegime;
    switch (regime) {
        case ConstantRegime::OptimalKnown: return "optimal-known";
        case ConstantRegime::GapRegime: return "gap-regime";
        case ConstantRegime::Trivial: return "trivial";
    }
    return "unknown";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed-norm inequality laboratory for multilinear forms"};
    app.set_version_flag("--version", mixnorm::tool_version);
    app.require_subcommand(1);

    auto* cmd_p0 = app.add_subcommand("p0", "Critical Khinchine root and its conjugate");

    auto* cmd_khinchine =
        app.add_subcommand("khinchine", "Sharp lower Khinchine constant A_q");
    std::string khinchine_q;
    cmd_khinchine->add_option("--q", khinchine_q, "exponent in [1, 2]")->required();

    auto* cmd_build = app.add_subcommand("build-form", "Write the extremal m-linear form");
    int build_m = 0;
    std::string build_out;
    cmd_build->add_option("--m", build_m, "arity (2..12)")->required();
    cmd_build->add_option("--out", build_out, "output tensor JSON path")->required();

    auto* cmd_norm = app.add_subcommand("norm", "Operator norm on l_p x c0 x ... x c0");
    std::string norm_form, norm_p;
    bool norm_exact = false, norm_ascent = false;
    std::uint64_t norm_budget = std::uint64_t{1} << 26;
    int norm_workers = 0;
    std::uint64_t norm_seed = 0;
    int norm_restarts = 8, norm_max_iters = 200;
    double norm_tol = 1e-10;
    cmd_norm->add_option("--form", norm_form, "tensor JSON path")->required();
    cmd_norm->add_option("--p", norm_p, "first-slot exponent (>= 2 or 'inf')")->required();
    cmd_norm->add_flag("--exact", norm_exact, "force the exact sign-enumeration engine");
    cmd_norm->add_flag("--ascent", norm_ascent, "force the alternating-ascent lower bound");
    cmd_norm->add_option("--budget", norm_budget, "max sign configurations for --exact");
    auto* norm_workers_opt =
        cmd_norm->add_option("--workers", norm_workers, "exact-engine worker threads");
    cmd_norm->add_option("--seed", norm_seed, "seed for ascent restarts");
    cmd_norm->add_option("--restarts", norm_restarts, "ascent restarts");
    cmd_norm->add_option("--max-iters", norm_max_iters, "ascent iteration cap per restart");
    cmd_norm->add_option("--tol", norm_tol, "ascent relative-improvement stop");

    auto* cmd_mixed = app.add_subcommand("mixed-norm", "Blocked mixed norm of a form");
    std::string mixed_form, mixed_partition, mixed_exponents;
    cmd_mixed->add_option("--form", mixed_form, "tensor JSON path")->required();
    cmd_mixed->add_option("--partition", mixed_partition, "block sizes n1,...,nk")->required();
    cmd_mixed->add_option("--exponents", mixed_exponents, "outer exponents q1,...,qk")
        ->required();

    auto* cmd_ratio = app.add_subcommand("ratio", "Extremal mixed-norm/norm ratio");
    int ratio_m = 0;
    std::string ratio_p;
    int ratio_workers = 0;
    std::uint64_t ratio_budget = std::uint64_t{1} << 26;
    cmd_ratio->add_option("--m", ratio_m, "arity (2..12)")->required();
    cmd_ratio->add_option("--p", ratio_p, "exponent (>= 2 or 'inf')")->required();
    auto* ratio_workers_opt =
        cmd_ratio->add_option("--workers", ratio_workers, "exact-engine worker threads");
    cmd_ratio->add_option("--budget", ratio_budget, "max sign configurations");

    auto* cmd_report = app.add_subcommand("report", "Constant bounds report for (m, p)");
    int report_m = 0;
    std::string report_p;
    int report_workers = 0;
    std::uint64_t report_budget = std::uint64_t{1} << 26;
    cmd_report->add_option("--m", report_m, "arity (2..12)")->required();
    cmd_report->add_option("--p", report_p, "exponent (>= 2 or 'inf')")->required();
    auto* report_workers_opt =
        cmd_report->add_option("--workers", report_workers, "exact-engine worker threads");
    cmd_report->add_option("--budget", report_budget, "max sign configurations");

    auto* cmd_sandwich = app.add_subcommand("sandwich", "Bilinear constant bounds on l_p x c0");
    std::string sandwich_p;
    cmd_sandwich->add_option("--p", sandwich_p, "exponent (>= p0/(p0-1) or 'inf')")->required();

    auto* cmd_gap = app.add_subcommand("gap-curve", "Upper/lower base gap table");
    int gap_samples = 0;
    std::string gap_csv, gap_svg;
    cmd_gap->add_option("--samples", gap_samples, "grid size (>= 2)")->required();
    cmd_gap->add_option("--csv", gap_csv, "CSV output path")->required();
    cmd_gap->add_option("--svg", gap_svg, "optional SVG plot path");

    auto* cmd_admissible = app.add_subcommand("admissible", "Blocked-scheme admissibility");
    std::string adm_plist, adm_partition, adm_exponents;
    cmd_admissible->add_option("--p-list", adm_plist, "slot exponents p1,...,pm")->required();
    cmd_admissible->add_option("--partition", adm_partition, "block sizes n1,...,nk")
        ->required();
    cmd_admissible->add_option("--exponents", adm_exponents, "outer exponents q1,...,qk")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_p0)) {
            const double p0 = mixnorm::specfun::find_p0(1e-10);
            const double residual =
                mixnorm::specfun::gamma((p0 + 1.0) / 2.0) - std::sqrt(std::numbers::pi) / 2.0;
            ordered_json results;
            results["p0"] = p0;
            results["critical_p"] = mixnorm::specfun::critical_p();
            results["residual"] = residual;
            emit_envelope("p0", ordered_json::object(), results, 0);
        } else if (app.got_subcommand(cmd_khinchine)) {
            const double q = parse_exponent(khinchine_q);
            const auto regime = mixnorm::specfun::khinchine_regime(q);
            ordered_json parameters;
            parameters["q"] = exponent_json(q);
            ordered_json results;
            results["A"] = mixnorm::specfun::khinchine_A(q);
            results["regime"] = regime.regime == mixnorm::specfun::Regime::ClosedPower
                                    ? "closed-power"
                                    : "gamma-formula";
            emit_envelope("khinchine", parameters, results, 0);
        } else if (app.got_subcommand(cmd_build)) {
            const auto form = mixnorm::forms::build_extremal(build_m);
            mixnorm::forms::write_tensor_file(build_out, form);
            ordered_json parameters;
            parameters["m"] = build_m;
            parameters["out"] = build_out;
            ordered_json results;
            results["dims"] = form.dims();
            results["storage"] = form.is_sparse() ? "sparse" : "dense";
            results["nonzeros"] = form.nonzero_count();
            emit_envelope("build-form", parameters, results, 0);
        } else if (app.got_subcommand(cmd_norm)) {
            if (norm_exact && norm_ascent)
                throw std::invalid_argument("--exact and --ascent are mutually exclusive");
            const double p = parse_exponent(norm_p);
            const int workers = norm_workers_opt->count() ? norm_workers : workers_from_env();
            const auto form = mixnorm::forms::read_tensor_file(norm_form);

            ordered_json parameters;
            parameters["form"] = norm_form;
            parameters["p"] = exponent_json(p);
            parameters["mode"] = norm_exact ? "exact" : (norm_ascent ? "ascent" : "auto");
            parameters["budget"] = norm_budget;
            parameters["workers"] = workers;
            parameters["restarts"] = norm_restarts;
            parameters["max_iters"] = norm_max_iters;
            parameters["tol"] = norm_tol;

            auto run_ascent = [&] {
                std::vector<double> exps(static_cast<std::size_t>(form.arity()),
                                         mixnorm::infinite_exponent);
                exps[0] = p;
                return mixnorm::norms::ascent_norm(form,
                                                   mixnorm::forms::SpaceSignature(exps),
                                                   norm_restarts, norm_max_iters, norm_tol,
                                                   norm_seed);
            };

            mixnorm::norms::NormCertificate cert;
            std::string engine;
            if (norm_ascent) {
                cert = run_ascent();
                engine = "ascent";
            } else if (norm_exact) {
                cert = mixnorm::norms::exact_norm(form, p, {norm_budget, workers});
                engine = "exact";
            } else {
                try {
                    cert = mixnorm::norms::exact_norm(form, p, {norm_budget, workers});
                    engine = "exact";
                } catch (const mixnorm::norms::BudgetExceededError&) {
                    cert = run_ascent();
                    engine = "ascent";
                }
            }
            ordered_json results = certificate_json(cert);
            results["engine"] = engine;
            emit_envelope("norm", parameters, results, norm_seed);
        } else if (app.got_subcommand(cmd_mixed)) {
            const auto form = mixnorm::forms::read_tensor_file(mixed_form);
            const mixnorm::forms::MixedNormScheme scheme(parse_int_list(mixed_partition),
                                                         parse_exponent_list(mixed_exponents));
            ordered_json parameters;
            parameters["form"] = mixed_form;
            parameters["partition"] = scheme.partition;
            parameters["exponents"] = scheme.outer_exponents;
            ordered_json results;
            results["value"] = mixnorm::forms::mixed_norm(form, scheme);
            emit_envelope("mixed-norm", parameters, results, 0);
        } else if (app.got_subcommand(cmd_ratio)) {
            const double p = parse_exponent(ratio_p);
            const int workers = ratio_workers_opt->count() ? ratio_workers : workers_from_env();
            ordered_json parameters;
            parameters["m"] = ratio_m;
            parameters["p"] = exponent_json(p);
            parameters["workers"] = workers;
            parameters["budget"] = ratio_budget;
            ordered_json results;
            results["ratio"] = mixnorm::lab::ratio_certificate(ratio_m, p,
                                                               {ratio_budget, workers});
            results["predicted"] =
                std::exp2((0.5 - mixnorm::exponent_reciprocal(p)) * (ratio_m - 1));
            emit_envelope("ratio", parameters, results, 0);
        } else if (app.got_subcommand(cmd_report)) {
            const double p = parse_exponent(report_p);
            const int workers = report_workers_opt->count() ? report_workers : workers_from_env();
            const auto report =
                mixnorm::lab::constant_report(report_m, p, {report_budget, workers});
            ordered_json parameters;
            parameters["m"] = report_m;
            parameters["p"] = exponent_json(p);
            parameters["workers"] = workers;
            parameters["budget"] = report_budget;
            ordered_json results;
            results["m"] = report.m;
            results["p"] = exponent_json(report.p);
            results["lower_bound"] = report.lower_bound;
            results["upper_bound"] = report.upper_bound;
            results["predicted"] = report.predicted;
            results["regime"] = regime_name(report.regime);
            results["witness_form_dims"] = report.witness_form_dims;
            results["norm_source"] = report.norm_source;
            emit_envelope("report", parameters, results, 0);
        } else if (app.got_subcommand(cmd_sandwich)) {
            const double p = parse_exponent(sandwich_p);
            const auto bounds = mixnorm::lab::bilinear_sandwich(p);
            ordered_json parameters;
            parameters["p"] = exponent_json(p);
            ordered_json results;
            results["lower"] = bounds.lower;
            results["upper"] = bounds.upper;
            results["exponent"] = bounds.exponent;
            emit_envelope("sandwich", parameters, results, 0);
        } else if (app.got_subcommand(cmd_gap)) {
            const auto rows = mixnorm::lab::gap_curve(gap_samples);
            write_gap_csv(gap_csv, rows);
            if (!gap_svg.empty())
                write_gap_svg(gap_svg, rows);
            double max_diff = rows.front().diff;
            double max_x = rows.front().x;
            for (const auto& row : rows)
                if (row.diff > max_diff) {
                    max_diff = row.diff;
                    max_x = row.x;
                }
            ordered_json parameters;
            parameters["samples"] = gap_samples;
            parameters["csv"] = gap_csv;
            if (!gap_svg.empty())
                parameters["svg"] = gap_svg;
            ordered_json results;
            results["max_diff"] = max_diff;
            results["max_diff_x"] = max_x;
            results["endpoint_diff_low"] = rows.front().diff;
            results["endpoint_diff_high"] = rows.back().diff;
            emit_envelope("gap-curve", parameters, results, 0);
        } else if (app.got_subcommand(cmd_admissible)) {
            const mixnorm::forms::SpaceSignature space(parse_exponent_list(adm_plist));
            const mixnorm::forms::MixedNormScheme scheme(parse_int_list(adm_partition),
                                                         parse_exponent_list(adm_exponents));
            const auto check = mixnorm::forms::check_admissible(space, scheme);
            ordered_json parameters;
            parameters["p_list"] = ordered_json::array();
            for (double p : space.exponents)
                parameters["p_list"].push_back(exponent_json(p));
            parameters["partition"] = scheme.partition;
            parameters["exponents"] = scheme.outer_exponents;
            ordered_json results;
            results["admissible"] = check.admissible;
            results["violated"] = violation_name(check.violation);
            results["p_reciprocal_sum"] = check.p_reciprocal_sum;
            results["outer_floor"] = check.outer_floor;
            results["q_reciprocal_sum"] = check.q_reciprocal_sum;
            results["q_reciprocal_bound"] = check.q_reciprocal_bound;
            emit_envelope("admissible", parameters, results, 0);
        }
    } catch (const mixnorm::norms::BudgetExceededError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const mixnorm::forms::TensorFormatError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
