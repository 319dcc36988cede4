/*
 * Copyright 2026 the qcr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qcr/closedform.hpp"
#include "qcr/measures.hpp"
#include "qcr/molecules.hpp"
#include "qcr/report.hpp"
#include "qcr/verify.hpp"

namespace {

using qcr::measures::MeasureValue;
using qcr::measures::Order;
using qcr::states::JointDensity;
using qcr::states::PseudoharmonicParams;
using qcr::states::QuantumNumbers;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumeric = 4;

struct ComputeOptions {
    std::string system = "pho";
    std::string molecule;
    double De = 0.0, re = 0.0, mu = 0.0;
    std::string De_unit = "eV";
    double hbar = 0.0; // 0 = molecular c*hbar convention
    double lambda = 0.0;
    bool lambda_set = false;
    int n = 0, l = 0, m = 0;
    std::string measure = "renyi";
    double alpha = 2.0, beta = 2.0;
    std::string method = "auto";
    std::string numerator = "iso", denominator = "pho";
    std::string molecule_file;
};

std::vector<qcr::molecules::MoleculeRecord> active_table(const ComputeOptions& opt) {
    if (!opt.molecule_file.empty()) {
        return qcr::molecules::load_molecules(opt.molecule_file);
    }
    if (const char* env = std::getenv(qcr::molecules::kMoleculeFileEnv)) {
        if (env[0] != '\0') return qcr::molecules::load_molecules(env);
    }
    return qcr::molecules::builtin_table();
}

PseudoharmonicParams resolve_params(const ComputeOptions& opt) {
    if (!opt.molecule.empty()) {
        return qcr::molecules::to_params(
            qcr::molecules::find(active_table(opt), opt.molecule));
    }
    if (opt.De <= 0.0 || opt.re <= 0.0 || opt.mu <= 0.0) {
        throw CLI::ValidationError(
            "--molecule NAME or all of --De, --re, --mu are required");
    }
    qcr::molecules::MoleculeRecord rec{"custom", opt.De, opt.De_unit, opt.re, opt.mu, ""};
    PseudoharmonicParams params = qcr::molecules::to_params(rec);
    if (opt.hbar > 0.0) {
        // Natural-unit mode: take De, re, mu, hbar exactly as given.
        params = PseudoharmonicParams{opt.De, opt.re, opt.mu, opt.hbar};
    }
    return params;
}

bool is_integer_order(double v) { return v == std::floor(v) && v >= 2.0; }

struct ComputeRow {
    MeasureValue value;
    std::string method;
};

JointDensity density_for(const ComputeOptions& opt, const PseudoharmonicParams& params,
                         const std::string& system) {
    QuantumNumbers qn{opt.n, opt.l, opt.m};
    if (system == "iso") {
        if (!opt.lambda_set) {
            throw CLI::ValidationError("--lambda is required for the iso system");
        }
        return qcr::states::rho_iso(params, qn, opt.lambda);
    }
    return qcr::states::rho_pho(params, qn);
}

MeasureValue closed_renyi(const ComputeOptions& opt, const PseudoharmonicParams& params,
                          const std::string& system, int order) {
    QuantumNumbers qn{opt.n, opt.l, opt.m};
    if (system == "iso") {
        return qcr::closedform::renyi_iso_closed(params, qn, opt.lambda, order);
    }
    return qcr::closedform::renyi_pho_closed(params, qn, order);
}

ComputeRow compute_measure(const ComputeOptions& opt) {
    PseudoharmonicParams params = resolve_params(opt);
    QuantumNumbers qn{opt.n, opt.l, opt.m};
    bool closed_ok = opt.method != "quad";
    bool closed_forced = opt.method == "closed";

    auto renyi_of = [&](const std::string& system, double order) {
        if (closed_ok && is_integer_order(order) && (closed_forced || opt.method == "auto")) {
            return std::make_pair(
                closed_renyi(opt, params, system, static_cast<int>(order)),
                std::string("closed"));
        }
        if (closed_forced) {
            throw CLI::ValidationError("--method closed requires integer orders >= 2");
        }
        JointDensity rho = density_for(opt, params, system);
        return std::make_pair(qcr::measures::renyi(rho, Order(order)),
                              std::string("quad"));
    };

    ComputeRow row;
    const std::string& ms = opt.measure;
    if (ms == "renyi" || ms == "shannon") {
        double order = ms == "shannon" ? 1.0 : opt.alpha;
        auto [mv, how] = renyi_of(opt.system, order);
        row.value = mv;
        row.method = how;
    } else if (ms == "tsallis") {
        auto [mv, how] = renyi_of(opt.system, opt.alpha);
        row.value = mv;
        if (opt.alpha != 1.0) {
            row.value.value = qcr::measures::tsallis_from_renyi(mv.value, opt.alpha);
            row.value.abs_error_estimate =
                std::abs(std::exp((1.0 - opt.alpha) * mv.value)) * mv.abs_error_estimate;
        }
        row.method = how;
    } else if (ms == "length") {
        auto [mv, how] = renyi_of(opt.system, opt.alpha);
        row.value = mv;
        row.value.value = std::cbrt(3.0 / (4.0 * M_PI)) * std::exp(mv.value / 3.0);
        row.value.abs_error_estimate = row.value.value * mv.abs_error_estimate / 3.0;
        row.method = how;
    } else if (ms == "diseq") {
        auto [mv, how] = renyi_of(opt.system, 2.0);
        row.value = mv;
        row.value.value = std::exp(-mv.value);
        row.value.abs_error_estimate = row.value.value * mv.abs_error_estimate;
        row.method = how;
    } else if (ms == "rcr" || ms == "grc" || ms == "src" || ms == "lmc") {
        double alpha = ms == "lmc" ? 1.0 : opt.alpha;
        double beta = (ms == "src" || ms == "lmc") ? 2.0 : opt.beta;
        std::string num = ms == "rcr" ? opt.numerator : opt.system;
        std::string den = ms == "rcr" ? opt.denominator : opt.system;
        auto [rn, how_n] = renyi_of(num, alpha);
        auto [rd, how_d] = renyi_of(den, beta);
        row.value.value = std::exp(rn.value - rd.value);
        row.value.abs_error_estimate =
            row.value.value * (rn.abs_error_estimate + rd.abs_error_estimate);
        row.value.method = rn.method;
        if (rn.diagnostics || rd.diagnostics) {
            qcr::specfun::SeriesDiagnostics diag;
            if (rn.diagnostics) diag = *rn.diagnostics;
            if (rd.diagnostics) {
                diag.terms_used += rd.diagnostics->terms_used;
                diag.truncation_flag |= rd.diagnostics->truncation_flag;
            }
            row.value.diagnostics = diag;
        }
        row.method = how_n == how_d ? how_n : "mixed";
    } else if (ms == "bound") {
        JointDensity f = density_for(opt, params, opt.numerator);
        JointDensity g = density_for(opt, params, opt.denominator);
        auto bound = qcr::measures::rcr_upper_bound(f, g, Order(opt.alpha), Order(opt.beta));
        row.value.value = bound.value;
        row.value.abs_error_estimate = 0.0;
        row.method = "quad";
        if (bound.sup_norm_from_grid) {
            std::cerr << "note: sup norm estimated from a profile grid\n";
        }
    } else {
        throw CLI::ValidationError("unknown measure: " + ms);
    }
    return row;
}

std::string csv_row(const ComputeOptions& opt, const ComputeRow& row) {
    using qcr::report::format_double;
    std::ostringstream os;
    os << opt.measure << ',' << opt.system << ',' << opt.n << ',' << opt.l << ','
       << opt.m << ',' << format_double(opt.measure == "shannon" ? 1.0 : opt.alpha)
       << ',' << format_double(opt.beta) << ','
       << (opt.lambda_set ? format_double(opt.lambda) : "") << ','
       << format_double(row.value.value) << ','
       << format_double(row.value.abs_error_estimate) << ',' << row.method;
    return os.str();
}

void add_compute_flags(CLI::App* cmd, ComputeOptions& opt, bool need_measure) {
    cmd->add_option("--system", opt.system, "pho or iso")
        ->check(CLI::IsMember({"pho", "iso"}));
    cmd->add_option("--molecule", opt.molecule, "named molecule from the active table");
    cmd->add_option("--De", opt.De, "well depth");
    cmd->add_option("--De-unit", opt.De_unit, "eV or cm^-1")
        ->check(CLI::IsMember({"eV", "cm^-1"}));
    cmd->add_option("--re", opt.re, "equilibrium separation (Angstrom)");
    cmd->add_option("--mu", opt.mu, "reduced mass (amu; or natural units with --hbar)");
    cmd->add_option("--hbar", opt.hbar, "natural-unit hbar (use with --De --re --mu)");
    cmd->add_option("--lambda", opt.lambda, "isospectral parameter")
        ->each([&opt](const std::string&) { opt.lambda_set = true; });
    cmd->add_option("--n", opt.n, "vibrational quantum number");
    cmd->add_option("--l", opt.l, "angular momentum quantum number");
    cmd->add_option("--m", opt.m, "magnetic quantum number");
    if (need_measure) {
        cmd->add_option("--measure", opt.measure, "measure to compute")
            ->check(CLI::IsMember({"renyi", "shannon", "tsallis", "rcr", "grc", "src",
                                   "lmc", "length", "diseq", "bound"}));
    }
    cmd->add_option("--alpha", opt.alpha, "entropy order alpha");
    cmd->add_option("--beta", opt.beta, "entropy order beta");
    cmd->add_option("--method", opt.method, "auto, closed, or quad")
        ->check(CLI::IsMember({"auto", "closed", "quad"}));
    cmd->add_option("--numerator", opt.numerator, "rcr numerator system")
        ->check(CLI::IsMember({"pho", "iso"}));
    cmd->add_option("--denominator", opt.denominator, "rcr denominator system")
        ->check(CLI::IsMember({"pho", "iso"}));
    cmd->add_option("--molecules-file", opt.molecule_file,
                    "molecule table (overrides QCR_MOLECULES)");
}

struct SweepOptions {
    std::string parameter = "lambda";
    double from = 0.0, to = 1.0;
    int steps = 2;
    std::string scale = "linear";
    std::string out;
    std::string svg;
};

double grid_point(const SweepOptions& sweep, int i) {
    double t = static_cast<double>(i) / (sweep.steps - 1);
    if (sweep.scale == "log") {
        return sweep.from * std::pow(sweep.to / sweep.from, t);
    }
    return sweep.from + (sweep.to - sweep.from) * t;
}

int run_sweep(const ComputeOptions& base, const SweepOptions& sweep) {
    if (sweep.steps < 2) throw CLI::ValidationError("--steps must be >= 2");
    if (sweep.from == sweep.to) throw CLI::ValidationError("--from must differ from --to");
    if (sweep.scale == "log" && sweep.from * sweep.to <= 0.0) {
        throw CLI::ValidationError("log scale requires same-sign endpoints");
    }

    std::ostringstream csv;
    csv << "measure,system,n,l,m,alpha,beta,lambda,param,param_value,value,abs_err,method\n";
    std::vector<double> xs, ys;
    int exit_code = kExitOk;
    for (int i = 0; i < sweep.steps; ++i) {
        double x = grid_point(sweep, i);
        ComputeOptions opt = base;
        if (sweep.parameter == "lambda") {
            opt.lambda = x;
            opt.lambda_set = true;
        } else if (sweep.parameter == "De") {
            opt.De = x;
        } else if (sweep.parameter == "re") {
            opt.re = x;
        } else if (sweep.parameter == "mu") {
            opt.mu = x;
        } else if (sweep.parameter == "n") {
            opt.n = static_cast<int>(std::lround(x));
        } else if (sweep.parameter == "alpha") {
            opt.alpha = x;
        } else if (sweep.parameter == "beta") {
            opt.beta = x;
        } else {
            throw CLI::ValidationError("unknown sweep parameter: " + sweep.parameter);
        }
        ComputeRow row = compute_measure(opt);
        if (row.value.diagnostics && row.value.diagnostics->truncation_flag) {
            exit_code = kExitNumeric;
        }
        std::ostringstream line;
        line << opt.measure << ',' << opt.system << ',' << opt.n << ',' << opt.l << ','
             << opt.m << ',' << qcr::report::format_double(opt.alpha) << ','
             << qcr::report::format_double(opt.beta) << ','
             << (opt.lambda_set ? qcr::report::format_double(opt.lambda) : "") << ','
             << sweep.parameter << ',' << qcr::report::format_double(x) << ','
             << qcr::report::format_double(row.value.value) << ','
             << qcr::report::format_double(row.value.abs_error_estimate) << ','
             << row.method << '\n';
        csv << line.str();
        xs.push_back(x);
        ys.push_back(row.value.value);
    }
    if (sweep.out.empty()) {
        std::cout << csv.str();
    } else {
        qcr::report::write_file(sweep.out, csv.str());
    }
    if (!sweep.svg.empty()) {
        qcr::report::Series series{base.measure, xs, ys};
        qcr::report::write_file(
            sweep.svg, qcr::report::render_svg_lineplot(
                           base.measure + " sweep over " + sweep.parameter,
                           sweep.parameter, base.measure, {series}));
    }
    return exit_code;
}

int run_verify(const std::string& suite, const ComputeOptions& opt) {
    auto table = active_table(opt);
    auto results = qcr::verify::run_suites(suite, table);
    int failures = 0;
    for (const auto& suite_result : results) {
        double worst = 0.0;
        for (const auto& check : suite_result.checks) {
            if (!check.pass) {
                std::cout << "FAIL " << suite_result.suite << " :: " << check.name
                          << " measured=" << qcr::report::format_double(check.measured)
                          << " allowed=" << qcr::report::format_double(check.allowed);
                if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
                std::cout << "\n";
            }
            worst = std::max(worst, check.measured / std::max(check.allowed, 1e-300));
        }
        failures += suite_result.failures();
        std::cout << "suite=" << suite_result.suite
                  << " checks=" << suite_result.checks.size()
                  << " failures=" << suite_result.failures() << "\n";
    }
    std::cout << (failures == 0 ? "VERIFY PASS" : "VERIFY FAIL") << " total_failures="
              << failures << "\n";
    return failures == 0 ? kExitOk : kExitVerifyFail;
}

// Figure reproduction grids; parameters follow the reference setups, grid
// resolutions documented per figure.
int run_reproduce(int figure, const std::string& out_dir, const ComputeOptions& opt);

} // namespace

#include "qcr_reproduce.inc"

int main(int argc, char** argv) {
    CLI::App app{"Renyi-type information measures for pseudoharmonic and "
                 "isospectral quantum densities"};
    app.require_subcommand(1);

    ComputeOptions opt;
    CLI::App* compute = app.add_subcommand("compute", "one measure, one CSV row");
    add_compute_flags(compute, opt, true);

    ComputeOptions sweep_base;
    SweepOptions sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "measure along a parameter grid");
    add_compute_flags(sweep_cmd, sweep_base, true);
    sweep_cmd->add_option("--param", sweep.parameter,
                          "lambda|De|re|mu|n|alpha|beta")
        ->required();
    sweep_cmd->add_option("--from", sweep.from)->required();
    sweep_cmd->add_option("--to", sweep.to)->required();
    sweep_cmd->add_option("--steps", sweep.steps)->required();
    sweep_cmd->add_option("--scale", sweep.scale)->check(CLI::IsMember({"linear", "log"}));
    sweep_cmd->add_option("--out", sweep.out, "CSV output path (default stdout)");
    sweep_cmd->add_option("--svg", sweep.svg, "optional SVG line plot path");

    ComputeOptions verify_opt;
    std::string suite = "all";
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    verify_cmd->add_option("--suite", suite, "properties|oracle|molecules|all")
        ->check(CLI::IsMember({"properties", "oracle", "molecules", "all"}));
    verify_cmd->add_option("--molecules-file", verify_opt.molecule_file,
                           "molecule table (overrides QCR_MOLECULES)");

    ComputeOptions repro_opt;
    int figure = 1;
    std::string out_dir = ".";
    CLI::App* repro_cmd = app.add_subcommand("reproduce", "emit a figure grid as CSV+SVG");
    repro_cmd->add_option("--figure", figure, "figure index 1..11")
        ->required()
        ->check(CLI::Range(1, 11));
    repro_cmd->add_option("--out", out_dir, "output directory")->required();
    repro_cmd->add_option("--molecules-file", repro_opt.molecule_file,
                          "molecule table (overrides QCR_MOLECULES)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compute->parsed()) {
            ComputeRow row = compute_measure(opt);
            std::cout << csv_row(opt, row) << "\n";
            if (row.value.diagnostics && row.value.diagnostics->truncation_flag) {
                return kExitNumeric;
            }
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            try {
                return run_sweep(sweep_base, sweep);
            } catch (...) {
                if (!sweep.out.empty()) std::filesystem::remove(sweep.out);
                throw;
            }
        }
        if (verify_cmd->parsed()) {
            return run_verify(suite, verify_opt);
        }
        if (repro_cmd->parsed()) {
            return run_reproduce(figure, out_dir, repro_opt);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
