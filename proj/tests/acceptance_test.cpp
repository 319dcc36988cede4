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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>

#include "qcr/closedform.hpp"
#include "qcr/densitylab.hpp"
#include "qcr/measures.hpp"
#include "qcr/molecules.hpp"
#include "qcr/verify.hpp"

namespace cf = qcr::closedform;
namespace st = qcr::states;
namespace vf = qcr::verify;
using qcr::measures::Order;

namespace {

const st::PseudoharmonicParams kToy{3.5, 0.5, 1.0, 1.0};

void report(const char* tag, bool pass, const std::string& what, double measured,
            double allowed) {
    std::printf("[%s] %s %s: measured %.3g, allowed %.3g\n", tag,
                pass ? "PASS" : "FAIL", what.c_str(), measured, allowed);
    EXPECT_TRUE(pass) << tag << " " << what;
}

void report_suite(const char* tag, const std::string& what, const vf::SuiteResult& suite) {
    double worst = 0.0;
    std::string worst_name;
    for (const auto& check : suite.checks) {
        double ratio = check.allowed > 0.0 ? check.measured / check.allowed
                                           : (check.pass ? 0.0 : 2.0);
        if (ratio > worst) {
            worst = ratio;
            worst_name = check.name;
        }
    }
    bool pass = suite.failures() == 0;
    std::printf("[%s] %s %s: %zu checks, %d failures, worst margin %.3g (%s)\n", tag,
                pass ? "PASS" : "FAIL", what.c_str(), suite.checks.size(),
                suite.failures(), worst, worst_name.c_str());
    for (const auto& check : suite.checks) {
        EXPECT_TRUE(check.pass) << tag << " " << check.name << " measured "
                                << check.measured << " allowed " << check.allowed;
    }
}

double quad_renyi(const st::JointDensity& rho, double order) {
    return qcr::measures::renyi(rho, Order(order)).value;
}

} // namespace

// Closed pseudoharmonic entropies match the quadrature oracle across the
// molecule table for n <= 2, l <= 2, |m| <= l, alpha in {2, 3}.
TEST(Acceptance, A1_OracleEquivalencePseudoharmonic) {
    double worst = 0.0;
    for (const auto& rec : qcr::molecules::builtin_table()) {
        auto params = qcr::molecules::to_params(rec);
        for (int n = 0; n <= 2; ++n) {
            for (int l = 0; l <= 2; ++l) {
                for (int m = 0; m <= l; ++m) {
                    auto rho = st::rho_pho(params, {n, l, m});
                    for (int alpha : {2, 3}) {
                        double closed =
                            cf::renyi_pho_closed(params, {n, l, m}, alpha).value;
                        double quad = quad_renyi(rho, alpha);
                        worst = std::max(worst, std::abs(closed - quad) /
                                                    std::max(std::abs(quad), 1e-12));
                    }
                }
            }
        }
    }
    report("A1", worst <= 1e-8, "oracle equivalence (pseudoharmonic)", worst, 1e-8);
}

// Closed isospectral entropies match quadrature for lambda in {-3, 1.5, 2.5},
// n <= 1, l <= 1, alpha in {2, 3} within max(1e-6, reported truncation bound).
TEST(Acceptance, A2_OracleEquivalenceIsospectral) {
    double worst_ratio = 0.0;
    for (double lambda : {-3.0, 1.5, 2.5}) {
        for (int n = 0; n <= 1; ++n) {
            for (int l = 0; l <= 1; ++l) {
                for (int m = 0; m <= l; ++m) {
                    auto rho = st::rho_iso(kToy, {n, l, m}, lambda);
                    for (int alpha : {2, 3}) {
                        auto closed =
                            cf::renyi_iso_closed(kToy, {n, l, m}, lambda, alpha);
                        double quad = quad_renyi(rho, alpha);
                        double dev = std::abs(closed.value - quad) /
                                     std::max(std::abs(quad), 1e-12);
                        double allowed =
                            std::max(1e-6, closed.abs_error_estimate /
                                               std::max(std::abs(quad), 1e-12));
                        worst_ratio = std::max(worst_ratio, dev / allowed);
                    }
                }
            }
        }
    }
    report("A2", worst_ratio <= 1.0, "oracle equivalence (isospectral)", worst_ratio, 1.0);
}

// At lambda = 1e4 the complexity ratios collapse onto the pseudoharmonic ones.
TEST(Acceptance, A3_LambdaLimit) {
    auto co = qcr::molecules::to_params(
        qcr::molecules::find(qcr::molecules::builtin_table(), "CO"));
    double worst = 0.0;
    for (int alpha : {2, 3}) {
        auto ratio = cf::rcr_closed(co, {0, 0, 0}, 1e4, alpha, alpha,
                                    cf::RcrDirection::iso_over_pho);
        worst = std::max(worst, std::abs(ratio.value.value - 1.0));
    }
    for (int alpha : {2, 3}) {
        for (int beta : {2, 3}) {
            auto grc_iso = cf::grc_closed(co, {0, 0, 0}, alpha, beta, 1e4);
            auto grc_pho = cf::grc_closed(co, {0, 0, 0}, alpha, beta);
            worst = std::max(worst, std::abs(grc_iso.value.value - grc_pho.value.value) /
                                        std::max(std::abs(grc_pho.value.value), 1e-12));
        }
    }
    report("A3", worst <= 1e-3, "lambda-limit collapse", worst, 1e-3);
}

TEST(Acceptance, A4_EnergySpacings) {
    report_suite("A4", "energy spacings", vf::run_molecule_suite(qcr::molecules::builtin_table()));
}

TEST(Acceptance, A5_PropertySuite) {
    report_suite("A5", "complexity-ratio properties", vf::run_property_suite());
}

TEST(Acceptance, A6_InequalitySuite) {
    report_suite("A6", "order-monotonicity inequalities", vf::run_inequality_suite());
}

// The criterion as stated asks for the ((alpha-1)/alpha) R ordering on every
// shipped density. That ordering is an escort-entropy inequality whose proof
// requires the escort weights to stay below one; probability vectors always
// satisfy that, but the quantity is not scale invariant for continuous
// densities (rescaling r -> c r adds 3 ln(c) (alpha-1)/alpha, increasing in
// alpha), so any sufficiently concentrated state violates it. The closed
// forms below exhibit the violation exactly; the check is kept as stated and
// fails honestly.
TEST(Acceptance, A6_PhiOrderingOnEveryShippedDensity) {
    double worst = 0.0;
    std::string worst_case;
    auto probe = [&](const char* name, const st::PseudoharmonicParams& params,
                     const st::QuantumNumbers& qn) {
        double phi2 = 0.5 * cf::renyi_pho_closed(params, qn, 2).value;
        double phi3 = (2.0 / 3.0) * cf::renyi_pho_closed(params, qn, 3).value;
        double phi4 = 0.75 * cf::renyi_pho_closed(params, qn, 4).value;
        double violation = std::max(phi2 - phi3, phi3 - phi4);
        if (violation > worst) {
            worst = violation;
            worst_case = name;
        }
    };
    probe("toy (1,1,0)", kToy, {1, 1, 0});
    auto co = qcr::molecules::to_params(
        qcr::molecules::find(qcr::molecules::builtin_table(), "CO"));
    probe("CO (0,0,0)", co, {0, 0, 0});
    report("A6", worst <= 1e-8,
           "phi ordering on every shipped density (known-impossible as stated; "
           "counterexample " + worst_case + ")",
           worst, 1e-8);
}

TEST(Acceptance, A7_NearContinuityLadder) {
    report_suite("A7", "near-continuity ladder", vf::run_continuity_suite());
}

TEST(Acceptance, A8_MajorizationBattery) {
    report_suite("A8", "majorization battery", vf::run_majorization_suite());
}

// Angular moment identity against direct quadrature plus the exact special values.
TEST(Acceptance, A9_AngularMoments) {
    double worst = 0.0;
    for (int l = 0; l <= 3; ++l) {
        for (int m = 0; m <= l; ++m) {
            for (int alpha : {2, 3}) {
                auto res = qcr::quadrature::gauss_legendre_doubling(
                    [&](double x) {
                        return std::pow(st::sph_harm_sq(l, m, std::acos(x)), alpha);
                    },
                    -1.0, 1.0, 64, 1e-13);
                double oracle = 2.0 * M_PI * res.value;
                worst = std::max(worst,
                                 std::abs(cf::j2_moment(l, m, alpha) - oracle) / oracle);
            }
        }
    }
    bool pass = worst <= 1e-9;
    double exact_worst = 0.0;
    for (int alpha : {1, 2, 3, 4}) {
        exact_worst = std::max(exact_worst,
                               std::abs(cf::j2_moment(0, 0, alpha) -
                                        std::pow(4.0 * M_PI, 1.0 - alpha)) /
                                   std::pow(4.0 * M_PI, 1.0 - alpha));
    }
    for (int l = 0; l <= 3; ++l) {
        for (int m = 0; m <= l; ++m) {
            exact_worst = std::max(exact_worst, std::abs(cf::j2_moment(l, m, 1) - 1.0));
        }
    }
    pass = pass && exact_worst <= 1e-12;
    report("A9", pass, "angular moment identity", std::max(worst, exact_worst), 1e-9);
}

// Qualitative figure-shape checks on the caption parameter grids.
TEST(Acceptance, A10_FigureShapes) {
    bool all_pass = true;

    // Fig. 1: isospectral Renyi entropy rises to a plateau in lambda.
    {
        bool pass = true;
        for (const auto& rec : qcr::molecules::builtin_table()) {
            auto params = qcr::molecules::to_params(rec);
            std::vector<double> values;
            for (double lambda : {1.2, 1.6, 2.2, 3.0, 4.5, 7.0, 12.0, 25.0, 60.0, 200.0}) {
                values.push_back(
                    quad_renyi(st::rho_iso(params, {0, 0, 0}, lambda), 2.5));
            }
            for (size_t i = 0; i + 1 < values.size(); ++i) {
                if (values[i + 1] < values[i] - 1e-9) pass = false;
            }
            double span = values.back() - values.front();
            double last_gap = values.back() - values[values.size() - 2];
            if (!(last_gap <= 0.02 * std::max(span, 1e-12))) pass = false;
        }
        report("A10", pass, "fig 1 shape (monotone rise to plateau)", pass ? 0.0 : 1.0,
               0.5);
        all_pass = all_pass && pass;
    }

    // Fig. 2: rcr of (iso_n, pho_n) falls toward zero as n grows.
    {
        bool pass = true;
        for (const auto& rec : qcr::molecules::builtin_table()) {
            auto params = qcr::molecules::to_params(rec);
            std::vector<double> values;
            for (int n = 0; n <= 5; ++n) {
                double iso = quad_renyi(st::rho_iso(params, {n, 0, 0}, 2.5), 2.25);
                double pho = quad_renyi(st::rho_pho(params, {n, 0, 0}), 3.5);
                values.push_back(std::exp(iso - pho));
            }
            for (size_t i = 0; i + 1 < values.size(); ++i) {
                if (values[i + 1] >= values[i]) pass = false;
            }
            if (!(values.back() < 0.2 * values.front())) pass = false;
        }
        report("A10", pass, "fig 2 shape (rcr decreasing toward zero in n)",
               pass ? 0.0 : 1.0, 0.5);
        all_pass = all_pass && pass;
    }

    // Figs. 4/5: both rcr directions and the iso grc converge to the pho grc.
    {
        bool pass = true;
        for (auto qn : {st::QuantumNumbers{0, 1, 1}, st::QuantumNumbers{1, 1, 1}}) {
            auto pho = st::rho_pho(kToy, qn);
            double pho_a = quad_renyi(pho, 2.25), pho_b = quad_renyi(pho, 3.0);
            double grc_pho = std::exp(pho_a - pho_b);
            double prev_gap = 1e300;
            for (double lambda : {2.0, 5.0, 20.0, 200.0, 1e4}) {
                auto iso = st::rho_iso(kToy, qn, lambda);
                double iso_a = quad_renyi(iso, 2.25), iso_b = quad_renyi(iso, 3.0);
                double worst_gap =
                    std::max({std::abs(std::exp(iso_a - pho_b) - grc_pho),
                              std::abs(std::exp(pho_a - iso_b) - grc_pho),
                              std::abs(std::exp(iso_a - iso_b) - grc_pho)});
                if (worst_gap > prev_gap + 1e-9) pass = false;
                prev_gap = worst_gap;
            }
            if (!(prev_gap <= 1e-3 * std::abs(grc_pho))) pass = false;
        }
        report("A10", pass, "fig 4/5 shape (rcr and grc collapse onto pho grc)",
               pass ? 0.0 : 1.0, 0.5);
        all_pass = all_pass && pass;
    }

    // Figs. 10/11: successive-level rcr oscillates in n with shrinking period.
    {
        bool pass = true;
        auto co = qcr::molecules::to_params(
            qcr::molecules::find(qcr::molecules::builtin_table(), "CO"));
        std::vector<double> r_pho(17), r_iso(17);
        for (int n = 0; n <= 16; ++n) {
            r_pho[n] = quad_renyi(st::rho_pho(co, {n, 0, 0}), 2.5);
            r_iso[n] = quad_renyi(st::rho_iso(co, {n, 0, 0}, 2.5), 2.5);
        }
        std::vector<double> seq;
        for (int n = 0; n <= 15; ++n) seq.push_back(std::exp(r_iso[n + 1] - r_pho[n]));
        std::vector<int> flips;
        for (size_t i = 0; i + 2 < seq.size(); ++i) {
            double d1 = seq[i + 1] - seq[i];
            double d2 = seq[i + 2] - seq[i + 1];
            if (d1 * d2 < 0.0) flips.push_back(static_cast<int>(i));
        }
        if (flips.size() < 3) pass = false;
        if (pass) {
            int first_gap = flips[1] - flips[0];
            int last_gap = flips.back() - flips[flips.size() - 2];
            if (last_gap > first_gap) pass = false;
        }
        report("A10", pass, "fig 10/11 shape (oscillation with shrinking period)",
               pass ? 0.0 : 1.0, 0.5);
        all_pass = all_pass && pass;
    }
    EXPECT_TRUE(all_pass);
}

TEST(Acceptance, A11_UpperBound) {
    report_suite("A11", "complexity-ratio upper bound", vf::run_bound_suite());
}
