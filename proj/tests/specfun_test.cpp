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

#include "qcr/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace sf = qcr::specfun;

namespace {

// Simpson-rule oracle, independent of the library quadrature.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

// High-precision lnGamma ladder from Gamma(0.5) = sqrt(pi) via the recurrence
// Gamma(x+1) = x Gamma(x), in long double.
long double ln_gamma_ladder_from_half(int steps) {
    long double acc = 0.5L * std::log((long double)M_PI);
    long double x = 0.5L;
    for (int i = 0; i < steps; ++i) {
        acc += std::log(x);
        x += 1.0L;
    }
    return acc;
}

} // namespace

TEST(LnGamma, KnownValues) {
    EXPECT_EQ(sf::ln_gamma(1.0), 0.0);
    EXPECT_NEAR(sf::ln_gamma(0.5), 0.5 * std::log(M_PI), 1e-15);
    // Gamma(7.5) by the product ladder from Gamma(0.5).
    double expected = static_cast<double>(ln_gamma_ladder_from_half(7));
    EXPECT_NEAR(sf::ln_gamma(7.5), expected, std::abs(expected) * 1e-13);
}

TEST(LnGamma, DomainError) {
    EXPECT_THROW(sf::ln_gamma(0.0), std::domain_error);
    EXPECT_THROW(sf::ln_gamma(-2.5), std::domain_error);
}

TEST(RegularizedLowerGamma, ClosedCases) {
    EXPECT_NEAR(sf::regularized_lower_gamma(1.0, 1.0), 1.0 - std::exp(-1.0), 1e-14);
    EXPECT_EQ(sf::regularized_lower_gamma(3.7, 0.0), 0.0);
    EXPECT_THROW(sf::regularized_lower_gamma(-1.0, 1.0), std::domain_error);
    EXPECT_THROW(sf::regularized_lower_gamma(1.0, -1.0), std::domain_error);
}

TEST(RegularizedLowerGamma, QuadratureOracle) {
    // P(s,x) = int_0^x t^{s-1} e^{-t} dt / Gamma(s) against Simpson.
    const double s = 2.414214, x = 1.75;
    double oracle = simpson([&](double t) { return t > 0 ? std::pow(t, s - 1.0) * std::exp(-t) : 0.0; },
                            0.0, x, 20000) /
                    std::exp(sf::ln_gamma(s));
    EXPECT_NEAR(sf::regularized_lower_gamma(s, x), oracle, 1e-10);
}

TEST(RegularizedLowerGamma, MonotoneInX) {
    for (double s : {0.4, 1.0, 2.414214, 19.5}) {
        double prev = 0.0;
        for (double x = 0.0; x <= 8.0 * s; x += 0.25 * s) {
            double p = sf::regularized_lower_gamma(s, x);
            EXPECT_GE(p, prev - 1e-15);
            EXPECT_LE(p, 1.0);
            prev = p;
        }
    }
}

TEST(UpperIncompleteGamma, ClosedCases) {
    EXPECT_NEAR(sf::upper_incomplete_gamma(1.0, 2.3), std::exp(-2.3), 1e-14);
    EXPECT_NEAR(sf::upper_incomplete_gamma(3.7, 0.0), std::tgamma(3.7), 1e-13);
}

TEST(UpperIncompleteGamma, QuadratureOracle) {
    // Gamma(2.5, 3.0) against Simpson on [3, 60].
    double oracle = simpson([](double t) { return std::pow(t, 1.5) * std::exp(-t); },
                            3.0, 60.0, 40000);
    EXPECT_NEAR(sf::upper_incomplete_gamma(2.5, 3.0), oracle, 1e-10);
}

TEST(IncompleteGamma, ComplementIdentity) {
    // P(s,x) + Gamma(s,x)/Gamma(s) = 1 on an (s,x) grid.
    for (double s : {0.3, 0.9, 1.5, 2.414214, 7.0, 23.5}) {
        for (double x : {0.01, 0.5, 1.0, 2.0, 5.0, 10.0, 40.0}) {
            double p = sf::regularized_lower_gamma(s, x);
            double q = sf::upper_incomplete_gamma(s, x) / std::tgamma(s);
            EXPECT_NEAR(p + q, 1.0, 1e-12) << "s=" << s << " x=" << x;
        }
    }
}

TEST(AssocLaguerre, LowDegrees) {
    EXPECT_EQ(sf::assoc_laguerre(0, 0.7, 3.1), 1.0);
    EXPECT_NEAR(sf::assoc_laguerre(1, 0.7, 3.1), 1.0 + 0.7 - 3.1, 1e-15);
    // L_2^{1/2}(x) = x^2/2 - (5/2)x + 15/8 at x = 1.
    EXPECT_NEAR(sf::assoc_laguerre(2, 0.5, 1.0), -0.125, 1e-14);
}

TEST(AssocLaguerre, RecurrenceProperty) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> xd(0.0, 30.0), kd(-0.5, 20.0);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(trial % 8);
        double k = kd(rng), x = xd(rng);
        double lm1 = sf::assoc_laguerre(n - 1, k, x);
        double l0 = sf::assoc_laguerre(n, k, x);
        double lp1 = sf::assoc_laguerre(n + 1, k, x);
        double lhs = (n + 1.0) * lp1;
        double rhs = (2.0 * n + k + 1.0 - x) * l0 - (n + k) * lm1;
        double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        EXPECT_NEAR(lhs, rhs, 1e-10 * scale) << "n=" << n << " k=" << k << " x=" << x;
    }
}

TEST(AssocLegendreAbs, ClosedCases) {
    EXPECT_EQ(sf::assoc_legendre_abs(0, 0, 0.3), 1.0);
    EXPECT_NEAR(sf::assoc_legendre_abs(1, 0, 0.3), 0.3, 1e-15);
    // |P_2^1(x)| = |3 x sqrt(1-x^2)| at x = 0.5.
    EXPECT_NEAR(sf::assoc_legendre_abs(2, 1, 0.5), 3.0 * 0.5 * std::sqrt(0.75), 1e-14);
    EXPECT_THROW(sf::assoc_legendre_abs(1, 2, 0.5), std::domain_error);
    EXPECT_THROW(sf::assoc_legendre_abs(1, 0, 1.5), std::domain_error);
}

namespace {

// Brute-force oracle for the terminating Lauricella coefficient: recursive
// nested loops in the same lexicographic order, factors built from scratch in
// long double so the oracle noise floor sits below the implementation's.
long double pochhammer_direct(long double x, long long n) {
    long double p = 1.0L;
    for (long long i = 0; i < n; ++i) p *= (x + i);
    return p;
}

void fa_recurse(int level, int vars, const std::vector<int>& caps,
                const std::vector<double>& uppers, const std::vector<double>& lowers,
                const std::vector<double>& xs, double a, std::vector<int>& idx,
                long double& sum) {
    if (level == vars) {
        long long total = 0;
        long double term = 1.0L;
        for (int i = 0; i < vars; ++i) {
            total += idx[i];
            term *= pochhammer_direct(uppers[i], idx[i]) *
                    std::pow((long double)xs[i], (long double)idx[i]) /
                    (pochhammer_direct(lowers[i], idx[i]) *
                     std::tgamma((long double)idx[i] + 1.0L));
        }
        sum += pochhammer_direct(a, total) * term;
        return;
    }
    for (int j = 0; j <= caps[level]; ++j) {
        idx[level] = j;
        fa_recurse(level + 1, vars, caps, uppers, lowers, xs, a, idx, sum);
    }
}

double lauricella_brute(int p, double mu, double beta, const std::vector<int>& degrees,
                        const std::vector<double>& params,
                        const std::vector<double>& args) {
    int vars = static_cast<int>(degrees.size()) + 1;
    std::vector<int> caps(degrees.begin(), degrees.end());
    caps.push_back(p);
    std::vector<double> uppers, lowers, xs;
    for (size_t i = 0; i < degrees.size(); ++i) {
        uppers.push_back(-static_cast<double>(degrees[i]));
        lowers.push_back(params[i] + 1.0);
        xs.push_back(args[i]);
    }
    uppers.push_back(-static_cast<double>(p));
    lowers.push_back(beta + 1.0);
    xs.push_back(1.0);

    long double fa = 0.0L;
    std::vector<int> idx(vars, 0);
    fa_recurse(0, vars, caps, uppers, lowers, xs, mu + beta + 1.0, idx, fa);

    long double pref = std::tgamma((long double)beta + 1.0L + mu) /
                       std::tgamma((long double)beta + 1.0L);
    for (size_t i = 0; i < degrees.size(); ++i) {
        pref *= std::exp(std::lgamma((long double)degrees[i] + params[i] + 1.0L) -
                         std::lgamma((long double)degrees[i] + 1.0L) -
                         std::lgamma((long double)params[i] + 1.0L));
    }
    return static_cast<double>(pref * fa);
}

} // namespace

TEST(Lauricella, DegenerateAllZeroDegrees) {
    // All degrees 0, p = 0: only the constant term survives, A = (beta+1)_mu.
    auto res = sf::lauricella_a_coeff(0, 2.5, 0.0, {0, 0}, {0.3, 0.7}, {0.5, 0.25});
    EXPECT_NEAR(res.value, std::tgamma(3.5), 1e-12 * std::tgamma(3.5));
    EXPECT_EQ(res.diagnostics.terms_used, 1);
}

TEST(Lauricella, TwoVariableClosedSum) {
    // degrees {1,1}: direct enumeration over (j1, j2) in {0,1}^2.
    double mu = 1.7, a = mu + 1.0, k = 0.9, t = 0.35;
    double expected = 1.0 + a * (-1.0) * t / (k + 1.0) * 2.0 +
                      a * (a + 1.0) * t * t / ((k + 1.0) * (k + 1.0));
    expected *= std::tgamma(1.0 + mu);
    expected *= std::pow(std::exp(std::lgamma(k + 2.0) - std::lgamma(k + 1.0)), 2.0); // binom(1+k,1)^2
    auto res = sf::lauricella_a_coeff(0, mu, 0.0, {1, 1}, {k, k}, {t, t});
    EXPECT_NEAR(res.value, expected, 1e-12 * std::abs(expected));
}

TEST(Lauricella, BruteForceOracle) {
    struct Case {
        int p;
        double mu, beta;
        std::vector<int> degrees;
        std::vector<double> params;
        std::vector<double> args;
    };
    std::vector<Case> cases = {
        {0, 1.5, 0.0, {2, 2}, {0.5, 0.5}, {0.5, 0.5}},
        {3, 2.25, 0.0, {1, 2, 1}, {0.9, 1.4, 2.0}, {0.2, 0.4, 0.1}},
        {2, 0.75, 0.5, {3, 1}, {1.9, 0.4}, {0.3, 0.9}},
        {5, 4.0, 0.0, {2, 2, 2, 2}, {1.4, 1.4, 2.4, 2.4}, {0.25, 0.25, 0.2, 0.2}},
        {1, 3.1, 1.0, {4}, {0.6}, {0.45}},
    };
    for (const auto& c : cases) {
        long long budget = 1;
        for (int d : c.degrees) budget *= (d + 1);
        budget *= (c.p + 1);
        ASSERT_LE(budget, 10000);
        double brute = lauricella_brute(c.p, c.mu, c.beta, c.degrees, c.params, c.args);
        auto res = sf::lauricella_a_coeff(c.p, c.mu, c.beta, c.degrees, c.params, c.args);
        EXPECT_NEAR(res.value, brute, 1e-12 * std::max(std::abs(brute), 1e-30));
        auto log_res =
            sf::lauricella_a_coeff_log(c.p, c.mu, c.beta, c.degrees, c.params, c.args);
        EXPECT_NEAR(log_res.value.to_double(), brute,
                    1e-11 * std::max(std::abs(brute), 1e-30));
    }
}

TEST(Lauricella, Deterministic) {
    auto once = sf::lauricella_a_coeff(2, 1.9, 0.0, {2, 1}, {0.7, 1.2}, {0.4, 0.3});
    auto twice = sf::lauricella_a_coeff(2, 1.9, 0.0, {2, 1}, {0.7, 1.2}, {0.4, 0.3});
    EXPECT_EQ(once.value, twice.value);
}

TEST(Lauricella, BudgetError) {
    std::vector<int> degrees(8, 9);
    std::vector<double> params(8, 0.5);
    std::vector<double> args(8, 0.5);
    EXPECT_THROW(sf::lauricella_a_coeff(9, 1.0, 0.0, degrees, params, args, 1000),
                 sf::BudgetError);
}

TEST(Lauricella, LogSpaceMatchesLinear) {
    auto lin = sf::lauricella_a_coeff(1, 2.5, 0.0, {2, 2}, {1.5, 1.5}, {0.5, 0.5});
    auto lg = sf::lauricella_a_coeff_log(1, 2.5, 0.0, {2, 2}, {1.5, 1.5}, {0.5, 0.5});
    EXPECT_NEAR(lg.value.to_double(), lin.value, 1e-12 * std::abs(lin.value));
}

TEST(Lauricella, LogSpaceHandlesHugeParameters) {
    // Parameters large enough that the linear path overflows its prefactor.
    std::vector<int> degrees(6, 1);
    std::vector<double> params(6, 216.7);
    std::vector<double> args(6, 1.0 / 3.0);
    auto lg = sf::lauricella_a_coeff_log(0, 650.6, 0.0, degrees, params, args);
    EXPECT_EQ(lg.value.sign, 1);
    EXPECT_TRUE(std::isfinite(lg.value.log_abs));
}

TEST(SignedLogAccumulator, CancellationTracksPeak) {
    sf::SignedLogAccumulator acc;
    acc.add(std::log(1e8), 1);
    acc.add(std::log(1e8), -1);
    acc.add(0.0, 1); // + 1
    auto v = acc.value();
    EXPECT_EQ(v.sign, 1);
    EXPECT_NEAR(v.log_abs, 0.0, 1e-9);
    EXPECT_GT(acc.max_partial_log(), std::log(1e7));
}
