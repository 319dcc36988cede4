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

#include "qcr/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qcr/specfun.hpp"

namespace qcr::states {

using specfun::assoc_laguerre;
using specfun::assoc_legendre_abs;
using specfun::ln_gamma;
using specfun::regularized_lower_gamma;

void PseudoharmonicParams::validate() const {
    if (!(De > 0.0 && re > 0.0 && mu > 0.0 && hbar > 0.0)) {
        throw std::domain_error("PseudoharmonicParams: all parameters must be positive");
    }
}

void QuantumNumbers::validate() const {
    if (n < 0 || l < 0 || std::abs(m) > l) {
        throw std::domain_error("QuantumNumbers: require n >= 0, l >= 0, |m| <= l");
    }
}

void check_lambda_domain(double lambda) {
    if (!(lambda < -2.0 || lambda > 1.0)) {
        throw std::domain_error("isospectral parameter lambda = " + std::to_string(lambda) +
                                " outside (-inf,-2) U (1,inf)");
    }
}

DerivedParams derive(const PseudoharmonicParams& params, int l) {
    params.validate();
    if (l < 0) throw std::domain_error("derive: l must be >= 0");
    DerivedParams d;
    d.a = std::sqrt(2.0 * params.mu * params.De) / (params.hbar * params.re);
    double are2 = d.a * params.re * params.re;
    d.L = -0.5 + std::sqrt(l * (l + 1.0) + 0.25 + are2 * are2);
    d.omega_r = std::sqrt(params.De / (2.0 * params.mu * params.re * params.re));
    return d;
}

double energy(const PseudoharmonicParams& params, const QuantumNumbers& qn) {
    qn.validate();
    DerivedParams d = derive(params, qn.l);
    return params.hbar * d.omega_r * (4.0 * qn.n + 2.0 * d.L + 3.0) - 2.0 * params.De;
}

double energy_spacing(const PseudoharmonicParams& params) {
    params.validate();
    return 2.0 * params.hbar *
           std::sqrt(2.0 * params.De / (params.mu * params.re * params.re));
}

double pho_potential(const PseudoharmonicParams& params, double r) {
    params.validate();
    if (!(r > 0.0)) throw std::domain_error("pho_potential: r must be positive");
    double u = r / params.re - params.re / r;
    return params.De * u * u;
}

double iso_potential(const PseudoharmonicParams& params, int l, double lambda,
                     double r) {
    check_lambda_domain(lambda);
    if (!(r > 0.0)) throw std::domain_error("iso_potential: r must be positive");
    DerivedParams d = derive(params, l);
    double s = d.L + 1.5;
    double z = d.a * r * r;
    double P = regularized_lower_gamma(s, z);
    // dI/dr = 2 a r z^{s-1} e^{-z} / Gamma(s); the second derivative carries
    // the extra (2s - 1 - 2z) bracket.
    double efac = std::exp((s - 1.0) * std::log(z) - z - ln_gamma(s));
    double i1 = 2.0 * d.a * r * efac;
    double i2 = 2.0 * d.a * efac * (2.0 * s - 1.0 - 2.0 * z);
    double denom = lambda + P;
    double correction = (i2 * denom - i1 * i1) / (denom * denom);
    return pho_potential(params, r) -
           (params.hbar * params.hbar / params.mu) * correction;
}

double sph_harm_sq(int l, int m, double theta) {
    if (l < 0 || std::abs(m) > l) {
        throw std::domain_error("sph_harm_sq: require l >= 0 and |m| <= l");
    }
    if (theta < 0.0 || theta > M_PI) {
        throw std::domain_error("sph_harm_sq: theta must lie in [0, pi]");
    }
    int am = std::abs(m);
    double norm_log = std::log(2.0 * l + 1.0) + ln_gamma(l - am + 1.0) -
                      std::log(4.0 * M_PI) - ln_gamma(l + am + 1.0);
    double p = assoc_legendre_abs(l, am, std::cos(theta));
    return std::exp(norm_log) * p * p;
}

namespace {

struct RadialContext {
    double a;
    double L;
    double s; // L + 3/2
};

RadialContext radial_context(const PseudoharmonicParams& params, int l) {
    DerivedParams d = derive(params, l);
    return {d.a, d.L, d.L + 1.5};
}

// Initial quadrature panels bracketing the density peak; without them a
// narrow molecular profile can sit entirely inside one Kronrod panel.
std::vector<double> seed_breakpoints(double tail_scale) {
    std::vector<double> pts;
    for (double f : {0.15, 0.3, 0.45, 0.6, 0.8, 1.0, 1.25, 1.6, 2.0, 3.0, 4.5, 7.0}) {
        pts.push_back(f * tail_scale);
    }
    return pts;
}

// ln of the squared pseudoharmonic radial normalization a N_n^2.
double pho_norm_sq_log(const RadialContext& c, int n) {
    return std::log(2.0) + 1.5 * std::log(c.a) + ln_gamma(n + 1.0) - ln_gamma(n + c.s);
}

// G(z) = L_n^{L+1/2}(z) - z^s e^{-z} L_{n-1}^{L+3/2}(z) / (n Gamma(s) (lambda + P));
// the isospectral radial density is its square times the n = 0 envelope.
double iso_g_factor(const RadialContext& c, int n, double lambda, double z) {
    double P = regularized_lower_gamma(c.s, z);
    double ln_val = assoc_laguerre(n, c.L + 0.5, z);
    double w = std::exp(c.s * std::log(z) - z - ln_gamma(c.s)) / n *
               assoc_laguerre(n - 1, c.L + 1.5, z);
    return ln_val - w / (lambda + P);
}

} // namespace

double radial_wavefunction_pho(const PseudoharmonicParams& params,
                               const QuantumNumbers& qn, double r) {
    qn.validate();
    RadialContext c = radial_context(params, qn.l);
    if (!(r > 0.0)) return 0.0;
    double z = c.a * r * r;
    // sqrt(a) N_n e^{-z/2} z^{L/2} L_n^{L+1/2}(z)
    double log_env = 0.5 * pho_norm_sq_log(c, qn.n) - 0.5 * z + 0.5 * c.L * std::log(z);
    return std::exp(log_env) * assoc_laguerre(qn.n, c.L + 0.5, z);
}

double radial_wavefunction_iso(const PseudoharmonicParams& params,
                               const QuantumNumbers& qn, double lambda, double r) {
    qn.validate();
    check_lambda_domain(lambda);
    RadialContext c = radial_context(params, qn.l);
    if (!(r > 0.0)) return 0.0;
    double z = c.a * r * r;
    double P = regularized_lower_gamma(c.s, z);
    double sign_lp = lambda + P > 0.0 ? 1.0 : -1.0;
    // sqrt(Omega) = sqrt(2 a^{3/2} / Gamma(s)) z^{L/2} e^{-z/2} / |lambda + P|
    double log_sqrt_omega = 0.5 * (std::log(2.0) + 1.5 * std::log(c.a) - ln_gamma(c.s)) +
                            0.5 * c.L * std::log(z) - 0.5 * z -
                            std::log(std::abs(lambda + P));
    if (qn.n == 0) {
        double c0 = std::sqrt(lambda * (lambda + 1.0));
        return c0 * std::exp(log_sqrt_omega);
    }
    double cn_log = 0.5 * (ln_gamma(qn.n + 1.0) + ln_gamma(c.s) - ln_gamma(qn.n + c.s));
    double phi_over_lp = sign_lp * iso_g_factor(c, qn.n, lambda, z);
    // psi = C_n sqrt(Omega) Phi_n with Phi_n = (lambda + P) G.
    return std::exp(cn_log + log_sqrt_omega + std::log(std::abs(lambda + P))) *
           phi_over_lp;
}

JointDensity rho_pho(const PseudoharmonicParams& params, const QuantumNumbers& qn) {
    qn.validate();
    RadialContext c = radial_context(params, qn.l);
    int n = qn.n, l = qn.l, m = qn.m;
    double norm_log = pho_norm_sq_log(c, n);

    JointDensity rho;
    rho.radial = [c, n, norm_log](double r) {
        if (!(r > 0.0)) return 0.0;
        double z = c.a * r * r;
        double lag = assoc_laguerre(n, c.L + 0.5, z);
        double log_env = norm_log - z + c.L * std::log(z);
        return std::exp(log_env) * lag * lag;
    };
    rho.polar = [l, m](double theta) { return sph_harm_sq(l, m, theta); };
    rho.evaluator = [rad = rho.radial, pol = rho.polar](double r, double theta,
                                                        double /*phi*/) {
        return rad(r) * pol(theta);
    };
    rho.radial_tail_scale = std::sqrt((2.0 * n + c.L + 3.0) / c.a);
    rho.radial_breakpoints = seed_breakpoints(rho.radial_tail_scale);
    return rho;
}

JointDensity rho_iso(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                     double lambda) {
    qn.validate();
    check_lambda_domain(lambda);
    RadialContext c = radial_context(params, qn.l);
    int n = qn.n, l = qn.l, m = qn.m;

    JointDensity rho;
    if (n == 0) {
        double pref_log = std::log(2.0) + 1.5 * std::log(c.a) +
                          std::log(lambda * (lambda + 1.0)) - ln_gamma(c.s);
        rho.radial = [c, lambda, pref_log](double r) {
            if (!(r > 0.0)) return 0.0;
            double z = c.a * r * r;
            double P = regularized_lower_gamma(c.s, z);
            double lp = lambda + P;
            return std::exp(pref_log - z + c.L * std::log(z)) / (lp * lp);
        };
    } else {
        // 2 a^{3/2} C_n^2 / Gamma(s) envelope times G^2.
        double pref_log = std::log(2.0) + 1.5 * std::log(c.a) + ln_gamma(n + 1.0) -
                          ln_gamma(n + c.s);
        rho.radial = [c, n, lambda, pref_log](double r) {
            if (!(r > 0.0)) return 0.0;
            double z = c.a * r * r;
            double g = iso_g_factor(c, n, lambda, z);
            return std::exp(pref_log - z + c.L * std::log(z)) * g * g;
        };
    }
    rho.polar = [l, m](double theta) { return sph_harm_sq(l, m, theta); };
    rho.evaluator = [rad = rho.radial, pol = rho.polar](double r, double theta,
                                                        double /*phi*/) {
        return rad(r) * pol(theta);
    };
    rho.radial_tail_scale = std::sqrt((2.0 * n + c.L + 3.0) / c.a);
    rho.radial_breakpoints = seed_breakpoints(rho.radial_tail_scale);
    return rho;
}

} // namespace qcr::states
