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

#include "qcr/measures.hpp"

#include <algorithm>
#include <cmath>

namespace qcr::measures {

namespace {

using quadrature::Options;
using quadrature::Result;

double radial_cutoff(const JointDensity& rho, const QuadratureConfig& cfg) {
    return cfg.tail_factor * rho.radial_tail_scale;
}

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Deterministic profile maximum: coarse scan then golden-section refinement
// inside the best bracket.
double profile_max(const std::function<double(double)>& f, double lo, double hi,
                   int scan_points) {
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i <= scan_points; ++i) {
        double x = lo + (hi - lo) * i / scan_points;
        double v = f(x);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    double a = lo + (hi - lo) * std::max(0, best_i - 1) / scan_points;
    double b = lo + (hi - lo) * std::min(scan_points, best_i + 1) / scan_points;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * (hi - lo); ++it) {
        if (f(c) > f(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    double mid = 0.5 * (a + b);
    return std::max(best, f(mid));
}

struct LogMoment {
    double log_value;
    double rel_error;
    long long evaluations;
    bool converged;
};

// ln of int_0^rmax radial(r)^alpha r^2 dr, computed with the profile peak
// factored out so large alpha cannot overflow.
LogMoment radial_moment_log(const JointDensity& rho, double alpha,
                            const QuadratureConfig& cfg) {
    double rmax = radial_cutoff(rho, cfg);
    double scale = profile_max(rho.radial, 0.0, rmax, 512);
    if (!(scale > 0.0)) scale = 1.0;
    Options opt{cfg.rel_tol, cfg.abs_tol, 4000};
    Result res = quadrature::integrate(
        [&](double r) {
            double v = rho.radial(r) / scale;
            return (v > 0.0 ? std::pow(v, alpha) : 0.0) * r * r;
        },
        0.0, rmax, opt, rho.radial_breakpoints);
    LogMoment lm;
    lm.log_value = alpha * std::log(scale) + std::log(res.value);
    lm.rel_error = res.value > 0.0 ? res.abs_error / res.value : res.abs_error;
    lm.evaluations = res.evaluations;
    lm.converged = res.converged;
    return lm;
}

// ln of the angular factor 2 pi int polar(theta)^alpha sin(theta) dtheta,
// integrated in x = cos(theta) with order doubling. Fractional powers of a
// profile with interior zeros leave integrable kinks that defeat the
// Gauss-Legendre rate; those cases fall back to the adaptive rule split at
// the detected zeros.
LogMoment polar_moment_log(const JointDensity& rho, double alpha,
                           const QuadratureConfig& cfg) {
    double scale = profile_max(rho.polar, 0.0, M_PI, 256);
    if (!(scale > 0.0)) scale = 1.0;
    auto integrand = [&](double x) {
        double v = rho.polar(std::acos(std::clamp(x, -1.0, 1.0))) / scale;
        return v > 0.0 ? std::pow(v, alpha) : 0.0;
    };
    Result res = quadrature::gauss_legendre_doubling(integrand, -1.0, 1.0,
                                                     cfg.angular_start_order,
                                                     cfg.angular_rel_tol);
    if (!res.converged) {
        std::vector<double> kinks;
        double prev = integrand(-1.0);
        for (int i = 1; i <= 512; ++i) {
            double x = -1.0 + 2.0 * i / 512.0;
            double cur = integrand(x);
            // local minima near zero mark the profile's zero crossings
            if (i >= 2 && cur > prev && prev < 1e-6) {
                kinks.push_back(-1.0 + 2.0 * (i - 1) / 512.0);
            }
            prev = cur;
        }
        Options opt{cfg.angular_rel_tol, cfg.abs_tol, 4000};
        Result adaptive = quadrature::integrate(integrand, -1.0, 1.0, opt, kinks);
        adaptive.evaluations += res.evaluations;
        res = adaptive;
    }
    LogMoment lm;
    lm.log_value = alpha * std::log(scale) + std::log(2.0 * M_PI * res.value);
    lm.rel_error = res.value > 0.0 ? res.abs_error / res.value : res.abs_error;
    lm.evaluations = res.evaluations;
    lm.converged = res.converged;
    return lm;
}

// Fallback for non-separable densities: nested quadrature of rho^alpha.
LogMoment full_moment_log(const JointDensity& rho, double alpha,
                          const QuadratureConfig& cfg) {
    double rmax = radial_cutoff(rho, cfg);
    long long evals = 0;
    bool converged = true;

    auto theta_slice = [&](double r, double power) {
        Result inner = quadrature::gauss_legendre_doubling(
            [&](double x) {
                double theta = std::acos(std::clamp(x, -1.0, 1.0));
                if (rho.phi_uniform) {
                    double v = rho.evaluator(r, theta, 0.0);
                    return v > 0.0 ? std::pow(v, power) : 0.0;
                }
                Result phi = quadrature::gauss_legendre_doubling(
                    [&](double ph) {
                        double v = rho.evaluator(r, theta, ph);
                        return v > 0.0 ? std::pow(v, power) : 0.0;
                    },
                    0.0, 2.0 * M_PI, cfg.angular_start_order, cfg.angular_rel_tol);
                evals += phi.evaluations;
                converged = converged && phi.converged;
                return phi.value / (2.0 * M_PI);
            },
            -1.0, 1.0, cfg.angular_start_order, cfg.angular_rel_tol);
        evals += inner.evaluations;
        converged = converged && inner.converged;
        return inner.value;
    };

    Options opt{cfg.rel_tol, cfg.abs_tol, 2000};
    Result res = quadrature::integrate(
        [&](double r) { return theta_slice(r, alpha) * r * r; }, 0.0, rmax, opt,
        rho.radial_breakpoints);
    evals += res.evaluations;
    LogMoment lm;
    lm.log_value = std::log(2.0 * M_PI * res.value);
    lm.rel_error = res.value > 0.0 ? res.abs_error / res.value : res.abs_error;
    lm.evaluations = evals;
    lm.converged = converged && res.converged;
    return lm;
}

LogMoment moment_log(const JointDensity& rho, double alpha,
                     const QuadratureConfig& cfg) {
    if (rho.separable && rho.radial && rho.polar) {
        LogMoment r = radial_moment_log(rho, alpha, cfg);
        LogMoment a = polar_moment_log(rho, alpha, cfg);
        return {r.log_value + a.log_value, r.rel_error + a.rel_error,
                r.evaluations + a.evaluations, r.converged && a.converged};
    }
    return full_moment_log(rho, alpha, cfg);
}

MeasureValue from_log_moment(const LogMoment& lm) {
    MeasureValue mv;
    mv.value = std::exp(lm.log_value);
    mv.method = Method::quadrature;
    mv.abs_error_estimate = std::abs(mv.value) * lm.rel_error;
    specfun::SeriesDiagnostics diag;
    diag.terms_used = lm.evaluations;
    diag.truncation_flag = !lm.converged;
    if (!lm.converged) mv.abs_error_estimate = std::abs(mv.value) * std::sqrt(lm.rel_error);
    mv.diagnostics = diag;
    return mv;
}

double shannon_value(const JointDensity& rho, const QuadratureConfig& cfg,
                     double& rel_err, long long& evals, bool& converged) {
    Options opt{cfg.rel_tol, cfg.abs_tol, 4000};
    if (rho.separable && rho.radial && rho.polar) {
        double rmax = radial_cutoff(rho, cfg);
        Result rr = quadrature::integrate(
            [&](double r) { return -xlnx(rho.radial(r)) * r * r; }, 0.0, rmax, opt,
            rho.radial_breakpoints);
        Result aa = quadrature::gauss_legendre_doubling(
            [&](double x) {
                return -xlnx(rho.polar(std::acos(std::clamp(x, -1.0, 1.0))));
            },
            -1.0, 1.0, cfg.angular_start_order, cfg.angular_rel_tol);
        double s = rr.value + 2.0 * M_PI * aa.value;
        rel_err = (rr.abs_error + 2.0 * M_PI * aa.abs_error) /
                  std::max(std::abs(s), 1e-300);
        evals = rr.evaluations + aa.evaluations;
        converged = rr.converged && aa.converged;
        return s;
    }
    double rmax = radial_cutoff(rho, cfg);
    long long inner_evals = 0;
    bool inner_conv = true;
    Result res = quadrature::integrate(
        [&](double r) {
            Result inner = quadrature::gauss_legendre_doubling(
                [&](double x) {
                    double theta = std::acos(std::clamp(x, -1.0, 1.0));
                    return -xlnx(rho.evaluator(r, theta, 0.0));
                },
                -1.0, 1.0, cfg.angular_start_order, cfg.angular_rel_tol);
            inner_evals += inner.evaluations;
            inner_conv = inner_conv && inner.converged;
            return inner.value * r * r;
        },
        0.0, rmax, opt, rho.radial_breakpoints);
    double s = 2.0 * M_PI * res.value;
    rel_err = res.abs_error / std::max(std::abs(res.value), 1e-300);
    evals = res.evaluations + inner_evals;
    converged = res.converged && inner_conv;
    return s;
}

MeasureValue renyi_impl(const JointDensity& rho, Order alpha,
                        const QuadratureConfig& cfg) {
    MeasureValue mv;
    mv.method = Method::quadrature;
    specfun::SeriesDiagnostics diag;
    if (alpha.shannon_limit) {
        double rel_err = 0.0;
        long long evals = 0;
        bool converged = true;
        mv.value = shannon_value(rho, cfg, rel_err, evals, converged);
        mv.abs_error_estimate = std::abs(mv.value) * rel_err;
        diag.terms_used = evals;
        diag.truncation_flag = !converged;
    } else {
        LogMoment lm = moment_log(rho, alpha.value, cfg);
        mv.value = lm.log_value / (1.0 - alpha.value);
        mv.abs_error_estimate = lm.rel_error / std::abs(1.0 - alpha.value);
        diag.terms_used = lm.evaluations;
        diag.truncation_flag = !lm.converged;
        if (!lm.converged) mv.abs_error_estimate = std::sqrt(mv.abs_error_estimate);
    }
    mv.diagnostics = diag;
    return mv;
}

} // namespace

MeasureValue entropic_moment(const JointDensity& rho, Order alpha,
                             const QuadratureConfig& cfg) {
    if (alpha.shannon_limit) {
        // I^(1) is the normalization integral.
        return from_log_moment(moment_log(rho, 1.0, cfg));
    }
    return from_log_moment(moment_log(rho, alpha.value, cfg));
}

MeasureValue renyi(const JointDensity& rho, Order alpha, const QuadratureConfig& cfg) {
    return renyi_impl(rho, alpha, cfg);
}

MeasureValue shannon(const JointDensity& rho, const QuadratureConfig& cfg) {
    return renyi_impl(rho, Order(1.0), cfg);
}

MeasureValue tsallis(const JointDensity& rho, Order alpha, const QuadratureConfig& cfg) {
    if (alpha.shannon_limit) {
        return shannon(rho, cfg); // documented alpha -> 1 limit
    }
    MeasureValue moment = entropic_moment(rho, alpha, cfg);
    MeasureValue mv = moment;
    mv.value = (1.0 - moment.value) / (alpha.value - 1.0);
    mv.abs_error_estimate = moment.abs_error_estimate / std::abs(alpha.value - 1.0);
    return mv;
}

double tsallis_from_renyi(double renyi_value, double alpha) {
    if (alpha == 1.0) {
        throw std::domain_error("tsallis_from_renyi: alpha = 1 has no conversion; "
                                "both reduce to the Shannon entropy");
    }
    return (std::exp((1.0 - alpha) * renyi_value) - 1.0) / (1.0 - alpha);
}

double renyi_from_tsallis(double tsallis_value, double alpha) {
    if (alpha == 1.0) {
        throw std::domain_error("renyi_from_tsallis: alpha = 1 has no conversion; "
                                "both reduce to the Shannon entropy");
    }
    return std::log1p((1.0 - alpha) * tsallis_value) / (1.0 - alpha);
}

MeasureValue renyi_length(const JointDensity& rho, Order alpha,
                          const QuadratureConfig& cfg) {
    MeasureValue r = renyi_impl(rho, alpha, cfg);
    MeasureValue mv = r;
    mv.value = std::cbrt(3.0 / (4.0 * M_PI)) * std::exp(r.value / 3.0);
    mv.abs_error_estimate = mv.value * r.abs_error_estimate / 3.0;
    return mv;
}

MeasureValue disequilibrium(const JointDensity& rho, const QuadratureConfig& cfg) {
    MeasureValue r2 = renyi_impl(rho, Order(2.0), cfg);
    MeasureValue mv = r2;
    mv.value = std::exp(-r2.value);
    mv.abs_error_estimate = mv.value * r2.abs_error_estimate;
    return mv;
}

MeasureValue rcr(const JointDensity& f, const JointDensity& g, Order alpha,
                 Order beta, const QuadratureConfig& cfg) {
    MeasureValue rf = renyi_impl(f, alpha, cfg);
    MeasureValue rg = renyi_impl(g, beta, cfg);
    MeasureValue mv;
    mv.method = Method::quadrature;
    mv.value = std::exp(rf.value - rg.value);
    mv.abs_error_estimate =
        mv.value * (rf.abs_error_estimate + rg.abs_error_estimate);
    specfun::SeriesDiagnostics diag;
    if (rf.diagnostics) diag.terms_used += rf.diagnostics->terms_used;
    if (rg.diagnostics) diag.terms_used += rg.diagnostics->terms_used;
    diag.truncation_flag = (rf.diagnostics && rf.diagnostics->truncation_flag) ||
                           (rg.diagnostics && rg.diagnostics->truncation_flag);
    mv.diagnostics = diag;
    return mv;
}

MeasureValue grc(const JointDensity& rho, Order alpha, Order beta,
                 const QuadratureConfig& cfg) {
    return rcr(rho, rho, alpha, beta, cfg);
}

MeasureValue src(const JointDensity& rho, Order alpha, const QuadratureConfig& cfg) {
    return grc(rho, alpha, Order(2.0), cfg);
}

MeasureValue lmc(const JointDensity& rho, const QuadratureConfig& cfg) {
    return grc(rho, Order(1.0), Order(2.0), cfg);
}

MeasureValue structural_entropy(const JointDensity& rho, const QuadratureConfig& cfg) {
    MeasureValue r1 = renyi_impl(rho, Order(1.0), cfg);
    MeasureValue r2 = renyi_impl(rho, Order(2.0), cfg);
    MeasureValue mv;
    mv.method = Method::quadrature;
    mv.value = r1.value - r2.value;
    mv.abs_error_estimate = r1.abs_error_estimate + r2.abs_error_estimate;
    return mv;
}

double bound_b(int D, double alpha) {
    if (D < 1) throw std::domain_error("bound_b: dimension must be positive");
    double lo = static_cast<double>(D) / (D + 2.0);
    if (!(alpha > lo)) {
        throw std::domain_error("bound_b: requires alpha > D/(D+2)");
    }
    double d = static_cast<double>(D);
    if (alpha == 1.0) {
        return 0.5 * d * std::log(2.0 * M_PI * M_E);
    }
    double q = (2.0 + d) * alpha - d;
    if (alpha < 1.0) {
        double om = 1.0 - alpha;
        return 0.5 * d * std::log(M_PI * q / om) -
               (alpha / om) * std::log(q / (2.0 * alpha)) -
               (std::lgamma(alpha / om) - std::lgamma(q / (2.0 * om)));
    }
    double am = alpha - 1.0;
    return 0.5 * d * std::log(M_PI * q / am) +
           (alpha / am) * std::log(q / (2.0 * alpha)) +
           (std::lgamma(alpha / am) - std::lgamma(q / (2.0 * am)));
}

double mean_r_squared(const JointDensity& rho, const QuadratureConfig& cfg) {
    double rmax = radial_cutoff(rho, cfg);
    Options opt{cfg.rel_tol, cfg.abs_tol, 4000};
    if (rho.separable && rho.radial) {
        Result res = quadrature::integrate(
            [&](double r) { return rho.radial(r) * r * r * r * r; }, 0.0, rmax, opt,
            rho.radial_breakpoints);
        return res.value;
    }
    Result res = quadrature::integrate(
        [&](double r) {
            Result inner = quadrature::gauss_legendre_doubling(
                [&](double x) {
                    return rho.evaluator(r, std::acos(std::clamp(x, -1.0, 1.0)), 0.0);
                },
                -1.0, 1.0, cfg.angular_start_order, cfg.angular_rel_tol);
            return 2.0 * M_PI * inner.value * r * r * r * r;
        },
        0.0, rmax, opt, rho.radial_breakpoints);
    return res.value;
}

double sup_norm(const JointDensity& rho) {
    if (rho.sup_hint) return *rho.sup_hint;
    QuadratureConfig cfg;
    double rmax = radial_cutoff(rho, cfg);
    if (rho.separable && rho.radial && rho.polar) {
        return profile_max(rho.radial, 0.0, rmax, 1024) *
               profile_max(rho.polar, 0.0, M_PI, 512);
    }
    double best = 0.0;
    for (int i = 0; i <= 512; ++i) {
        double r = rmax * i / 512.0;
        for (int j = 0; j <= 64; ++j) {
            double theta = M_PI * j / 64.0;
            best = std::max(best, rho.evaluator(r, theta, 0.0));
        }
    }
    return best;
}

BoundValue rcr_upper_bound(const JointDensity& f, const JointDensity& g,
                           Order alpha, Order beta, int D,
                           const QuadratureConfig& cfg) {
    BoundValue bv;
    double sup_g = sup_norm(g);
    bv.sup_norm_from_grid = !g.sup_hint.has_value();

    double gfun;
    if (beta.value < 1.0) {
        gfun = std::pow(sup_g, -beta.value / (1.0 - beta.value));
    } else if (beta.value == 1.0) {
        // As printed: squared disequilibrium over sqrt of the order-3 entropy.
        bv.beta_one_form = true;
        double d_g = disequilibrium(g, cfg).value;
        double r3 = renyi_impl(g, Order(3.0), cfg).value;
        gfun = d_g * d_g / std::sqrt(r3);
    } else {
        gfun = sup_g;
    }

    double r2 = mean_r_squared(f, cfg);
    bv.value = std::min(gfun, sup_g) * std::pow(r2 / D, 0.5 * D) *
               std::exp(bound_b(D, alpha.value));
    return bv;
}

} // namespace qcr::measures
