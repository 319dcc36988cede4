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

#ifndef QCR_MEASURES_HPP
#define QCR_MEASURES_HPP

#include <optional>

#include "qcr/quadrature.hpp"
#include "qcr/specfun.hpp"
#include "qcr/states.hpp"

namespace qcr::measures {

using states::JointDensity;

/// Entropy order; the Shannon branch is taken exactly when value == 1.
struct Order {
    double value;
    bool shannon_limit;

    Order(double v) : value(v), shannon_limit(v == 1.0) { // NOLINT(implicit)
        if (!(v > 0.0)) throw std::domain_error("Order: value must be positive");
    }
};

enum class Method { quadrature, closed, exact };

struct MeasureValue {
    double value = 0.0;
    Method method = Method::quadrature;
    double abs_error_estimate = 0.0;
    std::optional<specfun::SeriesDiagnostics> diagnostics;
};

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int angular_start_order = 64;
    double angular_rel_tol = 1e-11;
    double tail_factor = 12.0; // radial cutoff at tail_factor * radial_tail_scale
};

/// I^(alpha) = integral of rho^alpha over R^3, by adaptive Gauss-Kronrod in r
/// and Gauss-Legendre (order doubling) in cos(theta); phi contributes a 2*pi
/// factor when the density is phi-uniform. Non-convergence is reported via an
/// inflated error estimate and diagnostics.truncation_flag.
MeasureValue entropic_moment(const JointDensity& rho, Order alpha,
                             const QuadratureConfig& cfg = {});

/// Renyi entropy: ln(I^(alpha))/(1-alpha) for alpha != 1, Shannon integral
/// -int rho ln rho for alpha == 1. Negative values are legal outputs.
MeasureValue renyi(const JointDensity& rho, Order alpha,
                   const QuadratureConfig& cfg = {});

MeasureValue shannon(const JointDensity& rho, const QuadratureConfig& cfg = {});

/// Tsallis entropy (1 - I^(alpha))/(alpha - 1); alpha == 1 returns the
/// Shannon value (the alpha -> 1 limit).
MeasureValue tsallis(const JointDensity& rho, Order alpha,
                     const QuadratureConfig& cfg = {});

/// Conversions between the two generalized entropies; domain error at alpha = 1.
double tsallis_from_renyi(double renyi_value, double alpha);
double renyi_from_tsallis(double tsallis_value, double alpha);

/// Renyi length (3/(4 pi))^(1/3) exp(R/3); alpha == 1 uses the Shannon power.
MeasureValue renyi_length(const JointDensity& rho, Order alpha,
                          const QuadratureConfig& cfg = {});

/// Disequilibrium exp(-R^(2)).
MeasureValue disequilibrium(const JointDensity& rho, const QuadratureConfig& cfg = {});

/// Renyi complexity ratio exp(R_f^(alpha) - R_g^(beta)).
MeasureValue rcr(const JointDensity& f, const JointDensity& g, Order alpha,
                 Order beta, const QuadratureConfig& cfg = {});

/// Generalized Renyi complexity rcr(rho, rho, alpha, beta), shape complexity
/// (beta = 2), LMC (alpha = 1, beta = 2) and structural entropy R1 - R2.
MeasureValue grc(const JointDensity& rho, Order alpha, Order beta,
                 const QuadratureConfig& cfg = {});
MeasureValue src(const JointDensity& rho, Order alpha, const QuadratureConfig& cfg = {});
MeasureValue lmc(const JointDensity& rho, const QuadratureConfig& cfg = {});
MeasureValue structural_entropy(const JointDensity& rho,
                                const QuadratureConfig& cfg = {});

/// Renyi entropic bound B_D(alpha); three branches meeting continuously at
/// alpha = 1. Domain: alpha > D/(D+2).
double bound_b(int D, double alpha);

struct BoundValue {
    double value = 0.0;
    bool sup_norm_from_grid = false; // no sup_hint; grid+golden-section estimate
    bool beta_one_form = false;      // the dimensionally odd beta == 1 branch
};

/// Upper bound min{G_g(beta), ||g||_inf} (<r^2>_f / D)^{D/2} e^{B_D(alpha)}.
BoundValue rcr_upper_bound(const JointDensity& f, const JointDensity& g,
                           Order alpha, Order beta, int D = 3,
                           const QuadratureConfig& cfg = {});

/// <r^2> of a density (radial second moment).
double mean_r_squared(const JointDensity& rho, const QuadratureConfig& cfg = {});

/// Sup norm; uses sup_hint when present, otherwise a deterministic
/// scan-plus-golden-section refinement of the factor profiles.
double sup_norm(const JointDensity& rho);

} // namespace qcr::measures

#endif // QCR_MEASURES_HPP
