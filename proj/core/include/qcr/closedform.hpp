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

#ifndef QCR_CLOSEDFORM_HPP
#define QCR_CLOSEDFORM_HPP

#include <optional>

#include "qcr/measures.hpp"
#include "qcr/states.hpp"

namespace qcr::closedform {

using measures::MeasureValue;
using states::PseudoharmonicParams;
using states::QuantumNumbers;

/// Caps and tolerances for the isospectral double/triple series.
/// auto_extend lets the evaluator raise the caps (within term_cap work) when
/// the shell terms have not yet decayed, and tightens the effective j range
/// near the lambda domain edges where the 1/lambda power series slows down.
struct TruncationPolicy {
    int j_max = 60;
    int p_max = 200;
    double rel_tol = 1e-12;
    long long term_cap = 10'000'000;
    bool auto_extend = true;
};

/// The shifted exponents of the radial gamma integrals: mu1 = alpha L + 1/2,
/// mu2 = p + (L + 3/2) j + mu1, mu3 = p + (L + 3/2)(i + j) + mu1, and the
/// beta-order analogues.
struct MuIndices {
    double mu1, mu1_beta;
    double mu2, mu2_beta;
    double mu3, mu3_beta;
};

MuIndices mu_indices(double L, int alpha, int beta, int j, int p, int i);

/// Entropic moment of the angular factor: the closed finite-sum form of
/// int |Y_{l,m}|^{2 alpha} dOmega for integer alpha >= 1; m enters as |m|.
/// Throws specfun::BudgetError when (l - |m| + 1)^{2 alpha} exceeds term_cap.
double j2_moment(int l, int m, int alpha, long long term_cap = 10'000'000);

/// Exact Renyi entropy of the pseudoharmonic state for integer order
/// alpha >= 2 (order 1 is served by the quadrature oracle's Shannon branch).
MeasureValue renyi_pho_closed(const PseudoharmonicParams& params,
                              const QuantumNumbers& qn, int alpha);

/// Exact Renyi entropy of the isospectral state for integer order alpha >= 2,
/// evaluated as a 1/lambda power series whose radial coefficients are finite
/// Lauricella-type sums; diagnostics carry the shells used and the truncation
/// bound. Non-convergence within the caps yields a flagged result.
MeasureValue renyi_iso_closed(const PseudoharmonicParams& params,
                              const QuantumNumbers& qn, double lambda, int alpha,
                              const TruncationPolicy& policy = {});

enum class RcrDirection { iso_over_pho, pho_over_iso, iso_over_iso, pho_over_pho };

/// Exact Renyi complexity ratio for integer orders. Computed two ways: the
/// direct factor-assembled expression and the composition
/// exp(R_num - R_den); the composition is authoritative, and a disagreement
/// beyond 1e-7 relative is reported through consistency_gap.
struct RcrClosed {
    MeasureValue value;             // the authoritative composed value
    double assembled = 0.0;         // the factor-assembled route
    double consistency_gap = 0.0;   // |assembled - value| / |value|
};

RcrClosed rcr_closed(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                     double lambda, int alpha, int beta, RcrDirection direction,
                     const TruncationPolicy& policy = {});

/// Exact generalized Renyi complexity; lambda absent = pseudoharmonic state,
/// lambda present = isospectral state. src_closed fixes beta = 2.
RcrClosed grc_closed(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                     int alpha, int beta, std::optional<double> lambda = {},
                     const TruncationPolicy& policy = {});

RcrClosed src_closed(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                     int alpha, std::optional<double> lambda = {},
                     const TruncationPolicy& policy = {});

/// ln of the entropic moment I^(alpha) of a pseudoharmonic state (exact route);
/// exposed for oracle tests.
double pho_moment_log(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                      int alpha);

/// ln of the entropic moment of an isospectral state with series diagnostics.
struct IsoMomentLog {
    double log_value = 0.0;
    double tail_bound = 0.0; // bound on the neglected |tail| / |sum|
    specfun::SeriesDiagnostics diagnostics;
};

IsoMomentLog iso_moment_log(const PseudoharmonicParams& params,
                            const QuantumNumbers& qn, double lambda, int alpha,
                            const TruncationPolicy& policy = {});

} // namespace qcr::closedform

#endif // QCR_CLOSEDFORM_HPP
