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

#ifndef QCR_SPECFUN_HPP
#define QCR_SPECFUN_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qcr::specfun {

/// Convergence bookkeeping for truncated series evaluations.
///
/// truncation_flag is set exactly when a configured term cap was hit
/// before the requested tolerance was reached. cancellation_flag is set
/// when alternating-sign loss forced an extended-precision re-summation.
struct SeriesDiagnostics {
    long long terms_used = 0;
    double last_term_magnitude = 0.0;
    bool truncation_flag = false;
    bool cancellation_flag = false;
};

/// Thrown when a finite nested sum would exceed its combinatorial budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s).
/// Series for x < s+1, continued fraction otherwise; tolerance 1e-15.
/// s > 0, x >= 0; monotone nondecreasing in x.
double regularized_lower_gamma(double s, double x);

/// Upper incomplete gamma Gamma(s,x) = Gamma(s) * (1 - P(s,x)).
/// Overflows (returns +inf) when Gamma(s) itself is not representable.
double upper_incomplete_gamma(double s, double x);

/// Associated Laguerre polynomial L_n^k(x) via the three-term recurrence
///   (n+1) L_{n+1}^k = (2n+k+1-x) L_n^k - (n+k) L_{n-1}^k.
/// Requires n >= 0 and k > -1.
double assoc_laguerre(int n, double k, double x);

/// |P_l^{|m|}(x)| for |m| <= l, |x| <= 1. Only the absolute value is
/// exposed; the Condon-Shortley sign never survives squaring.
double assoc_legendre_abs(int l, int m, double x);

/// A real number carried as (log|v|, sign). sign == 0 encodes exact zero.
struct LogValue {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    double to_double() const {
        return sign == 0 ? 0.0 : sign * std::exp(log_abs);
    }
};

LogValue log_value(double v);

/// ln (x)_n for x > 0, n >= 0 (Pochhammer rising factorial).
double pochhammer_log(double x, double n);

/// ln binom(m + a, m) for integer m >= 0 and real a > -1.
double binomial_real_log(int m, double a);

/// Signed streaming accumulator in scaled space: value = acc * e^{log_scale}.
/// Uses Neumaier compensation on the scaled mantissa and records the largest
/// intermediate partial-sum magnitude for cancellation diagnostics.
class SignedLogAccumulator {
public:
    void add(double log_abs, int sign);
    void add(const LogValue& v) { add(v.log_abs, v.sign); }

    LogValue value() const;
    /// log of max |partial sum| seen while accumulating.
    double max_partial_log() const { return max_partial_log_; }

private:
    double log_scale_ = -std::numeric_limits<double>::infinity();
    double acc_ = 0.0;
    double comp_ = 0.0;
    double max_partial_log_ = -std::numeric_limits<double>::infinity();
};

struct LauricellaResult {
    double value = 0.0;
    SeriesDiagnostics diagnostics;
};

struct LauricellaLogResult {
    LogValue value;
    SeriesDiagnostics diagnostics;
};

/// A_p(mu, beta, {m_i}, {a_i}, {t_i}) =
///   (beta+1)_mu * prod_i binom(m_i + a_i, m_i)
///   * F_A(mu+beta+1; -m_1,...,-m_s,-p; a_1+1,...,a_s+1,beta+1;
///         t_1,...,t_s, 1)
/// with every upper numerator parameter a nonpositive integer, so all
/// sums terminate: index i runs over [0, m_i] and the trailing index
/// over [0, p].
///
/// Enumeration is a plain odometer over (j_1, ..., j_s, j_{s+1}) with the
/// last index fastest, terms updated incrementally from cached per-index
/// factor tables, and Neumaier-compensated summation. When the largest
/// intermediate partial sum exceeds 1e6 x the final magnitude the sum is
/// recomputed in extended (>= 30 significant decimal digits) precision
/// and the diagnostics flag is set.
///
/// Throws BudgetError if prod(m_i + 1) * (p + 1) exceeds term_cap and
/// std::overflow_error if an intermediate leaves the representable range
/// (callers needing wide dynamic range use lauricella_a_coeff_log).
LauricellaResult lauricella_a_coeff(int p, double mu, double beta,
                                    const std::vector<int>& degrees,
                                    const std::vector<double>& params,
                                    const std::vector<double>& args,
                                    long long term_cap = 10'000'000);

/// Log-space evaluation of the same quantity; never overflows for
/// representable inputs. Same enumeration order and cancellation guard.
LauricellaLogResult lauricella_a_coeff_log(int p, double mu, double beta,
                                           const std::vector<int>& degrees,
                                           const std::vector<double>& params,
                                           const std::vector<double>& args,
                                           long long term_cap = 10'000'000);

} // namespace qcr::specfun

#endif // QCR_SPECFUN_HPP
