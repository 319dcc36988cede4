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

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace qcr::specfun {

namespace {

constexpr double kTinyPivot = 1e-300;
constexpr int kMaxGammaIter = 20000;

#if defined(__GNUC__) && defined(__x86_64__)
using wide_float = __float128;
#else
using wide_float = long double;
#endif

double wide_to_log_abs(wide_float v, int& sign) {
    if (v == 0) {
        sign = 0;
        return -std::numeric_limits<double>::infinity();
    }
    sign = v > 0 ? 1 : -1;
    wide_float a = v < 0 ? -v : v;
    // Peel the exponent so the mantissa converts to double exactly in range.
    int e2 = 0;
    while (a >= wide_float(2)) { a *= wide_float(0.5); ++e2; }
    while (a < wide_float(1)) { a *= wide_float(2); --e2; }
    return std::log(static_cast<double>(a)) + e2 * 0.6931471805599453094172321214581766;
}

} // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("ln_gamma: argument must be positive, got " +
                                std::to_string(x));
    }
    return std::lgamma(x);
}

namespace {

// Lower-tail series: P(s,x) = x^s e^{-x} / Gamma(s+1) * sum_k x^k / ((s+1)...(s+k)).
double lower_gamma_series(double s, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < kMaxGammaIter; ++k) {
        term *= x / (s + k);
        sum += term;
        if (term < sum * 1e-15) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s + 1.0));
}

// Modified Lentz continued fraction for Q(s,x), valid for x >= s+1.
double upper_gamma_cf_factor(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTinyPivot;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxGammaIter; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTinyPivot) d = kTinyPivot;
        c = b + an / c;
        if (std::abs(c) < kTinyPivot) c = kTinyPivot;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h; // Q(s,x) = exp(-x + s ln x - lnGamma(s)) * h
}

void check_gamma_domain(double s, double x) {
    if (!(s > 0.0)) {
        throw std::domain_error("incomplete gamma: s must be positive, got " +
                                std::to_string(s));
    }
    if (x < 0.0) {
        throw std::domain_error("incomplete gamma: x must be nonnegative, got " +
                                std::to_string(x));
    }
}

} // namespace

double regularized_lower_gamma(double s, double x) {
    check_gamma_domain(s, x);
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) {
        return lower_gamma_series(s, x);
    }
    double q = std::exp(-x + s * std::log(x) - std::lgamma(s)) *
               upper_gamma_cf_factor(s, x);
    return 1.0 - q;
}

double upper_incomplete_gamma(double s, double x) {
    check_gamma_domain(s, x);
    if (x == 0.0) return std::tgamma(s);
    if (x < s + 1.0) {
        return std::tgamma(s) * (1.0 - lower_gamma_series(s, x));
    }
    return std::tgamma(s) * std::exp(-x + s * std::log(x) - std::lgamma(s)) *
           upper_gamma_cf_factor(s, x);
}

double assoc_laguerre(int n, double k, double x) {
    if (n < 0) throw std::domain_error("assoc_laguerre: degree must be >= 0");
    if (!(k > -1.0)) throw std::domain_error("assoc_laguerre: parameter must be > -1");
    if (n == 0) return 1.0;
    double lm1 = 1.0;           // L_0
    double l = 1.0 + k - x;     // L_1
    for (int i = 1; i < n; ++i) {
        double lp1 = ((2.0 * i + k + 1.0 - x) * l - (i + k) * lm1) / (i + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double assoc_legendre_abs(int l, int m, double x) {
    if (l < 0) throw std::domain_error("assoc_legendre_abs: l must be >= 0");
    m = std::abs(m);
    if (m > l) throw std::domain_error("assoc_legendre_abs: |m| must be <= l");
    if (std::abs(x) > 1.0) throw std::domain_error("assoc_legendre_abs: |x| must be <= 1");

    // P_m^m without the Condon-Shortley phase, then upward in degree.
    double pmm = 1.0;
    if (m > 0) {
        double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
        double fact = 1.0;
        for (int i = 1; i <= m; ++i) {
            pmm *= fact * somx2;
            fact += 2.0;
        }
    }
    if (l == m) return std::abs(pmm);
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return std::abs(pmmp1);
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return std::abs(pll);
}

LogValue log_value(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
}

double pochhammer_log(double x, double n) {
    if (!(x > 0.0) || n < 0.0) {
        throw std::domain_error("pochhammer_log: requires x > 0 and n >= 0");
    }
    return std::lgamma(x + n) - std::lgamma(x);
}

double binomial_real_log(int m, double a) {
    if (m < 0 || !(a > -1.0)) {
        throw std::domain_error("binomial_real_log: requires m >= 0 and a > -1");
    }
    return std::lgamma(m + a + 1.0) - std::lgamma(m + 1.0) - std::lgamma(a + 1.0);
}

void SignedLogAccumulator::add(double log_abs, int sign) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return;
    if (log_abs > log_scale_) {
        double shrink = std::exp(log_scale_ - log_abs);
        acc_ *= shrink;
        comp_ *= shrink;
        log_scale_ = log_abs;
    }
    double v = sign * std::exp(log_abs - log_scale_);
    double t = acc_ + v;
    if (std::abs(acc_) >= std::abs(v)) {
        comp_ += (acc_ - t) + v;
    } else {
        comp_ += (v - t) + acc_;
    }
    acc_ = t;
    double mag = std::abs(acc_ + comp_);
    if (mag > 0.0) {
        max_partial_log_ = std::max(max_partial_log_, log_scale_ + std::log(mag));
    }
}

LogValue SignedLogAccumulator::value() const {
    double total = acc_ + comp_;
    if (total == 0.0 || log_scale_ == -std::numeric_limits<double>::infinity()) return {};
    return {log_scale_ + std::log(std::abs(total)), total > 0.0 ? 1 : -1};
}

namespace {

struct FaShape {
    std::vector<int> caps;       // per-index inclusive upper bound
    long long term_count = 1;
};

// The trailing index of F_A carries (-p, beta+1, 1); fold it in as one more
// variable so the whole sum is a single odometer.
FaShape make_shape(int p, const std::vector<int>& degrees, long long term_cap) {
    FaShape shape;
    shape.caps.reserve(degrees.size() + 1);
    for (int m : degrees) {
        if (m < 0) throw std::domain_error("lauricella: degrees must be >= 0");
        shape.caps.push_back(m);
        shape.term_count *= (m + 1);
        if (shape.term_count > term_cap) {
            throw BudgetError("lauricella: term budget exceeded");
        }
    }
    if (p < 0) throw std::domain_error("lauricella: p must be >= 0");
    shape.caps.push_back(p);
    shape.term_count *= (p + 1);
    if (shape.term_count > term_cap) {
        throw BudgetError("lauricella: term budget exceeded");
    }
    return shape;
}

// Per-index factor u_i(j) = (-m_i)_j t_i^j / ((b_i)_j j!), built incrementally.
template <typename T>
std::vector<std::vector<T>> build_factor_tables(const FaShape& shape,
                                                const std::vector<double>& params,
                                                const std::vector<double>& args,
                                                double beta) {
    std::vector<std::vector<T>> tables(shape.caps.size());
    for (size_t i = 0; i < shape.caps.size(); ++i) {
        int cap = shape.caps[i];
        bool trailing = (i + 1 == shape.caps.size());
        double b = trailing ? beta + 1.0 : params[i] + 1.0;
        double t = trailing ? 1.0 : args[i];
        double m = static_cast<double>(cap);
        std::vector<T>& tab = tables[i];
        tab.resize(cap + 1);
        tab[0] = T(1);
        for (int j = 1; j <= cap; ++j) {
            // ratio u(j)/u(j-1) = (-m + j - 1) * t / ((b + j - 1) * j)
            T ratio = T(-m + (j - 1)) * T(t) / (T(b + (j - 1)) * T(j));
            tab[j] = tab[j - 1] * ratio;
        }
    }
    return tables;
}

template <typename T>
std::vector<T> build_pochhammer_table(double a, long long jmax) {
    std::vector<T> poch(static_cast<size_t>(jmax) + 1);
    poch[0] = T(1);
    for (long long j = 1; j <= jmax; ++j) {
        poch[j] = poch[j - 1] * T(a + (j - 1));
    }
    return poch;
}

// Core F_A odometer sum over the factor tables; last index fastest.
template <typename T, typename Sink>
void fa_enumerate(const FaShape& shape, const std::vector<std::vector<T>>& tables,
                  const std::vector<T>& poch, Sink&& sink) {
    size_t dims = shape.caps.size();
    std::vector<int> idx(dims, 0);
    for (;;) {
        long long total = std::accumulate(idx.begin(), idx.end(), 0LL);
        T term = poch[total];
        for (size_t i = 0; i < dims; ++i) term = term * tables[i][idx[i]];
        sink(term);
        size_t k = dims;
        while (k > 0) {
            --k;
            if (idx[k] < shape.caps[k]) {
                ++idx[k];
                std::fill(idx.begin() + k + 1, idx.end(), 0);
                break;
            }
            if (k == 0) return;
        }
    }
}

double fa_sum_wide(const FaShape& shape, double a, const std::vector<double>& params,
                   const std::vector<double>& args, double beta, int& sign_out) {
    long long jmax = std::accumulate(shape.caps.begin(), shape.caps.end(), 0LL);
    auto tables = build_factor_tables<wide_float>(shape, params, args, beta);
    auto poch = build_pochhammer_table<wide_float>(a, jmax);
    wide_float sum = 0;
    fa_enumerate<wide_float>(shape, tables, poch,
                             [&](wide_float term) { sum += term; });
    return wide_to_log_abs(sum, sign_out);
}

void validate_lauricella_inputs(const std::vector<int>& degrees,
                                const std::vector<double>& params,
                                const std::vector<double>& args) {
    if (degrees.empty()) {
        throw std::domain_error("lauricella: degrees list must be nonempty");
    }
    if (params.size() != degrees.size() || args.size() != degrees.size()) {
        throw std::domain_error("lauricella: degrees/params/args size mismatch");
    }
    for (double a : params) {
        if (!(a > -1.0)) {
            throw std::domain_error("lauricella: params must be > -1");
        }
    }
}

} // namespace

LauricellaResult lauricella_a_coeff(int p, double mu, double beta,
                                    const std::vector<int>& degrees,
                                    const std::vector<double>& params,
                                    const std::vector<double>& args,
                                    long long term_cap) {
    validate_lauricella_inputs(degrees, params, args);
    FaShape shape = make_shape(p, degrees, term_cap);
    double a = mu + beta + 1.0;
    long long jmax = std::accumulate(shape.caps.begin(), shape.caps.end(), 0LL);

    auto tables = build_factor_tables<double>(shape, params, args, beta);
    auto poch = build_pochhammer_table<double>(a, jmax);
    for (const auto& tab : tables) {
        for (double v : tab) {
            if (!std::isfinite(v)) throw std::overflow_error("lauricella: factor overflow");
        }
    }
    for (double v : poch) {
        if (!std::isfinite(v)) throw std::overflow_error("lauricella: pochhammer overflow");
    }

    double sum = 0.0, comp = 0.0, max_partial = 0.0, last = 0.0;
    fa_enumerate<double>(shape, tables, poch, [&](double term) {
        last = term;
        double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        max_partial = std::max(max_partial, std::abs(sum + comp));
    });
    double fa = sum + comp;
    if (!std::isfinite(fa) || !std::isfinite(max_partial)) {
        throw std::overflow_error("lauricella: partial sum overflow");
    }

    LauricellaResult result;
    result.diagnostics.terms_used = shape.term_count;
    result.diagnostics.last_term_magnitude = std::abs(last);

    // Cancellation guard: re-sum in extended precision once the running sum
    // overshoots the final value noticeably; the diagnostics flag marks the
    // severe (1e6x) regime.
    if (fa == 0.0 || max_partial > 1e3 * std::abs(fa)) {
        result.diagnostics.cancellation_flag =
            fa != 0.0 && max_partial > 1e6 * std::abs(fa);
        int sgn = 0;
        double lg = fa_sum_wide(shape, a, params, args, beta, sgn);
        fa = sgn == 0 ? 0.0 : sgn * std::exp(lg);
    }

    // Prefactor (beta+1)_mu * prod binom(m_i + a_i, m_i).
    double pref_log = pochhammer_log(beta + 1.0, mu);
    for (size_t i = 0; i < degrees.size(); ++i) {
        pref_log += binomial_real_log(degrees[i], params[i]);
    }
    double value = fa * std::exp(pref_log);
    if (!std::isfinite(value)) {
        throw std::overflow_error("lauricella: result overflow; use log-space evaluation");
    }
    result.value = value;
    return result;
}

LauricellaLogResult lauricella_a_coeff_log(int p, double mu, double beta,
                                           const std::vector<int>& degrees,
                                           const std::vector<double>& params,
                                           const std::vector<double>& args,
                                           long long term_cap) {
    validate_lauricella_inputs(degrees, params, args);
    FaShape shape = make_shape(p, degrees, term_cap);
    double a = mu + beta + 1.0;
    long long jmax = std::accumulate(shape.caps.begin(), shape.caps.end(), 0LL);

    // Log-space factor tables with signs, same enumeration order.
    struct LogTab { std::vector<double> log_abs; std::vector<int> sign; };
    std::vector<LogTab> tables(shape.caps.size());
    for (size_t i = 0; i < shape.caps.size(); ++i) {
        int cap = shape.caps[i];
        bool trailing = (i + 1 == shape.caps.size());
        double b = trailing ? beta + 1.0 : params[i] + 1.0;
        double t = trailing ? 1.0 : args[i];
        double m = static_cast<double>(cap);
        tables[i].log_abs.assign(cap + 1, 0.0);
        tables[i].sign.assign(cap + 1, 1);
        for (int j = 1; j <= cap; ++j) {
            double num = (-m + (j - 1)) * t;
            double den = (b + (j - 1)) * j;
            double ratio = num / den;
            if (ratio == 0.0) {
                tables[i].sign[j] = 0;
                tables[i].log_abs[j] = -std::numeric_limits<double>::infinity();
            } else {
                tables[i].sign[j] = tables[i].sign[j - 1] * (ratio > 0 ? 1 : -1);
                tables[i].log_abs[j] = tables[i].log_abs[j - 1] + std::log(std::abs(ratio));
            }
        }
    }
    std::vector<double> poch_log(static_cast<size_t>(jmax) + 1, 0.0);
    for (long long j = 1; j <= jmax; ++j) {
        poch_log[j] = poch_log[j - 1] + std::log(a + (j - 1));
    }

    SignedLogAccumulator acc;
    size_t dims = shape.caps.size();
    std::vector<int> idx(dims, 0);
    long long terms = 0;
    double last_log = -std::numeric_limits<double>::infinity();
    for (;;) {
        long long total = std::accumulate(idx.begin(), idx.end(), 0LL);
        double lg = poch_log[total];
        int sgn = 1;
        for (size_t i = 0; i < dims; ++i) {
            lg += tables[i].log_abs[idx[i]];
            sgn *= tables[i].sign[idx[i]];
        }
        acc.add(lg, sgn);
        last_log = lg;
        ++terms;
        size_t k = dims;
        bool done = true;
        while (k > 0) {
            --k;
            if (idx[k] < shape.caps[k]) {
                ++idx[k];
                std::fill(idx.begin() + k + 1, idx.end(), 0);
                done = false;
                break;
            }
        }
        if (done) break;
    }

    LauricellaLogResult result;
    result.diagnostics.terms_used = terms;
    result.diagnostics.last_term_magnitude =
        std::isfinite(last_log) ? std::exp(std::min(last_log, 700.0)) : 0.0;

    LogValue fa = acc.value();
    if (fa.sign == 0 || acc.max_partial_log() > std::log(1e3) + fa.log_abs) {
        result.diagnostics.cancellation_flag =
            fa.sign != 0 && acc.max_partial_log() > std::log(1e6) + fa.log_abs;
        int sgn = 0;
        double lg = fa_sum_wide(shape, a, params, args, beta, sgn);
        fa = LogValue{lg, sgn};
    }

    double pref_log = pochhammer_log(beta + 1.0, mu);
    for (size_t i = 0; i < degrees.size(); ++i) {
        pref_log += binomial_real_log(degrees[i], params[i]);
    }
    if (fa.sign == 0) {
        result.value = LogValue{};
    } else {
        result.value = LogValue{fa.log_abs + pref_log, fa.sign};
    }
    return result;
}

} // namespace qcr::specfun
