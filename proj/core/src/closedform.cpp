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

#include "qcr/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qcr::closedform {

using specfun::LogValue;
using specfun::SignedLogAccumulator;
using states::derive;
using states::DerivedParams;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

#if defined(__GNUC__) && defined(__x86_64__)
using wide_float = __float128;
#else
using wide_float = long double;
#endif

double lchoose(double top, double k) {
    return std::lgamma(top + 1.0) - std::lgamma(k + 1.0) - std::lgamma(top - k + 1.0);
}

// ----------------------------------------------------------------------------
// Angular moment
// ----------------------------------------------------------------------------

// The finite nested sum B(alpha, l, m): 2*alpha indices, each in [0, l-m],
// numerator (m*alpha+1)_{sum} (m-l)_{j}(m+l+1)_{j}, denominators
// (2*m*alpha+2)_{sum} (m+1)_{j} j!. The alternating (m-l)_j factors cancel
// ten-plus digits at l - m = 3, so the accumulation runs in wide precision.
double angular_b_sum(int l, int m, int alpha, long long term_cap) {
    int cap = l - m;
    int vars = 2 * alpha;
    long long count = 1;
    for (int i = 0; i < vars; ++i) {
        count *= (cap + 1);
        if (count > term_cap) {
            throw specfun::BudgetError("j2_moment: angular budget exceeded");
        }
    }

    // Per-index factor table and coupled Pochhammer ratio table.
    std::vector<wide_float> v(cap + 1);
    v[0] = 1;
    for (int j = 1; j <= cap; ++j) {
        v[j] = v[j - 1] * wide_float(m - l + j - 1.0) * wide_float(m + l + j) /
               (wide_float(m + j) * wide_float(j));
    }
    long long jtot = static_cast<long long>(cap) * vars;
    std::vector<wide_float> rat(static_cast<size_t>(jtot) + 1);
    rat[0] = 1;
    for (long long q = 1; q <= jtot; ++q) {
        rat[q] = rat[q - 1] * wide_float(m * alpha + q) /
                 wide_float(2.0 * m * alpha + 1.0 + q);
    }

    std::vector<int> idx(vars, 0);
    wide_float sum = 0;
    for (;;) {
        long long total = 0;
        wide_float term = 1;
        for (int i = 0; i < vars; ++i) {
            total += idx[i];
            term *= v[idx[i]];
        }
        sum += term * rat[total];
        int k = vars;
        bool done = true;
        while (k > 0) {
            --k;
            if (idx[k] < cap) {
                ++idx[k];
                std::fill(idx.begin() + k + 1, idx.end(), 0);
                done = false;
                break;
            }
        }
        if (done) break;
    }
    double binom_log = lchoose(l, l - m);
    return static_cast<double>(sum) * std::exp(2.0 * alpha * binom_log);
}

double j2_moment_log(int l, int m, int alpha, long long term_cap) {
    if (l < 0 || std::abs(m) > l) {
        throw std::domain_error("j2_moment: require l >= 0 and |m| <= l");
    }
    if (alpha < 1) throw std::domain_error("j2_moment: alpha must be a positive integer");
    m = std::abs(m);
    double pref =
        (2.0 * alpha * (2.0 * m - 1.0) + 2.0) * std::log(2.0) +
        alpha * std::log(2.0 * l + 1.0) + 2.0 * std::lgamma(m * alpha + 1.0) -
        (2.0 * alpha - 1.0) * std::log(M_PI) - std::lgamma(2.0 * m * alpha + 2.0) +
        alpha * (2.0 * std::lgamma(m + 0.5) + 2.0 * std::lgamma(m + 1.0) +
                 std::lgamma(l - m + 1.0) + std::lgamma(l + m + 1.0) -
                 2.0 * std::lgamma(2.0 * m + 1.0) - 2.0 * std::lgamma(l + 1.0));
    double b = angular_b_sum(l, m, alpha, term_cap);
    if (!(b > 0.0)) {
        throw std::runtime_error("j2_moment: nonpositive nested sum");
    }
    return pref + std::log(b);
}

// ----------------------------------------------------------------------------
// Isospectral 1/lambda series
// ----------------------------------------------------------------------------

// Coefficient ledger of [sum_k z^k / Gamma(s+k+1)]^j, stored as logs of the
// (all positive) entries; rows grow on demand by log-space convolution.
class CoefficientRows {
public:
    explicit CoefficientRows(double s) : s_(s) { rows_.push_back({0.0}); }

    double log_entry(int j, int p) {
        if (j == 0) return p == 0 ? 0.0 : kNegInf;
        ensure_row(j, p);
        const auto& row = rows_[j];
        return p < static_cast<int>(row.size()) ? row[p] : kNegInf;
    }

    long long work() const { return work_; }

private:
    void ensure_dlog(int k) {
        while (static_cast<int>(dlog_.size()) <= k) {
            int q = static_cast<int>(dlog_.size());
            dlog_.push_back(-std::lgamma(s_ + q + 1.0));
        }
    }

    void ensure_row(int j, int p) {
        ensure_dlog(p);
        if (j == 1) {
            // e_{1,p} = 1/Gamma(s+p+1)
            while (static_cast<int>(rows_.size()) <= 1) rows_.push_back({});
            auto& row = rows_[1];
            while (static_cast<int>(row.size()) <= p) {
                row.push_back(dlog_[row.size()]);
                ++work_;
            }
            return;
        }
        ensure_row(j - 1, p);
        while (static_cast<int>(rows_.size()) <= j) rows_.push_back({});
        auto& row = rows_[j];
        const auto& prev = rows_[j - 1];
        while (static_cast<int>(row.size()) <= p) {
            int q = static_cast<int>(row.size());
            double mx = kNegInf;
            for (int k = 0; k <= q; ++k) {
                mx = std::max(mx, prev[q - k] + dlog_[k]);
            }
            double acc = 0.0;
            for (int k = 0; k <= q; ++k) {
                acc += std::exp(prev[q - k] + dlog_[k] - mx);
            }
            row.push_back(mx + std::log(acc));
            work_ += q + 1;
        }
    }

    double s_;
    std::vector<double> dlog_;
    std::vector<std::vector<double>> rows_;
    long long work_ = 0;
};

struct SeriesSum {
    LogValue value;
    double tail_bound = 0.0;
    specfun::SeriesDiagnostics diagnostics;
};

struct IsoContext {
    double L, s, mu1;
    int alpha, n;
    double lambda;
    TruncationPolicy policy;
    int j_cap;
    int p_cap;
    long long row_work_cap;
};

IsoContext make_context(const DerivedParams& d, int n, double lambda, int alpha,
                        const TruncationPolicy& policy) {
    IsoContext ctx;
    ctx.L = d.L;
    ctx.s = d.L + 1.5;
    ctx.mu1 = alpha * d.L + 0.5;
    ctx.alpha = alpha;
    ctx.n = n;
    ctx.lambda = lambda;
    ctx.policy = policy;
    ctx.j_cap = policy.j_max;
    ctx.p_cap = policy.p_max;
    // The convolution ledger is bookkeeping, not series terms; it gets its
    // own (large) work budget.
    ctx.row_work_cap = 64 * policy.term_cap;
    if (policy.auto_extend) {
        // The outer series is a power series in 1/|lambda|; near the domain
        // edges more shells are needed, and large s stretches the inner rows.
        double rate = std::log(std::abs(lambda));
        int j_need = static_cast<int>(std::ceil(-std::log(policy.rel_tol * 1e-2) /
                                                std::max(rate, 0.02))) + 8;
        ctx.j_cap = std::max(ctx.j_cap, std::min(j_need, 2000));
        ctx.p_cap = std::max(ctx.p_cap, 65536);
    }
    return ctx;
}

int lambda_sign(double lambda, int power) {
    if (lambda > 0.0) return power % 2 == 0 ? 1 : -1;
    return 1; // (-1)^power * lambda^{-power} is positive for negative lambda
}

// Inner radial coefficient sum at fixed shell (n = 0 case):
//   K_j = sum_p e_{j,p} Gamma(mu2+1) / (alpha+j)^{mu2+1},  mu2 = p + s j + mu1.
// All terms positive; returns ln K_j.
double inner_k_log(const IsoContext& ctx, CoefficientRows& rows, int j, bool& truncated,
                   long long& terms) {
    double base = ctx.s * j + ctx.mu1;
    double lden = std::log(ctx.alpha + j);
    double mx = kNegInf;
    std::vector<double> logs;
    int below_run = 0;
    for (int p = 0; p <= ctx.p_cap; ++p) {
        if (j == 0 && p > 0) break; // the j = 0 coefficient row is a delta
        double lg = rows.log_entry(j, p) + std::lgamma(p + base + 1.0) -
                    (p + base + 1.0) * lden;
        logs.push_back(lg);
        ++terms;
        mx = std::max(mx, lg);
        // Terminate only well past the peak, once several consecutive terms
        // sit below the tolerance envelope; a single small term is not a tail.
        if (lg < mx + std::log(ctx.policy.rel_tol) - 7.0 && lg < mx - 20.0) {
            if (++below_run >= 4) break;
        } else {
            below_run = 0;
        }
        if (terms > ctx.policy.term_cap || rows.work() > ctx.row_work_cap) {
            truncated = true;
            break;
        }
        if (p == ctx.p_cap) truncated = true;
    }
    double acc = 0.0;
    for (double lg : logs) acc += std::exp(lg - mx);
    return mx + std::log(acc);
}

SeriesSum iso_series_n0(const IsoContext& ctx) {
    SeriesSum out;
    CoefficientRows rows(ctx.s);
    SignedLogAccumulator acc;
    bool truncated = false;
    long long terms = 0;

    double prev_contrib = kNegInf;
    double last_contrib = kNegInf;
    int small_run = 0;
    int shells = 0;
    for (int j = 0; j <= ctx.j_cap; ++j) {
        double w = lchoose(2.0 * ctx.alpha + j - 1.0, j) - j * std::log(std::abs(ctx.lambda)) +
                   inner_k_log(ctx, rows, j, truncated, terms);
        acc.add(w, lambda_sign(ctx.lambda, j));
        ++shells;
        LogValue run = acc.value();
        double rel = run.sign == 0 ? 0.0 : w - run.log_abs;
        last_contrib = w;
        if (j > 1 && rel < std::log(ctx.policy.rel_tol)) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
        if (j == ctx.j_cap) truncated = true;
        if (terms > ctx.policy.term_cap || rows.work() > ctx.row_work_cap) {
            truncated = true;
            break;
        }
        prev_contrib = w;
    }

    out.value = acc.value();
    // Geometric tail estimate from the last two shell magnitudes.
    double ratio = std::exp(std::min(last_contrib - prev_contrib, -0.02));
    double tail_log = last_contrib + std::log(ratio / (1.0 - ratio));
    out.tail_bound = out.value.sign == 0 ? 0.0 : std::exp(tail_log - out.value.log_abs);
    out.diagnostics.terms_used = terms + rows.work();
    out.diagnostics.last_term_magnitude = std::exp(std::min(last_contrib, 700.0));
    out.diagnostics.truncation_flag = truncated;
    return out;
}

// n >= 1: the shell terms carry a terminating Lauricella factor
//   A_0(mu3, 0, {n-1 x i, n x 2a-i}, {L+3/2 x i, L+1/2 x 2a-i}, {1/(alpha+i+j)})
// with mu3 = p + s (i+j) + mu1.
SeriesSum iso_series_n(const IsoContext& ctx) {
    SeriesSum out;
    CoefficientRows rows(ctx.s);
    SignedLogAccumulator acc;
    bool truncated = false;
    long long terms = 0;
    int two_a = 2 * ctx.alpha;
    double lg_s = std::lgamma(ctx.s);
    double max_term = kNegInf;
    double last_row_max = kNegInf;
    double prev_row_max = kNegInf;

    for (int i = 0; i <= two_a; ++i) {
        double w_i = lchoose(two_a, i) - i * std::log(static_cast<double>(ctx.n)) - i * lg_s;
        int sign_i = 1; // (-1)^i folded with lambda sign below
        double row_prev_max = kNegInf;
        int row_small_run = 0;
        for (int j = 0; j <= ctx.j_cap; ++j) {
            if (i == 0 && j > 0) break; // binom(j-1, j) = 0
            double w_ij = w_i - (i + j) * std::log(std::abs(ctx.lambda));
            if (i > 0) w_ij += lchoose(i + j - 1.0, j);
            int t = i + j;
            std::vector<int> degrees;
            std::vector<double> par, args;
            degrees.insert(degrees.end(), i, ctx.n - 1);
            degrees.insert(degrees.end(), two_a - i, ctx.n);
            par.insert(par.end(), i, ctx.L + 1.5);
            par.insert(par.end(), two_a - i, ctx.L + 0.5);
            args.assign(two_a, 1.0 / (ctx.alpha + t));

            double base = ctx.s * t + ctx.mu1;
            double lden = std::log(ctx.alpha + t);
            double row_max = kNegInf;
            int below_run = 0;
            for (int p = 0; p <= ctx.p_cap; ++p) {
                if (j == 0 && p > 0) break; // delta coefficient row
                auto a0 = specfun::lauricella_a_coeff_log(0, base + p, 0.0, degrees, par,
                                                          args, ctx.policy.term_cap);
                long long fa_cost = 1;
                for (int d : degrees) fa_cost *= (d + 1);
                terms += fa_cost;
                double lg = kNegInf;
                if (a0.value.sign != 0) {
                    lg = w_ij + rows.log_entry(j, p) + a0.value.log_abs -
                         (p + base + 1.0) * lden;
                    int sgn = a0.value.sign * sign_i * lambda_sign(ctx.lambda, i + j);
                    acc.add(lg, sgn);
                    row_max = std::max(row_max, lg);
                    max_term = std::max(max_term, lg);
                }
                // The Lauricella factor can dip through zero mid-row, so a
                // small term is a tail only once several in a row sit below
                // the envelope and well under the row peak.
                if (lg < max_term + std::log(ctx.policy.rel_tol) - 7.0 &&
                    lg < row_max - 20.0) {
                    if (++below_run >= 4) break;
                } else {
                    below_run = 0;
                }
                if (p == ctx.p_cap) truncated = true;
                if (terms > ctx.policy.term_cap || rows.work() > ctx.row_work_cap) {
                    truncated = true;
                    break;
                }
            }
            prev_row_max = last_row_max;
            last_row_max = row_max;
            if (j > 1 && row_max < max_term + std::log(ctx.policy.rel_tol)) {
                if (++row_small_run >= 2) break;
            } else {
                row_small_run = 0;
            }
            if (j == ctx.j_cap) truncated = true;
            if (terms > ctx.policy.term_cap || rows.work() > ctx.row_work_cap) {
                truncated = true;
                break;
            }
            row_prev_max = row_max;
        }
        (void)row_prev_max;
        if (terms > ctx.policy.term_cap || rows.work() > ctx.row_work_cap) break;
    }

    out.value = acc.value();
    double ratio = std::exp(std::min(last_row_max - prev_row_max, -0.02));
    double tail_log = last_row_max + std::log(ratio / (1.0 - ratio));
    out.tail_bound = out.value.sign == 0 ? 0.0 : std::exp(tail_log - out.value.log_abs);
    out.diagnostics.terms_used = terms + rows.work();
    out.diagnostics.truncation_flag = truncated;
    return out;
}

double require_positive(const LogValue& v, const char* what) {
    if (v.sign <= 0) {
        throw std::runtime_error(std::string(what) +
                                 ": series summed to a nonpositive value");
    }
    return v.log_abs;
}

void check_integer_order(int alpha) {
    if (alpha < 2) {
        throw std::domain_error("closed forms require integer order >= 2 "
                                "(order 1 is the oracle's Shannon branch)");
    }
}

} // namespace

MuIndices mu_indices(double L, int alpha, int beta, int j, int p, int i) {
    MuIndices mu;
    double s = L + 1.5;
    mu.mu1 = alpha * L + 0.5;
    mu.mu1_beta = beta * L + 0.5;
    mu.mu2 = p + s * j + mu.mu1;
    mu.mu2_beta = p + s * j + mu.mu1_beta;
    mu.mu3 = p + s * (i + j) + mu.mu1;
    mu.mu3_beta = p + s * (i + j) + mu.mu1_beta;
    return mu;
}

double j2_moment(int l, int m, int alpha, long long term_cap) {
    return std::exp(j2_moment_log(l, m, alpha, term_cap));
}

double pho_moment_log(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                      int alpha) {
    qn.validate();
    if (alpha < 1) throw std::domain_error("pho_moment_log: alpha must be >= 1");
    DerivedParams d = derive(params, qn.l);
    double s = d.L + 1.5;
    double mu1 = alpha * d.L + 0.5;
    int two_a = 2 * alpha;
    std::vector<int> degrees(two_a, qn.n);
    std::vector<double> par(two_a, d.L + 0.5);
    std::vector<double> args(two_a, 1.0 / alpha);
    auto a0 = specfun::lauricella_a_coeff_log(0, mu1, 0.0, degrees, par, args);
    double a0_log = require_positive(a0.value, "pho_moment_log");
    return (alpha - 1.0) * (std::log(2.0) + 1.5 * std::log(d.a)) +
           alpha * (std::lgamma(qn.n + 1.0) - std::lgamma(qn.n + s)) -
           (mu1 + 1.0) * std::log(static_cast<double>(alpha)) + a0_log +
           j2_moment_log(qn.l, qn.m, alpha, 10'000'000);
}

IsoMomentLog iso_moment_log(const PseudoharmonicParams& params,
                            const QuantumNumbers& qn, double lambda, int alpha,
                            const TruncationPolicy& policy) {
    qn.validate();
    states::check_lambda_domain(lambda);
    if (alpha < 1) throw std::domain_error("iso_moment_log: alpha must be >= 1");
    DerivedParams d = derive(params, qn.l);
    IsoContext ctx = make_context(d, qn.n, lambda, alpha, policy);

    SeriesSum series = qn.n == 0 ? iso_series_n0(ctx) : iso_series_n(ctx);
    double series_log = require_positive(series.value, "iso_moment_log");

    IsoMomentLog out;
    double s = ctx.s;
    double pref = (alpha - 1.0) * (std::log(2.0) + 1.5 * std::log(d.a));
    if (qn.n == 0) {
        pref += alpha * (std::log((lambda + 1.0) / lambda) - std::lgamma(s));
    } else {
        pref += alpha * (std::lgamma(qn.n + 1.0) - std::lgamma(qn.n + s));
    }
    out.log_value = pref + series_log + j2_moment_log(qn.l, qn.m, alpha, policy.term_cap);
    out.tail_bound = series.tail_bound;
    out.diagnostics = series.diagnostics;
    return out;
}

MeasureValue renyi_pho_closed(const PseudoharmonicParams& params,
                              const QuantumNumbers& qn, int alpha) {
    check_integer_order(alpha);
    MeasureValue mv;
    mv.method = measures::Method::closed;
    mv.value = pho_moment_log(params, qn, alpha) / (1.0 - alpha);
    mv.abs_error_estimate = std::abs(mv.value) * 1e-13 + 1e-13;
    return mv;
}

MeasureValue renyi_iso_closed(const PseudoharmonicParams& params,
                              const QuantumNumbers& qn, double lambda, int alpha,
                              const TruncationPolicy& policy) {
    check_integer_order(alpha);
    IsoMomentLog moment = iso_moment_log(params, qn, lambda, alpha, policy);
    MeasureValue mv;
    mv.method = measures::Method::closed;
    mv.value = moment.log_value / (1.0 - alpha);
    mv.abs_error_estimate =
        (moment.tail_bound + 1e-13) / std::abs(1.0 - alpha) + std::abs(mv.value) * 1e-13;
    mv.diagnostics = moment.diagnostics;
    return mv;
}

namespace {

struct MomentPiece {
    double log_value;
    double tail_bound = 0.0;
    specfun::SeriesDiagnostics diagnostics;
};

MomentPiece moment_for(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                       std::optional<double> lambda, int order,
                       const TruncationPolicy& policy) {
    MomentPiece piece;
    if (lambda) {
        IsoMomentLog m = iso_moment_log(params, qn, *lambda, order, policy);
        piece.log_value = m.log_value;
        piece.tail_bound = m.tail_bound;
        piece.diagnostics = m.diagnostics;
    } else {
        piece.log_value = pho_moment_log(params, qn, order);
    }
    return piece;
}

// The factor-assembled route: the same ratio built multiplicatively with the
// angular factors expanded term by term instead of composed from the two
// entropies, exercising an independent arithmetic path.
double assembled_log_rcr(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                         std::optional<double> lambda_num,
                         std::optional<double> lambda_den, int alpha, int beta,
                         const TruncationPolicy& policy) {
    DerivedParams d = derive(params, qn.l);
    double s = d.L + 1.5;
    double ea = 1.0 / (1.0 - alpha);
    double eb = 1.0 / (1.0 - beta);
    int l = qn.l, m = std::abs(qn.m), n = qn.n;

    // Angular block of Eq.-style grouping: per-order gamma factors and the
    // finite nested sum, combined with exponents ea and -eb directly.
    auto angular_part = [&](int order, double e) {
        double mixed =
            (2.0 * order * (2.0 * m - 1.0) + 2.0) * std::log(2.0) +
            order * std::log(2.0 * l + 1.0) + 2.0 * std::lgamma(m * order + 1.0) -
            (2.0 * order - 1.0) * std::log(M_PI) - std::lgamma(2.0 * m * order + 2.0) +
            order * (2.0 * std::lgamma(m + 0.5) + 2.0 * std::lgamma(m + 1.0) +
                     std::lgamma(l - m + 1.0) + std::lgamma(l + m + 1.0) -
                     2.0 * std::lgamma(2.0 * m + 1.0) - 2.0 * std::lgamma(l + 1.0)) +
            std::log(angular_b_sum(l, m, order, policy.term_cap)) +
            2.0 * order * lchoose(l, l - m);
        return e * mixed;
    };

    auto radial_part = [&](int order, double e, std::optional<double> lambda) {
        double mixed = (order - 1.0) * (std::log(2.0) + 1.5 * std::log(d.a));
        if (lambda) {
            IsoContext ctx = make_context(d, n, *lambda, order, policy);
            SeriesSum series = n == 0 ? iso_series_n0(ctx) : iso_series_n(ctx);
            mixed += require_positive(series.value, "assembled rcr");
            if (n == 0) {
                mixed += order * (std::log((*lambda + 1.0) / *lambda) - std::lgamma(s));
            } else {
                mixed += order * (std::lgamma(n + 1.0) - std::lgamma(n + s));
            }
        } else {
            double mu1 = order * d.L + 0.5;
            int two = 2 * order;
            std::vector<int> degrees(two, n);
            std::vector<double> par(two, d.L + 0.5);
            std::vector<double> args(two, 1.0 / order);
            auto a0 = specfun::lauricella_a_coeff_log(0, mu1, 0.0, degrees, par, args,
                                                      policy.term_cap);
            mixed += require_positive(a0.value, "assembled rcr") -
                     (mu1 + 1.0) * std::log(static_cast<double>(order)) +
                     order * (std::lgamma(n + 1.0) - std::lgamma(n + s));
        }
        return e * mixed;
    };

    return radial_part(alpha, ea, lambda_num) - radial_part(beta, eb, lambda_den) +
           angular_part(alpha, ea) - angular_part(beta, eb);
}

RcrClosed rcr_from_moments(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                           std::optional<double> lambda_num,
                           std::optional<double> lambda_den, int alpha, int beta,
                           const TruncationPolicy& policy) {
    check_integer_order(alpha);
    check_integer_order(beta);
    qn.validate();
    MomentPiece num = moment_for(params, qn, lambda_num, alpha, policy);
    MomentPiece den = moment_for(params, qn, lambda_den, beta, policy);

    double log_rcr = num.log_value / (1.0 - alpha) - den.log_value / (1.0 - beta);

    RcrClosed out;
    out.value.method = measures::Method::closed;
    out.value.value = std::exp(log_rcr);
    double rel = num.tail_bound / std::abs(1.0 - alpha) +
                 den.tail_bound / std::abs(1.0 - beta) + 1e-12;
    out.value.abs_error_estimate = out.value.value * rel;
    specfun::SeriesDiagnostics diag;
    diag.terms_used = num.diagnostics.terms_used + den.diagnostics.terms_used;
    diag.truncation_flag =
        num.diagnostics.truncation_flag || den.diagnostics.truncation_flag;
    out.value.diagnostics = diag;

    out.assembled = std::exp(
        assembled_log_rcr(params, qn, lambda_num, lambda_den, alpha, beta, policy));
    out.consistency_gap = std::abs(out.assembled - out.value.value) /
                          std::max(std::abs(out.value.value), 1e-300);
    return out;
}

} // namespace

RcrClosed rcr_closed(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                     double lambda, int alpha, int beta, RcrDirection direction,
                     const TruncationPolicy& policy) {
    std::optional<double> num, den;
    switch (direction) {
        case RcrDirection::iso_over_pho: num = lambda; break;
        case RcrDirection::pho_over_iso: den = lambda; break;
        case RcrDirection::iso_over_iso: num = lambda; den = lambda; break;
        case RcrDirection::pho_over_pho: break;
    }
    return rcr_from_moments(params, qn, num, den, alpha, beta, policy);
}

RcrClosed grc_closed(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                     int alpha, int beta, std::optional<double> lambda,
                     const TruncationPolicy& policy) {
    return rcr_from_moments(params, qn, lambda, lambda, alpha, beta, policy);
}

RcrClosed src_closed(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                     int alpha, std::optional<double> lambda,
                     const TruncationPolicy& policy) {
    return grc_closed(params, qn, alpha, 2, lambda, policy);
}

} // namespace qcr::closedform
