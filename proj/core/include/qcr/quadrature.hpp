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

#ifndef QCR_QUADRATURE_HPP
#define QCR_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace qcr::quadrature {

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_panels = 4000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    long long evaluations = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod 7/15 on [a, b]. Initial panels split at the given
/// breakpoints (integrand discontinuities); worst panel bisected until the
/// summed error estimate meets rel/abs tolerance or max_panels is reached.
/// Deterministic: identical inputs produce identical panel sequences.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {},
                 const std::vector<double>& breakpoints = {});

/// Fixed-order Gauss-Legendre on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      int order);

/// Gauss-Legendre with order doubling from `start_order` until two successive
/// orders agree to rel_tol (or the order cap is reached, converged=false).
Result gauss_legendre_doubling(const std::function<double(double)>& f, double a,
                               double b, int start_order = 64,
                               double rel_tol = 1e-11, int max_order = 2048);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
/// Computed once per order and cached; thread-safe.
const std::pair<std::vector<double>, std::vector<double>>& legendre_rule(int order);

} // namespace qcr::quadrature

#endif // QCR_QUADRATURE_HPP
