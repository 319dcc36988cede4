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

#ifndef QCR_STATES_HPP
#define QCR_STATES_HPP

#include <functional>
#include <optional>
#include <vector>

namespace qcr::states {

/// Pseudoharmonic oscillator parameters in a consistent unit system.
/// For molecular inputs use (eV, Angstrom) with mu = mu*c^2 in eV and
/// hbar = c*hbar in eV*Angstrom; natural-unit toys pass mu = hbar = 1.
struct PseudoharmonicParams {
    double De;    // well depth (energy)
    double re;    // equilibrium separation (length)
    double mu;    // reduced mass (energy when using mu*c^2 convention)
    double hbar;  // action (energy*length when using c*hbar convention)

    void validate() const;
};

/// Quantities derived from the well parameters at fixed angular momentum.
struct DerivedParams {
    double a;        // sqrt(2 mu De) / (hbar re), inverse length squared
    double L;        // -1/2 + sqrt(l(l+1) + 1/4 + a^2 re^4), dimensionless
    double omega_r;  // sqrt(De / (2 mu re^2))
};

struct QuantumNumbers {
    int n = 0;
    int l = 0;
    int m = 0;

    void validate() const;
};

struct IsospectralParams {
    PseudoharmonicParams base;
    double lambda;
};

/// Throws std::domain_error unless lambda is in (-inf, -2) U (1, inf).
void check_lambda_domain(double lambda);

/// An evaluatable normalized 3-D density in spherical coordinates.
/// When separable, radial and polar carry the factorization with
/// int radial(r) r^2 dr = 1 and 2*pi int polar(theta) sin(theta) dtheta = 1.
struct JointDensity {
    std::function<double(double r, double theta, double phi)> evaluator;
    int dimension = 3;
    bool separable = true;
    bool phi_uniform = true;
    double radial_tail_scale = 1.0;     // quadrature truncation hint
    std::optional<double> sup_hint;     // known sup norm, if any
    std::function<double(double)> radial;  // set when separable
    std::function<double(double)> polar;   // set when separable
    std::vector<double> radial_breakpoints; // integrand discontinuities
};

DerivedParams derive(const PseudoharmonicParams& params, int l);

/// Ro-vibrational energy hbar*omega_r*(4n + 2L + 3) - 2De; identical for the
/// pseudoharmonic system and every member of its isospectral family.
double energy(const PseudoharmonicParams& params, const QuantumNumbers& qn);

/// 4 hbar omega_r = 2 hbar sqrt(2 De / (mu re^2)); independent of n, l, m, lambda.
double energy_spacing(const PseudoharmonicParams& params);

/// De (r/re - re/r)^2, r > 0.
double pho_potential(const PseudoharmonicParams& params, double r);

/// Pseudoharmonic potential minus (hbar^2/mu) d^2/dr^2 ln(lambda + I(r)),
/// with I(r) = P(L + 3/2, a r^2); the second derivative is analytic.
double iso_potential(const PseudoharmonicParams& params, int l, double lambda,
                     double r);

/// |Y_{l,m}(theta, .)|^2; independent of phi.
double sph_harm_sq(int l, int m, double theta);

/// Signed radial factor of the pseudoharmonic wavefunction (the density's
/// radial part is its square).
double radial_wavefunction_pho(const PseudoharmonicParams& params,
                               const QuantumNumbers& qn, double r);

/// Signed radial factor of the isospectral wavefunction.
double radial_wavefunction_iso(const PseudoharmonicParams& params,
                               const QuantumNumbers& qn, double lambda, double r);

JointDensity rho_pho(const PseudoharmonicParams& params, const QuantumNumbers& qn);

JointDensity rho_iso(const PseudoharmonicParams& params, const QuantumNumbers& qn,
                     double lambda);

} // namespace qcr::states

#endif // QCR_STATES_HPP
