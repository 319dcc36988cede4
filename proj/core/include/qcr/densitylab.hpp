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

#ifndef QCR_DENSITYLAB_HPP
#define QCR_DENSITYLAB_HPP

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcr/states.hpp"

namespace qcr::densitylab {

using Rational = boost::multiprecision::cpp_rational;

/// Volume of the unit ball in D dimensions, C_D = 2 pi^{D/2} / (D Gamma(D/2)).
double unit_ball_volume(int D);

/// One radial shell in scaled "hat" units: level_hat = level * C_D and
/// vol_hat = volume / C_D, so the shell probability level_hat * vol_hat is an
/// exact rational whenever the construction parameters are rational.
struct ExactShell {
    Rational level_hat;
    Rational vol_hat;
};

/// Piecewise-constant radial density in D dimensions: ordered shells with
/// strictly increasing outer radii. Densities built through the rational
/// factories carry an exact per-shell ledger; probability accounting is then
/// exact, while order-alpha measures are evaluated in double precision.
class StepDensity {
public:
    static StepDensity from_shells(int dimension,
                                   const std::vector<std::pair<double, double>>&
                                       radius_and_level);

    /// Exact factory: shells given as (outer_radius^D, level * C_D) rationals.
    static StepDensity from_exact(int dimension,
                                  const std::vector<std::pair<Rational, Rational>>&
                                      radius_pow_d_and_level_hat);

    int dimension() const { return dimension_; }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& levels() const { return levels_; }
    bool is_exact() const { return exact_.has_value(); }
    const std::vector<ExactShell>& exact_shells() const { return *exact_; }

    /// Total probability; exactly 1 for valid densities (checked on build).
    Rational exact_mass() const;

    /// Density value at radius r (levels are constant on shells).
    double value_at(double r) const;

    /// View as a 3-D JointDensity (uniform angular part); D == 3 only.
    states::JointDensity to_joint_density() const;

private:
    int dimension_ = 1;
    std::vector<double> radii_;
    std::vector<double> levels_;
    std::optional<std::vector<ExactShell>> exact_;
};

/// General piecewise-constant density as unordered disjoint cells of
/// (level, volume); produced by mixtures and copy superpositions.
struct PiecewiseDensity {
    int dimension = 1;
    std::vector<std::pair<double, double>> cells; // (level, volume)
    bool overlap_flagged = false; // mixture components shared support
};

/// Finite discrete distribution, optionally with cell measures L(Omega_i);
/// with measures present the entries are levels and sum_i p_i L_i = 1.
struct DiscreteDistribution {
    std::vector<double> probabilities;
    std::optional<std::vector<double>> cell_measures;

    void validate() const;
};

struct ExamplePair {
    StepDensity f1, g1, f2, g2;
};

/// The two-shell/one-shell example family: f1 has level (1-delta1)/C_D inside
/// the unit ball and delta1/(C_D (B^D - 1)) in the 1 < |r| < B shell; g1 is the
/// same with delta1'; f2 = g2 is uniform on the unit ball. B is passed as B^D.
ExamplePair make_example_pair(int dimension, const Rational& b_pow_d,
                              const Rational& delta1, const Rational& delta1_prime);

/// Exact-arithmetic Renyi entropy of a piecewise-constant or discrete input:
/// (1/(1-alpha)) ln sum_i p_i^alpha L(Omega_i), Shannon sum at alpha == 1.
double renyi_step(const StepDensity& rho, double alpha);
double renyi_step(const PiecewiseDensity& rho, double alpha);
double renyi_step(const DiscreteDistribution& rho, double alpha);

/// Lebesgue measure of the minimal-measure set of total probability 1:
/// the support volume, zero-level shells excluded.
double effective_domain_measure(const StepDensity& rho);

enum class Localization { f_localized, g_localized, equal };

/// Compares effective-domain measures; strict inequality required for a
/// localization verdict. Throws on dimension mismatch.
Localization is_localized(const StepDensity& f, const StepDensity& g);

/// Majorization f > g. Discrete: sorted-prefix-sum dominance. Continuous
/// piecewise-constant: the level-set test evaluated exactly at every candidate
/// threshold (the union of shell levels), which is exhaustive because both
/// integrals are piecewise linear in the threshold.
bool majorizes(const DiscreteDistribution& f, const DiscreteDistribution& g);
bool majorizes(const StepDensity& f, const StepDensity& g);
bool majorizes(const PiecewiseDensity& f, const PiecewiseDensity& g);

/// True iff the set where |f - g| >= delta has zero D-volume.
bool delta_neighboring(const StepDensity& f, const StepDensity& g, double delta);

/// Scaling/shift f_bar(r) = a^D f(a (r - b)). Entropies do not see the shift,
/// so only the scale enters the returned density; the rational overload
/// preserves the exact ledger.
StepDensity transform(const StepDensity& rho, const Rational& scale);
StepDensity transform(const StepDensity& rho, double scale);

/// Weighted sum of step densities. Disjoint layout places the components on
/// non-overlapping supports (exact for all measure computations); concentric
/// layout adds levels shell-wise and flags the overlap.
enum class MixtureLayout { disjoint, concentric };
PiecewiseDensity mixture(const std::vector<std::pair<StepDensity, double>>& parts,
                         MixtureLayout layout = MixtureLayout::disjoint);

/// n disjoint scaled copies n^{D/2-1} f(sqrt(n)(r - a_i)); the configuration
/// whose complexity-ratio factor is (m/n)^{D/2-1}.
PiecewiseDensity superpose_copies(const StepDensity& rho, int copies);

/// Stationarity residuals of the complexity-ratio extremal conditions on a
/// shared partition. eq41 is the cross-cell spread of p_i^alpha / q_i^beta
/// (zero certifies the first-variation condition); eq41_balance compares the
/// common ratio against (1-alpha) sum p^a m / ((1-beta) sum q^b m); eq42_f/g
/// are the second-variation equalities p_i^a m_i = ((a-1)/a) sum p^a m.
/// An order of exactly zero makes the corresponding variation degenerate and
/// its residual zero.
struct ExtremalityResidual {
    double eq41 = 0.0;
    double eq41_balance = 0.0;
    double eq42_f = 0.0;
    double eq42_g = 0.0;
};

ExtremalityResidual extremality_residual(const DiscreteDistribution& f,
                                         const DiscreteDistribution& g,
                                         double alpha, double beta);

} // namespace qcr::densitylab

#endif // QCR_DENSITYLAB_HPP
