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

#include "qcr/densitylab.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qcr/specfun.hpp"

namespace qcr::densitylab {

double unit_ball_volume(int D) {
    if (D < 1) throw std::domain_error("unit_ball_volume: D must be positive");
    return 2.0 * std::pow(M_PI, 0.5 * D) / (D * std::tgamma(0.5 * D));
}

namespace {

double to_double(const Rational& r) { return static_cast<double>(r); }

void check_same_dimension(int a, int b) {
    if (a != b) throw std::invalid_argument("density dimension mismatch");
}

// (level, volume) cells of a step density in real units.
std::vector<std::pair<double, double>> shell_cells(const StepDensity& rho) {
    std::vector<std::pair<double, double>> cells;
    double cd = unit_ball_volume(rho.dimension());
    double prev = 0.0;
    for (size_t i = 0; i < rho.radii().size(); ++i) {
        double r = rho.radii()[i];
        double vol = cd * (std::pow(r, rho.dimension()) - std::pow(prev, rho.dimension()));
        cells.emplace_back(rho.levels()[i], vol);
        prev = r;
    }
    return cells;
}

double renyi_cells(const std::vector<std::pair<double, double>>& cells, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("renyi_step: alpha must be positive");
    if (alpha == 1.0) {
        double s = 0.0;
        for (auto [level, vol] : cells) {
            if (level > 0.0) s -= level * std::log(level) * vol;
        }
        return s;
    }
    double moment = 0.0;
    for (auto [level, vol] : cells) {
        if (level > 0.0) moment += std::pow(level, alpha) * vol;
    }
    return std::log(moment) / (1.0 - alpha);
}

// Level-set integral sum max(level - t, 0) * vol at threshold t.
double level_set_integral(const std::vector<std::pair<double, double>>& cells,
                          double t) {
    double s = 0.0;
    for (auto [level, vol] : cells) {
        if (level > t) s += (level - t) * vol;
    }
    return s;
}

bool majorizes_cells(const std::vector<std::pair<double, double>>& f,
                     const std::vector<std::pair<double, double>>& g) {
    // Both integrals are piecewise linear in the threshold with breakpoints at
    // the cell levels, so checking the union of levels is exhaustive.
    std::set<double> thresholds{0.0};
    for (auto [level, vol] : f) thresholds.insert(level);
    for (auto [level, vol] : g) thresholds.insert(level);
    for (double t : thresholds) {
        if (level_set_integral(f, t) < level_set_integral(g, t) - 1e-15) {
            return false;
        }
    }
    return true;
}

} // namespace

StepDensity StepDensity::from_shells(
    int dimension, const std::vector<std::pair<double, double>>& radius_and_level) {
    if (dimension < 1) throw std::domain_error("StepDensity: dimension must be >= 1");
    if (radius_and_level.empty()) throw std::domain_error("StepDensity: no shells");
    StepDensity rho;
    rho.dimension_ = dimension;
    double prev = 0.0;
    double mass = 0.0;
    double cd = unit_ball_volume(dimension);
    for (auto [r, level] : radius_and_level) {
        if (!(r > prev)) throw std::domain_error("StepDensity: radii must increase strictly");
        if (level < 0.0) throw std::domain_error("StepDensity: levels must be >= 0");
        mass += level * cd * (std::pow(r, dimension) - std::pow(prev, dimension));
        rho.radii_.push_back(r);
        rho.levels_.push_back(level);
        prev = r;
    }
    if (std::abs(mass - 1.0) > 1e-9) {
        throw std::domain_error("StepDensity: shells must integrate to 1, got " +
                                std::to_string(mass));
    }
    return rho;
}

StepDensity StepDensity::from_exact(
    int dimension,
    const std::vector<std::pair<Rational, Rational>>& radius_pow_d_and_level_hat) {
    if (dimension < 1) throw std::domain_error("StepDensity: dimension must be >= 1");
    if (radius_pow_d_and_level_hat.empty()) throw std::domain_error("StepDensity: no shells");
    StepDensity rho;
    rho.dimension_ = dimension;
    std::vector<ExactShell> shells;
    Rational prev = 0;
    Rational mass = 0;
    double cd = unit_ball_volume(dimension);
    for (const auto& [rd, level_hat] : radius_pow_d_and_level_hat) {
        if (!(rd > prev)) throw std::domain_error("StepDensity: radii must increase strictly");
        if (level_hat < 0) throw std::domain_error("StepDensity: levels must be >= 0");
        Rational vol_hat = rd - prev;
        mass += level_hat * vol_hat;
        shells.push_back({level_hat, vol_hat});
        rho.radii_.push_back(std::pow(to_double(rd), 1.0 / dimension));
        rho.levels_.push_back(to_double(level_hat) / cd);
        prev = rd;
    }
    if (mass != 1) {
        throw std::domain_error("StepDensity: exact shells must integrate to exactly 1");
    }
    rho.exact_ = std::move(shells);
    return rho;
}

Rational StepDensity::exact_mass() const {
    if (!exact_) throw std::logic_error("StepDensity: no exact ledger");
    Rational mass = 0;
    for (const auto& s : *exact_) mass += s.level_hat * s.vol_hat;
    return mass;
}

double StepDensity::value_at(double r) const {
    if (r < 0.0) return 0.0;
    for (size_t i = 0; i < radii_.size(); ++i) {
        if (r < radii_[i]) return levels_[i];
    }
    return 0.0;
}

states::JointDensity StepDensity::to_joint_density() const {
    if (dimension_ != 3) {
        throw std::domain_error("to_joint_density: only 3-D step densities embed");
    }
    states::JointDensity rho;
    StepDensity self = *this;
    double rmax = radii_.back();
    rho.radial = [self](double r) { return 4.0 * M_PI * self.value_at(r); };
    rho.polar = [](double) { return 1.0 / (4.0 * M_PI); };
    rho.evaluator = [self](double r, double, double) { return self.value_at(r); };
    rho.radial_tail_scale = rmax / 12.0; // cutoff lands exactly on the support edge
    rho.radial_breakpoints = radii_;
    double sup = 0.0;
    for (double level : levels_) sup = std::max(sup, level);
    rho.sup_hint = sup;
    return rho;
}

void DiscreteDistribution::validate() const {
    if (probabilities.empty()) {
        throw std::domain_error("DiscreteDistribution: empty");
    }
    double mass = 0.0;
    if (cell_measures) {
        if (cell_measures->size() != probabilities.size()) {
            throw std::domain_error("DiscreteDistribution: measure list size mismatch");
        }
        for (size_t i = 0; i < probabilities.size(); ++i) {
            if (probabilities[i] < 0.0 || (*cell_measures)[i] <= 0.0) {
                throw std::domain_error("DiscreteDistribution: negative entries");
            }
            mass += probabilities[i] * (*cell_measures)[i];
        }
    } else {
        for (double p : probabilities) {
            if (p < 0.0) throw std::domain_error("DiscreteDistribution: negative entries");
            mass += p;
        }
    }
    if (std::abs(mass - 1.0) > 1e-9) {
        throw std::domain_error("DiscreteDistribution: must sum to 1, got " +
                                std::to_string(mass));
    }
}

ExamplePair make_example_pair(int dimension, const Rational& b_pow_d,
                              const Rational& delta1, const Rational& delta1_prime) {
    if (!(b_pow_d > 1)) throw std::domain_error("make_example_pair: need B^D > 1");
    if (!(delta1 > 0 && delta1 < 1 && delta1_prime > 0 && delta1_prime < 1)) {
        throw std::domain_error("make_example_pair: deltas must lie in (0,1)");
    }
    auto two_shell = [&](const Rational& d) {
        return StepDensity::from_exact(
            dimension,
            {{Rational(1), Rational(1) - d}, {b_pow_d, d / (b_pow_d - 1)}});
    };
    ExamplePair pair{
        two_shell(delta1), two_shell(delta1_prime),
        StepDensity::from_exact(dimension, {{Rational(1), Rational(1)}}),
        StepDensity::from_exact(dimension, {{Rational(1), Rational(1)}})};
    return pair;
}

double renyi_step(const StepDensity& rho, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("renyi_step: alpha must be positive");
    double cd = unit_ball_volume(rho.dimension());
    if (rho.is_exact()) {
        // R = ln C_D + (1/(1-alpha)) ln sum level_hat^alpha vol_hat.
        if (alpha == 1.0) {
            double s = 0.0;
            for (const auto& sh : rho.exact_shells()) {
                double lh = to_double(sh.level_hat);
                if (lh > 0.0) s -= to_double(sh.level_hat * sh.vol_hat) * std::log(lh);
            }
            return s + std::log(cd);
        }
        double moment = 0.0;
        for (const auto& sh : rho.exact_shells()) {
            double lh = to_double(sh.level_hat);
            if (lh > 0.0) moment += std::pow(lh, alpha) * to_double(sh.vol_hat);
        }
        return std::log(moment) / (1.0 - alpha) + std::log(cd);
    }
    return renyi_cells(shell_cells(rho), alpha);
}

double renyi_step(const PiecewiseDensity& rho, double alpha) {
    return renyi_cells(rho.cells, alpha);
}

double renyi_step(const DiscreteDistribution& rho, double alpha) {
    rho.validate();
    if (!(alpha > 0.0)) throw std::domain_error("renyi_step: alpha must be positive");
    const std::vector<double>& p = rho.probabilities;
    auto measure = [&](size_t i) {
        return rho.cell_measures ? (*rho.cell_measures)[i] : 1.0;
    };
    if (alpha == 1.0) {
        double s = 0.0;
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i] > 0.0) s -= measure(i) * p[i] * std::log(p[i]);
        }
        return s;
    }
    double moment = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) moment += std::pow(p[i], alpha) * measure(i);
    }
    return std::log(moment) / (1.0 - alpha);
}

double effective_domain_measure(const StepDensity& rho) {
    double cd = unit_ball_volume(rho.dimension());
    if (rho.is_exact()) {
        Rational vol = 0;
        for (const auto& sh : rho.exact_shells()) {
            if (sh.level_hat > 0) vol += sh.vol_hat;
        }
        return cd * to_double(vol);
    }
    double vol = 0.0;
    for (auto [level, v] : shell_cells(rho)) {
        if (level > 0.0) vol += v;
    }
    return vol;
}

Localization is_localized(const StepDensity& f, const StepDensity& g) {
    check_same_dimension(f.dimension(), g.dimension());
    if (f.is_exact() && g.is_exact()) {
        Rational vf = 0, vg = 0;
        for (const auto& sh : f.exact_shells()) {
            if (sh.level_hat > 0) vf += sh.vol_hat;
        }
        for (const auto& sh : g.exact_shells()) {
            if (sh.level_hat > 0) vg += sh.vol_hat;
        }
        if (vf < vg) return Localization::f_localized;
        if (vg < vf) return Localization::g_localized;
        return Localization::equal;
    }
    double vf = effective_domain_measure(f), vg = effective_domain_measure(g);
    if (vf < vg) return Localization::f_localized;
    if (vg < vf) return Localization::g_localized;
    return Localization::equal;
}

bool majorizes(const DiscreteDistribution& f, const DiscreteDistribution& g) {
    f.validate();
    g.validate();
    if (f.cell_measures || g.cell_measures) {
        throw std::invalid_argument("majorizes: discrete test takes plain distributions");
    }
    std::vector<double> a = f.probabilities, b = g.probabilities;
    size_t n = std::max(a.size(), b.size());
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    std::sort(a.rbegin(), a.rend());
    std::sort(b.rbegin(), b.rend());
    double pa = 0.0, pb = 0.0;
    for (size_t k = 0; k < n; ++k) {
        pa += a[k];
        pb += b[k];
        if (pa < pb - 1e-15) return false;
    }
    return true;
}

bool majorizes(const StepDensity& f, const StepDensity& g) {
    check_same_dimension(f.dimension(), g.dimension());
    if (f.is_exact() && g.is_exact()) {
        // Same test in hat units with exact rational arithmetic.
        std::set<Rational> thresholds{Rational(0)};
        for (const auto& sh : f.exact_shells()) thresholds.insert(sh.level_hat);
        for (const auto& sh : g.exact_shells()) thresholds.insert(sh.level_hat);
        auto integral = [](const StepDensity& rho, const Rational& t) {
            Rational s = 0;
            for (const auto& sh : rho.exact_shells()) {
                if (sh.level_hat > t) s += (sh.level_hat - t) * sh.vol_hat;
            }
            return s;
        };
        for (const Rational& t : thresholds) {
            if (integral(f, t) < integral(g, t)) return false;
        }
        return true;
    }
    return majorizes_cells(shell_cells(f), shell_cells(g));
}

bool majorizes(const PiecewiseDensity& f, const PiecewiseDensity& g) {
    check_same_dimension(f.dimension, g.dimension);
    return majorizes_cells(f.cells, g.cells);
}

bool delta_neighboring(const StepDensity& f, const StepDensity& g, double delta) {
    check_same_dimension(f.dimension(), g.dimension());
    if (!(delta > 0.0)) throw std::domain_error("delta_neighboring: delta must be positive");
    // Merge shell boundaries; on each annulus of positive volume the level
    // difference is constant.
    std::set<double> edges;
    for (double r : f.radii()) edges.insert(r);
    for (double r : g.radii()) edges.insert(r);
    double prev = 0.0;
    for (double r : edges) {
        if (r > prev) {
            double mid = 0.5 * (prev + r);
            if (std::abs(f.value_at(mid) - g.value_at(mid)) >= delta) return false;
        }
        prev = r;
    }
    return true;
}

StepDensity transform(const StepDensity& rho, const Rational& scale) {
    if (!(scale > 0)) throw std::domain_error("transform: scale must be positive");
    int d = rho.dimension();
    Rational scale_pow_d = 1;
    for (int i = 0; i < d; ++i) scale_pow_d *= scale;
    if (rho.is_exact()) {
        std::vector<std::pair<Rational, Rational>> shells;
        Rational rd = 0;
        for (const auto& sh : rho.exact_shells()) {
            rd += sh.vol_hat / scale_pow_d;
            shells.emplace_back(rd, sh.level_hat * scale_pow_d);
        }
        return StepDensity::from_exact(d, shells);
    }
    return transform(rho, to_double(scale));
}

StepDensity transform(const StepDensity& rho, double scale) {
    if (!(scale > 0.0)) throw std::domain_error("transform: scale must be positive");
    std::vector<std::pair<double, double>> shells;
    double spd = std::pow(scale, rho.dimension());
    for (size_t i = 0; i < rho.radii().size(); ++i) {
        shells.emplace_back(rho.radii()[i] / scale, rho.levels()[i] * spd);
    }
    return StepDensity::from_shells(rho.dimension(), shells);
}

PiecewiseDensity mixture(const std::vector<std::pair<StepDensity, double>>& parts,
                         MixtureLayout layout) {
    if (parts.empty()) throw std::domain_error("mixture: no components");
    double wsum = 0.0;
    for (const auto& [rho, w] : parts) {
        if (w < 0.0) throw std::domain_error("mixture: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12) {
        throw std::domain_error("mixture: weights must sum to 1");
    }
    PiecewiseDensity out;
    out.dimension = parts.front().first.dimension();
    for (const auto& [rho, w] : parts) check_same_dimension(rho.dimension(), out.dimension);

    if (layout == MixtureLayout::disjoint) {
        for (const auto& [rho, w] : parts) {
            for (auto [level, vol] : shell_cells(rho)) {
                out.cells.emplace_back(w * level, vol);
            }
        }
        return out;
    }
    // Concentric overlap: merge radii, add weighted levels per annulus.
    out.overlap_flagged = true;
    std::set<double> edges;
    for (const auto& [rho, w] : parts) {
        for (double r : rho.radii()) edges.insert(r);
    }
    double cd = unit_ball_volume(out.dimension);
    double prev = 0.0;
    for (double r : edges) {
        double level = 0.0;
        double mid = 0.5 * (prev + r);
        for (const auto& [rho, w] : parts) level += w * rho.value_at(mid);
        double vol = cd * (std::pow(r, out.dimension) - std::pow(prev, out.dimension));
        out.cells.emplace_back(level, vol);
        prev = r;
    }
    return out;
}

PiecewiseDensity superpose_copies(const StepDensity& rho, int copies) {
    if (copies < 1) throw std::domain_error("superpose_copies: need copies >= 1");
    int d = rho.dimension();
    double n = static_cast<double>(copies);
    PiecewiseDensity out;
    out.dimension = d;
    // Each copy is n^{D/2-1} f(sqrt(n) r), carrying probability 1/n.
    double level_scale = std::pow(n, 0.5 * d - 1.0);
    double vol_scale = std::pow(n, -0.5 * d);
    for (int c = 0; c < copies; ++c) {
        for (auto [level, vol] : shell_cells(rho)) {
            out.cells.emplace_back(level_scale * level, vol_scale * vol);
        }
    }
    return out;
}

ExtremalityResidual extremality_residual(const DiscreteDistribution& f,
                                         const DiscreteDistribution& g,
                                         double alpha, double beta) {
    f.validate();
    g.validate();
    if (f.probabilities.size() != g.probabilities.size()) {
        throw std::invalid_argument("extremality_residual: partition size mismatch");
    }
    if (f.cell_measures.has_value() != g.cell_measures.has_value()) {
        throw std::invalid_argument("extremality_residual: partitions must share measures");
    }
    if (alpha < 0.0 || beta < 0.0) {
        throw std::domain_error("extremality_residual: orders must be >= 0");
    }
    size_t n = f.probabilities.size();
    auto measure = [&](size_t i) {
        return f.cell_measures ? (*f.cell_measures)[i] : 1.0;
    };

    double sum_pa = 0.0, sum_qb = 0.0;
    std::vector<double> pa(n), qb(n);
    for (size_t i = 0; i < n; ++i) {
        pa[i] = std::pow(f.probabilities[i], alpha);
        qb[i] = std::pow(g.probabilities[i], beta);
        sum_pa += pa[i] * measure(i);
        sum_qb += qb[i] * measure(i);
    }

    ExtremalityResidual res;
    // First variation (w.r.t. m_i): p_i^a / q_i^b must not depend on i.
    double rbar = 0.0;
    std::vector<double> ratio(n);
    for (size_t i = 0; i < n; ++i) {
        ratio[i] = pa[i] / qb[i];
        rbar += ratio[i];
    }
    rbar /= n;
    for (size_t i = 0; i < n; ++i) {
        res.eq41 = std::max(res.eq41, std::abs(ratio[i] - rbar));
    }
    res.eq41_balance =
        std::abs(rbar - (1.0 - alpha) * sum_pa / ((1.0 - beta) * sum_qb));

    // Second variation; an order of zero makes the variation identically zero.
    if (alpha > 0.0) {
        double target = (alpha - 1.0) / alpha * sum_pa;
        for (size_t i = 0; i < n; ++i) {
            res.eq42_f = std::max(res.eq42_f, std::abs(pa[i] * measure(i) - target));
        }
    }
    if (beta > 0.0) {
        double target = (beta - 1.0) / beta * sum_qb;
        for (size_t i = 0; i < n; ++i) {
            res.eq42_g = std::max(res.eq42_g, std::abs(qb[i] * measure(i) - target));
        }
    }
    return res;
}

} // namespace qcr::densitylab
