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

#ifndef QCR_VERIFY_HPP
#define QCR_VERIFY_HPP

#include <string>
#include <vector>

#include "qcr/molecules.hpp"

namespace qcr::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0; // measured deviation
    double allowed = 0.0;  // threshold
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    int failures() const;
    double max_relative_excess() const; // max measured/allowed over failing checks
};

/// Energy spacings of the given table against the reference values.
SuiteResult run_molecule_suite(const std::vector<molecules::MoleculeRecord>& table);

/// Complexity-ratio properties (identities, reciprocity, order monotonicity,
/// scaling and superposition factors) on the synthetic-density battery and on
/// quantum densities.
SuiteResult run_property_suite();

/// The three order-monotonicity/convexity inequalities on every shipped
/// density family.
SuiteResult run_inequality_suite();

/// Majorization battery: 500 seeded random discrete pairs plus the
/// continuous example pair; entropy ordering and the rcr bound table.
SuiteResult run_majorization_suite();

/// Near-continuity ladder of the example pair in D = 1 and D = 3.
SuiteResult run_continuity_suite();

/// Closed forms against the quadrature oracle (radial and angular), and the
/// large-lambda limit.
SuiteResult run_oracle_suite();

/// Eq.-22-style upper bound sampled over admissible density/order cases.
SuiteResult run_bound_suite();

/// which: "properties", "oracle", "molecules", or "all".
std::vector<SuiteResult> run_suites(const std::string& which,
                                    const std::vector<molecules::MoleculeRecord>& table);

} // namespace qcr::verify

#endif // QCR_VERIFY_HPP
