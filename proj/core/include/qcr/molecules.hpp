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

#ifndef QCR_MOLECULES_HPP
#define QCR_MOLECULES_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "qcr/states.hpp"

namespace qcr::molecules {

// Frozen conversion constants; reproducing the reference numbers requires
// these exact literals, so they are never recomputed from CODATA.
inline constexpr double kAmuMeV = 931.494028;          // 1 amu in MeV/c^2
inline constexpr double kInvCmToEv = 1.239841875e-4;   // 1 cm^-1 in eV
inline constexpr double kHbarCEvAngstrom = 1973.29;    // c*hbar in eV*Angstrom

struct MoleculeRecord {
    std::string name;
    double De = 0.0;          // in De_unit
    std::string De_unit;      // "eV" or "cm^-1"
    double re_angstrom = 0.0;
    double mu_amu = 0.0;
    std::string source;

    void validate() const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line_number(line) {}
    int line_number;
};

/// Loads a UTF-8 comma-separated molecule file with header row
/// `name,De,De_unit,re_angstrom,mu_amu,source`; `#` starts a comment.
/// Rejects duplicate names, unknown unit tags, and nonpositive quantities.
std::vector<MoleculeRecord> load_molecules(const std::string& path);

/// Converts a record to solver parameters in (eV, Angstrom) with
/// mu = mu c^2 and hbar = c hbar.
states::PseudoharmonicParams to_params(const MoleculeRecord& rec);

/// CO, NO, N2, CH, H2, ScH.
const std::vector<MoleculeRecord>& builtin_table();

/// Lookup by name, case-sensitive; throws std::out_of_range if absent.
const MoleculeRecord& find(const std::vector<MoleculeRecord>& table,
                           const std::string& name);

/// Environment variable naming a default molecule file.
inline constexpr const char* kMoleculeFileEnv = "QCR_MOLECULES";

} // namespace qcr::molecules

#endif // QCR_MOLECULES_HPP
