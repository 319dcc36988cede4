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

#include "qcr/molecules.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qcr::molecules {

void MoleculeRecord::validate() const {
    if (name.empty()) throw std::domain_error("molecule record: empty name");
    if (!(De > 0.0 && re_angstrom > 0.0 && mu_amu > 0.0)) {
        throw std::domain_error("molecule record '" + name +
                                "': all quantities must be positive");
    }
    if (De_unit != "eV" && De_unit != "cm^-1") {
        throw std::domain_error("molecule record '" + name + "': unknown De unit '" +
                                De_unit + "' (allowed: eV, cm^-1)");
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim
        size_t b = field.find_first_not_of(" \t\r");
        size_t e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return out;
}

double parse_positive(const std::string& s, const char* what, int line) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("cannot parse ") + what + " from '" + s + "'", line);
    }
}

} // namespace

std::vector<MoleculeRecord> load_molecules(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open molecule file: " + path);

    std::vector<MoleculeRecord> records;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    bool header_done = false;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv(line);
        if (!header_done) {
            if (fields.size() != 6 || fields[0] != "name") {
                throw ParseError("expected header 'name,De,De_unit,re_angstrom,mu_amu,source'",
                                 lineno);
            }
            header_done = true;
            continue;
        }
        if (fields.size() != 6) {
            throw ParseError("expected 6 comma-separated fields, got " +
                             std::to_string(fields.size()), lineno);
        }
        MoleculeRecord rec;
        rec.name = fields[0];
        rec.De = parse_positive(fields[1], "De", lineno);
        rec.De_unit = fields[2];
        rec.re_angstrom = parse_positive(fields[3], "re_angstrom", lineno);
        rec.mu_amu = parse_positive(fields[4], "mu_amu", lineno);
        rec.source = fields[5];
        try {
            rec.validate();
        } catch (const std::domain_error& e) {
            throw ParseError(e.what(), lineno);
        }
        if (!seen.insert(rec.name).second) {
            throw ParseError("duplicate molecule name '" + rec.name + "'", lineno);
        }
        records.push_back(std::move(rec));
    }
    if (!header_done) throw ParseError("missing header row", lineno);
    return records;
}

states::PseudoharmonicParams to_params(const MoleculeRecord& rec) {
    rec.validate();
    states::PseudoharmonicParams p;
    p.De = rec.De_unit == "cm^-1" ? rec.De * kInvCmToEv : rec.De;
    p.re = rec.re_angstrom;
    p.mu = rec.mu_amu * kAmuMeV * 1e6; // mu c^2 in eV
    p.hbar = kHbarCEvAngstrom;
    return p;
}

const std::vector<MoleculeRecord>& builtin_table() {
    static const std::vector<MoleculeRecord> table = {
        {"CO", 10.845073, "eV", 1.1283, 6.860586, "spectroscopic constants compilation"},
        {"NO", 8.043782, "eV", 1.1508, 7.468441, "spectroscopic constants compilation"},
        {"N2", 11.938194, "eV", 1.0940, 7.003350, "spectroscopic constants compilation"},
        {"CH", 3.947419, "eV", 1.1198, 0.929931, "spectroscopic constants compilation"},
        {"H2", 4.744600, "eV", 0.7416, 0.503910, "spectroscopic constants compilation"},
        {"ScH", 2.250000, "eV", 1.7760, 0.986040, "spectroscopic constants compilation"},
    };
    return table;
}

const MoleculeRecord& find(const std::vector<MoleculeRecord>& table,
                           const std::string& name) {
    for (const auto& rec : table) {
        if (rec.name == name) return rec;
    }
    throw std::out_of_range("unknown molecule '" + name + "'");
}

} // namespace qcr::molecules
