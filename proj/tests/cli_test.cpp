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

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qcr/closedform.hpp"
#include "qcr/molecules.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(QCR_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
    int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

} // namespace

TEST(Cli, ComputeMatchesClosedForm) {
    auto res = run_cli("compute --system pho --molecule CO --n 0 --l 0 --m 0 "
                       "--measure renyi --alpha 2");
    ASSERT_EQ(res.exit_code, 0) << res.output;
    auto fields = split(res.output, ',');
    ASSERT_EQ(fields.size(), 11u) << res.output;
    EXPECT_EQ(fields[0], "renyi");
    EXPECT_EQ(fields[1], "pho");
    auto co = qcr::molecules::to_params(
        qcr::molecules::find(qcr::molecules::builtin_table(), "CO"));
    double expected = qcr::closedform::renyi_pho_closed(co, {0, 0, 0}, 2).value;
    EXPECT_NEAR(std::stod(fields[8]), expected, 1e-10 * std::abs(expected));
    EXPECT_EQ(fields[10], "closed\n");
}

TEST(Cli, GrcEqualOrdersIsOne) {
    auto res = run_cli("compute --system pho --molecule H2 --measure grc "
                       "--alpha 2 --beta 2");
    ASSERT_EQ(res.exit_code, 0) << res.output;
    auto fields = split(res.output, ',');
    EXPECT_NEAR(std::stod(fields[8]), 1.0, 1e-9);
}

TEST(Cli, LambdaDomainViolationExitsThree) {
    auto res = run_cli("compute --system iso --molecule CO --lambda 0.5 "
                       "--measure renyi --alpha 2");
    EXPECT_EQ(res.exit_code, 3) << res.output;
}

TEST(Cli, UnknownFlagExitsTwo) {
    auto res = run_cli("compute --no-such-flag 1");
    EXPECT_EQ(res.exit_code, 2) << res.output;
}

TEST(Cli, NonIntegerOrderRoutesToQuadrature) {
    auto res = run_cli("compute --system pho --De 3.5 --re 0.5 --mu 1 --hbar 1 "
                       "--n 0 --l 0 --m 0 --measure renyi --alpha 2.5 --method auto");
    ASSERT_EQ(res.exit_code, 0) << res.output;
    auto fields = split(res.output, ',');
    EXPECT_EQ(fields[10], "quad\n");
}

TEST(Cli, SweepDeterministicAndMonotone) {
    namespace fs = std::filesystem;
    fs::path out1 = fs::temp_directory_path() / "qcr_cli_sweep1.csv";
    fs::path out2 = fs::temp_directory_path() / "qcr_cli_sweep2.csv";
    fs::path svg = fs::temp_directory_path() / "qcr_cli_sweep.svg";
    std::string base =
        "sweep --system iso --De 3.5 --re 0.5 --mu 1 --hbar 1 --n 0 --l 0 --m 0 "
        "--measure renyi --alpha 2.5 --method quad --param lambda --from 1.5 "
        "--to 12 --steps 6 --scale linear";
    auto r1 = run_cli(base + " --out " + out1.string() + " --svg " + svg.string());
    auto r2 = run_cli(base + " --out " + out2.string());
    ASSERT_EQ(r1.exit_code, 0) << r1.output;
    ASSERT_EQ(r2.exit_code, 0) << r2.output;

    std::ifstream f1(out1), f2(out2);
    std::string c1((std::istreambuf_iterator<char>(f1)), {});
    std::string c2((std::istreambuf_iterator<char>(f2)), {});
    EXPECT_EQ(c1, c2);
    EXPECT_TRUE(fs::exists(svg));

    // Header plus six rows; value column increases with lambda.
    auto lines = split(c1, '\n');
    ASSERT_GE(lines.size(), 7u);
    EXPECT_EQ(lines[0],
              "measure,system,n,l,m,alpha,beta,lambda,param,param_value,value,abs_err,method");
    double prev = -1e300;
    for (int i = 1; i <= 6; ++i) {
        auto fields = split(lines[i], ',');
        ASSERT_EQ(fields.size(), 13u) << lines[i];
        double value = std::stod(fields[10]);
        EXPECT_GT(value, prev);
        prev = value;
    }
    fs::remove(out1);
    fs::remove(out2);
    fs::remove(svg);
}

TEST(Cli, SweepRejectsBadSpec) {
    auto res = run_cli("sweep --param lambda --from 2 --to 2 --steps 5 "
                       "--system iso --molecule CO --measure renyi --alpha 2");
    EXPECT_EQ(res.exit_code, 2) << res.output;
}

TEST(Cli, VerifyMoleculesSuitePasses) {
    auto res = run_cli("verify --suite molecules");
    EXPECT_EQ(res.exit_code, 0) << res.output;
    EXPECT_NE(res.output.find("VERIFY PASS"), std::string::npos);
}

TEST(Cli, VerifyDetectsCorruptedMoleculeFile) {
    namespace fs = std::filesystem;
    fs::path table = fs::temp_directory_path() / "qcr_cli_bad_molecules.csv";
    {
        std::ofstream out(table);
        out << "name,De,De_unit,re_angstrom,mu_amu,source\n"
            << "CO,10.845073,eV,1.1283,6.860586,ref\n"
            << "NO,9.5,eV,1.1508,7.468441,ref\n" // wrong well depth
            << "N2,11.938194,eV,1.0940,7.003350,ref\n"
            << "CH,3.947419,eV,1.1198,0.929931,ref\n"
            << "H2,4.7446,eV,0.7416,0.503910,ref\n"
            << "ScH,2.25,eV,1.776,0.986040,ref\n";
    }
    auto res = run_cli("verify --suite molecules --molecules-file " + table.string());
    EXPECT_EQ(res.exit_code, 1) << res.output;
    EXPECT_NE(res.output.find("NO"), std::string::npos);
    fs::remove(table);
}

TEST(Cli, MoleculeFileEnvOverride) {
    namespace fs = std::filesystem;
    fs::path table = fs::temp_directory_path() / "qcr_cli_env_molecules.csv";
    {
        std::ofstream out(table);
        out << "name,De,De_unit,re_angstrom,mu_amu,source\n"
            << "XY,3.5,eV,1.0,1.0,test\n";
    }
    std::string cmd = "QCR_MOLECULES=" + table.string() + " " + QCR_CLI_PATH +
                      " compute --system pho --molecule XY --measure renyi --alpha 2 2>&1";
    std::array<char, 4096> buf{};
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
    int status = pclose(pipe);
    EXPECT_EQ(WEXITSTATUS(status), 0) << output;
    fs::remove(table);
}

TEST(Cli, ReproduceEmitsFigureFiles) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qcr_cli_fig";
    auto res = run_cli("reproduce --figure 2 --out " + dir.string());
    ASSERT_EQ(res.exit_code, 0) << res.output;
    EXPECT_TRUE(fs::exists(dir / "fig2.csv"));
    EXPECT_TRUE(fs::exists(dir / "fig2.svg"));
    std::ifstream csv(dir / "fig2.csv");
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "series,measure,n,l,m,alpha,beta,lambda,param,param_value,value,method");
    int rows = 0;
    std::string line;
    while (std::getline(csv, line)) {
        if (!line.empty()) ++rows;
    }
    EXPECT_EQ(rows, 6 * 9); // six molecules, n = 0..8
    fs::remove_all(dir);
}
