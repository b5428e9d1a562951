// Copyright 2026 The su11-parity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "su11/cli/commands.hpp"

namespace {

using namespace su11;
using namespace su11::cli;

std::string fixture(const std::string& name) { return std::string(SU11_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "su11");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> out;
    for (const std::string& l : lines(csv)) {
        if (l.rfind("# ", 0) != 0) {
            out.push_back(l);
        }
    }
    return out;
}

TEST(CliSignal, VacuumRowCountAndColumns) {
    const CliRun r = run({"signal", "--config", fixture("signal_vacuum.json")});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    const auto rows = data_lines(r.out);
    ASSERT_EQ(rows.size(), 362u);
    EXPECT_EQ(rows[0], "phi_rad,parity");
}

TEST(CliSignal, NoGainIsFlat) {
    const CliRun r = run({"signal", "--config", fixture("signal_no_gain.json")});
    ASSERT_EQ(r.code, exit_ok);
    const auto rows = data_lines(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].substr(rows[i].find(',') + 1), "1");
    }
}

TEST(CliSignal, FockOneStartsAtMinusOne) {
    const CliRun r = run({"signal", "--config", fixture("signal_fock1.json")});
    ASSERT_EQ(r.code, exit_ok);
    EXPECT_EQ(data_lines(r.out)[1], "0,-1");
}

TEST(CliSignal, OverridesApplyOnTopOfTheFile) {
    const CliRun r = run({"signal", "--config", fixture("signal_vacuum.json"), "--set", "gain.g=0", "--set",
                       "grid.points=5"});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    const auto rows = data_lines(r.out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[5], "6.283185307179586,1");
}

TEST(CliSignal, ConfigFromOverridesAlone) {
    const CliRun r = run({"signal", "--set", "state.family=vacuum", "--set", "gain.g=0.5", "--set", "grid.points=3"});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    EXPECT_EQ(data_lines(r.out).size(), 4u);
}

TEST(CliGolden, OutputsAreByteStable) {
    const std::vector<std::vector<std::string>> cases = {
        {"signal", "signal_vacuum.json", "signal_vacuum.expected.csv"},
        {"signal", "signal_no_gain.json", "signal_no_gain.expected.csv"},
        {"signal", "signal_fock1.json", "signal_fock1.expected.csv"},
        {"sensitivity", "sensitivity_vacuum.json", "sensitivity_vacuum.expected.csv"},
        {"sensitivity", "sensitivity_coherent_svs.json", "sensitivity_coherent_svs.expected.json"},
    };
    for (const auto& c : cases) {
        const CliRun r = run({c[0], "--config", fixture(c[1])});
        ASSERT_EQ(r.code, exit_ok) << c[1] << ": " << r.err;
        EXPECT_EQ(r.out, slurp(fixture(c[2]))) << c[1];
    }
}

TEST(CliGolden, VerifyIsRepeatable) {
    for (const char* name : {"verify_vacuum.json", "verify_fock1.json"}) {
        const CliRun a = run({"verify", "--config", fixture(name)});
        const CliRun b = run({"verify", "--config", fixture(name)});
        ASSERT_EQ(a.code, exit_ok) << name << ": " << a.err;
        EXPECT_EQ(a.out, b.out) << name;
    }
}

TEST(CliRoundTrip, SignalCsvRereadsIdentically) {
    const CliRun r = run({"signal", "--config", fixture("signal_vacuum.json")});
    std::istringstream in(r.out);
    EXPECT_EQ(to_csv(read_csv(in)), r.out);

    const CliRun s = run({"sensitivity", "--config", fixture("sensitivity_vacuum.json")});
    std::istringstream in2(s.out);
    EXPECT_EQ(to_csv(read_csv(in2)), s.out);
}

TEST(CliOutput, FileMatchesStandardOutput) {
    const auto path = std::filesystem::temp_directory_path() / "su11_cli_test_signal.csv";
    const CliRun to_file = run({"signal", "--config", fixture("signal_fock1.json"), "--output", path.string()});
    ASSERT_EQ(to_file.code, exit_ok);
    EXPECT_TRUE(to_file.out.empty());
    EXPECT_EQ(slurp(path.string()), run({"signal", "--config", fixture("signal_fock1.json")}).out);
    std::filesystem::remove(path);
}

TEST(CliOutput, JsonMirrorsCsvFields) {
    const CliRun csv = run({"sensitivity", "--config", fixture("sensitivity_vacuum.json")});
    const CliRun js = run({"sensitivity", "--config", fixture("sensitivity_vacuum.json"), "--format", "json"});
    ASSERT_EQ(js.code, exit_ok);
    const auto doc = nlohmann::json::parse(js.out);
    EXPECT_EQ(doc.at("command"), "sensitivity");
    EXPECT_EQ(doc.at("columns"), nlohmann::json({"phi_rad", "parity", "delta_phi"}));
    EXPECT_EQ(doc.at("rows").size(), data_lines(csv.out).size() - 1);
    for (const char* key : {"phi_opt", "delta_phi_min", "n_bar", "snl", "hl", "below_hl"}) {
        EXPECT_TRUE(doc.at("summary").contains(key)) << key;
    }
}

TEST(CliSensitivity, SummaryMatchesExample) {
    const CliRun r = run({"sensitivity", "--config", fixture("sensitivity_vacuum.json"), "--format", "json"});
    const auto s = nlohmann::json::parse(r.out).at("summary");
    EXPECT_NEAR(s.at("delta_phi_min").get<double>() / 0.850918, 1.0, 0.01);
    const bool below = s.at("below_hl") == "true";
    EXPECT_TRUE(below || s.at("hl").get<double>() <= s.at("delta_phi_min").get<double>());
    EXPECT_EQ(below, s.at("delta_phi_min").get<double>() < s.at("hl").get<double>());
}

TEST(CliVerify, VacuumPasses) {
    const CliRun r = run({"verify", "--config", fixture("verify_vacuum.json")});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    const auto rows = data_lines(r.out);
    EXPECT_EQ(rows[0], "check,phi_rad,closed_form,oracle,abs_diff,tolerance,status");
    std::size_t unitary = 0;
    std::size_t mu = 0;
    for (const std::string& l : rows) {
        unitary += l.rfind("unitary_normal_vs_direct,", 0) == 0;
        mu += l.rfind("mu_normal_vs_conjugated,", 0) == 0;
        if (l != rows[0]) {
            EXPECT_EQ(l.substr(l.rfind(',') + 1), "PASS") << l;
        }
    }
    EXPECT_EQ(unitary, operator_check_points);
    EXPECT_EQ(mu, operator_check_points);
    EXPECT_NE(r.out.find("# result=PASS"), std::string::npos);
}

TEST(CliVerify, FockReportsBothForms) {
    const CliRun r = run({"verify", "--config", fixture("verify_fock1.json")});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    int printed_fail = 0;
    int corrected_pass = 0;
    for (const std::string& l : data_lines(r.out)) {
        printed_fail += l.rfind("parity_printed_form,", 0) == 0 && l.ends_with(",FAIL");
        corrected_pass += l.rfind("parity,", 0) == 0 && l.ends_with(",PASS");
    }
    EXPECT_EQ(printed_fail, 2);
    EXPECT_EQ(corrected_pass, 2);
    EXPECT_NE(r.out.find("# printed_form_status=FAIL"), std::string::npos);
}

TEST(CliVerify, TightToleranceFails) {
    const CliRun r = run({"verify", "--config", fixture("verify_tight.json")});
    EXPECT_EQ(r.code, exit_verify_failed);
    EXPECT_NE(r.out.find("# result=FAIL"), std::string::npos);
}

TEST(CliExitCodes, MalformedGridNamesTheField) {
    const CliRun r = run({"sensitivity", "--config", fixture("bad_points.json")});
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("grid.points"), std::string::npos);
}

TEST(CliExitCodes, UnknownKeyNamed) {
    const CliRun r = run({"signal", "--config", fixture("unknown_key.json")});
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("state.squeeze"), std::string::npos);
}

TEST(CliExitCodes, OtherConfigErrors) {
    EXPECT_EQ(run({"signal", "--config", fixture("does_not_exist.json")}).code, exit_config);
    EXPECT_EQ(run({"signal"}).code, exit_config);
    EXPECT_EQ(run({"plot", "--config", fixture("signal_vacuum.json")}).code, exit_config);
    EXPECT_EQ(run({"signal", "--config", fixture("signal_vacuum.json"), "--format", "xml"}).code, exit_config);
    EXPECT_EQ(run({"signal", "--config", fixture("signal_vacuum.json"), "--set", "gain.g=-1"}).code, exit_config);
    const CliRun r = run({"signal", "--config", fixture("signal_vacuum.json"), "--set", "state.family=squeezed"});
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("state.family"), std::string::npos);
}

TEST(CliExitCodes, CapExceeded) {
    const CliRun r = run({"verify", "--config", fixture("cap_exceeded.json")});
    EXPECT_EQ(r.code, exit_numeric);
    EXPECT_NE(r.err.find("exceeds cap"), std::string::npos);
}

TEST(CliExitCodes, NotConvergedReportsBothCutoffs) {
    const CliRun r = run({"verify", "--config", fixture("verify_unconverged.json")});
    EXPECT_EQ(r.code, exit_numeric);
    EXPECT_NE(r.err.find("n_max 13 and 21"), std::string::npos) << r.err;
}

TEST(CliExitCodes, EveryPointStationary) {
    const CliRun r = run({"sensitivity", "--config", fixture("all_stationary.json")});
    EXPECT_EQ(r.code, exit_empty);
}

}  // namespace
