#include "zkdistill/cli.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace zkd::cli {
namespace {

using nlohmann::json;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string> &args, const std::map<std::string, std::string> &env = {}) {
    std::ostringstream out, err;
    EnvLookup lookup = [env](const std::string &name) -> std::optional<std::string> {
        auto it = env.find(name);
        if (it == env.end()) {
            return std::nullopt;
        }
        return it->second;
    };
    int code = dispatch(args, out, err, lookup);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string &name, const std::string &content) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p.string();
}

TEST(Cli, ThresholdExample) {
    Outcome r = run({"threshold", "--k", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0.1415\n");
}

TEST(Cli, ThresholdJson) {
    Outcome r = run({"threshold", "--k", "2", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    json doc = json::parse(r.out);
    ASSERT_EQ(doc["thresholds"].size(), 2u);
    EXPECT_NEAR(doc["thresholds"][1]["percent"].get<double>(), 6.94, 0.005);
}

TEST(Cli, CertifyExample) {
    Outcome r = run({"certify", "--r", "1", "--m", "5", "--k", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("passed=true a=15 x=15\n", 0), 0u) << r.out;
}

TEST(Cli, CertifyFailureExitsOne) {
    Outcome r = run({"certify", "--r", "1", "--m", "4", "--k", "3"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("passed=false"), std::string::npos);
    EXPECT_NE(r.out.find("witness"), std::string::npos);
}

TEST(Cli, PolySeries) {
    Outcome r = run({"poly", "--k", "2", "--series", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("series: {3: 35, 4: 105"), std::string::npos) << r.out;

    Outcome j = run({"--format", "json", "poly", "--k", "2", "--series", "4"});
    ASSERT_EQ(j.code, 0) << j.err;
    json doc = json::parse(j.out);
    EXPECT_EQ(doc["series"]["3"]["num"], "35");
    EXPECT_EQ(doc["series"]["3"]["den"], "1");
    EXPECT_EQ(doc["series"]["4"]["num"], "105");
    EXPECT_TRUE(doc["output_error"]["numerator"][0].is_string());
}

TEST(Cli, CodeCommand) {
    Outcome r = run({"code", "--r", "1", "--m", "4", "--shortened"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("RM(1,4): [16,5,8]"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("[[15,1]]"), std::string::npos) << r.out;
    Outcome csv = run({"code", "--r", "1", "--m", "4", "--format", "csv"});
    EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "r,m,n,k,d,dual_k,dual_d,qrm");
}

TEST(Cli, Verify) {
    Outcome r = run({"verify", "--k", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("exhaustive enumeration vs closed form: match"), std::string::npos) << r.out;
    Outcome skipped = run({"verify", "--k", "4"});
    EXPECT_EQ(skipped.code, 0);
    EXPECT_NE(skipped.out.find("skipped"), std::string::npos);
}

TEST(Cli, EstimateAndSweep) {
    Outcome risc = run({"estimate", "risc", "--target", "1e-8", "--eps", "1e-4", "--format", "json"});
    ASSERT_EQ(risc.code, 0) << risc.err;
    json doc = json::parse(risc.out);
    EXPECT_EQ(doc["t_count"], 122);

    Outcome cisc = run({"estimate", "cisc", "--k", "3", "--target", "1e-8", "--eps", "1e-4", "--format", "json"});
    ASSERT_EQ(cisc.code, 0) << cisc.err;
    EXPECT_LT(json::parse(cisc.out)["expected_states"].get<double>(), doc["expected_states"].get<double>());

    Outcome sweep = run({"sweep", "--k", "2", "3", "--from", "6", "--to", "8", "--per-decade", "1"});
    ASSERT_EQ(sweep.code, 0) << sweep.err;
    EXPECT_EQ(std::count(sweep.out.begin(), sweep.out.end(), '\n'), 1 + 2 * 2 * 3);
}

TEST(Cli, MekWithoutParamsWarns) {
    Outcome r = run({"estimate", "risc", "--distiller", "mek", "--target", "1e-8", "--eps", "1e-4"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("NON-AUTHORITATIVE"), std::string::npos) << r.err;
}

TEST(Cli, CircuitExport) {
    Outcome gates = run({"circuit", "--kind", "teleport", "--k", "3"});
    ASSERT_EQ(gates.code, 0) << gates.err;
    EXPECT_EQ(gates.out.rfind("QUBITS 2\n", 0), 0u);
    Outcome qasm = run({"circuit", "--kind", "distill", "--k", "2", "--as", "qasm"});
    ASSERT_EQ(qasm.code, 0);
    EXPECT_NE(qasm.out.find("qreg q[16];"), std::string::npos);
    EXPECT_EQ(run({"circuit", "--kind", "bogus"}).code, 2);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"threshold", "--k", "1"}).code, 1);
    EXPECT_EQ(run({"threshold", "--k", "2", "--bisection-tol", "0"}).code, 2);
    EXPECT_EQ(run({"threshold", "--nope"}).code, 2);
    EXPECT_EQ(run({"threshold", "--k", "two"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"--format", "xml", "threshold", "--k", "2"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, UnknownSubcommandIsNamed) {
    Outcome r = run({"distill"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("unknown subcommand 'distill'"), std::string::npos) << r.err;
}

TEST(Config, ParseText) {
    auto m = parse_config_text("# comment\nformat = json\n\n parallel=auto \n");
    EXPECT_EQ(m.at("format"), "json");
    EXPECT_EQ(m.at("parallel"), "auto");
    EXPECT_THROW(parse_config_text("no equals sign\n"), std::invalid_argument);
}

TEST(Config, ApplySettings) {
    CliConfig c;
    apply_settings(c, {{"parallel", "auto"}, {"exhaustive_limit", "20"}, {"bisection_tol", "1e-9"}});
    EXPECT_EQ(c.parallel_degree, 0u);
    EXPECT_EQ(c.exhaustive_limit, 20u);
    EXPECT_DOUBLE_EQ(c.bisection_tol, 1e-9);
    EXPECT_THROW(apply_settings(c, {{"colour", "red"}}), std::invalid_argument);
    EXPECT_THROW(apply_settings(c, {{"exhaustive_limit", "40"}}), std::invalid_argument);
    EXPECT_THROW(apply_settings(c, {{"format", "xml"}}), std::invalid_argument);
}

TEST(Config, Precedence) {
    std::string file = write_temp("zkd_precedence.conf", "format = csv\nbisection_tol = 1e-6\n");
    auto env_none = [](const std::string &) -> std::optional<std::string> { return std::nullopt; };
    EXPECT_EQ(resolve_config(std::nullopt, env_none).format, OutputFormat::text);
    EXPECT_EQ(resolve_config(file, env_none).format, OutputFormat::csv);
    auto env_json = [](const std::string &name) -> std::optional<std::string> {
        if (name == "ZKD_FORMAT") return "json";
        return std::nullopt;
    };
    CliConfig c = resolve_config(file, env_json);
    EXPECT_EQ(c.format, OutputFormat::json);
    EXPECT_DOUBLE_EQ(c.bisection_tol, 1e-6);

    // Through dispatch: file < env < flag.
    Outcome from_file = run({"--config", file, "threshold", "--k", "2"});
    EXPECT_EQ(from_file.out.rfind("k,threshold,percent\n", 0), 0u) << from_file.out;
    Outcome from_env = run({"threshold", "--k", "2"}, {{"ZKD_CONFIG", file}, {"ZKD_FORMAT", "json"}});
    EXPECT_NO_THROW(json::parse(from_env.out));
    Outcome from_flag = run({"--format", "text", "threshold", "--k", "2"}, {{"ZKD_CONFIG", file}, {"ZKD_FORMAT", "json"}});
    EXPECT_EQ(from_flag.out, "0.1415\n");
    EXPECT_EQ(run({"--config", "/nonexistent/zkd.conf", "threshold", "--k", "2"}).code, 1);
    std::remove(file.c_str());
}

}  // namespace
}  // namespace zkd::cli
