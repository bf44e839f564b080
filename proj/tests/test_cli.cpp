#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "noetherlab/cli.hpp"

using namespace noetherlab;

namespace {

int runCli(const std::vector<std::string>& args, std::string* outText = nullptr) {
    std::ostringstream out, err;
    int rc = run(args, out, err);
    if (outText) *outText = out.str();
    return rc;
}

}  // namespace

TEST_CASE("exit-code contract") {
    CHECK(runCli({"show", "T999"}) == 2);
    CHECK(runCli({"map", "nosuch"}) == 2);
    CHECK(runCli({"verify", "--gamma", "bogus"}) == 2);
    CHECK(runCli({"verify", "--gamma", "symbolic", "--entropy", "odd"}) == 2);
    CHECK(runCli({"frobnicate"}) == 2);
    CHECK(runCli({"verify", "--suite", "nosuchsuite", "--gamma", "symbolic", "--entropy",
                  "general"}) == 2);
    CHECK(runCli({"--help"}) == 0);
}

TEST_CASE("show prints the entry") {
    std::string out;
    CHECK(runCli({"show", "T1"}, &out) == 0);
    CHECK(out.find("linear momentum") != std::string::npos);
    CHECK(out.find("T_t = phi1_t") != std::string::npos);
}

TEST_CASE("map prints the Eulerian image") {
    std::string out;
    CHECK(runCli({"map", "T1"}, &out) == 0);
    CHECK(out.find("rho*u") != std::string::npos);
    CHECK(out.find("rho^gamma*S") != std::string::npos);

    CHECK(runCli({"map", "T9"}, &out) == 0);
    CHECK(out.find("no Eulerian representation") != std::string::npos);
    CHECK(out.find("xi") != std::string::npos);
}

TEST_CASE("verify single suite exits zero and emits schema-stable json lines") {
    std::string out;
    int rc = runCli({"verify", "--gamma", "symbolic", "--entropy", "general", "--suite",
                     "claws", "--format", "json-lines"},
                    &out);
    CHECK(rc == 0);
    std::istringstream lines(out);
    std::string line;
    int records = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        CHECK(j.contains("id"));
        CHECK(j.contains("check"));
        CHECK(j.contains("status"));
        CHECK(j.contains("scale"));
        ++records;
    }
    CHECK(records >= 9);
}

TEST_CASE("verify admitted suite at gamma 2") {
    std::string out;
    int rc = runCli({"verify", "--gamma", "2", "--entropy", "isentropic", "--suite",
                     "admitted"},
                    &out);
    CHECK(rc == 0);
    CHECK(out.find("X7") != std::string::npos);
    CHECK(out.find("all checks passed") != std::string::npos);
}

TEST_CASE("check-identity runs the randomized and catalog identities") {
    std::string out;
    CHECK(runCli({"check-identity", "--count", "3", "--seed", "5"}, &out) == 0);
    CHECK(out.find("noether-identity") != std::string::npos);
    CHECK(out.find("second-identity") != std::string::npos);
}

TEST_CASE("oracle subcommand reports the seed and residual") {
    std::string out;
    CHECK(runCli({"oracle", "T6", "--trials", "20", "--seed", "99"}, &out) == 0);
    CHECK(out.find("seed=99") != std::string::npos);
    CHECK(out.find("worst relative residual") != std::string::npos);
}

TEST_CASE("config file provides defaults and flags override") {
    std::string path = "/tmp/noetherlab_cli_test.cfg";
    {
        std::ofstream f(path);
        f << "# test config\n";
        f << "gamma = symbolic\n";
        f << "entropy = general\n";
        f << "suite = claws\n";
        f << "format = json-lines\n";
    }
    std::string out;
    CHECK(runCli({"verify", "--config", path}, &out) == 0);
    CHECK(out.find("\"id\"") != std::string::npos);  // json-lines from the file
    // flag overrides the file format
    CHECK(runCli({"verify", "--config", path, "--format", "text"}, &out) == 0);
    CHECK(out.find("all checks passed") != std::string::npos);
    CHECK(runCli({"verify", "--config", "/tmp/does_not_exist.cfg"}) == 2);
}

TEST_CASE("seed falls back to the environment variable") {
    setenv("NOETHERLAB_SEED", "777", 1);
    std::string out;
    CHECK(runCli({"oracle", "T1", "--trials", "5"}, &out) == 0);
    CHECK(out.find("seed=777") != std::string::npos);
    unsetenv("NOETHERLAB_SEED");
}
