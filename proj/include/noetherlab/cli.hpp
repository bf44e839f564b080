/// @file cli.hpp
/// @brief Command-line frontend: verify | show | map | check-identity |
///        oracle, plus the suite runners the acceptance tests reuse.

#ifndef NOETHERLAB_CLI_HPP
#define NOETHERLAB_CLI_HPP

#include "noetherlab/oracle.hpp"
#include "noetherlab/report.hpp"

namespace noetherlab {

struct RunConfig {
    std::string gamma = "";    // "symbolic" | rational text | "" = full matrix
    std::string entropy = "";  // "isentropic" | "general" | "" = both
    std::vector<std::string> suites;  // subset of {admitted, noether, claws, eulerian, oracle}
    double tol = kDefaultTol;
    uint64_t seed = kDefaultSeed;
    ReportFormat format = ReportFormat::Text;
    std::string catalogPath;  // empty: bundled

    std::vector<ModelConfig> configs() const;  // the gamma x entropy matrix
    static RunConfig fromFile(const std::string& path);
};

/// Second Noether identity for a point generator with certificate B and a
/// first-order F; exact.
bool secondIdentityHolds(const Generator& X, const Expr& F, const DivergenceCertificate& B,
                         const JetFrame& fr);
/// Defect of the first Noether identity (zero when it holds).
Expr noetherIdentityDefect(const Generator& X, const Expr& F, const JetFrame& fr);

std::vector<Record> runAdmittedSuite(const Catalog& cat, const ModelConfig& cfg);
std::vector<Record> runNoetherSuite(const Catalog& cat, const ModelConfig& cfg);
std::vector<Record> runClawsSuite(const Catalog& cat, const ModelConfig& cfg);
std::vector<Record> runEulerianSuite(const Catalog& cat, const ModelConfig& cfg);
std::vector<Record> runOracleSuite(const Catalog& cat, const ModelConfig& cfg, double tol,
                                   uint64_t seed);
std::vector<Record> runIdentitySuite(const Catalog& cat, int count, uint64_t seed);

/// Entry point used by the binary and the CLI tests.
/// Exit codes: 0 all pass, 1 verification failure, 2 usage or config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noetherlab

#endif
