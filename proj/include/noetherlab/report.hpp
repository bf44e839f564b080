/// @file report.hpp
/// @brief Structured verification records with text and json-lines emission.

#ifndef NOETHERLAB_REPORT_HPP
#define NOETHERLAB_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace noetherlab {

/// One record per (entry, check). Status is "pass", "fail", or "info"
/// (expected-failure notes on the literal printed variants, normalization
/// remarks, and similar).
struct Record {
    std::string id;
    std::string check;
    std::string status;
    std::optional<std::string> scale;
    std::optional<std::string> residualWitness;
    std::optional<uint64_t> seed;

    static Record pass(std::string id, std::string check) {
        return {std::move(id), std::move(check), "pass", std::nullopt, std::nullopt,
                std::nullopt};
    }
    static Record fail(std::string id, std::string check, std::string witness) {
        return {std::move(id), std::move(check), "fail", std::nullopt, std::move(witness),
                std::nullopt};
    }
    static Record info(std::string id, std::string check, std::string note) {
        return {std::move(id), std::move(check), "info", std::nullopt, std::move(note),
                std::nullopt};
    }
};

enum class ReportFormat { Text, JsonLines };

void emitRecord(std::ostream& os, const Record& r, ReportFormat fmt);
void emitRecords(std::ostream& os, const std::vector<Record>& rs, ReportFormat fmt);
int failCount(const std::vector<Record>& rs);

}  // namespace noetherlab

#endif
