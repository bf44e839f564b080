#include "noetherlab/report.hpp"

#include <iomanip>

#include "json.hpp"

namespace noetherlab {

void emitRecord(std::ostream& os, const Record& r, ReportFormat fmt) {
    if (fmt == ReportFormat::JsonLines) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["check"] = r.check;
        j["status"] = r.status;
        j["scale"] = r.scale ? nlohmann::ordered_json(*r.scale) : nlohmann::ordered_json(nullptr);
        if (r.residualWitness) j["residual_witness"] = *r.residualWitness;
        if (r.seed) j["seed"] = *r.seed;
        os << j.dump() << "\n";
        return;
    }
    os << std::left << std::setw(14) << r.id << std::setw(44) << r.check << std::setw(6)
       << r.status;
    if (r.scale) os << "  scale=" << *r.scale;
    if (r.seed) os << "  seed=" << *r.seed;
    if (r.residualWitness) os << "  | " << *r.residualWitness;
    os << "\n";
}

void emitRecords(std::ostream& os, const std::vector<Record>& rs, ReportFormat fmt) {
    for (const auto& r : rs) emitRecord(os, r, fmt);
}

int failCount(const std::vector<Record>& rs) {
    int n = 0;
    for (const auto& r : rs)
        if (r.status == "fail") ++n;
    return n;
}

}  // namespace noetherlab
