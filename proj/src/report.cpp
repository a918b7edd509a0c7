#include "memslab/report.hpp"

#include <ostream>
#include <stdexcept>

namespace memslab {

nlohmann::json ReportDocument::to_json() const {
    return nlohmann::json{{"schema_version", schema_version},
                          {"command", command},
                          {"parameters", parameters},
                          {"results", results},
                          {"provenance", provenance}};
}

ReportDocument ReportDocument::from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<std::string>() != schema_version)
        throw std::runtime_error("report: unsupported schema version");
    ReportDocument d;
    d.command = j.at("command").get<std::string>();
    d.parameters = j.at("parameters");
    d.results = j.at("results");
    d.provenance = j.at("provenance");
    return d;
}

void ReportDocument::write(std::ostream& os) const { os << to_json().dump(2) << '\n'; }

ReportDocument merge_reports(const std::vector<ReportDocument>& docs) {
    ReportDocument merged;
    merged.command = "merge";
    merged.provenance["merged_count"] = docs.size();
    for (const auto& d : docs) merged.results.push_back(d.to_json());
    return merged;
}

}  // namespace memslab
