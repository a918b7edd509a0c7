#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace memslab {

// Machine-readable run report. Thin wrapper over JSON so payload shapes can
// differ per command while the envelope stays fixed.
struct ReportDocument {
    static constexpr const char* schema_version = "v1";

    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::array();
    nlohmann::json provenance = nlohmann::json::object();

    nlohmann::json to_json() const;
    static ReportDocument from_json(const nlohmann::json& j);

    void write(std::ostream& os) const;
};

// Concatenate several reports into one envelope (command "merge"); inputs
// keep their own parameters/provenance inside the merged results array.
ReportDocument merge_reports(const std::vector<ReportDocument>& docs);

}  // namespace memslab
