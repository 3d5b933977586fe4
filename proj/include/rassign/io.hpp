#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rassign/assignment.hpp"
#include "rassign/audit.hpp"
#include "rassign/eating.hpp"
#include "rassign/profile.hpp"
#include "rassign/properties.hpp"
#include "rassign/strategyproofness.hpp"

namespace rassign::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct AssignmentDocument {
    std::vector<std::string> agents;
    std::vector<std::string> items;
    RandomAssignment matrix;
    Json provenance = Json::object();

    friend bool operator==(const AssignmentDocument&, const AssignmentDocument&) = default;
};

Json profile_to_json(const PreferenceProfile& profile);
PreferenceProfile profile_from_json(const Json& doc);

Json assignment_to_json(const AssignmentDocument& doc);
AssignmentDocument assignment_from_json(const Json& doc);
// Rows and columns reordered to the profile's agent and item order; InputError when the id sets differ.
RandomAssignment align(const AssignmentDocument& doc, const PreferenceProfile& profile);

Json speeds_to_json(const EatingSpeedProfile& speeds, const PreferenceProfile& profile);
EatingSpeedProfile speeds_from_json(const Json& doc, const PreferenceProfile& profile);

Json witness_to_json(const Witness& w, const PreferenceProfile& profile);
Json decomposition_to_json(const ConvexDecomposition& d, const std::vector<std::string>& agents,
                           const std::vector<std::string>& items);
Json deviation_to_json(const Deviation& d, const PreferenceProfile& profile);
Json audit_to_json(const AuditReport& report);

// Parses a file; InputError on I/O or syntax failure.
Json read_json(const std::filesystem::path& path);
// Writes through a temporary sibling and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& text);
// Writes every corpus profile and assignment as <name>.json under dir.
std::vector<std::filesystem::path> export_corpus(const std::filesystem::path& dir);

}  // namespace rassign::io
