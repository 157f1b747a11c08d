#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace zetalaw::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Output of one subcommand.
///
/// Serialization is deterministic: two runs with the same inputs and seeds
/// differ only in `generated_at`.
struct Report {
    std::string command;
    std::string inputs_digest;  ///< SHA-256 over the input files, empty when there are none
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<std::string> warnings;
    std::vector<std::string> files;  ///< auxiliary files written next to the report

    nlohmann::ordered_json to_json(bool with_timestamp = true) const;
};

/// Hex SHA-256 over each file's name length, name and contents, in order.
std::string digest_files(const std::vector<std::string>& paths);

/// UTC time in ISO 8601.
std::string utc_timestamp();

void write_report(const Report& report, const std::string& path);

}  // namespace zetalaw::cli
