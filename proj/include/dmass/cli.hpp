#pragma once

#include "dmass/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dmass::cli {

inline constexpr const char* kToolName = "dmass";
inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    std::string command;  // zeta | order | centralizer | mass | singular
    nlohmann::json payload;
    std::optional<std::uint64_t> seed;
};

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 internal failure, 2 invalid input
    nlohmann::json report;
};

struct FieldIssue {
    std::string path;
    std::string message;
};

const std::vector<std::string>& commands();

// Schema check only; an empty list means the payload is well formed.
std::vector<FieldIssue> validate_payload(const std::string& command, const nlohmann::json& payload);

RunResult run(const RunConfig& config);

// Checks the envelope of an emitted report and re-validates its config echo.
std::vector<FieldIssue> validate_report(const nlohmann::json& report);

std::string render_json(const nlohmann::json& report);
std::string render_table(const nlohmann::json& report);

nlohmann::json rational_to_json(const Rational& r);
// Accepts {"num": "...", "den": "..."}, "a/b", an integer, or a decimal string.
Rational rational_from_json(const nlohmann::json& j);

}  // namespace dmass::cli
