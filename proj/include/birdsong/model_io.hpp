#pragma once

#include <json.hpp>

#include "birdsong/classifiers.hpp"

namespace birdsong {

inline constexpr int kModelFormatVersion = 1;

/// Versioned envelope: {"format_version": 1, "technique": "...", "model": {...}}.
nlohmann::json model_to_json(const AnyModel& model);

/// Rejects unknown format versions and malformed documents.
AnyModel model_from_json(const nlohmann::json& doc);

void save_model_file(const std::string& path, const AnyModel& model);
AnyModel load_model_file(const std::string& path);

}  // namespace birdsong
