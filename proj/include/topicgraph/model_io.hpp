#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "topicgraph/lda.hpp"

namespace topicgraph {

inline constexpr int model_version = 1;

enum class ModelFormat { json, binary };

ModelFormat parse_model_format(std::string_view name);

nlohmann::ordered_json model_to_json(const TopicModel& model);
/// Throws FormatError on a missing field, wrong shape or unsupported version.
TopicModel model_from_json(const nlohmann::json& doc);

std::string serialize_model(const TopicModel& model, ModelFormat format);
/// Detects the format from the leading bytes.
TopicModel parse_model(std::string_view bytes);

void save_model(const TopicModel& model, const std::filesystem::path& path, ModelFormat format);
/// Throws IoError or FormatError.
TopicModel load_model(const std::filesystem::path& path);

}  // namespace topicgraph
