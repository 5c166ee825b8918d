#pragma once

#include "mqsim/experiments.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace mqsim {

/// 17 significant digits; round-trips doubles bit-exactly.
std::string format_g17(double v);

// Serializers return whole file contents so callers can compare runs
// byte-for-byte before anything touches the filesystem.

std::string oned_csv(const OneDResult& r);
std::string oned_json(const OneDResult& r, const nlohmann::json& provenance);

std::string twod_csv(const TwoDResult& r);
std::string twod_json(const TwoDResult& r, const nlohmann::json& provenance);

std::string decay_csv(const DecayResult& r);
std::string decay_json(const DecayResult& r, const nlohmann::json& provenance);

std::string sweep_csv(const SweepResult& r);
std::string sweep_json(const SweepResult& r, const nlohmann::json& provenance);

std::string aht_csv(const AhtResult& r);
std::string aht_json(const AhtResult& r, const nlohmann::json& provenance);

/// Writes content, creating parent directories as needed.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mqsim
