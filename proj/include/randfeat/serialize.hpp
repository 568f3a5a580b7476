#pragma once

#include <string>

#include "randfeat/model.hpp"

namespace randfeat {

inline constexpr int kModelSchemaVersion = 1;

/// Flat versioned JSON record; real arrays round-trip bit-exactly.
void save_model(const RandomFeatureModel& model, const std::string& path);
RandomFeatureModel load_model(const std::string& path);

std::string model_summary(const RandomFeatureModel& model);

}  // namespace randfeat
