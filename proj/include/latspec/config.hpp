#pragma once

#include <array>
#include <string>

#include <json.hpp>

#include "latspec/model.hpp"

namespace latspec {

// Model file format:
//
//   # comment
//   [model]
//   grid_n = 8
//   [dispersion 1]          one section per particle 1..3
//   0 0 0 3.0               s1 s2 s3 value
//   1 0 0 -0.5
//   [potential 1]           one section per pair channel 1..3; may be empty
//   0 0 0 8.0
//
// Every dispersion and potential section must be present. Repeated vectors
// within a section are a parse error.
struct ConfigTables {
  std::array<LatticeCoefficients, 3> dispersion;
  std::array<LatticeCoefficients, 3> potential;
  int grid_n = 8;
};

// Throws parse-error with the line number.
ConfigTables parse_config_text(const std::string& text, const std::string& source = "<string>");
ConfigTables read_config_tables(const std::string& path);

// Parses and validates. Throws parse-error or validation-failure naming the
// failing table and clause.
ModelConfig parse_config(const std::string& path);
ModelConfig to_model(const ConfigTables& tables);

std::string format_config(const ModelConfig& model);
nlohmann::ordered_json config_to_json(const ModelConfig& model);

}  // namespace latspec
