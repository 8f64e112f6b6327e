#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "latspec/torus.hpp"

namespace latspec {

// Exit codes: 0 ok, 2 config invalid, 3 precondition violated, 4 numerical failure.
struct RunRequest {
  std::string command;  // validate, twobody, channel, essential, faddeev, oracle, fiber-test
  std::string model_path;
  // K, k, n, z, z-sweep, gap-tol, channel, timing
  std::map<std::string, std::string> params;
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;
  std::string csv;  // plot-ready samples, empty when the command has none
};

RunResult run(const RunRequest& request);

// "x,y,z" with each component a number or a multiple of pi: pi, -pi, pi/2,
// 3pi/4, 0.5*pi, 1.2.
TorusPoint parse_momentum(const std::string& text);
double parse_pi_literal(const std::string& text);

struct ZSweep {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};
// "LO:HI:STEPS"
ZSweep parse_z_sweep(const std::string& text);

}  // namespace latspec
