#include "latspec/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "latspec/error.hpp"

namespace latspec {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw Error(ErrorCode::ParseError, msg.str());
}

nlohmann::ordered_json table_json(const LatticeCoefficients& c) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& [s, v] : c.entries()) rows.push_back({s[0], s[1], s[2], v});
  return rows;
}

}  // namespace

ConfigTables parse_config_text(const std::string& text, const std::string& source) {
  ConfigTables out;
  enum class Kind { None, Model, Dispersion, Potential };
  Kind kind = Kind::None;
  int slot = 0;
  std::array<bool, 3> have_dispersion{}, have_potential{};
  bool have_grid = false;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(source, line_no, "unterminated section header");
      std::istringstream hs(line.substr(1, line.size() - 2));
      std::string name;
      hs >> name;
      if (name == "model") {
        kind = Kind::Model;
        continue;
      }
      int index = 0;
      if (!(hs >> index) || index < 1 || index > 3) fail(source, line_no, "section index must be 1, 2 or 3");
      std::string rest;
      if (hs >> rest) fail(source, line_no, "unexpected text in section header");
      slot = index - 1;
      if (name == "dispersion") {
        if (have_dispersion[slot]) fail(source, line_no, "duplicate section [dispersion " + std::to_string(index) + "]");
        have_dispersion[slot] = true;
        kind = Kind::Dispersion;
      } else if (name == "potential") {
        if (have_potential[slot]) fail(source, line_no, "duplicate section [potential " + std::to_string(index) + "]");
        have_potential[slot] = true;
        kind = Kind::Potential;
      } else {
        fail(source, line_no, "unknown section '" + name + "'");
      }
      continue;
    }

    if (kind == Kind::None) fail(source, line_no, "content before the first section");
    if (kind == Kind::Model) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail(source, line_no, "expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key != "grid_n") fail(source, line_no, "unknown key '" + key + "'");
      std::size_t used = 0;
      int n = 0;
      try {
        n = std::stoi(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size()) fail(source, line_no, "grid_n must be an integer");
      if (n < 2) fail(source, line_no, "grid_n must be >= 2");
      out.grid_n = n;
      have_grid = true;
      continue;
    }

    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.size() != 4) fail(source, line_no, "expected 's1 s2 s3 value'");
    LatticeVector s{};
    for (int i = 0; i < 3; ++i) {
      const auto r = std::from_chars(tokens[i].data(), tokens[i].data() + tokens[i].size(), s[i]);
      if (r.ec != std::errc() || r.ptr != tokens[i].data() + tokens[i].size())
        fail(source, line_no, "lattice vector components must be integers");
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tokens[3], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tokens[3].size() || !std::isfinite(v)) fail(source, line_no, "coefficient must be a number");
    auto& table = kind == Kind::Dispersion ? out.dispersion[slot] : out.potential[slot];
    if (table.entries().count(s)) fail(source, line_no, "repeated lattice vector");
    table.set(s, v);
  }

  for (int a = 0; a < 3; ++a) {
    if (!have_dispersion[a]) fail(source, line_no, "missing section [dispersion " + std::to_string(a + 1) + "]");
    if (!have_potential[a]) fail(source, line_no, "missing section [potential " + std::to_string(a + 1) + "]");
  }
  if (!have_grid) fail(source, line_no, "missing grid_n in [model]");
  return out;
}

ConfigTables read_config_tables(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open model file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

ModelConfig to_model(const ConfigTables& tables) {
  return ModelConfig::create(tables.dispersion, tables.potential, tables.grid_n);
}

ModelConfig parse_config(const std::string& path) { return to_model(read_config_tables(path)); }

std::string format_config(const ModelConfig& model) {
  std::ostringstream os;
  os.precision(17);
  os << "[model]\ngrid_n = " << model.grid_n << "\n";
  auto table = [&os](const char* name, int index, const LatticeCoefficients& c) {
    os << "[" << name << " " << index << "]\n";
    for (const auto& [s, v] : c.entries()) os << s[0] << " " << s[1] << " " << s[2] << " " << v << "\n";
  };
  for (int a = 0; a < 3; ++a) table("dispersion", a + 1, model.dispersion[a]);
  for (int a = 0; a < 3; ++a) table("potential", a + 1, model.potential[a]);
  return os.str();
}

nlohmann::ordered_json config_to_json(const ModelConfig& model) {
  nlohmann::ordered_json j;
  j["grid_n"] = model.grid_n;
  j["dispersion"] = nlohmann::ordered_json::array();
  j["potential"] = nlohmann::ordered_json::array();
  for (int a = 0; a < 3; ++a) {
    j["dispersion"].push_back(table_json(model.dispersion[a]));
    j["potential"].push_back(table_json(model.potential[a]));
  }
  j["masses"] = {model.masses.m[0], model.masses.m[1], model.masses.m[2]};
  return j;
}

}  // namespace latspec
