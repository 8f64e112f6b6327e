#include "latspec/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "latspec/channel.hpp"
#include "latspec/config.hpp"
#include "latspec/error.hpp"
#include "latspec/threebody.hpp"
#include "latspec/twobody.hpp"

namespace latspec {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad_param(const std::string& what) { throw Error(ErrorCode::OutOfDomain, what); }

double parse_double(const std::string& text, const std::string& name) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) bad_param("cannot parse " + name + " '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& name) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) bad_param("cannot parse " + name + " '" + text + "'");
  return v;
}

json point_json(const TorusPoint& p) { return json::array({p[0], p[1], p[2]}); }

json intervals_json(const IntervalUnion& u) {
  json a = json::array();
  for (const auto& iv : u.intervals()) a.push_back(json::array({iv.lo, iv.hi}));
  return a;
}

json values_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& p) : p_(p) {}
  bool has(const std::string& k) const { return p_.count(k) > 0; }
  const std::string& get(const std::string& k) const { return p_.at(k); }
  TorusPoint momentum(const std::string& k) const { return has(k) ? parse_momentum(get(k)) : TorusPoint{}; }
  int integer(const std::string& k, int fallback) const { return has(k) ? parse_int(get(k), k) : fallback; }
  double real(const std::string& k, double fallback) const { return has(k) ? parse_double(get(k), k) : fallback; }
  Channel channel() const {
    const int a = integer("channel", 1);
    if (a < 1 || a > 3) bad_param("channel must be 1, 2 or 3");
    return Channel::of(a - 1);
  }

 private:
  const std::map<std::string, std::string>& p_;
};

std::vector<double> sweep_values(const ZSweep& s) {
  std::vector<double> z;
  if (s.steps == 1) return {s.lo};
  for (int i = 0; i < s.steps; ++i) z.push_back(s.lo + (s.hi - s.lo) * i / (s.steps - 1));
  return z;
}

bool run_validate(const ConfigTables& tables, json& report) {
  json checks = json::array();
  bool ok = true;
  auto add = [&](const std::string& table, const ValidationReport& r) {
    for (const auto& c : r.clauses) {
      checks.push_back({{"table", table}, {"clause", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      ok = ok && c.passed;
    }
  };
  for (int a = 0; a < 3; ++a) add("dispersion " + std::to_string(a + 1), validate_dispersion(tables.dispersion[a]));
  for (int a = 0; a < 3; ++a) add("potential " + std::to_string(a + 1), validate_potential(tables.potential[a]));
  report["checks"] = checks;
  report["valid"] = ok;
  return ok;
}

void run_twobody(const ModelConfig& model, const Params& p, json& report, std::string& csv) {
  const Channel ch = p.channel();
  const TorusPoint k = p.momentum("k");
  const TorusGrid grid(p.integer("n", model.grid_n));
  SpectrumOptions opts;
  if (p.has("gap-tol")) opts.continuum_tolerance = p.real("gap-tol", 0.0);
  const auto s = discrete_spectrum(model, ch, k, grid, opts);
  report["inputs"]["k"] = point_json(k);
  report["inputs"]["n"] = grid.n();
  report["inputs"]["channel"] = ch.alpha + 1;
  report["band"] = json::array({s.band.lo, s.band.hi});
  report["continuum_tolerance"] = s.continuum_tolerance;
  report["below_band"] = values_json(s.below);
  report["above_band"] = values_json(s.above);

  std::vector<double> zs;
  if (p.has("z")) zs.push_back(p.real("z", 0.0));
  if (p.has("z-sweep")) {
    ZSweep sw;
    if (p.get("z-sweep") == "auto")
      sw = {s.band.lo - potential_norm(model.potential[ch.alpha]) - 1.0, s.band.lo - 1e-3, 21};
    else
      sw = parse_z_sweep(p.get("z-sweep"));
    const auto v = sweep_values(sw);
    zs.insert(zs.end(), v.begin(), v.end());
  }
  if (zs.empty()) return;
  json table = json::array();
  std::ostringstream os;
  os.precision(17);
  os << "z,eigenvalues_below_z,bs_count,fredholm_determinant\n";
  for (double z : zs) {
    json row;
    row["z"] = z;
    const auto below = std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(), [z](double e) { return e < z; });
    row["eigenvalues_below_z"] = below;
    json bs = nullptr, det = nullptr;
    try {
      bs = count_eigenvalues(model, ch, k, z, grid);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutOfDomain && e.code() != ErrorCode::SingularDenominator) throw;
    }
    try {
      det = fredholm_determinant(model, ch, k, z, grid);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutOfDomain) throw;
    }
    row["bs_count"] = bs;
    row["fredholm_determinant"] = det;
    os << z << "," << below << "," << (bs.is_null() ? std::string() : bs.dump()) << ","
       << (det.is_null() ? std::string() : det.dump()) << "\n";
    table.push_back(row);
  }
  report["z_table"] = table;
  csv = os.str();
}

json channel_json(const ChannelSpectrum& c) {
  json j;
  j["channel"] = c.channel.alpha + 1;
  j["gap_tol"] = c.gap_tol;
  j["branch_continuity"] = c.sigma_two.branch_continuity;
  j["sample_count"] = c.sigma_two.samples.size();
  j["sigma_two_intervals"] = intervals_json(c.sigma_two_intervals);
  j["sigma_two_interval_count"] = c.sigma_two_intervals.count();
  j["outside_band"] = intervals_json(c.outside_band);
  j["spectrum"] = intervals_json(c.spectrum);
  return j;
}

void samples_csv(std::ostringstream& os, const ChannelSpectrum& c) {
  for (const auto& s : c.sigma_two.samples)
    os << c.channel.alpha + 1 << "," << s.spectator << "," << s.p[0] << "," << s.p[1] << "," << s.p[2] << ","
       << s.branch << "," << s.value << "\n";
}

const char* kSamplesHeader = "channel,spectator,p1,p2,p3,branch,value\n";

void run_channel(const ModelConfig& model, const Params& p, json& report, std::string& csv) {
  const Channel ch = p.channel();
  const TorusPoint K = p.momentum("K");
  const TorusGrid grid(p.integer("n", model.grid_n));
  const auto c = channel_spectrum(model, ch, K, grid, p.real("gap-tol", 0.0));
  report["inputs"]["K"] = point_json(K);
  report["inputs"]["n"] = grid.n();
  report["inputs"]["channel"] = ch.alpha + 1;
  report["band"] = json::array({c.band.lo, c.band.hi});
  report["channel"] = channel_json(c);
  const auto persistence = check_persistence(c, grid, 2.0 * c.sigma_two.max_fiber_tolerance);
  report["persistence"] = {{"holds", persistence.holds},
                           {"components_checked", persistence.components_checked},
                           {"missing_spectators", persistence.missing_spectators.size()}};
  std::ostringstream os;
  os.precision(17);
  os << kSamplesHeader;
  samples_csv(os, c);
  csv = os.str();
}

json essential_json(const EssentialSpectrum& e) {
  json j;
  j["band"] = json::array({e.band.lo, e.band.hi});
  j["tolerance"] = e.tolerance;
  j["intervals"] = intervals_json(e.union_set);
  j["interval_count"] = e.union_set.count();
  json parts = json::array();
  for (const auto& c : e.channels) parts.push_back(channel_json(c));
  j["channels"] = parts;
  return j;
}

void run_essential(const ModelConfig& model, const Params& p, json& report, std::string& csv) {
  const TorusPoint K = p.momentum("K");
  const TorusGrid grid(p.integer("n", model.grid_n));
  const auto e = essential_spectrum(model, K, grid, p.real("gap-tol", 0.0));
  report["inputs"]["K"] = point_json(K);
  report["inputs"]["n"] = grid.n();
  report["essential_spectrum"] = essential_json(e);
  std::ostringstream os;
  os.precision(17);
  os << kSamplesHeader;
  for (const auto& c : e.channels) samples_csv(os, c);
  csv = os.str();
}

void run_oracle(const ModelConfig& model, const Params& p, json& report) {
  const TorusPoint K = p.momentum("K");
  const TorusGrid grid(p.integer("n", kFullMatrixMaxN));
  const auto e = essential_spectrum(model, K, grid, p.real("gap-tol", 0.0));
  const auto r = oracle_compare(model, K, grid, e);
  report["inputs"]["K"] = point_json(K);
  report["inputs"]["n"] = grid.n();
  report["essential_spectrum"] = essential_json(e);
  report["eigenvalue_count"] = r.eigenvalues.size();
  report["contained"] = r.contained;
  report["isolated_below"] = values_json(r.isolated_below);
  report["isolated_between"] = values_json(r.isolated_between);
  report["violations"] = values_json(r.violations);
  report["containment_fraction"] = r.containment_fraction;
}

void run_faddeev(const ModelConfig& model, const Params& p, json& report, std::string& csv) {
  const TorusPoint K = p.momentum("K");
  const TorusGrid grid(p.integer("n", model.grid_n));
  report["inputs"]["K"] = point_json(K);
  report["inputs"]["n"] = grid.n();
  std::vector<double> zs;
  if (p.has("z")) zs.push_back(p.real("z", 0.0));
  if (p.has("z-sweep")) {
    ZSweep sw;
    if (p.get("z-sweep") == "auto") {
      const auto e = essential_spectrum(model, K, grid, p.real("gap-tol", 0.0));
      double norm = 0.0;
      for (const auto& v : model.potential) norm = std::max(norm, potential_norm(v));
      const double top = e.union_set.lower();
      sw = {e.band.lo - 10.0 * norm, top - 1e-6 * (1.0 + std::abs(top)), 101};
      report["essential_spectrum"] = essential_json(e);
    } else {
      sw = parse_z_sweep(p.get("z-sweep"));
    }
    const auto v = sweep_values(sw);
    zs.insert(zs.end(), v.begin(), v.end());
  }
  if (zs.empty()) bad_param("faddeev needs --z or --z-sweep");
  const auto scan = faddeev_eigenvalue_scan(model, K, zs, grid);
  json table = json::array();
  std::ostringstream os;
  os.precision(17);
  os << "z,sigma_min\n";
  for (const auto& s : scan) {
    table.push_back({{"z", s.z}, {"sigma_min", s.sigma_min}});
    os << s.z << "," << s.sigma_min << "\n";
  }
  report["scan"] = table;
  json cands = json::array();
  for (const auto& c : faddeev_candidates(model, K, scan, grid))
    cands.push_back({{"z", c.z}, {"sigma_min", c.sigma_min}, {"eigenvalue_candidate", c.below_threshold}});
  report["candidates"] = cands;
  csv = os.str();
}

void run_fiber_test(const ModelConfig& model, const Params& p, json& report) {
  const Channel ch = p.channel();
  const TorusGrid grid(p.integer("n", kFullMatrixMaxN));
  const auto r = fiber_equivalence_test(model, ch, grid);
  report["inputs"]["n"] = grid.n();
  report["inputs"]["channel"] = ch.alpha + 1;
  report["full_dim"] = r.full_dim;
  report["block_count"] = r.block_count;
  report["fiber_eigenvalue_count"] = r.fiber_eigenvalue_count;
  report["max_deviation"] = r.max_deviation;
}

}  // namespace

double parse_pi_literal(const std::string& raw) {
  std::string t;
  for (char c : raw)
    if (c != ' ') t += c;
  const auto pos = t.find("pi");
  if (pos == std::string::npos) return parse_double(t, "momentum component");
  std::string coef = t.substr(0, pos);
  std::string rest = t.substr(pos + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef == "-")
    factor = -1.0;
  else if (coef == "+" || coef.empty())
    factor = 1.0;
  else
    factor = parse_double(coef, "momentum component");
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') bad_param("cannot parse momentum component '" + raw + "'");
    divisor = parse_double(rest.substr(1), "momentum component");
    if (divisor == 0.0) bad_param("division by zero in '" + raw + "'");
  }
  return factor * kPi / divisor;
}

TorusPoint parse_momentum(const std::string& text) {
  std::array<double, 3> c{};
  std::istringstream in(text);
  std::string part;
  int i = 0;
  while (std::getline(in, part, ',')) {
    if (i == 3) bad_param("momentum needs three components: '" + text + "'");
    c[i++] = parse_pi_literal(part);
  }
  if (i != 3) bad_param("momentum needs three components: '" + text + "'");
  return {c[0], c[1], c[2]};
}

ZSweep parse_z_sweep(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) bad_param("z-sweep must be LO:HI:STEPS");
  ZSweep s{parse_double(text.substr(0, a), "z-sweep"), parse_double(text.substr(a + 1, b - a - 1), "z-sweep"),
           parse_int(text.substr(b + 1), "z-sweep")};
  if (s.steps < 1 || !(s.lo <= s.hi)) bad_param("z-sweep needs LO <= HI and STEPS >= 1");
  return s;
}

RunResult run(const RunRequest& request) {
  static const std::vector<std::string> commands{"validate", "twobody", "channel",   "essential",
                                                 "faddeev",  "oracle",  "fiber-test"};
  RunResult result;
  json& report = result.report;
  report["command"] = request.command;
  report["model_path"] = request.model_path;
  json params = json::object();
  for (const auto& [k, v] : request.params) params[k] = v;
  report["params"] = params;
  const Params p(request.params);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (std::find(commands.begin(), commands.end(), request.command) == commands.end())
      bad_param("unknown command '" + request.command + "'");
    const ConfigTables tables = read_config_tables(request.model_path);
    if (request.command == "validate") {
      const bool ok = run_validate(tables, report);
      if (ok) report["config"] = config_to_json(to_model(tables));
      report["status"] = ok ? "ok" : "error";
      result.exit_code = ok ? 0 : exit_code(ErrorCode::ValidationFailure);
    } else {
      const ModelConfig model = to_model(tables);
      report["config"] = config_to_json(model);
      if (request.command == "twobody")
        run_twobody(model, p, report, result.csv);
      else if (request.command == "channel")
        run_channel(model, p, report, result.csv);
      else if (request.command == "essential")
        run_essential(model, p, report, result.csv);
      else if (request.command == "faddeev")
        run_faddeev(model, p, report, result.csv);
      else if (request.command == "oracle")
        run_oracle(model, p, report);
      else
        run_fiber_test(model, p, report);
      report["status"] = "ok";
    }
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    result.exit_code = exit_code(e.code());
  }
  if (p.has("timing")) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report["timing_seconds"] = dt.count();
  }
  return result;
}

}  // namespace latspec
