// Command-line front end: experiment orchestration and deterministic
// CSV/JSON artifact emission.
//
// Exit codes: 0 success, 2 configuration error, 3 singular quad-map step,
// 4 convergence failure, 5 I/O error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsg/io.hpp"
#include "lsg/reduction.hpp"
#include "lsg/sine_gordon.hpp"
#include "lsg/stirling.hpp"

using json = nlohmann::ordered_json;
using namespace lsg;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSingular = 3;
constexpr int kExitConvergence = 4;
constexpr int kExitIO = 5;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// flat key=value files; '#' starts a comment, blank lines ignored
std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot read config: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    if (!out.emplace(key, value).second)
      throw ConfigError(path + ": duplicate key '" + key + "'");
    out[key] = value;
  }
  return out;
}

class Settings {
 public:
  Settings(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  double number(const std::string& key, double fallback) {
    auto it = kv_.find(key);
    consumed_.insert(key);
    if (it == kv_.end()) return fallback;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': not a number: " + it->second);
    }
  }

  long integer(const std::string& key, long fallback) {
    const double v = number(key, static_cast<double>(fallback));
    const long r = std::lround(v);
    if (static_cast<double>(r) != v) throw ConfigError("key '" + key + "': not an integer");
    return r;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    consumed_.insert(key);
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
  }

  std::vector<long> integer_list(const std::string& key, const std::string& fallback) {
    std::stringstream ss(text(key, fallback));
    std::vector<long> out;
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(std::stol(item));
      } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': bad integer list entry: " + item);
      }
    }
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : kv_)
      if (!consumed_.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  json echo() const {
    json j = json::object();
    for (const auto& [key, value] : kv_) j[key] = value;
    return j;
  }

 private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> consumed_;
};

void write_report(const std::string& out_dir, const json& report) {
  const std::string path = out_dir + "/report.json";
  std::ofstream out(path);
  if (!out) throw IOError("cannot open for writing: " + path);
  out << report.dump(2) << "\n";
  if (!out) throw IOError("write failed: " + path);
}

json base_report(const std::string& command, const Settings& s,
                 const std::vector<std::string>& artifacts) {
  json j;
  j["command"] = command;
  j["config"] = s.echo();
  j["artifacts"] = artifacts;
  return j;
}

int cmd_stirling(Settings& s, const std::string& out_dir) {
  const long max_i = s.integer("max_i", 8);
  const long cap = s.integer("cap", 64);
  std::string omega_text = s.text("omega", "1");
  s.reject_unknown();
  if (max_i < 0 || max_i > cap) throw ConfigError("max_i must lie in [0, cap]");
  Rational omega;
  try {
    omega = Rational(omega_text);
  } catch (const std::exception&) {
    throw ConfigError("omega: not a rational: " + omega_text);
  }
  const std::string csv_path = out_dir + "/stirling.csv";
  CsvWriter csv(csv_path, {"i", "k", "omega_num", "omega_den", "value_num", "value_den"});
  for (long i = 0; i <= max_i; ++i)
    for (long k = 0; k <= i; ++k) {
      const Rational v = coeff_P(static_cast<std::size_t>(i), static_cast<std::size_t>(k), omega);
      csv.row({std::to_string(i), std::to_string(k), numerator(omega).str(),
               denominator(omega).str(), numerator(v).str(), denominator(v).str()});
    }
  csv.close();
  json rep = base_report("stirling", s, {csv_path});
  rep["derived"] = {{"rows", (max_i + 1) * (max_i + 2) / 2}, {"omega", to_string(omega)}};
  write_report(out_dir, rep);
  return 0;
}

int cmd_dispersion(Settings& s, const std::string& out_dir) {
  const double sigma = s.number("sigma", 2.0);
  const long samples = s.integer("samples", 100);
  const double k_min = s.number("k_min", 0.0);
  const double k_max = s.number("k_max", M_PI);
  s.reject_unknown();
  if (sigma <= 0.0) throw ConfigError("sigma must be positive");
  if (samples < 0) throw ConfigError("samples must be nonnegative");
  const std::string csv_path = out_dir + "/dispersion.csv";
  CsvWriter csv(csv_path, {"k", "omega", "group_velocity", "abs_Omega"});
  for (long i = 0; i < samples; ++i) {
    const double k =
        samples == 1 ? k_min : k_min + (k_max - k_min) * i / static_cast<double>(samples - 1);
    const PlaneWave w = dispersion(k, sigma);
    csv.row({format_double(k), format_double(w.omega), format_double(group_velocity(k, sigma)),
             format_double(std::abs(w.Omega))});
  }
  csv.close();
  json rep = base_report("dispersion", s, {csv_path});
  rep["derived"] = {{"sigma", sigma}, {"rows", samples}};
  write_report(out_dir, rep);
  return 0;
}

void write_field_csv(const std::string& path, const Field2D& u) {
  CsvWriter csv(path, {"n", "m", "u"});
  for (std::size_t m = 0; m < u.m_count; ++m)
    for (long n = u.n_min; n <= u.n_max(); ++n)
      csv.row({std::to_string(n), std::to_string(m), format_double(u.at(n, m))});
  csv.close();
}

int cmd_sg_run(Settings& s, const std::string& out_dir) {
  const double p = s.number("p", std::pow(2.0, 0.25));
  const double q = s.number("q", std::pow(2.0, 0.25));
  const long n_count = s.integer("n_count", 200);
  const long m_count = s.integer("m_count", 100);
  const std::string mode = s.text("mode", "background");
  const double amplitude = s.number("amplitude", 1e-8);
  const double k = s.number("k", 1.0);
  const std::string boundary = s.text("boundary", "right");
  s.reject_unknown();
  if (p == 0.0 || q == 0.0) throw ConfigError("p and q must be nonzero");
  if (n_count < 2 || m_count < 1 || n_count > 20000 || m_count > 20000)
    throw ConfigError("grid dimensions out of range");
  if (mode != "background" && mode != "plane_wave")
    throw ConfigError("mode must be background or plane_wave");
  BoundarySide side;
  if (boundary == "left") {
    side = BoundarySide::Left;
  } else if (boundary == "right") {
    side = BoundarySide::Right;
  } else {
    throw ConfigError("boundary must be left or right");
  }
  const SGParams params{p, q};
  const double bg = params.background();
  const PlaneWave w = dispersion(k, params.sigma());
  auto value = [&](long n, long m) {
    if (mode == "background") return bg;
    return bg + amplitude * std::real(std::pow(w.z, static_cast<double>(n)) *
                                      std::pow(w.Omega, static_cast<double>(m)));
  };
  std::vector<double> row(static_cast<std::size_t>(n_count));
  for (long n = 0; n < n_count; ++n) row[static_cast<std::size_t>(n)] = value(n, 0);
  const long n_edge = side == BoundarySide::Left ? 0 : n_count - 1;
  std::vector<double> col(static_cast<std::size_t>(m_count));
  for (long m = 0; m < m_count; ++m) col[static_cast<std::size_t>(m)] = value(n_edge, m);
  const Field2D u = sg_evolve(row, col, params, 0, side);
  const std::string csv_path = out_dir + "/field.csv";
  write_field_csv(csv_path, u);
  json rep = base_report("sg-run", s, {csv_path});
  rep["derived"] = {{"sigma", params.sigma()}, {"background", bg}};
  if (mode == "plane_wave") {
    const Field2D v = background_shift(u, params, ShiftDirection::ToPerturbation);
    rep["metrics"] = {{"linear_residual", linear_residual(v, params.sigma())},
                      {"omega", w.omega}};
  }
  write_report(out_dir, rep);
  return 0;
}

int cmd_coeffs(Settings& s, const std::string& out_dir) {
  const double sigma = s.number("sigma", 2.0);
  const double k = s.number("k", std::acos(-1.0 / 3.0));
  const double q = s.number("q", std::pow(sigma, 0.25));
  const double m2 = s.number("M2", -1.0);
  s.reject_unknown();
  if (sigma <= 0.0) throw ConfigError("sigma must be positive");
  const NLSCoeffs c = nls_coefficients(sigma, k, q, m2);
  json rep = base_report("coeffs", s, {});
  rep["derived"] = {{"sigma", sigma},
                    {"k", k},
                    {"c1_hat_re", c.c1_hat.real()},
                    {"c1_hat_im", c.c1_hat.imag()},
                    {"c2_hat_re", c.c2_hat.real()},
                    {"c2_hat_im", c.c2_hat.imag()},
                    {"c3_hat", c.c3_hat},
                    {"combined", c.combined},
                    {"omega", dispersion(k, sigma).omega},
                    {"group_velocity", group_velocity(k, sigma)}};
  write_report(out_dir, rep);
  std::printf("combined=%s c3_hat=%s\n", format_double(c.combined).c_str(),
              format_double(c.c3_hat).c_str());
  return 0;
}

void write_envelope_csv(const std::string& path, const EnvelopeRow& row) {
  CsvWriter csv(path, {"n2", "re_phi", "im_phi"});
  for (std::size_t j = 0; j < row.size(); ++j)
    csv.row({std::to_string(j), format_double(row[j].real()), format_double(row[j].imag())});
  csv.close();
}

ReductionConfig config_from_settings(Settings& s, int n) {
  ReductionConfig cfg;
  cfg.N = n;
  const double sigma = s.number("sigma", 2.0);
  if (sigma <= 0.0) throw ConfigError("sigma must be positive");
  cfg.params = {std::pow(sigma, 0.25), std::pow(sigma, 0.25)};
  const double ratio = s.number("velocity_ratio", -1.0);
  try {
    cfg.k = select_wavenumber(ratio, sigma);
  } catch (const WavenumberRangeError& e) {
    throw ConfigError(e.what());
  }
  cfg.M1 = static_cast<int>(s.integer("M1", 1));
  cfg.M2 = static_cast<int>(std::lround(ratio * cfg.M1));
  cfg.ell = static_cast<int>(s.integer("ell", 0));
  cfg.amplitude = s.number("amplitude", 0.005);
  cfg.env_length = static_cast<int>(s.integer("env_length", 256));
  cfg.gauss_center = s.number("center", 128.0);
  cfg.gauss_width = s.number("width", 6.0);
  cfg.extract_radius = static_cast<int>(s.integer("radius", 40));
  cfg.slow_steps = static_cast<int>(s.integer("T", 2));
  try {
    cfg.finalize();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

int cmd_nls_run(Settings& s, const std::string& out_dir) {
  const long steps = s.integer("steps", 2);
  ReductionConfig cfg = config_from_settings(s, static_cast<int>(s.integer("N", 8)));
  s.reject_unknown();
  if (steps < 0 || steps > 100000) throw ConfigError("steps out of range");
  EnvelopeRow row = gaussian_profile(cfg);
  const std::string init_path = out_dir + "/envelope_initial.csv";
  write_envelope_csv(init_path, row);
  for (long t = 0; t < steps; ++t) row = nls_step(row, cfg.coeffs);
  const std::string final_path = out_dir + "/envelope_final.csv";
  write_envelope_csv(final_path, row);
  json rep = base_report("nls-run", s, {init_path, final_path});
  rep["derived"] = {{"k", cfg.k},
                    {"combined", cfg.coeffs.combined},
                    {"c3_hat", cfg.coeffs.c3_hat},
                    {"steps", steps}};
  write_report(out_dir, rep);
  return 0;
}

int cmd_validate(Settings& s, const std::string& out_dir, bool demo) {
  std::vector<long> scales = s.integer_list("N_list", "8,12,16");
  ReductionConfig base = config_from_settings(s, 8);
  s.reject_unknown();
  if (scales.empty()) throw ConfigError("N_list must not be empty");
  for (long n : scales)
    if (n < 2 || n > 64) throw ConfigError("N_list entries must lie in [2, 64]");
  (void)demo;  // the defaults are the demo preset
  std::vector<int> ns(scales.begin(), scales.end());
  const auto t0 = std::chrono::steady_clock::now();
  const ValidationReport rep = validate_reduction(base, ns);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "validate: %.2f s\n", seconds);
  json j = base_report("validate", s, {});
  j["derived"] = {{"sigma", base.params.sigma()},
                  {"k", base.k},
                  {"M1", base.M1},
                  {"M2", base.M2},
                  {"combined", base.coeffs.combined},
                  {"c3_hat", base.coeffs.c3_hat}};
  json points = json::array();
  for (const auto& pt : rep.points) {
    points.push_back({{"N", pt.N}, {"error", pt.error}, {"points", pt.compared_points}});
    std::printf("N=%d e=%s\n", pt.N, format_double(pt.error).c_str());
  }
  j["metrics"] = {{"points", points}, {"ratios", rep.ratios}, {"monotone", rep.monotone}};
  write_report(out_dir, j);
  if (ns.size() > 1 && !rep.monotone) {
    std::fprintf(stderr, "convergence failure: e(N) is not monotone\n");
    return kExitConvergence;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice multiscale reduction toolkit"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".", preset;
  app.add_option("--config", config_path, "flat key=value config file")->expected(1);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--preset", preset, "named preset (demo)");

  const std::vector<std::string> names = {"stirling", "dispersion", "sg-run",
                                          "nls-run",  "validate",   "coeffs"};
  for (const auto& n : names) app.add_subcommand(n)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    if (!preset.empty() && preset != "demo")
      throw ConfigError("unknown preset '" + preset + "'");
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) kv = parse_config_file(config_path);
    Settings settings(std::move(kv));
    if (cmd == "stirling") return cmd_stirling(settings, out_dir);
    if (cmd == "dispersion") return cmd_dispersion(settings, out_dir);
    if (cmd == "sg-run") return cmd_sg_run(settings, out_dir);
    if (cmd == "nls-run") return cmd_nls_run(settings, out_dir);
    if (cmd == "coeffs") return cmd_coeffs(settings, out_dir);
    if (cmd == "validate") return cmd_validate(settings, out_dir, preset == "demo");
    throw ConfigError("unknown command");
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const SingularStepError& e) {
    std::fprintf(stderr, "singular step: %s\n", e.what());
    return kExitSingular;
  } catch (const IOError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIO;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
