#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrep/qrep.hpp"

namespace qrep::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kUsage = 2 };

struct RunConfig {
  std::size_t n = 1024;
  double length = 40.0;
  std::string out;
  std::string format = "csv";

  std::string family = "plane";
  double p = 0.0;
  double a = 0.0;
  double alpha = 0.5;
  double theta = std::numbers::pi / 4;
  double lambda = 0.0;
  double gamma = 0.0;
  double eps = 0.1;

  std::string rep = "momentum";
  std::string state = "gaussian:s=1";
  std::optional<double> u_min;
  std::optional<double> u_max;
  std::optional<std::size_t> n_gamma;

  std::string suite = "all";
};

inline std::string fmt17(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

// "name:k=v,k=v" -> name and key/value map.
inline std::pair<std::string, std::map<std::string, std::string>> parse_spec(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  std::pair<std::string, std::map<std::string, std::string>> out;
  out.first = text.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    detail::require(eq != std::string::npos && eq > 0, what, "expected key=value in '" + text + "'");
    out.second[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

inline double spec_number(const std::string& text, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  detail::require(res.ec == std::errc{} && res.ptr == text.data() + text.size(), what,
                  "'" + text + "' is not a number");
  return v;
}

inline Wavefunction make_state(const Grid& g, const std::string& text) {
  auto [name, kv] = parse_spec(text, "state_spec");
  auto take = [&](const char* key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const double v = spec_number(it->second, "state_spec");
    kv.erase(it);
    return v;
  };
  if (name == "gaussian") {
    GaussianSpec spec;
    spec.s = take("s", 1.0);
    spec.x0 = take("x0", 0.0);
    spec.p0 = take("p0", 0.0);
    spec.c = take("c", 0.0);
    detail::require(kv.empty(), "state_spec", "unknown gaussian key '" + (kv.empty() ? "" : kv.begin()->first) + "'");
    return gaussian(g, spec);
  }
  if (name == "hermite") {
    const double k = take("k", 0.0);
    detail::require(kv.empty(), "state_spec", "unknown hermite key '" + (kv.empty() ? "" : kv.begin()->first) + "'");
    detail::require(k >= 0 && k == std::floor(k), "hermite_order", "k must be a non-negative integer");
    return hermite(g, static_cast<int>(k));
  }
  throw PreconditionError("state_spec", "unknown state '" + name + "' (expected gaussian or hermite)");
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // preformatted cells
};

inline std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string render_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + csv_cell(t.header[i]);
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += '\n';
  }
  return s;
}

// Cells are numbers except in columns listed in `text_columns`.
inline std::string render_json_rows(const Table& t, const std::vector<std::string>& text_columns = {}) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const bool text = std::find(text_columns.begin(), text_columns.end(), t.header[i]) != text_columns.end();
      if (text) obj[t.header[i]] = row[i];
      else obj[t.header[i]] = std::stod(row[i]);
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

inline Table wave_table(const Wavefunction& w, const char* coord) {
  Table t{{coord, "re", "im", "abs"}, {}};
  for (std::size_t j = 0; j < w.size(); ++j) {
    const cplx z = w[j];
    t.rows.push_back({fmt17(w.grid().point(j)), fmt17(z.real()), fmt17(z.imag()), fmt17(std::abs(z))});
  }
  return t;
}

/// Writes via a temporary sibling and rename, so readers never see a partial file.
inline void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    detail::require(static_cast<bool>(f), "writable_output", "cannot open '" + tmp.string() + "'");
    f << content;
    f.close();
    detail::require(static_cast<bool>(f), "writable_output", "failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

inline void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty()) out << content;
  else write_atomic(cfg.out, content);
}

inline Grid config_grid(const RunConfig& cfg) { return make_grid(cfg.n, cfg.length); }

inline int cmd_kernel(const RunConfig& cfg, std::ostream& out) {
  const Grid g = config_grid(cfg);
  const std::string& f = cfg.family;
  Wavefunction w = [&] {
    if (f == "plane") return plane_wave(g, cfg.p);
    if (f == "position-in-momentum") return position_kernel_in_momentum(g, cfg.a);
    if (f == "interp") return interp_kernel(g, cfg.alpha, cfg.lambda);
    if (f == "rotation") return rotation_kernel(g, cfg.theta, cfg.lambda);
    if (f == "corr-even") return correlation_kernel(g, cfg.gamma, Parity::Even);
    if (f == "corr-odd") return correlation_kernel(g, cfg.gamma, Parity::Odd);
    if (f == "fresnel") return fresnel_delta(g, cfg.eps);
    throw PreconditionError("kernel_family", "unknown family '" + f + "'");
  }();
  const Table t = wave_table(w, "x");
  emit(cfg, cfg.format == "json" ? render_json_rows(t) : render_csv(t), out);
  return kPass;
}

inline int cmd_transform(const RunConfig& cfg, std::ostream& out) {
  const Grid g = config_grid(cfg);
  const Wavefunction psi = make_state(g, cfg.state);
  auto [rep, kv] = parse_spec(cfg.rep, "representation_spec");
  auto param = [&](const char* key) {
    auto it = kv.find(key);
    detail::require(it != kv.end(), "representation_spec", "'" + cfg.rep + "' needs " + key + "=...");
    return spec_number(it->second, "representation_spec");
  };

  nlohmann::ordered_json side;
  side["norm_in"] = psi.norm2();
  Table t;
  std::vector<std::string> text_cols;
  if (rep == "correlation") {
    const LogWindow d = default_log_window(g);
    const LogWindow w{cfg.u_min.value_or(d.u_min), cfg.u_max.value_or(d.u_max)};
    const auto spec = correlation_transform(psi, w, cfg.n_gamma.value_or(2 * g.size()));
    t.header = {"gamma", "parity", "re", "im"};
    for (Parity par : {Parity::Even, Parity::Odd}) {
      const auto& ch = par == Parity::Even ? spec.even : spec.odd;
      for (std::size_t k = 0; k < ch.size(); ++k)
        t.rows.push_back({fmt17(spec.gamma_grid.point(k)), to_string(par), fmt17(ch[k].real()), fmt17(ch[k].imag())});
    }
    text_cols = {"parity"};
    side["norm_out"] = spec.norm2();
    side["tail_mass"] = spec.tail_mass;
  } else {
    Wavefunction res = [&] {
      if (rep == "momentum") return to_momentum(psi);
      if (rep == "interp") return interp_transform(psi, param("alpha"));
      if (rep == "rotation") return rotation_transform(psi, param("theta"));
      throw PreconditionError("representation_spec", "unknown representation '" + rep + "'");
    }();
    t = wave_table(res, "lambda");
    side["norm_out"] = res.norm2();
    side["tail_mass"] = 0.0;
  }

  const std::string body = cfg.format == "json" ? render_json_rows(t, text_cols) : render_csv(t);
  if (cfg.out.empty()) {
    out << body;
  } else {
    write_atomic(cfg.out + ".json", side.dump(2) + "\n");
    write_atomic(cfg.out, body);
  }
  return kPass;
}

inline constexpr double kSaturationTolerance = 1e-8;

inline int cmd_moments(const RunConfig& cfg, std::ostream& out) {
  const Grid g = config_grid(cfg);
  const MomentReport m = moments(make_state(g, cfg.state));
  nlohmann::ordered_json j;
  j["mean_x"] = m.mean_x;
  j["mean_p"] = m.mean_p;
  j["var_x"] = m.var_x;
  j["var_p"] = m.var_p;
  j["mean_c"] = m.mean_c;
  j["corr_term"] = m.corr_term;
  j["lhs"] = m.lhs;
  j["rhs"] = m.rhs;
  j["heisenberg_rhs"] = m.heisenberg_rhs;
  j["heisenberg_saturated"] = std::abs(m.lhs - m.heisenberg_rhs) <= kSaturationTolerance;
  j["schrodinger_saturated"] = std::abs(m.lhs - m.rhs) <= kSaturationTolerance;
  if (cfg.format == "csv") {
    Table t{{"field", "value"}, {}};
    for (const auto& [k, v] : j.items()) t.rows.push_back({k, v.is_boolean() ? v.dump() : fmt17(v.get<double>())});
    emit(cfg, render_csv(t), out);
  } else {
    emit(cfg, j.dump(2) + "\n", out);
  }
  return kPass;
}

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["claims"] = r.claims;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["observed"] = r.observed;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  return j;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Grid g = config_grid(cfg);
  const auto reports = run_suite(cfg.suite, g);
  bool all = true;
  for (const auto& r : reports) all = all && r.passed;
  if (cfg.format == "csv") {
    Table t{{"name", "observed", "tolerance", "passed"}, {}};
    for (const auto& r : reports)
      t.rows.push_back({r.name, fmt17(r.observed), fmt17(r.tolerance), r.passed ? "true" : "false"});
    emit(cfg, render_csv(t), out);
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    emit(cfg, arr.dump(2) + "\n", out);
  }
  return all ? kPass : kCheckFailure;
}

// Config keys become "--key value" flags unless the command line already sets them.
inline std::vector<std::string> merge_config(std::vector<std::string> args, std::size_t insert_at) {
  auto it = std::find_if(args.begin(), args.end(),
                         [](const std::string& a) { return a == "--config" || a.rfind("--config=", 0) == 0; });
  if (it == args.end()) return args;
  std::string path;
  if (*it == "--config") {
    detail::require(it + 1 != args.end(), "config_file", "--config needs a path");
    path = *(it + 1);
    it = args.erase(it, it + 2);
  } else {
    path = it->substr(9);
    it = args.erase(it);
  }
  std::ifstream f(path);
  detail::require(static_cast<bool>(f), "config_file", "cannot read '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError("config_file", e.what());
  }
  detail::require(j.is_object(), "config_file", "config must be a JSON object");

  std::vector<std::string> extra;
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    extra.push_back(flag);
    if (value.is_string()) extra.push_back(value.get<std::string>());
    else if (value.is_number_integer()) extra.push_back(std::to_string(value.get<long long>()));
    else if (value.is_number()) extra.push_back(fmt17(value.get<double>()));
    else throw PreconditionError("config_file", "value of '" + key + "' must be a string or number");
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(std::min(insert_at, args.size())), extra.begin(),
              extra.end());
  return args;
}

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quantum state representations on finite grids", "qrep"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Grid size (power of two)")->capture_default_str();
    sub->add_option("--length", cfg.length, "Domain length L")->capture_default_str();
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };

  auto* kernel = app.add_subcommand("kernel", "Sample a generalized eigenfunction");
  common(kernel);
  kernel->add_option("--family", cfg.family)
      ->check(CLI::IsMember({"plane", "position-in-momentum", "interp", "rotation", "corr-even", "corr-odd", "fresnel"}))
      ->capture_default_str();
  kernel->add_option("--p", cfg.p, "Momentum of the plane wave");
  kernel->add_option("--a", cfg.a, "Position eigenvalue (position-in-momentum)");
  kernel->add_option("--alpha", cfg.alpha);
  kernel->add_option("--theta", cfg.theta);
  kernel->add_option("--lambda", cfg.lambda);
  kernel->add_option("--gamma", cfg.gamma);
  kernel->add_option("--eps", cfg.eps);

  auto* transform = app.add_subcommand("transform", "Transform a state into another representation");
  common(transform);
  transform->add_option("--rep", cfg.rep, "momentum | interp:alpha=A | rotation:theta=T | correlation")
      ->capture_default_str();
  transform->add_option("--state", cfg.state, "gaussian:s=,x0=,p0=,c= | hermite:k=")->capture_default_str();
  transform->add_option("--u-min", cfg.u_min);
  transform->add_option("--u-max", cfg.u_max);
  transform->add_option("--n-gamma", cfg.n_gamma);

  auto* mom = app.add_subcommand("moments", "Moments and uncertainty products of a state");
  common(mom);
  mom->add_option("--state", cfg.state)->capture_default_str();
  mom->get_option("--format")->default_str("json");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  common(verify);
  verify->get_option("--format")->default_str("json");
  verify->add_option("--suite", cfg.suite)->capture_default_str();

  try {
    args = merge_config(std::move(args), 1);
    // moments and verify produce JSON unless asked otherwise
    if (!args.empty() && (args[0] == mom->get_name() || args[0] == verify->get_name()) &&
        std::none_of(args.begin(), args.end(), [](const std::string& a) { return a.rfind("--format", 0) == 0; }))
      cfg.format = "json";
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (kernel->parsed()) return cmd_kernel(cfg, out);
    if (transform->parsed()) return cmd_transform(cfg, out);
    if (mom->parsed()) return cmd_moments(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace qrep::cli
