#include "ehrenfest/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "ehrenfest/errors.hpp"

namespace ehrenfest {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

class KeyValues {
 public:
  explicit KeyValues(std::string_view text) {
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = text.find('\n', pos);
      std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
      pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "unterminated section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (section != "scenario" && section != "numerics" && section != "quantum")
          fail(line_no, "unknown section [" + section + "]");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
      if (section.empty()) fail(line_no, "key outside of a section");
      const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
      if (entries_.contains(key)) fail(line_no, "duplicate key '" + key + "'");
      entries_[key] = {std::string(trim(line.substr(eq + 1))), line_no};
    }
  }

  std::optional<Entry> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    Entry e = it->second;
    entries_.erase(it);
    return e;
  }

  void expect_consumed() const {
    if (entries_.empty()) return;
    const auto& [key, entry] = *entries_.begin();
    fail(entry.line, "unknown key '" + key + "'");
  }

  [[noreturn]] static void fail(int line, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ": " + what);
  }

 private:
  std::map<std::string, Entry> entries_;
};

double parse_double(const std::string& key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw ConfigError(key + ": expected a finite number, got '" + std::string(text) + "'");
  return value;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : kv_(text) {}

  std::optional<double> number(const std::string& key) {
    auto e = kv_.take(key);
    if (!e) return std::nullopt;
    return parse_double(key, e->value);
  }

  double number(const std::string& key, double fallback) { return number(key).value_or(fallback); }

  double required(const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError(key + ": required field is missing");
    return *v;
  }

  std::optional<std::string> text(const std::string& key) {
    auto e = kv_.take(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  std::vector<double> list(const std::string& key) {
    auto e = kv_.take(key);
    if (!e) throw ConfigError(key + ": required field is missing");
    std::vector<double> out;
    std::string_view rest = e->value;
    while (true) {
      const auto comma = rest.find(',');
      out.push_back(parse_double(key, rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  bool flag(const std::string& key, bool fallback) {
    auto e = kv_.take(key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
    if (e->value == "false" || e->value == "no" || e->value == "0") return false;
    throw ConfigError(key + ": expected true or false, got '" + e->value + "'");
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    auto e = kv_.take(key);
    if (!e) return fallback;
    std::size_t value = 0;
    const std::string& s = e->value;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ConfigError(key + ": expected a non-negative integer, got '" + s + "'");
    return value;
  }

  void finish() const { kv_.expect_consumed(); }

 private:
  KeyValues kv_;
};

SystemParams make_params(double mass, double hbar, double b) {
  const auto check = [](const char* key, double v) {
    if (!(v > 0.0)) throw ConfigError(std::string("scenario.") + key + ": must be positive");
  };
  check("mass", mass);
  check("hbar", hbar);
  check("b", b);
  return SystemParams(mass, hbar, b);
}

void write_number(std::ostream& out, const char* key, double v) {
  out << key << " = " << std::setprecision(17) << v << '\n';
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Reader in(text);
  Scenario s;
  s.name = in.text("scenario.name").value_or("custom");

  const std::string family = in.text("scenario.potential").value_or("");
  if (family == "polynomial") {
    s.potential = PolynomialPotential(in.list("scenario.coefficients"));
  } else if (family == "step") {
    s.potential = StepPotential{in.required("scenario.height"), in.required("scenario.wall")};
  } else if (family.empty()) {
    throw ConfigError("scenario.potential: required field is missing");
  } else {
    throw ConfigError("scenario.potential: expected 'polynomial' or 'step', got '" + family + "'");
  }

  s.initial = {in.required("scenario.q0"), in.required("scenario.p0")};
  const double mass = in.number("scenario.mass", 1.0);
  s.params = make_params(mass, in.required("scenario.hbar"), in.required("scenario.b"));

  const std::optional<double> t_final = in.number("scenario.t_final");
  s.dt = in.number("numerics.dt", s.dt);
  s.det_tolerance = in.number("numerics.det_tolerance", s.det_tolerance);
  if (t_final) {
    s.t_final = *t_final;
  } else if (const auto* step = std::get_if<StepPotential>(&s.potential)) {
    if (!(s.initial.p > 0.0)) throw ConfigError("scenario.p0: must be positive for the step bounce");
    if (!(s.dt > 0.0)) throw ConfigError("numerics.dt: must be positive");
    // Window ends shortly after the collision; rounded up to whole steps.
    const double window = 1.3 * mass * (step->wall - s.initial.q) / s.initial.p;
    s.t_final = std::ceil(window / s.dt - 1e-9) * s.dt;
  } else {
    throw ConfigError("scenario.t_final: required field is missing");
  }

  QuantumSettings& qs = s.quantum;
  qs.enabled = in.flag("quantum.enabled", qs.enabled);
  qs.grid.x_min = in.number("quantum.x_min", qs.grid.x_min);
  qs.grid.x_max = in.number("quantum.x_max", qs.grid.x_max);
  qs.grid.n_points = in.count("quantum.n_points", qs.grid.n_points);
  qs.dt = in.number("quantum.dt", qs.dt);
  qs.edge_tolerance = in.number("quantum.edge_tolerance", qs.edge_tolerance);
  qs.norm_tolerance = in.number("quantum.norm_tolerance", qs.norm_tolerance);
  in.finish();

  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot read scenario file '" + path.string() + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_scenario(text.str());
}

void validate(const Scenario& s) {
  const auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (!std::isfinite(s.initial.q)) fail("scenario.q0: must be finite");
  if (!std::isfinite(s.initial.p)) fail("scenario.p0: must be finite");
  if (!(s.t_final > 0.0) || !std::isfinite(s.t_final)) fail("scenario.t_final: must be positive");
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) fail("numerics.dt: must be positive");
  if (!(s.det_tolerance > 0.0)) fail("numerics.det_tolerance: must be positive");
  try {
    step_count(s.t_final, s.dt);
  } catch (const std::invalid_argument&) {
    fail("numerics.dt: must divide scenario.t_final");
  }

  if (const auto* poly = std::get_if<PolynomialPotential>(&s.potential)) {
    for (double a : poly->coefficients())
      if (!std::isfinite(a)) fail("scenario.coefficients: must be finite");
  } else {
    const auto& step = std::get<StepPotential>(s.potential);
    if (!std::isfinite(step.height) || !std::isfinite(step.wall))
      fail("scenario.height/wall: must be finite");
    check_step_preconditions(s.initial, step, s.params);
  }

  const QuantumSettings& qs = s.quantum;
  if (!qs.enabled) return;
  try {
    qs.grid.validate();
  } catch (const std::invalid_argument& e) {
    fail(std::string("quantum.") + e.what());
  }
  if (!(qs.dt > 0.0) || !std::isfinite(qs.dt)) fail("quantum.dt: must be positive");
  try {
    step_count(s.dt, qs.dt);
  } catch (const std::invalid_argument&) {
    fail("quantum.dt: must divide numerics.dt");
  }
  if (!(qs.edge_tolerance > 0.0)) fail("quantum.edge_tolerance: must be positive");
  if (!(qs.norm_tolerance > 0.0)) fail("quantum.norm_tolerance: must be positive");
  const double b = s.params.b();
  if (s.initial.q - 8.0 * b < qs.grid.x_min || s.initial.q + 8.0 * b > qs.grid.x_max)
    fail("quantum.x_min/x_max: the initial packet (q0 +- 8b) must fit inside the grid");
  const double phase = max_kinetic_phase(qs.grid, s.params, qs.dt);
  if (phase > std::numbers::pi) {
    std::ostringstream msg;
    msg << "quantum.dt: kinetic phase per step hbar k_max^2 dt / 2 mu = " << phase
        << " exceeds pi; reduce quantum.dt or n_points";
    fail(msg.str());
  }
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "[scenario]\n";
  out << "name = " << s.name << '\n';
  if (const auto* poly = std::get_if<PolynomialPotential>(&s.potential)) {
    out << "potential = polynomial\ncoefficients = ";
    const auto c = poly->coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ", " : "") << std::setprecision(17) << c[i];
    out << '\n';
  } else {
    const auto& step = std::get<StepPotential>(s.potential);
    out << "potential = step\n";
    write_number(out, "height", step.height);
    write_number(out, "wall", step.wall);
  }
  write_number(out, "q0", s.initial.q);
  write_number(out, "p0", s.initial.p);
  write_number(out, "mass", s.params.mass());
  write_number(out, "hbar", s.params.hbar());
  write_number(out, "b", s.params.b());
  write_number(out, "t_final", s.t_final);
  out << "\n[numerics]\n";
  write_number(out, "dt", s.dt);
  write_number(out, "det_tolerance", s.det_tolerance);
  out << "\n[quantum]\n";
  out << "enabled = " << (s.quantum.enabled ? "true" : "false") << '\n';
  write_number(out, "x_min", s.quantum.grid.x_min);
  write_number(out, "x_max", s.quantum.grid.x_max);
  out << "n_points = " << s.quantum.grid.n_points << '\n';
  write_number(out, "dt", s.quantum.dt);
  write_number(out, "edge_tolerance", s.quantum.edge_tolerance);
  write_number(out, "norm_tolerance", s.quantum.norm_tolerance);
  return out.str();
}

namespace {

Scenario desk_preset(std::string name, std::vector<double> coefficients, PhasePoint initial) {
  Scenario s;
  s.name = std::move(name);
  s.potential = PolynomialPotential(std::move(coefficients));
  s.initial = initial;
  s.params = SystemParams(1.0, 0.01, 0.1);
  s.t_final = 2.0;
  s.quantum.grid = {-5.0, 5.0, 2048};
  return s;
}

Scenario bounce_preset(std::string name, double hbar) {
  Scenario s;
  s.name = std::move(name);
  s.potential = StepPotential{5.0, 1.0};
  s.initial = {0.0, 1.0};
  s.params = SystemParams(1.0, hbar, 0.1);
  s.t_final = 1.3;
  // Wide enough that the spreading packet stays clear of the periodic
  // boundary; the wall sits exactly on a grid node.
  s.quantum.grid = {-15.0, 17.0, 8192};
  s.quantum.dt = 5e-5;
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"free", "linear", "harmonic", "cubic", "figure1-hbar005", "figure1-hbar01"};
}

Scenario preset(std::string_view name) {
  Scenario s;
  if (name == "free") {
    s = desk_preset("free", {0.0}, {0.5, 1.0});
  } else if (name == "linear") {
    s = desk_preset("linear", {0.0, 1.0}, {0.5, 1.0});
  } else if (name == "harmonic") {
    s = desk_preset("harmonic", {0.0, 0.0, 0.5}, {0.5, 1.0});
  } else if (name == "cubic") {
    s = desk_preset("cubic", {0.0, 0.0, 0.0, 0.5}, {0.3, 1.0});
  } else if (name == "figure1-hbar005") {
    s = bounce_preset("figure1-hbar005", 0.05);
  } else if (name == "figure1-hbar01") {
    s = bounce_preset("figure1-hbar01", 0.1);
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  validate(s);
  return s;
}

}  // namespace ehrenfest
