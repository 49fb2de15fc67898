// Copyright 2026 The revpulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revpulse/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "revpulse/error.hpp"
#include "revpulse/units.hpp"

namespace revpulse {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kSchema = "revpulse.scenario/1";

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Reading helpers. Every accessor carries the JSON pointer of the value it
// reads so that failures name the offending key.

class Node {
 public:
  Node(const Json& j, std::string pointer) : j_(j), ptr_(std::move(pointer)) {}

  const std::string& pointer() const { return ptr_; }
  const Json& json() const { return j_; }

  Node object_at(std::string_view key) const {
    const Json& v = at(key);
    Node child(v, child_ptr(key));
    if (!v.is_object()) child.fail("expected an object");
    return child;
  }

  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  double number(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_number()) Node(v, child_ptr(key)).fail("expected a number");
    return v.get<double>();
  }

  std::string string(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_string()) Node(v, child_ptr(key)).fail("expected a string");
    return v.get<std::string>();
  }

  bool boolean(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_boolean()) Node(v, child_ptr(key)).fail("expected true or false");
    return v.get<bool>();
  }

  std::size_t count(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_number_unsigned()) {
      Node(v, child_ptr(key)).fail("expected a non-negative integer");
    }
    return v.get<std::size_t>();
  }

  std::vector<std::string> strings(std::string_view key) const {
    const Json& v = at(key);
    const std::string p = child_ptr(key);
    if (!v.is_array()) Node(v, p).fail("expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) Node(v[i], fmt::format("{}/{}", p, i)).fail("expected a string");
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

  // A dimensional value: {"value": <number>, "unit": "<unit>"}.
  double quantity(std::string_view key, Dimension dim) const {
    const Node q = object_at(key);
    q.only({"value", "unit"});
    const double value = q.number("value");
    const std::string unit = q.string("unit");
    try {
      return to_internal(value, unit, dim);
    } catch (const ValidationError& e) {
      throw ParseError(fmt::format("{}/unit: {}", q.pointer(), e.what()),
                       q.pointer() + "/unit");
    }
  }

  // Rejects keys outside `allowed`; typos otherwise fall back to defaults.
  void only(std::initializer_list<std::string_view> allowed) const {
    for (const auto& item : j_.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
        throw ParseError(fmt::format("{}: unknown key", child_ptr(item.key())),
                         child_ptr(item.key()));
      }
    }
  }

  [[noreturn]] void fail(std::string_view message) const {
    throw ParseError(fmt::format("{}: {}", ptr_.empty() ? "/" : ptr_, message), ptr_);
  }

 private:
  const Json& at(std::string_view key) const {
    auto it = j_.find(std::string(key));
    if (it == j_.end()) {
      throw ParseError(fmt::format("{}: missing required key", child_ptr(key)),
                       child_ptr(key));
    }
    return *it;
  }

  std::string child_ptr(std::string_view key) const {
    return fmt::format("{}/{}", ptr_, key);
  }

  const Json& j_;
  std::string ptr_;
};

TrajectorySpec read_trajectory(const Node& n) {
  const std::string family = n.string("family");
  auto read_transfer = [&] {
    Transfer t;
    t.a_i = n.number("a_i");
    t.a_f = n.number("a_f");
    t.alpha = n.quantity("alpha", Dimension::Frequency);
    t.amplitude = n.number("A");
    t.tau = n.quantity("tau", Dimension::Time);
    t.sigma = n.quantity("sigma", Dimension::Time);
    return t;
  };
  if (family == "transfer") {
    n.only({"family", "a_i", "a_f", "alpha", "A", "tau", "sigma"});
    return read_transfer();
  }
  if (family == "oscillatory") {
    n.only({"family", "a_i", "a_f", "alpha", "A", "tau", "sigma", "chi", "omega_osc"});
    Oscillatory o;
    o.base = read_transfer();
    o.chi = n.number("chi");
    o.omega = n.quantity("omega_osc", Dimension::Frequency);
    return o;
  }
  if (family == "rabi_decay") {
    n.only({"family", "k1", "k2", "a", "b", "omega1", "omega2"});
    RabiDecay r;
    r.k1 = n.number("k1");
    r.k2 = n.number("k2");
    r.decay = n.quantity("a", Dimension::FrequencySquared);
    r.chirp = n.quantity("b", Dimension::FrequencySquared);
    r.omega1 = n.quantity("omega1", Dimension::Frequency);
    r.omega2 = n.quantity("omega2", Dimension::Frequency);
    return r;
  }
  throw ParseError(fmt::format("{}/family: unknown trajectory family '{}' (expected "
                               "transfer, oscillatory or rabi_decay)",
                               n.pointer(), family),
                   n.pointer() + "/family");
}

// Converts a byte offset into 1-based line and column numbers.
std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// ---------------------------------------------------------------------------
// Writing helpers.

Json quantity_json(double value, Dimension dim) {
  Json q;
  q["value"] = value;
  q["unit"] = std::string(canonical_unit(dim));
  return q;
}

void write_transfer(Json& j, const Transfer& t) {
  j["a_i"] = t.a_i;
  j["a_f"] = t.a_f;
  j["alpha"] = quantity_json(t.alpha, Dimension::Frequency);
  j["A"] = t.amplitude;
  j["tau"] = quantity_json(t.tau, Dimension::Time);
  j["sigma"] = quantity_json(t.sigma, Dimension::Time);
}

Json trajectory_json(const TrajectorySpec& spec) {
  Json j;
  j["family"] = std::string(family_name(spec));
  std::visit(overloaded{
                 [&](const Transfer& t) { write_transfer(j, t); },
                 [&](const Oscillatory& o) {
                   write_transfer(j, o.base);
                   j["chi"] = o.chi;
                   j["omega_osc"] = quantity_json(o.omega, Dimension::Frequency);
                 },
                 [&](const RabiDecay& r) {
                   j["k1"] = r.k1;
                   j["k2"] = r.k2;
                   j["a"] = quantity_json(r.decay, Dimension::FrequencySquared);
                   j["b"] = quantity_json(r.chirp, Dimension::FrequencySquared);
                   j["omega1"] = quantity_json(r.omega1, Dimension::Frequency);
                   j["omega2"] = quantity_json(r.omega2, Dimension::Frequency);
                 },
             },
             spec);
  return j;
}

bool safe_name(std::string_view name) {
  if (name.empty() || name.front() == '.') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

double Omega0Spec::at(double t_ps, double window_start, double window_end) const {
  if (kind == Kind::Constant) return start;
  const double s = (t_ps - window_start) / (window_end - window_start);
  return start + (end - start) * s;
}

std::string_view picture_kind_name(PictureKind k) {
  switch (k) {
    case PictureKind::EffectiveBloch:
      return "effective-bloch";
    case PictureKind::Lindblad:
      return "lindblad";
    case PictureKind::LindbladFull:
      return "lindblad-full";
    case PictureKind::Interaction:
      return "interaction";
    case PictureKind::Rwa:
      return "rwa";
    case PictureKind::Lab:
      return "lab";
  }
  return "unknown";
}

PictureKind picture_kind_from_name(std::string_view name) {
  for (PictureKind k : {PictureKind::EffectiveBloch, PictureKind::Lindblad,
                        PictureKind::LindbladFull, PictureKind::Interaction,
                        PictureKind::Rwa, PictureKind::Lab}) {
    if (picture_kind_name(k) == name) return k;
  }
  throw ValidationError(fmt::format(
      "unknown picture '{}' (expected effective-bloch, lindblad, lindblad-full, "
      "interaction, rwa or lab)",
      name));
}

bool needs_carrier(PictureKind k) {
  return k == PictureKind::LindbladFull || k == PictureKind::Interaction ||
         k == PictureKind::Rwa || k == PictureKind::Lab;
}

std::string_view svg_kind_name(SvgKind k) {
  switch (k) {
    case SvgKind::Pulse:
      return "pulse";
    case SvgKind::Populations:
      return "populations";
    case SvgKind::Bloch3d:
      return "bloch3d";
  }
  return "unknown";
}

SvgKind svg_kind_from_name(std::string_view name) {
  for (SvgKind k : {SvgKind::Pulse, SvgKind::Populations, SvgKind::Bloch3d}) {
    if (svg_kind_name(k) == name) return k;
  }
  throw ValidationError(fmt::format(
      "unknown svg kind '{}' (expected pulse, populations or bloch3d)", name));
}

TimeGrid ScenarioConfig::grid() const {
  return TimeGrid::uniform(window.start, window.end, window.samples);
}

std::vector<double> ScenarioConfig::omega0_samples(const TimeGrid& g) const {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = omega0.at(g[i], window.start, window.end);
  }
  return out;
}

void validate(const ScenarioConfig& cfg) {
  auto fail = [](std::string msg) { throw ValidationError(std::move(msg)); };
  if (!safe_name(cfg.name)) {
    fail(fmt::format("name: '{}' must be non-empty and use only letters, digits, "
                     "'_', '-' or '.'",
                     cfg.name));
  }
  validate(cfg.trajectory);
  try {
    cfg.rates.validate();
  } catch (const ValidationError& e) {
    fail(fmt::format("rates: {}", e.what()));
  }
  if (!std::isfinite(cfg.omega0.start) || !std::isfinite(cfg.omega0.end)) {
    fail("omega0: values must be finite");
  }
  const WindowSpec& w = cfg.window;
  if (!std::isfinite(w.start) || !std::isfinite(w.end)) {
    fail("window: start and end must be finite");
  }
  if (!(w.end > w.start)) {
    fail(fmt::format("window: end ({} ps) must exceed start ({} ps)", w.end, w.start));
  }
  if (w.samples < 2) {
    fail(fmt::format("window.samples: need at least 2 (got {})", w.samples));
  }
  if (w.source != "user" && w.source != "artifact-default") {
    fail(fmt::format("window.source: '{}' is not 'user' or 'artifact-default'",
                     w.source));
  }
  const IntegratorOptions& io = cfg.integrator;
  if (!(io.rtol > 0.0) || !(io.atol > 0.0) || !std::isfinite(io.rtol) ||
      !std::isfinite(io.atol)) {
    fail("integrator: rtol and atol must be positive and finite");
  }
  if (!(io.phase_per_step > 0.0) || !std::isfinite(io.phase_per_step)) {
    fail("integrator.phase_per_step: must be positive and finite");
  }
  for (std::size_t i = 0; i < cfg.pictures.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.pictures.size(); ++j) {
      if (cfg.pictures[i] == cfg.pictures[j]) {
        fail(fmt::format("pictures: '{}' listed twice",
                         picture_kind_name(cfg.pictures[i])));
      }
    }
  }
  if (cfg.out_dir.empty()) fail("output.dir: must not be empty");
}

ScenarioConfig parse_scenario(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(fmt::format("line {}, column {}: malformed JSON ({})", line,
                                 column, e.what()),
                     "", line, column);
  }
  const Node top(root, "");
  if (!root.is_object()) top.fail("expected a JSON object at the top level");
  top.only({"schema", "name", "trajectory", "rates", "omega0", "window",
            "integrator", "pictures", "allow_singular_carrier", "output"});

  if (top.has("schema") && top.string("schema") != kSchema) {
    throw ParseError(fmt::format("/schema: unsupported schema '{}' (expected '{}')",
                                 top.string("schema"), kSchema),
                     "/schema");
  }

  ScenarioConfig cfg;
  cfg.name = top.string("name");
  cfg.trajectory = read_trajectory(top.object_at("trajectory"));

  if (top.has("rates")) {
    const Node r = top.object_at("rates");
    r.only({"gamma", "Gamma", "nbar"});
    if (r.has("gamma")) cfg.rates.dephasing = r.quantity("gamma", Dimension::Frequency);
    if (r.has("Gamma")) cfg.rates.thermal = r.quantity("Gamma", Dimension::Frequency);
    if (r.has("nbar")) cfg.rates.nbar = r.number("nbar");
  }

  {
    const Node o = top.object_at("omega0");
    const std::string kind = o.string("kind");
    if (kind == "constant") {
      o.only({"kind", "value"});
      cfg.omega0.kind = Omega0Spec::Kind::Constant;
      cfg.omega0.start = o.quantity("value", Dimension::Frequency);
      cfg.omega0.end = cfg.omega0.start;
    } else if (kind == "linear") {
      o.only({"kind", "start", "end"});
      cfg.omega0.kind = Omega0Spec::Kind::Linear;
      cfg.omega0.start = o.quantity("start", Dimension::Frequency);
      cfg.omega0.end = o.quantity("end", Dimension::Frequency);
    } else {
      throw ParseError(fmt::format("/omega0/kind: '{}' is not 'constant' or 'linear'",
                                   kind),
                       "/omega0/kind");
    }
  }

  {
    const Node w = top.object_at("window");
    w.only({"start", "end", "samples", "source"});
    cfg.window.start = w.quantity("start", Dimension::Time);
    cfg.window.end = w.quantity("end", Dimension::Time);
    cfg.window.samples = w.count("samples");
    if (w.has("source")) cfg.window.source = w.string("source");
  }

  if (top.has("integrator")) {
    const Node i = top.object_at("integrator");
    i.only({"rtol", "atol", "phase_per_step"});
    if (i.has("rtol")) cfg.integrator.rtol = i.number("rtol");
    if (i.has("atol")) cfg.integrator.atol = i.number("atol");
    if (i.has("phase_per_step")) cfg.integrator.phase_per_step = i.number("phase_per_step");
  }

  if (top.has("pictures")) {
    const auto names = top.strings("pictures");
    for (std::size_t k = 0; k < names.size(); ++k) {
      try {
        cfg.pictures.push_back(picture_kind_from_name(names[k]));
      } catch (const ValidationError& e) {
        throw ParseError(fmt::format("/pictures/{}: {}", k, e.what()),
                         fmt::format("/pictures/{}", k));
      }
    }
  } else {
    cfg.pictures = {PictureKind::EffectiveBloch};
  }

  if (top.has("allow_singular_carrier")) {
    cfg.allow_singular_carrier = top.boolean("allow_singular_carrier");
  }

  if (top.has("output")) {
    const Node o = top.object_at("output");
    o.only({"dir", "svg"});
    if (o.has("dir")) cfg.out_dir = o.string("dir");
    if (o.has("svg")) {
      const auto names = o.strings("svg");
      for (std::size_t k = 0; k < names.size(); ++k) {
        try {
          cfg.svg.push_back(svg_kind_from_name(names[k]));
        } catch (const ValidationError& e) {
          throw ParseError(fmt::format("/output/svg/{}: {}", k, e.what()),
                           fmt::format("/output/svg/{}", k));
        }
      }
    }
  }

  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError(fmt::format("cannot read scenario file '{}'", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()), e.pointer(),
                     e.line(), e.column());
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  Json j;
  j["schema"] = std::string(kSchema);
  j["name"] = cfg.name;
  j["trajectory"] = trajectory_json(cfg.trajectory);

  Json rates;
  rates["gamma"] = quantity_json(cfg.rates.dephasing, Dimension::Frequency);
  rates["Gamma"] = quantity_json(cfg.rates.thermal, Dimension::Frequency);
  rates["nbar"] = cfg.rates.nbar;
  j["rates"] = rates;

  Json omega0;
  if (cfg.omega0.kind == Omega0Spec::Kind::Constant) {
    omega0["kind"] = "constant";
    omega0["value"] = quantity_json(cfg.omega0.start, Dimension::Frequency);
  } else {
    omega0["kind"] = "linear";
    omega0["start"] = quantity_json(cfg.omega0.start, Dimension::Frequency);
    omega0["end"] = quantity_json(cfg.omega0.end, Dimension::Frequency);
  }
  j["omega0"] = omega0;

  Json window;
  window["start"] = quantity_json(cfg.window.start, Dimension::Time);
  window["end"] = quantity_json(cfg.window.end, Dimension::Time);
  window["samples"] = cfg.window.samples;
  window["source"] = cfg.window.source;
  j["window"] = window;

  Json integ;
  integ["rtol"] = cfg.integrator.rtol;
  integ["atol"] = cfg.integrator.atol;
  integ["phase_per_step"] = cfg.integrator.phase_per_step;
  j["integrator"] = integ;

  Json pictures = Json::array();
  for (PictureKind k : cfg.pictures) pictures.push_back(std::string(picture_kind_name(k)));
  j["pictures"] = pictures;
  j["allow_singular_carrier"] = cfg.allow_singular_carrier;

  Json output;
  output["dir"] = cfg.out_dir;
  Json svg = Json::array();
  for (SvgKind k : cfg.svg) svg.push_back(std::string(svg_kind_name(k)));
  output["svg"] = svg;
  j["output"] = output;

  return j.dump(2) + "\n";
}

std::string scenario_hash(const ScenarioConfig& cfg) {
  // Output location and plot selection do not change the numbers.
  ScenarioConfig physics = cfg;
  physics.out_dir = ".";
  physics.svg.clear();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_scenario(physics)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

// ---------------------------------------------------------------------------
// Presets. Values are entered in the units of the preset files and
// converted through the same table the loader uses, so presets/*.json parse to
// identical configs.

namespace {

double ghz(double v) { return to_internal(v, "GHz", Dimension::Frequency); }
double per_s(double v) { return to_internal(v, "s^-1", Dimension::Frequency); }
double per_s2(double v) { return to_internal(v, "s^-2", Dimension::FrequencySquared); }
double ps(double v) { return to_internal(v, "ps", Dimension::Time); }

ScenarioConfig base(std::string name) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.pictures = {PictureKind::Lindblad, PictureKind::EffectiveBloch};
  c.svg = {SvgKind::Pulse, SvgKind::Populations, SvgKind::Bloch3d};
  c.window.source = "artifact-default";
  return c;
}

ScenarioConfig fig1(std::string name, double a, double amplitude) {
  ScenarioConfig c = base(std::move(name));
  c.trajectory = Transfer{a, -a, per_s(0.01e12), amplitude, ps(0.0), ps(100.0)};
  c.omega0 = {Omega0Spec::Kind::Linear, ghz(1.0), ghz(15.0)};
  c.window.start = ps(-600.0);
  c.window.end = ps(600.0);
  c.window.samples = 1201;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1_L1", "fig1_L2", "fig1_L3", "fig1_L4",
          "fig1_L5", "fig2",    "fig3",    "fig4"};
}

ScenarioConfig preset(std::string_view name) {
  if (name == "fig1_L1") return fig1("fig1_L1", -0.1, 0.1);
  if (name == "fig1_L2") return fig1("fig1_L2", -0.25, 0.2);
  if (name == "fig1_L3") return fig1("fig1_L3", -0.5, 0.4);
  if (name == "fig1_L4") return fig1("fig1_L4", -0.75, 0.6);
  if (name == "fig1_L5") return fig1("fig1_L5", -1.0, 0.8);
  if (name == "fig2") {
    ScenarioConfig c = fig1("fig2", -0.5, 0.4);
    c.trajectory = Oscillatory{std::get<Transfer>(c.trajectory), 0.03, per_s(0.08e12)};
    return c;
  }
  if (name == "fig3") {
    ScenarioConfig c = base("fig3");
    c.trajectory = Transfer{-1.0, 0.0, per_s(0.02e12), 0.2, ps(0.0), ps(60.0)};
    c.rates = DecoherenceRates{ghz(1.0), ghz(0.1), 0.0};
    c.omega0 = {Omega0Spec::Kind::Constant, ghz(5.0), ghz(5.0)};
    c.window.start = ps(-300.0);
    c.window.end = ps(300.0);
    c.window.samples = 601;
    return c;
  }
  if (name == "fig4") {
    ScenarioConfig c = base("fig4");
    c.trajectory = RabiDecay{0.98, 0.3, per_s2(0.05e18), per_s2(2e18),
                             ghz(std::numbers::pi), ghz(std::numbers::pi)};
    c.omega0 = {Omega0Spec::Kind::Constant, ghz(5.0), ghz(5.0)};
    c.window.start = ps(0.0);
    c.window.end = ps(6000.0);
    c.window.samples = 6001;
    return c;
  }
  throw ValidationError(fmt::format("unknown preset '{}' (known: {})", name,
                                    fmt::join(preset_names(), ", ")));
}

}  // namespace revpulse
