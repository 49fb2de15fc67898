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

#include "revpulse/export.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "revpulse/error.hpp"

namespace revpulse {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) {
    throw Error(fmt::format("cannot write '{}'", path.string()));
  }
}

// ---------------------------------------------------------------------------
// Minimal SVG plotting.

constexpr double kWidth = 760.0;
constexpr double kPanelHeight = 240.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 40.0;

struct Series {
  std::vector<double> y;
  std::string color;
  std::string label;
  bool dashed = false;
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded_range(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) return {-1.0, 1.0};
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    const double pad = std::max(1e-3, std::abs(hi) * 0.1);
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// One panel of line plots sharing the x axis. `range` may exclude outliers;
// points outside it are clamped to the frame.
std::string panel(double top, std::span<const double> x, const std::vector<Series>& series,
                  Range range, std::string_view ylabel, std::string_view title) {
  const double h = kPanelHeight - kTop - kBottom;
  const double w = kWidth - kLeft - kRight;
  const double x0 = x.front();
  const double x1 = x.back();
  auto sx = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * w; };
  auto sy = [&](double v) {
    v = std::clamp(v, range.lo, range.hi);
    return top + kTop + (range.hi - v) / (range.hi - range.lo) * h;
  };

  std::string s;
  s += fmt::format(
      R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="#444"/>)"
      "\n",
      kLeft, top + kTop, w, h);
  s += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="13">{}</text>)" "\n",
                   kLeft, top + kTop - 8.0, escape(title));
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = range.lo + (range.hi - range.lo) * i / 4.0;
    s += fmt::format(
        R"(<text x="{:.2f}" y="{:.2f}" font-size="10" text-anchor="middle">{:.4g}</text>)"
        "\n",
        sx(xv), top + kTop + h + 14.0, xv);
    s += fmt::format(
        R"(<text x="{:.2f}" y="{:.2f}" font-size="10" text-anchor="end">{:.4g}</text>)"
        "\n",
        kLeft - 4.0, sy(yv) + 3.0, yv);
  }
  s += fmt::format(
      R"(<text x="{:.2f}" y="{:.2f}" font-size="11" text-anchor="middle">t (ps)</text>)"
      "\n",
      kLeft + w / 2.0, top + kTop + h + 30.0);
  s += fmt::format(
      R"svg(<text x="14" y="{:.2f}" font-size="11" transform="rotate(-90 14 {:.2f})" text-anchor="middle">{}</text>)svg"
      "\n",
      top + kTop + h / 2.0, top + kTop + h / 2.0, escape(ylabel));

  double legend_x = kLeft + w - 10.0;
  for (auto it = series.rbegin(); it != series.rend(); ++it) {
    const Series& ser = *it;
    std::string pts;
    for (std::size_t i = 0; i < x.size(); ++i) {
      pts += fmt::format("{:.2f},{:.2f} ", sx(x[i]), sy(ser.y[i]));
    }
    if (!pts.empty()) pts.pop_back();
    s += fmt::format(
        R"(<polyline fill="none" stroke="{}" stroke-width="1.5"{} points="{}"/>)" "\n",
        ser.color, ser.dashed ? R"( stroke-dasharray="6 4")" : "", pts);
    s += fmt::format(
        R"(<text x="{:.2f}" y="{:.2f}" font-size="11" fill="{}" text-anchor="end">{}</text>)"
        "\n",
        legend_x, top + kTop + 14.0, ser.color, escape(ser.label));
    legend_x -= 12.0 + 7.0 * static_cast<double>(ser.label.size());
  }
  return s;
}

std::string svg_document(double width, double height, std::string_view title,
                         const std::string& body) {
  return fmt::format(
      R"(<?xml version="1.0" encoding="UTF-8"?>)"
      "\n"
      R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0:.0f}" height="{1:.0f}" viewBox="0 0 {0:.0f} {1:.0f}" font-family="sans-serif">)"
      "\n<title>{2}</title>\n"
      R"(<rect width="100%" height="100%" fill="white"/>)"
      "\n{3}</svg>\n",
      width, height, escape(title), body);
}

Range range_of(const std::vector<const std::vector<double>*>& ys) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto* y : ys) {
    for (double v : *y) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return padded_range(lo, hi);
}

std::string pulse_svg(const ResultBundle& b) {
  const ControlField& f = b.pulse.field;
  const auto t = f.grid().times();
  const std::vector<double> rabi(f.rabi().begin(), f.rabi().end());
  const std::vector<double> phi(f.phi().begin(), f.phi().end());
  const std::vector<double> omega(f.omega().begin(), f.omega().end());
  const std::vector<double> delta(f.delta().begin(), f.delta().end());

  // Scale the Rabi panel on regular samples only; near carrier singularities
  // Omega_R is unbounded and would flatten the rest of the curve.
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < rabi.size(); ++i) {
    if (1.0 + std::cos(2.0 * phi[i]) < kDenomMin) continue;
    lo = std::min(lo, rabi[i]);
    hi = std::max(hi, rabi[i]);
  }
  std::string title = "Rabi frequency Omega_R (rad/ps)";
  if (!f.realizable()) {
    title += fmt::format("; {} samples near 1+cos(2 phi) = 0 clipped",
                         f.carrier_singularities().size());
  }
  std::string body;
  body += panel(0.0, t, {{rabi, "#1f4e9c", "Omega_R", false}}, padded_range(lo, hi),
                "rad/ps", title);
  body += panel(kPanelHeight, t, {{phi, "#b03a2e", "phi", false}}, range_of({&phi}),
                "rad", "carrier phase phi");
  body += panel(2.0 * kPanelHeight, t,
                {{omega, "#1f4e9c", "Omega", false}, {delta, "#239b56", "Delta", true}},
                range_of({&omega, &delta}), "rad/ps", "effective coupling and detuning");
  return svg_document(kWidth, 3.0 * kPanelHeight,
                      fmt::format("{} pulse", b.config.name), body);
}

std::string populations_svg(const ResultBundle& b) {
  const PictureResult& p = b.pictures.front();
  const auto t = p.sim.grid.times();
  std::vector<double> pe, pg, pe_target, pg_target;
  for (std::size_t i = 0; i < t.size(); ++i) {
    pe.push_back(p.sim.states[i].population_excited());
    pg.push_back(p.sim.states[i].population_ground());
    const double w = b.pulse.target.points[i].w;
    pe_target.push_back(0.5 * (1.0 + w));
    pg_target.push_back(0.5 * (1.0 - w));
  }
  const std::string body = panel(
      0.0, t,
      {{pg, "#1f4e9c", "P_g", false},
       {pe, "#b03a2e", "P_e", false},
       {pg_target, "#7fa7e0", "P_g target", true},
       {pe_target, "#e59b92", "P_e target", true}},
      {-0.02, 1.02}, "population",
      fmt::format("populations ({})", picture_kind_name(p.kind)));
  return svg_document(kWidth, kPanelHeight, fmt::format("{} populations", b.config.name),
                      body);
}

std::string bloch3d_svg(const ResultBundle& b) {
  const PictureResult& p = b.pictures.front();
  constexpr double size = 520.0;
  constexpr double c = size / 2.0;
  constexpr double radius = 200.0;
  const double az = -50.0 * std::numbers::pi / 180.0;
  const double el = 20.0 * std::numbers::pi / 180.0;
  auto project = [&](double x, double y, double z) {
    const double sx = -x * std::sin(az) + y * std::cos(az);
    const double sy = z * std::cos(el) - (x * std::cos(az) + y * std::sin(az)) * std::sin(el);
    return std::pair{c + radius * sx, c - radius * sy};
  };
  auto polyline = [&](const std::vector<BlochVector>& pts, std::string_view color,
                      std::string_view extra) {
    std::string s;
    for (const BlochVector& r : pts) {
      const auto [x, y] = project(r.u, r.v, r.w);
      s += fmt::format("{:.2f},{:.2f} ", x, y);
    }
    if (!s.empty()) s.pop_back();
    return fmt::format(R"(<polyline fill="none" stroke="{}" {} points="{}"/>)" "\n",
                       color, extra, s);
  };

  std::string body;
  body += fmt::format(
      R"(<circle cx="{0:.2f}" cy="{0:.2f}" r="{1:.2f}" fill="#f4f6fa" stroke="#888"/>)"
      "\n",
      c, radius);
  std::vector<BlochVector> equator;
  for (int k = 0; k <= 120; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 120.0;
    equator.push_back({std::cos(a), std::sin(a), 0.0});
  }
  body += polyline(equator, "#aaa", R"(stroke-width="1")");
  const std::array<std::pair<BlochVector, std::string_view>, 3> axes{
      {{{1.0, 0.0, 0.0}, "u"}, {{0.0, 1.0, 0.0}, "v"}, {{0.0, 0.0, 1.0}, "w"}}};
  for (const auto& [axis, name] : axes) {
    const auto [x0, y0] = project(-axis.u, -axis.v, -axis.w);
    const auto [x1, y1] = project(1.15 * axis.u, 1.15 * axis.v, 1.15 * axis.w);
    body += fmt::format(
        R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="#666" stroke-width="0.8"/>)"
        "\n",
        x0, y0, x1, y1);
    body += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="13">{}</text>)" "\n",
                        x1 + 4.0, y1, name);
  }
  body += polyline(b.pulse.target.points, "#1f4e9c", R"(stroke-width="2.5")");
  body += polyline(p.tracked_bloch, "#d4351c",
                   R"(stroke-width="1.5" stroke-dasharray="6 4")");
  body += fmt::format(
      R"(<text x="12" y="20" font-size="13">{}: prescribed (solid) vs {} (dashed), sup error {:.3g}</text>)"
      "\n",
      escape(b.config.name), picture_kind_name(p.kind), p.tracking.sup.max());
  return svg_document(size, size, fmt::format("{} Bloch trajectory", b.config.name), body);
}

}  // namespace

std::string csv_text(const ResultBundle& b) {
  std::string s = fmt::format("# revpulse-csv v1 scenario={} picture={} spec={}\n",
                              b.config.name,
                              b.pictures.empty() ? "none" : picture_kind_name(b.pictures.front().kind),
                              scenario_hash(b.config));
  s += kCsvHeader;
  s += '\n';
  if (b.pictures.empty()) return s;

  const PictureResult& p = b.pictures.front();
  const ControlField& f = b.pulse.field;
  const auto t = f.grid().times();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const BlochVector& target = b.pulse.target.points[i];
    const BlochVector& sim = p.tracked_bloch[i];
    // Pauli expectations: <sx> = -u, <sy> = v, <sz> = w.
    s += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
                     "{:.17g},{:.17g},{:.17g}\n",
                     t[i], target.u, target.v, target.w, -sim.u + 0.0, sim.v, sim.w,
                     f.rabi()[i], f.phi()[i], f.omega0()[i], f.delta()[i]);
  }
  return s;
}

void export_csv(const ResultBundle& bundle, const std::filesystem::path& path) {
  write_file(path, csv_text(bundle));
}

std::string svg_text(const ResultBundle& bundle, SvgKind kind) {
  if (bundle.pictures.empty()) {
    throw ValidationError(fmt::format(
        "cannot draw '{}' for scenario '{}': the bundle holds no simulated picture",
        svg_kind_name(kind), bundle.config.name));
  }
  switch (kind) {
    case SvgKind::Pulse:
      return pulse_svg(bundle);
    case SvgKind::Populations:
      return populations_svg(bundle);
    case SvgKind::Bloch3d:
      return bloch3d_svg(bundle);
  }
  throw ValidationError("unknown svg kind");
}

void export_svg(const ResultBundle& bundle, const std::filesystem::path& path,
                SvgKind kind) {
  write_file(path, svg_text(bundle, kind));
}

std::string summary_text(const ResultBundle& b) {
  const ControlField& f = b.pulse.field;
  std::string s = fmt::format(
      "scenario {} ({} samples, spec {}): |Omega_R|max/max(omega0) = {:.4g} "
      "(regular samples {:.4g}); carrier singular samples: {}\n",
      b.config.name, f.size(), b.metadata.spec_hash, f.strong_coupling_ratio(),
      f.strong_coupling_ratio_regular(), f.carrier_singularities().size());
  for (const PictureResult& p : b.pictures) {
    s += fmt::format(
        "  {:<16} sup |du|={:.3e} |dv|={:.3e} |dw|={:.3e}  rms={:.3e}  final fidelity={:.12f}  "
        "steps={} rejected={}\n",
        picture_kind_name(p.kind), p.tracking.sup.u, p.tracking.sup.v, p.tracking.sup.w,
        p.tracking.rms.max(), p.tracking.final_fidelity, p.sim.stats.steps,
        p.sim.stats.rejected);
  }
  return s;
}

}  // namespace revpulse
