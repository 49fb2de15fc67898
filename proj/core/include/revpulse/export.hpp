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

#pragma once

#include <filesystem>
#include <string>

#include "revpulse/runner.hpp"

namespace revpulse {

/// First line of every CSV export; bump the version when columns change.
inline constexpr std::string_view kCsvHeader =
    "t_ps,u,v,w,sx,sy,sz,omega_R,phi,omega0,delta";

/// One row per time sample. u,v,w are the prescribed Bloch coordinates;
/// sx,sy,sz the simulated Pauli expectation values of the first picture (in
/// the prescription frame); the rest are the pulse channels. Values use 17
/// significant digits. A bundle without pictures yields the header only.
std::string csv_text(const ResultBundle& bundle);
void export_csv(const ResultBundle& bundle, const std::filesystem::path& path);

/// Standalone SVG for one plot kind. Throws ValidationError for a bundle
/// without pictures.
std::string svg_text(const ResultBundle& bundle, SvgKind kind);
void export_svg(const ResultBundle& bundle, const std::filesystem::path& path,
                SvgKind kind);

/// Short human readable report (one line per picture).
std::string summary_text(const ResultBundle& bundle);

}  // namespace revpulse
