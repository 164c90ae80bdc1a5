// Copyright 2026 The sicrep Authors
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

#include <string>
#include <string_view>

#include "sicrep/channels.hpp"
#include "sicrep/dynamics.hpp"
#include "sicrep/measures.hpp"
#include "sicrep/repr.hpp"
#include "sicrep/sic.hpp"
#include "sicrep/tomography.hpp"

// JSON encodings of the library types. Complex d x d matrices are written as
// a row-major flat list of [re, im] pairs; readers also accept nested rows and
// bare real numbers. Real matrices are nested row lists. Every reader throws
// Error(Input) on malformed text or missing fields; physical validation is
// left to the caller.

namespace sicrep::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

Fiducial fiducial_from_json(std::string_view text);
std::string to_json(const Fiducial& f);

SicPovm sic_from_json(std::string_view text, double tol = 1e-8);
std::string to_json(const SicPovm& sic);

ProbVector prob_from_json(std::string_view text);
std::string to_json(const ProbVector& p);

DensityMatrix density_from_json(std::string_view text);
std::string to_json(const DensityMatrix& rho);

KrausChannel channel_from_json(std::string_view text);
std::string to_json(const KrausChannel& ch);

PseudoStochMatrix pstoch_from_json(std::string_view text);
std::string to_json(const PseudoStochMatrix& s);

GkslSpec gksl_from_json(std::string_view text);
std::string to_json(const GkslSpec& spec);

Generator generator_from_json(std::string_view text);
std::string to_json(const Generator& g);

CountsRecord counts_from_json(std::string_view text);
std::string to_json(const CountsRecord& c);

std::string to_json(const DeltaQuantReport& r);
std::string to_json(const MarkovReport& r);

/// "kind" field of a JSON object, or the empty string.
std::string detect_kind(std::string_view text);

/// One CSV block: a "# name" line followed by comma-separated rows.
std::string matrix_csv(std::string_view name, const RealMatrix& m);

/// Fixed three-decimal rendering, one row per line.
std::string matrix_table(const RealMatrix& m);

}  // namespace sicrep::io
