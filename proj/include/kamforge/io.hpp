// Copyright 2026 The kamforge Authors
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

// JSON, JSON-lines and CSV encodings of the library's artifacts. Every
// to_json has a matching parser that restores the value coefficient-exactly.
// Complex numbers are [re, im] pairs; non-finite doubles are the strings
// "nan", "inf" and "-inf".

#include <exception>
#include <string>
#include <vector>

#include "json.hpp"
#include "kamforge/continuation.hpp"
#include "kamforge/frequency.hpp"
#include "kamforge/kam.hpp"
#include "kamforge/obstruction.hpp"

namespace kamforge::io {

using json = nlohmann::json;

json real_to_json(double x);
double real_from_json(const json& j);
json to_json(cplx z);
cplx cplx_from_json(const json& j);

// {"N": int, "coeffs": [[re, im], ...]} ordered k = -N..N.
json to_json(const FourierSeries& phi);
FourierSeries series_from_json(const json& j);

json to_json(const Frequency& freq);
Frequency frequency_from_json(const json& j);

json to_json(const SolveReport& report);
SolveReport solve_report_from_json(const json& j);

// dynamical_residual is stored alongside when finite.
json to_json(const InvariantCurve& curve, double dynamical_residual);
InvariantCurve curve_from_json(const json& j);

json to_json(const SetGeometry& geometry);
SetGeometry geometry_from_json(const json& j);

json to_json(const QTaylorData& data);
QTaylorData taylor_from_json(const json& j);

json to_json(const ObstructionReport& report);
ObstructionReport obstruction_from_json(const json& j);

json to_json(const SampledFamily& family);
SampledFamily family_from_json(const json& j);

json to_json(const CrosscheckReport& report);
CrosscheckReport crosscheck_from_json(const json& j);

// {"error": kind, "message": ..., "history": [...]} for failures.
json error_json(const std::exception& e);

// theta,re_x,im_x,re_y,im_y with %.17g fields.
std::string curve_csv(const std::vector<CurveSample>& samples);

// "cos" for cos(2 pi theta); an existing file holding a series JSON; or an
// inline list "k:re[:im],..." such as "1:0.5,-1:0.5".
FourierSeries parse_f_spec(const std::string& spec);

std::string dump(const json& j);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace kamforge::io
