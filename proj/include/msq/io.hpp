// Copyright 2026 The Authors.
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

#include <json.hpp>

#include <optional>
#include <string>

#include "msq/construction.hpp"
#include "msq/exact.hpp"
#include "msq/psi.hpp"

namespace msq::io {

// Insertion-ordered JSON keeps reports byte-reproducible.
using Json = nlohmann::ordered_json;

// Matrix exchange format: {"n": ..., "rows": ..., "cols": ..., "entries":
// row-major integers}.  "n" is present only for the magic-square family.
Json matrix_to_json(const ExactMatrix& m, std::optional<int> n = std::nullopt);
ExactMatrix matrix_from_json(const nlohmann::json& j);

// Dense text: one line per row, space-separated integers.
std::string matrix_to_text(const ExactMatrix& m);
ExactMatrix matrix_from_text(const std::string& text);

Json partition_to_json(const construction::Partition& p);
Json report_to_json(const construction::VerificationReport& r);

// {"n": ..., "lower": ..., "upper": ..., "exact"?: ..., "witness"?: ...,
//  "budget": {"nodes": ...}}.  Elapsed time is emitted only on request so
// identical invocations stay byte-identical.
Json packing_to_json(const psi::PackingResult& r, std::optional<int> n,
                     bool with_timing = false);

Json merge_report_to_json(const psi::MergeSurvivorsReport& r);

}  // namespace msq::io
