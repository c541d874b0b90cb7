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

#include <stdexcept>
#include <string>

namespace msq {

// Thrown when a computation would exceed its explicitly configured budget.
// Callers distinguish this from a negative verification result.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an exact certificate that must hold by construction fails to
// verify.  Indicates a defect in this library, never a property of the input.
class CertificationError : public std::logic_error {
 public:
  explicit CertificationError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace msq
