// Copyright 2026 The wordlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace wordlab {

// Mirrors the wl_status codes of the C API one to one.
enum class ErrorCode {
  invalid_argument = 1,
  unsupported_parameter,
  malformed_cayley_table,
  group_mismatch,
  too_large,
  budget_exceeded,
  bad_letter,
  zero_vector,
  empty_word,
  rank_mismatch,
  zero_samples,
  gamma_zero,
  state_cap_exceeded,
  not_generating,
  dimension_mismatch,
  not_in_catalog,
  not_perfect,
  lift_failed_verification,
  config,
  io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wordlab
