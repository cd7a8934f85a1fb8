// Copyright 2026 The cisdc Authors
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

#ifndef CISDC_ERRORS_HPP_
#define CISDC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cisdc {

//! Zero pivot or structurally singular factorization.
class FactorizationError : public std::runtime_error {
 public:
  explicit FactorizationError(const std::string& what) : std::runtime_error(what) {}
};

//! A linear or nonlinear solve failed (singular system, Newton breakdown).
class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

//! An iterative numeric procedure did not converge within its cap.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

//! A problem does not provide an optional capability (e.g. a coupled solve).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cisdc

#endif  // CISDC_ERRORS_HPP_
