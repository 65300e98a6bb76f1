// Copyright 2026 The iotplace Authors
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

#ifndef IOTPLACE_ERROR_HPP_
#define IOTPLACE_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace iotplace {

// Base class for every failure raised by the library. The message is the
// stable, user-facing reason ("no route", "unknown device", ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input files and bundles.
class InputError : public Error {
 public:
  using Error::Error;
};

// A placement that breaks its structural invariants or references nodes the
// topology cannot route to.
class InvalidPlacement : public Error {
 public:
  explicit InvalidPlacement(const std::string& detail)
      : Error("invalid placement: " + detail) {}
};

// Raised by the exhaustive solver when the enumeration would exceed the
// configured state cap.
class SearchSpaceTooLarge : public Error {
 public:
  explicit SearchSpaceTooLarge(std::uint64_t states, bool saturated = false)
      : Error("search space too large (" +
              (saturated ? std::string(">") : std::string()) +
              std::to_string(states) + " states)"),
        states_(states) {}

  std::uint64_t states() const noexcept { return states_; }

 private:
  std::uint64_t states_;
};

}  // namespace iotplace

#endif  // IOTPLACE_ERROR_HPP_
