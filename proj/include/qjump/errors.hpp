// Copyright 2026 The Qjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qjump {

/// Caller supplied an argument that violates an operation's precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file or document could not be parsed; the message carries line/field context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem size exceeds an exhaustive or statevector cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The instance carries no energy scale (all couplings and fields zero, or D <= 1).
class DegenerateInstanceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qjump
