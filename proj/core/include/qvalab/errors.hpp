// Copyright 2026 The qvalab Authors
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

namespace qvalab {

// Domain errors (bad index, bad length, bad parameter) are reported with
// std::domain_error / std::invalid_argument. The types below cover the
// conditions callers are expected to handle explicitly.

/// An enumeration or dense construction would exceed its size guard.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// No admissible path exists through the trellis for the given emissions.
class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every error class of an adaptive schedule was tried without acceptance.
class DecodeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qvalab
