// Copyright 2026 The witnesskit Authors
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

namespace witnesskit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions or bipartite splits disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter is outside its documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input data (distribution, labels, files) violates its invariants.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to converge or produced non-finite output.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The requested two-state operator is positive semi-definite and therefore
/// cannot detect anything.
class NotDetectingError : public Error {
 public:
  using Error::Error;
};

/// A witness has Pauli support outside what the protocol can measure.
class InaccessibleWitnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace witnesskit
