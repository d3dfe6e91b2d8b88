// Copyright 2026 The rankgame Authors
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

#ifndef RANKGAME_ERRORS_HPP
#define RANKGAME_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace rankgame {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A constructor or operation received parameters that violate its contract.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A theorem-backed operation was invoked on an instance that does not
/// satisfy the theorem's hypotheses.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// Malformed structured input (JSON config or CSV syntax).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Well-formed input whose content is unusable; carries the offending rows.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what, std::vector<int> rows = {})
      : Error(what), rows_(std::move(rows)) {}
  const std::vector<int>& rows() const { return rows_; }

 private:
  std::vector<int> rows_;
};

}  // namespace rankgame

#endif  // RANKGAME_ERRORS_HPP
