// Copyright 2026 The gazerev Authors.
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

#ifndef GAZEREV_ERROR_H_
#define GAZEREV_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gazerev {

enum class ErrorKind {
  kSchema,           // missing column, unexpected header, column mismatch
  kDuplicate,        // repeated key in a table
  kIntegrity,        // table violates a structural invariant
  kEmptyInput,
  kUndefined,        // statistic undefined for the input (zero variance)
  kAlignment,        // label sequences or tables cannot be aligned
  kTransport,        // labeller session failed
  kParse,            // malformed file content
  kIo,               // unreadable / unwritable path
  kDegenerate,       // constant response or single-class labels
  kSeparation,
  kRank,
  kConvergence,
  kDomain,           // argument outside the mathematical domain
  kUsage,            // bad command-line or configuration usage
};

std::string_view ErrorKindName(ErrorKind kind);

// All domain failures raised by the library. The message is a single
// actionable line; `kind` lets callers map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // Returns a copy of this error with `context` prepended to the message.
  Error WithContext(std::string_view context) const;

 private:
  ErrorKind kind_;
};

}  // namespace gazerev

#endif  // GAZEREV_ERROR_H_
