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

#include "gazerev/error.h"

namespace gazerev {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kDuplicate: return "duplicate-row error";
    case ErrorKind::kIntegrity: return "integrity error";
    case ErrorKind::kEmptyInput: return "empty-input error";
    case ErrorKind::kUndefined: return "undefined statistic";
    case ErrorKind::kAlignment: return "alignment error";
    case ErrorKind::kTransport: return "transport error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kDegenerate: return "degenerate input";
    case ErrorKind::kSeparation: return "separation error";
    case ErrorKind::kRank: return "rank error";
    case ErrorKind::kConvergence: return "convergence error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kUsage: return "usage error";
  }
  return "error";
}

Error Error::WithContext(std::string_view context) const {
  std::string message(context);
  message += ": ";
  message += what();
  return Error(kind_, message);
}

}  // namespace gazerev
