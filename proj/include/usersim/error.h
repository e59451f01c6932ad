// Copyright 2026 The UserSim Authors
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

#ifndef USERSIM_ERROR_H_
#define USERSIM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace usersim {

// Every failure the library reports is an Error tagged with one of these
// kinds. Callers that need to branch on the cause switch on kind().
enum class ErrorKind {
  kIo,
  kSchema,
  kValidation,
  kInsufficientCorpus,
  kEmptyOntology,
  kUnknownSlotPhrase,
  kPoolTooSmall,
  kMissingShotsForDomains,
  kEmptyShotDialog,
  kEmptyUserUtterance,
  kTimeout,
  kRateLimited,
  kProtocol,
  kFixtureExhausted,
  kEmptyGeneration,
  kSessionClosed,
  kMissingActs,
  kEmptyInput,
  kEmptyStream,
  kNoBigrams,
  kTooShort,
  kZeroFactors,
  kConfig,
  kBackendUnreachable,
  kNoResults,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace usersim

#endif  // USERSIM_ERROR_H_
