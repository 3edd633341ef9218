// Copyright 2026 The ocrpost Authors.
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

namespace ocrpost {

/// Base class for every failure the toolkit reports. The CLI maps each
/// subclass onto a distinct process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments or an invalid configuration value.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Missing, unreadable or unwritable files.
class IoError : public Error {
 public:
  using Error::Error;
};

/// External OCR command failed. Carries the captured stderr.
class OcrError : public Error {
 public:
  OcrError(const std::string& what, std::string stderr_text)
      : Error(what), stderr_text_(std::move(stderr_text)) {}
  const std::string& stderr_text() const noexcept { return stderr_text_; }

 private:
  std::string stderr_text_;
};

/// Malformed ARPA file or violated model invariant.
class ModelParseError : public Error {
 public:
  using Error::Error;
};

/// Ledger/decision data that does not line up with the raw text.
class LedgerError : public Error {
 public:
  using Error::Error;
};

}  // namespace ocrpost
