// Copyright 2026 The fairdiv Authors
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

#ifndef FAIRDIV_ERRORS_HPP_
#define FAIRDIV_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fairdiv {

// Violation of an internal invariant. Seeing one of these means a solver bug,
// not bad input; callers should surface it loudly instead of recovering.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Malformed input document. `where` is a slash-separated path into the
// document ("squares/3/value") so the offending field can be located.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Internal assertion helper. Cheap enough to leave on in release builds;
// every solver state transition in this library is checked.
inline void internalCheck(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace fairdiv

#endif  // FAIRDIV_ERRORS_HPP_
