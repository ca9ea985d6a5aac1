// Copyright 2026 The rmtoolbox Authors
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

#ifndef RMT_ERRORS_H
#define RMT_ERRORS_H

#include <stdexcept>
#include <string>

namespace rmt {

/// Bad input: wrong shape, out-of-range parameter, invalid party index.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Two independent numerical routes disagree beyond their stated tolerance.
/// The CLI maps this to exit code 3.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char *kVersion = "0.1.0";

}  // namespace rmt

#endif
