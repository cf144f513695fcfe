// Copyright 2026 The dptext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPTEXT_BASE64_H_
#define DPTEXT_BASE64_H_

#include <optional>
#include <string>
#include <string_view>

namespace dptext {

// Standard alphabet with '=' padding.
std::string Base64Encode(std::string_view bytes);
// nullopt on malformed input.
std::optional<std::string> Base64Decode(std::string_view text);

}  // namespace dptext

#endif  // DPTEXT_BASE64_H_
