// Copyright 2026 The emergekg Authors.
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

#ifndef EMERGEKG_HASH_H_
#define EMERGEKG_HASH_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace emergekg {

// 64-bit FNV-1a. Used to key page and annotation fixtures by URL.
std::uint64_t fnv1a64(std::string_view data);

// Sixteen lowercase hex digits of fnv1a64(url).
std::string url_key(std::string_view url);

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace emergekg

#endif  // EMERGEKG_HASH_H_
