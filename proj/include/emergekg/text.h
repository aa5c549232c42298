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

#ifndef EMERGEKG_TEXT_H_
#define EMERGEKG_TEXT_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace emergekg {

// Half-open byte interval [begin, end) into a text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool overlaps(const Span& other) const {
    return begin < other.end && other.begin < end;
  }
  bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

using WordSet = std::unordered_set<std::string>;

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
bool is_space(char c);

// Collapses every whitespace run to a single space and trims both ends.
std::string normalize_whitespace(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

// Lowercased, whitespace-normalized form used for surface comparisons.
std::string normalize_surface(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// One entry per non-empty line; lines starting with '#' are comments.
std::vector<std::string> read_lines(const std::filesystem::path& path);

WordSet load_word_set(const std::filesystem::path& path, bool lowercase);

}  // namespace emergekg

#endif  // EMERGEKG_TEXT_H_
