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

#ifndef EMERGEKG_HTML_H_
#define EMERGEKG_HTML_H_

#include <string>
#include <string_view>

namespace emergekg {

// Visible text of an HTML page: tags, comments, and the contents of
// <script>, <style>, <noscript> and <template> are dropped, common character
// entities are decoded and whitespace is collapsed. Block-level tags become
// separators so words in adjacent cells do not run together.
std::string extract_visible_text(std::string_view html);

}  // namespace emergekg

#endif  // EMERGEKG_HTML_H_
