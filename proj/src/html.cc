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

#include "emergekg/html.h"

#include <algorithm>
#include <array>
#include <cstdint>

#include "emergekg/text.h"

namespace emergekg {
namespace {

constexpr std::array<std::string_view, 4> kHiddenElements = {
    "script", "style", "noscript", "template"};

constexpr std::array<std::string_view, 28> kBlockElements = {
    "address", "article", "aside", "blockquote", "br", "dd", "div",
    "dl", "dt", "footer", "form", "h1", "h2", "h3", "h4", "h5",
    "h6", "header", "hr", "li", "main", "nav", "ol", "p",
    "section", "table", "td", "tr"};

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '!';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x110000) {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes the entity starting at html[i] == '&'. Returns the number of bytes
// consumed, 0 when the text is not a recognized entity.
std::size_t decode_entity(std::string_view html, std::size_t i,
                          std::string& out) {
  std::size_t semi = html.find(';', i);
  if (semi == std::string_view::npos || semi - i > 10) return 0;
  std::string_view name = html.substr(i + 1, semi - i - 1);
  std::size_t consumed = semi - i + 1;
  if (!name.empty() && name[0] == '#') {
    std::uint32_t cp = 0;
    bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
    std::string_view digits = name.substr(hex ? 2 : 1);
    if (digits.empty()) return 0;
    for (char c : digits) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else return 0;
      cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
      if (cp > 0x10FFFF) return 0;
    }
    append_utf8(out, cp);
    return consumed;
  }
  struct Named { std::string_view name; std::string_view text; };
  static constexpr Named kNamed[] = {
      {"amp", "&"},   {"lt", "<"},      {"gt", ">"},      {"quot", "\""},
      {"apos", "'"},  {"nbsp", " "},    {"ndash", "-"},   {"mdash", "-"},
      {"rsquo", "'"}, {"lsquo", "'"},   {"rdquo", "\""},  {"ldquo", "\""},
      {"ouml", "\xC3\xB6"}, {"uuml", "\xC3\xBC"}, {"auml", "\xC3\xA4"},
      {"eacute", "\xC3\xA9"}, {"copy", "\xC2\xA9"}, {"reg", "\xC2\xAE"},
      {"middot", "\xC2\xB7"}, {"laquo", "\xC2\xAB"}, {"raquo", "\xC2\xBB"},
      {"bull", "\xE2\x80\xA2"}, {"hellip", "\xE2\x80\xA6"}};
  for (const Named& n : kNamed) {
    if (name == n.name) {
      out.append(n.text);
      return consumed;
    }
  }
  return 0;
}

std::string lower_name(std::string_view html, std::size_t& i) {
  std::string name;
  while (i < html.size() && is_name_char(html[i])) {
    name.push_back(html[i]);
    ++i;
  }
  return to_lower(name);
}

}  // namespace

std::string extract_visible_text(std::string_view html) {
  std::string text;
  text.reserve(html.size());
  std::size_t i = 0;
  while (i < html.size()) {
    char c = html[i];
    if (c == '<') {
      if (html.substr(i, 4) == "<!--") {
        std::size_t end = html.find("-->", i + 4);
        i = end == std::string_view::npos ? html.size() : end + 3;
        continue;
      }
      std::size_t j = i + 1;
      bool closing = j < html.size() && html[j] == '/';
      if (closing) ++j;
      std::string name = lower_name(html, j);
      if (name.empty()) {
        // A bare '<' in text.
        text.push_back(' ');
        ++i;
        continue;
      }
      std::size_t gt = html.find('>', j);
      std::size_t tag_end = gt == std::string_view::npos ? html.size() : gt + 1;
      bool hidden = std::find(kHiddenElements.begin(), kHiddenElements.end(),
                              name) != kHiddenElements.end();
      if (hidden && !closing) {
        std::string close = "</" + name;
        std::size_t k = tag_end;
        std::size_t found = std::string_view::npos;
        while (k < html.size()) {
          std::size_t lt = html.find("</", k);
          if (lt == std::string_view::npos) break;
          if (to_lower(html.substr(lt, close.size())) == close) {
            found = lt;
            break;
          }
          k = lt + 2;
        }
        if (found == std::string_view::npos) {
          i = html.size();
        } else {
          std::size_t gt2 = html.find('>', found);
          i = gt2 == std::string_view::npos ? html.size() : gt2 + 1;
        }
        text.push_back(' ');
        continue;
      }
      bool block = std::find(kBlockElements.begin(), kBlockElements.end(),
                             name) != kBlockElements.end();
      text.push_back(block ? '\n' : ' ');
      i = tag_end;
      continue;
    }
    if (c == '&') {
      std::size_t used = decode_entity(html, i, text);
      if (used > 0) {
        i += used;
        continue;
      }
    }
    text.push_back(c);
    ++i;
  }

  // Collapse whitespace; a run containing a newline becomes one newline.
  std::string out;
  out.reserve(text.size());
  bool pending = false;
  bool pending_newline = false;
  for (char ch : text) {
    if (is_space(ch)) {
      pending = true;
      pending_newline = pending_newline || ch == '\n';
      continue;
    }
    if (pending && !out.empty()) out.push_back(pending_newline ? '\n' : ' ');
    pending = false;
    pending_newline = false;
    out.push_back(ch);
  }
  return out;
}

}  // namespace emergekg
