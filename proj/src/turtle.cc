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

#include <algorithm>
#include <cstdio>
#include <tuple>
#include <array>
#include <map>
#include <optional>

#include "emergekg/error.h"
#include "emergekg/kgraph.h"
#include "emergekg/text.h"

namespace emergekg {
namespace {

struct Prefix {
  std::string_view name;
  std::string_view ns;
};

constexpr std::array<Prefix, 4> kPrefixes = {{
    {"rdf", vocab::kRdf},
    {"foaf", vocab::kFoaf},
    {"schema", vocab::kSchema},
    {"local", vocab::kLocal},
}};

constexpr std::string_view kLocalEscapable = "_~.-!$&'()*+,;=/?#@%";

bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Escaped PN_LOCAL form of `local`, or nullopt when it cannot be written as
// a prefixed name.
std::optional<std::string> escape_local(std::string_view local) {
  if (local.empty()) return std::nullopt;
  std::string out;
  for (std::size_t i = 0; i < local.size(); ++i) {
    auto c = static_cast<unsigned char>(local[i]);
    bool plain = is_ascii_alnum(c) || c >= 0x80 || c == '_' || c == ':' ||
                 (c == '-' && i > 0);
    if (plain) {
      out.push_back(static_cast<char>(c));
    } else if (kLocalEscapable.find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else {
      return std::nullopt;
    }
  }
  return out;
}

std::string escape_iri(std::string_view iri) {
  std::string out;
  for (char ch : iri) {
    auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || ch == '<' || ch == '>' || ch == '"' || ch == '{' || ch == '}' ||
        ch == '|' || ch == '^' || ch == '`' || ch == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\u%04X", c);
      out += buf;
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

std::string write_iri(std::string_view iri) {
  const Prefix* best = nullptr;
  for (const Prefix& p : kPrefixes) {
    if (iri.starts_with(p.ns) && (best == nullptr || p.ns.size() > best->ns.size())) {
      best = &p;
    }
  }
  if (best != nullptr) {
    if (auto local = escape_local(iri.substr(best->ns.size()))) {
      return std::string(best->name) + ":" + *local;
    }
  }
  return "<" + escape_iri(iri) + ">";
}

std::string write_literal(std::string_view value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string write_term(const Term& t) {
  return t.kind == Term::Kind::kIri ? write_iri(t.value) : write_literal(t.value);
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
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class TurtleReader {
 public:
  explicit TurtleReader(std::string_view text) : text_(text) {}

  std::vector<Triple> read() {
    std::vector<Triple> out;
    while (true) {
      skip_blank();
      if (pos_ >= text_.size()) break;
      if (peek_word("@prefix")) {
        pos_ += 7;
        read_prefix_decl();
        expect('.');
        continue;
      }
      if (peek_word("PREFIX") || peek_word("prefix")) {
        pos_ += 6;
        read_prefix_decl();
        continue;
      }
      std::string subject = read_iri_term();
      read_predicate_object_list(subject, out);
      expect('.');
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos_), '\n'));
    throw Error(ErrorCode::kParse, "turtle line " + std::to_string(line) + ": " + what);
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (is_space(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek_word(std::string_view w) const {
    if (text_.substr(pos_, w.size()) != w) return false;
    std::size_t after = pos_ + w.size();
    return after >= text_.size() || is_space(text_[after]);
  }

  void expect(char c) {
    skip_blank();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool accept(char c) {
    skip_blank();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void read_prefix_decl() {
    skip_blank();
    std::size_t colon = text_.find(':', pos_);
    if (colon == std::string_view::npos) fail("prefix name lacks ':'");
    std::string name(text_.substr(pos_, colon - pos_));
    pos_ = colon + 1;
    skip_blank();
    prefixes_[name] = read_iriref();
  }

  std::string read_iriref() {
    if (pos_ >= text_.size() || text_[pos_] != '<') fail("expected '<'");
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated IRI");
      char c = text_[pos_++];
      if (c == '>') break;
      if (c == '\\') {
        out += read_uchar();
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  std::string read_uchar() {
    if (pos_ >= text_.size()) fail("dangling escape");
    char kind = text_[pos_++];
    std::size_t len = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (len == 0 || pos_ + len > text_.size()) fail("bad unicode escape");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < len; ++i) {
      char h = text_[pos_++];
      int v = (h >= '0' && h <= '9')   ? h - '0'
              : (h >= 'a' && h <= 'f') ? h - 'a' + 10
              : (h >= 'A' && h <= 'F') ? h - 'A' + 10
                                       : -1;
      if (v < 0) fail("bad hex digit in escape");
      cp = cp * 16 + static_cast<std::uint32_t>(v);
    }
    std::string out;
    append_utf8(out, cp);
    return out;
  }

  std::string read_pname() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ':' && !is_space(text_[pos_])) ++pos_;
    if (pos_ >= text_.size() || text_[pos_] != ':') fail("expected a prefixed name");
    std::string prefix(text_.substr(start, pos_ - start));
    ++pos_;
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + "'");
    std::string local;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      auto u = static_cast<unsigned char>(c);
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) fail("dangling escape");
        local.push_back(text_[pos_ + 1]);
        pos_ += 2;
      } else if (is_ascii_alnum(u) || u >= 0x80 || c == '_' || c == '-' || c == ':' ||
                 c == '%') {
        local.push_back(c);
        ++pos_;
      } else if (c == '.' && pos_ + 1 < text_.size() &&
                 (is_ascii_alnum(static_cast<unsigned char>(text_[pos_ + 1])) ||
                  static_cast<unsigned char>(text_[pos_ + 1]) >= 0x80 ||
                  text_[pos_ + 1] == '_' || text_[pos_ + 1] == '-' ||
                  text_[pos_ + 1] == ':')) {
        local.push_back(c);
        ++pos_;
      } else {
        break;
      }
    }
    return it->second + local;
  }

  std::string read_iri_term() {
    skip_blank();
    if (pos_ < text_.size() && text_[pos_] == '<') return read_iriref();
    return read_pname();
  }

  Term read_object() {
    skip_blank();
    if (pos_ < text_.size() && text_[pos_] == '"') return Term::literal(read_string());
    return Term::iri(read_iri_term());
  }

  std::string read_string() {
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("dangling escape");
        char e = text_[pos_];
        switch (e) {
          case 'n': out.push_back('\n'); ++pos_; break;
          case 'r': out.push_back('\r'); ++pos_; break;
          case 't': out.push_back('\t'); ++pos_; break;
          case '"': out.push_back('"'); ++pos_; break;
          case '\\': out.push_back('\\'); ++pos_; break;
          case 'u': case 'U': out += read_uchar(); break;
          default: fail("unknown string escape");
        }
        continue;
      }
      out.push_back(c);
    }
    // Language tags and datatypes are accepted; the lexical form is kept.
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      while (pos_ < text_.size() && (is_ascii_alnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '-')) {
        ++pos_;
      }
    } else if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      read_iri_term();
    }
    return out;
  }

  std::string read_verb() {
    skip_blank();
    if (text_.substr(pos_, 1) == "a" &&
        (pos_ + 1 >= text_.size() || is_space(text_[pos_ + 1]))) {
      ++pos_;
      return std::string(vocab::kRdfType);
    }
    return read_iri_term();
  }

  void read_predicate_object_list(const std::string& subject, std::vector<Triple>& out) {
    while (true) {
      std::string predicate = read_verb();
      do {
        out.push_back({subject, predicate, read_object()});
      } while (accept(','));
      if (!accept(';')) break;
      skip_blank();
      // A trailing ';' before '.' is allowed.
      if (pos_ < text_.size() && text_[pos_] == '.') break;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace

std::string serialize_turtle(std::span<const Triple> triples) {
  std::string out;
  for (const Prefix& p : kPrefixes) {
    out += "@prefix ";
    out += p.name;
    out += ": <";
    out += p.ns;
    out += "> .\n";
  }
  std::vector<Triple> types;
  std::vector<Triple> rest;
  for (const Triple& t : triples) {
    (t.predicate == vocab::kRdfType ? types : rest).push_back(t);
  }
  std::sort(types.begin(), types.end());
  std::sort(rest.begin(), rest.end(), [](const Triple& a, const Triple& b) {
    return std::tie(a.predicate, a.object, a.subject) <
           std::tie(b.predicate, b.object, b.subject);
  });
  if (!triples.empty()) out.push_back('\n');
  for (const std::vector<Triple>* group : {&types, &rest}) {
    for (const Triple& t : *group) {
      out += write_iri(t.subject);
      out.push_back(' ');
      out += write_iri(t.predicate);
      out.push_back(' ');
      out += write_term(t.object);
      out += " .\n";
    }
  }
  return out;
}

std::vector<Triple> parse_turtle(std::string_view text) {
  return TurtleReader(text).read();
}

}  // namespace emergekg
