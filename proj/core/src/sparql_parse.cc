// Copyright 2026 The GeoQA Authors.
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

#include <cctype>
#include <charconv>
#include <set>

#include "geoqa/sparql.h"
#include "geoqa/text.h"

namespace geoqa::sparql {
namespace {

enum class Tok { kEnd, kWord, kVar, kPrefixed, kIriRef, kString, kNumber, kPunct };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t offset = 0;
};

const std::set<std::string>& unsupportedKeywords() {
  static const std::set<std::string> kWords = {
      "OPTIONAL", "UNION", "MINUS", "BIND", "VALUES", "GRAPH", "SERVICE",
      "ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING", "DISTINCT", "REDUCED",
      "ASK", "CONSTRUCT", "DESCRIBE", "EXISTS", "NOT", "BASE", "FROM"};
  return kWords;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool isNameByte(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipSpace();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    out.push_back(Token{Tok::kEnd, "", text_.size()});
    return out;
  }

 private:
  void skipSpace() {
    while (pos_ < text_.size()) {
      unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError("sparql", msg + " at offset " + std::to_string(at), at);
  }

  Token next() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '?' || c == '$') {
      ++pos_;
      std::size_t b = pos_;
      while (pos_ < text_.size() && isNameByte(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (b == pos_) fail("empty variable name", start);
      return {Tok::kVar, std::string(text_.substr(b, pos_ - b)), start};
    }
    if (c == '<') {
      std::size_t end = text_.find('>', pos_);
      if (end == std::string_view::npos) fail("unterminated IRI", start);
      pos_ = end + 1;
      return {Tok::kIriRef, std::string(text_.substr(start + 1, end - start - 1)), start};
    }
    if (c == '"' || c == '\'') {
      ++pos_;
      std::string value;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated string", start);
        char d = text_[pos_++];
        if (d == c) break;
        if (d == '\\') {
          if (pos_ >= text_.size()) fail("unterminated string", start);
          char e = text_[pos_++];
          switch (e) {
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            default: value += e;
          }
        } else {
          value += d;
        }
      }
      return {Tok::kString, value, start};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(d)) || d == 'e' || d == 'E') {
          ++pos_;
        } else if (d == '.' && pos_ + 1 < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          ++pos_;
        } else if ((d == '-' || d == '+') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')) {
          ++pos_;
        } else {
          break;
        }
      }
      return {Tok::kNumber, std::string(text_.substr(start, pos_ - start)), start};
    }
    if (isNameByte(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && isNameByte(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == ':') {
        ++pos_;
        while (pos_ < text_.size() && isNameByte(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return {Tok::kPrefixed, std::string(text_.substr(start, pos_ - start)), start};
      }
      return {Tok::kWord, std::string(text_.substr(start, pos_ - start)), start};
    }
    if (c == ':') {
      ++pos_;
      while (pos_ < text_.size() && isNameByte(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return {Tok::kPrefixed, std::string(text_.substr(start, pos_ - start)), start};
    }
    const std::string punct = "{}().,;*=";
    if (punct.find(c) != std::string::npos) {
      ++pos_;
      return {Tok::kPunct, std::string(1, c), start};
    }
    fail(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {
    prefixes_ = kb::defaultPrefixMap();
  }

  SelectQuery run() {
    while (isWord("PREFIX")) parsePrefix();
    if (!isWord("SELECT")) {
      checkUnsupported();
      fail("expected SELECT");
    }
    SelectQuery q = parseSelect();
    if (isPunct(".")) ++i_;
    if (peek().kind != Tok::kEnd) {
      checkUnsupported();
      fail("unexpected trailing input '" + peek().text + "'");
    }
    validateAt(q, 0);
    return q;
  }

 private:
  const Token& peek() const { return toks_[i_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const std::size_t at = peek().offset;
    throw ParseError("sparql", msg + " at offset " + std::to_string(at), at);
  }

  bool isWord(std::string_view w) const {
    return peek().kind == Tok::kWord && upper(peek().text) == w;
  }
  bool isPunct(std::string_view p) const {
    return peek().kind == Tok::kPunct && peek().text == p;
  }

  void checkUnsupported() const {
    if (peek().kind == Tok::kWord) {
      std::string w = upper(peek().text);
      if (unsupportedKeywords().count(w)) fail("unsupported feature: " + w);
    }
  }

  void expectWord(std::string_view w) {
    if (!isWord(w)) {
      checkUnsupported();
      fail("expected " + std::string(w));
    }
    ++i_;
  }

  void expectPunct(std::string_view p) {
    if (!isPunct(p)) {
      checkUnsupported();
      fail("expected '" + std::string(p) + "'");
    }
    ++i_;
  }

  Var expectVar() {
    if (peek().kind != Tok::kVar) fail("expected variable");
    return Var{toks_[i_++].text};
  }

  void parsePrefix() {
    ++i_;
    if (peek().kind != Tok::kPrefixed || peek().text.back() != ':') fail("expected prefix name");
    std::string name = peek().text.substr(0, peek().text.size() - 1);
    ++i_;
    if (peek().kind != Tok::kIriRef) fail("expected IRI reference");
    prefixes_[name] = toks_[i_++].text;
  }

  kb::Iri resolvePrefixed(const Token& t) const {
    auto colon = t.text.find(':');
    std::string prefix = t.text.substr(0, colon);
    std::string local = t.text.substr(colon + 1);
    if (!prefixes_.count(prefix)) fail("unknown prefix '" + prefix + "'");
    if (local.empty()) fail("empty local name");
    return kb::Iri{prefix, local};
  }

  kb::Iri resolveFull(const Token& t) const {
    // Longest namespace wins so nested namespaces resolve predictably.
    const std::string* best = nullptr;
    std::size_t bestLen = 0;
    for (const auto& [name, ns] : prefixes_) {
      if (t.text.size() > ns.size() && t.text.compare(0, ns.size(), ns) == 0 && ns.size() > bestLen) {
        best = &name;
        bestLen = ns.size();
      }
    }
    if (!best) fail("IRI <" + t.text + "> is not under a registered prefix");
    return kb::Iri{*best, t.text.substr(bestLen)};
  }

  std::optional<kb::Iri> tryIri() {
    const Token& t = peek();
    if (t.kind == Tok::kPrefixed) {
      ++i_;
      return resolvePrefixed(t);
    }
    if (t.kind == Tok::kIriRef) {
      ++i_;
      return resolveFull(t);
    }
    if (t.kind == Tok::kWord && t.text == "a") {
      ++i_;
      return kb::rdfType();
    }
    return std::nullopt;
  }

  Node parseNode(bool subject) {
    const Token& t = peek();
    if (t.kind == Tok::kVar) return expectVar();
    if (auto iri = tryIri()) return kb::Term::iri(*iri);
    if (subject) fail("expected variable or IRI in subject position");
    if (t.kind == Tok::kString) {
      ++i_;
      return kb::Term::string(t.text);
    }
    if (t.kind == Tok::kNumber) {
      ++i_;
      bool decimal = t.text.find_first_of(".eE") != std::string::npos;
      auto term = kb::Term::parseLiteral(decimal ? kb::LiteralKind::kDecimal : kb::LiteralKind::kInteger,
                                         t.text);
      if (!term) fail("malformed number '" + t.text + "'");
      return *term;
    }
    checkUnsupported();
    fail("expected term");
  }

  SelectQuery parseSelect() {
    expectWord("SELECT");
    checkUnsupported();
    SelectQuery q;
    if (isPunct("*")) fail("unsupported feature: SELECT *");
    while (peek().kind == Tok::kVar || isPunct("(")) {
      if (peek().kind == Tok::kVar) {
        q.projection.push_back(expectVar());
        continue;
      }
      if (q.aggregate) fail("at most one aggregate per SELECT");
      ++i_;
      Aggregate agg;
      std::string fn = peek().kind == Tok::kWord ? upper(peek().text) : "";
      if (fn == "COUNT") agg.fn = AggregateFn::kCount;
      else if (fn == "SUM") agg.fn = AggregateFn::kSum;
      else if (fn == "MIN") agg.fn = AggregateFn::kMin;
      else if (fn == "MAX") agg.fn = AggregateFn::kMax;
      else if (fn == "AVG" || fn == "SAMPLE" || fn == "GROUP_CONCAT") fail("unsupported feature: " + fn);
      else fail("expected aggregate function");
      ++i_;
      expectPunct("(");
      if (isWord("DISTINCT")) fail("unsupported feature: DISTINCT");
      if (isPunct("*")) fail("unsupported feature: COUNT(*)");
      agg.input = expectVar();
      expectPunct(")");
      expectWord("AS");
      agg.alias = expectVar();
      expectPunct(")");
      q.aggregate = agg;
    }
    if (q.projection.empty() && !q.aggregate) {
      checkUnsupported();
      fail("empty projection");
    }
    if (isWord("WHERE")) ++i_;
    expectPunct("{");
    while (!isPunct("}")) {
      if (peek().kind == Tok::kEnd) fail("unterminated group");
      checkUnsupported();
      if (isWord("FILTER")) {
        q.group.push_back(parseFilter());
      } else if (isPunct("{")) {
        ++i_;
        if (!isWord("SELECT")) {
          checkUnsupported();
          fail("unsupported feature: nested group without SELECT");
        }
        SelectQuery sub = parseSelect();
        expectPunct("}");
        q.group.push_back(SubQuery(std::move(sub)));
      } else {
        TriplePattern tp;
        tp.subject = parseNode(true);
        auto pred = tryIri();
        if (!pred) {
          if (peek().kind == Tok::kVar) fail("unsupported feature: variable predicate");
          fail("expected predicate IRI");
        }
        tp.predicate = *pred;
        tp.object = parseNode(false);
        q.group.push_back(std::move(tp));
        if (isPunct(";") || isPunct(",")) fail("unsupported feature: predicate-object list");
      }
      if (isPunct(".")) ++i_;
    }
    if (q.group.empty()) fail("empty group");
    ++i_;
    checkUnsupported();
    return q;
  }

  RegexFilter parseFilter() {
    ++i_;
    expectPunct("(");
    if (!isWord("REGEX")) {
      checkUnsupported();
      fail("unsupported feature: FILTER expression other than regex");
    }
    ++i_;
    expectPunct("(");
    RegexFilter f;
    if (isWord("STR")) {
      ++i_;
      expectPunct("(");
      f.var = expectVar();
      expectPunct(")");
    } else {
      f.var = expectVar();
    }
    expectPunct(",");
    if (peek().kind != Tok::kString) fail("expected regex pattern string");
    f.pattern = toks_[i_++].text;
    if (isPunct(",")) {
      ++i_;
      if (peek().kind != Tok::kString) fail("expected regex flags string");
      f.flags = toks_[i_++].text;
    }
    expectPunct(")");
    expectPunct(")");
    return f;
  }

  void validateAt(const SelectQuery& q, std::size_t at) const {
    try {
      validate(q);
    } catch (const QueryError& e) {
      throw ParseError("sparql", e.what(), at);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  kb::PrefixMap prefixes_;
};

}  // namespace

SelectQuery parse(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

}  // namespace geoqa::sparql
