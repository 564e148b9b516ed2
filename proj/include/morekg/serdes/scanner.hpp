#ifndef MOREKG_SERDES_SCANNER_HPP
#define MOREKG_SERDES_SCANNER_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "morekg/error.hpp"
#include "morekg/rdf/prefix_map.hpp"
#include "morekg/rdf/term.hpp"

namespace morekg::serdes {

inline void appendUtf8(std::string& out, std::uint32_t cp) {
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

// Cursor over UTF-8 text with 1-based line/column tracking and the lexical
// rules shared by the N-Triples, Turtle, rule and query readers.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  std::size_t offset() const { return pos_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  // Skips whitespace and '#' comments.
  void skipSpace() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  // Skips spaces and tabs only; used by the line-oriented N-Triples reader.
  void skipInlineSpace() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
  }

  bool consume(char c) {
    if (peek() == c && !eof()) {
      get();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  // Case-insensitive keyword followed by a non-name character.
  bool consumeKeyword(std::string_view kw) {
    if (pos_ + kw.size() > text_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char a = text_[pos_ + i];
      char b = kw[i];
      if (std::tolower(static_cast<unsigned char>(a)) !=
          std::tolower(static_cast<unsigned char>(b))) {
        return false;
      }
    }
    char next = peek(kw.size());
    if (rdf::isLocalNameChar(next) || next == ':') return false;
    for (std::size_t i = 0; i < kw.size(); ++i) get();
    return true;
  }

  // <...> with \u and \U escapes.
  std::string readIriRef() {
    expect('<');
    std::string out;
    while (true) {
      if (eof()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        char e = eof() ? '\0' : get();
        if (e == 'u') {
          appendUtf8(out, readHex(4));
        } else if (e == 'U') {
          appendUtf8(out, readHex(8));
        } else {
          fail("invalid escape in IRI");
        }
      } else if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' ||
                 c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        fail("invalid character in IRI");
      } else {
        out.push_back(c);
      }
    }
    if (out.empty()) fail("empty IRI");
    return out;
  }

  // "..." or '...' with the standard escapes.
  std::string readQuoted() {
    char quote = peek();
    if (quote != '"' && quote != '\'') fail("expected string literal");
    get();
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string literal");
      char c = get();
      if (c == quote) break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (eof()) fail("unterminated escape");
      char e = get();
      switch (e) {
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 'f': out.push_back('\f'); break;
        case '"': out.push_back('"'); break;
        case '\'': out.push_back('\''); break;
        case '\\': out.push_back('\\'); break;
        case 'u': appendUtf8(out, readHex(4)); break;
        case 'U': appendUtf8(out, readHex(8)); break;
        default: fail(std::string("invalid escape '\\") + e + "'");
      }
    }
    return out;
  }

  std::string readLangTag() {
    expect('@');
    std::string tag;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '-')) {
      tag.push_back(get());
    }
    if (tag.empty()) fail("empty language tag");
    return tag;
  }

  std::string readBlankLabel() {
    if (!(consume('_') && consume(':'))) fail("expected blank node '_:'");
    std::string label = readNameChars();
    if (label.empty()) fail("empty blank node label");
    return label;
  }

  // prefix:local. A trailing '.' is left unconsumed (statement terminator).
  std::string readPrefixedName() {
    std::string prefix = readNameChars();
    if (!consume(':')) fail("expected ':' in prefixed name");
    std::string local = readNameChars();
    return prefix + ":" + local;
  }

  // Unprefixed name or keyword: letters, digits, '_' and '-'.
  std::string readWord() {
    std::string out;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '_' || peek() == '-')) {
      out.push_back(get());
    }
    return out;
  }

  // Numeric shorthand literal: integer, decimal or double.
  rdf::Term readNumber() {
    std::string text;
    if (peek() == '+' || peek() == '-') text.push_back(get());
    bool dot = false;
    bool exp = false;
    while (!eof()) {
      char c = peek();
      if (c >= '0' && c <= '9') {
        text.push_back(get());
      } else if (c == '.' && !dot && !exp && peek(1) >= '0' && peek(1) <= '9') {
        dot = true;
        text.push_back(get());
      } else if ((c == 'e' || c == 'E') && !exp) {
        exp = true;
        text.push_back(get());
        if (peek() == '+' || peek() == '-') text.push_back(get());
      } else {
        break;
      }
    }
    bool hasDigit = false;
    for (char c : text) hasDigit = hasDigit || (c >= '0' && c <= '9');
    if (!hasDigit) fail("malformed number");
    if (exp) return rdf::Term::literal(text, rdf::xsd::kDouble);
    if (dot) return rdf::Term::literal(text, rdf::xsd::kDecimal);
    return rdf::Term::literal(text, rdf::xsd::kInteger);
  }

  // Any non-variable term in Turtle-like syntax: <iri>, prefixed name, `a`,
  // blank label, quoted literal with optional @lang or ^^datatype, numbers and
  // booleans.
  rdf::Term readTerm(const rdf::PrefixMap& prefixes) {
    char c = peek();
    if (c == '<') return rdf::Term::iri(readIriRef());
    if (c == '_' && peek(1) == ':') return rdf::Term::blank(readBlankLabel());
    if (c == '"' || c == '\'') {
      std::string lexical = readQuoted();
      if (peek() == '@') return rdf::Term::langLiteral(lexical, readLangTag());
      if (peek() == '^' && peek(1) == '^') {
        get();
        get();
        rdf::Term dt = peek() == '<' ? rdf::Term::iri(readIriRef())
                                     : expandName(prefixes);
        return rdf::Term::literal(lexical, dt.value());
      }
      return rdf::Term::literal(lexical);
    }
    if ((c >= '0' && c <= '9') || c == '+' || c == '-' ||
        (c == '.' && peek(1) >= '0' && peek(1) <= '9')) {
      return readNumber();
    }
    if (consumeKeyword("true")) return rdf::Term::literal("true", rdf::xsd::kBoolean);
    if (consumeKeyword("false")) return rdf::Term::literal("false", rdf::xsd::kBoolean);
    if (c == 'a' && !rdf::isLocalNameChar(peek(1)) && peek(1) != ':') {
      get();
      return rdf::vocab::rdfType();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == ':') {
      return expandName(prefixes);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  rdf::Term expandName(const rdf::PrefixMap& prefixes) {
    std::size_t l = line_, col = column_;
    std::string name = readPrefixedName();
    try {
      return prefixes.expand(name);
    } catch (const UnresolvedPrefixError& e) {
      throw ParseError(e.what(), l, col);
    }
  }

 private:
  std::string readNameChars() {
    std::string out;
    while (!eof() && rdf::isLocalNameChar(peek())) {
      // A '.' only belongs to the name when followed by another name char.
      if (peek() == '.' && !(rdf::isLocalNameChar(peek(1)) && peek(1) != '.')) {
        break;
      }
      out.push_back(get());
    }
    return out;
  }

  std::uint32_t readHex(int n) {
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i) {
      if (eof()) fail("truncated \\u escape");
      char c = get();
      v <<= 4;
      if (c >= '0' && c <= '9') {
        v |= static_cast<std::uint32_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        v |= static_cast<std::uint32_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        v |= static_cast<std::uint32_t>(c - 'A' + 10);
      } else {
        fail("invalid hex digit in escape");
      }
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace morekg::serdes

#endif  // MOREKG_SERDES_SCANNER_HPP
