#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gsieve/errors.hpp"

namespace gsieve::toml {

/// Reader for the TOML subset used by experiment configs: `[table]` headers
/// (one level), `key = value` pairs with bare keys, basic strings, integers,
/// floats, booleans, and arrays (which may span lines). Comments start with
/// '#'. Inline tables, dotted keys, dates and literal strings are rejected.
/// Any error is a config_error that names the line.
class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  nlohmann::ordered_json parse() {
    nlohmann::ordered_json root = nlohmann::ordered_json::object();
    nlohmann::ordered_json* table = &root;
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') {
        ++pos_;
        skip_spaces();
        std::string name = bare_key();
        skip_spaces();
        expect(']');
        if (root.contains(name)) error("table [" + name + "] defined twice");
        root[name] = nlohmann::ordered_json::object();
        table = &root[name];
      } else {
        std::string key = bare_key();
        skip_spaces();
        expect('=');
        skip_spaces();
        if (table->contains(key)) error("duplicate key '" + key + "'");
        (*table)[key] = value();
      }
      end_of_line();
    }
    return root;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  [[noreturn]] void error(const std::string& what) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) line += s_[i] == '\n' ? 1 : 0;
    fail(Errc::config_error, "TOML line " + std::to_string(line) + ": " + what);
  }

  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!at_end() && peek() != '\n') ++pos_;
    }
  }

  void skip_blank_lines() {
    while (!at_end()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\r') ++pos_;
      if (peek() != '\n') return;
      ++pos_;
    }
  }

  // whitespace, comments and newlines inside arrays
  void skip_array_space() {
    while (!at_end()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        ++pos_;
      } else {
        return;
      }
    }
  }

  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (!at_end() && peek() != '\n') error("unexpected trailing characters");
  }

  std::string bare_key() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
    if (pos_ == start) error("expected a bare key");
    return std::string(s_.substr(start, pos_ - start));
  }

  nlohmann::ordered_json value() {
    const char c = peek();
    if (c == '"') return string_value();
    if (c == '[') return array_value();
    if (s_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (s_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) return number_value();
    error("unsupported value");
  }

  nlohmann::ordered_json string_value() {
    expect('"');
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') error("unterminated string");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (at_end()) error("unterminated escape");
      const char e = s_[pos_++];
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        default: error(std::string("unsupported escape \\") + e);
      }
    }
    return out;
  }

  nlohmann::ordered_json array_value() {
    expect('[');
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    skip_array_space();
    while (peek() != ']') {
      arr.push_back(value());
      skip_array_space();
      if (peek() == ',') {
        ++pos_;
        skip_array_space();
      } else if (peek() != ']') {
        error("expected ',' or ']' in array");
      }
    }
    ++pos_;
    return arr;
  }

  nlohmann::ordered_json number_value() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' || peek() == '-' ||
                         peek() == '.' || peek() == '_')) {
      ++pos_;
    }
    std::string tok;
    for (char c : s_.substr(start, pos_ - start)) {
      if (c != '_') tok.push_back(c);
    }
    if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
    const bool is_float = tok.find_first_of(".eE") != std::string::npos;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (is_float) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) error("malformed float '" + tok + "'");
      return v;
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) error("malformed integer '" + tok + "'");
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline nlohmann::ordered_json parse(std::string_view text) { return Parser(text).parse(); }

inline nlohmann::ordered_json load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::config_error, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace gsieve::toml
