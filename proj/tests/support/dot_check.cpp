#include "dot_check.hpp"

#include <cctype>
#include <set>
#include <stdexcept>

namespace stag::test {

namespace {

class dot_reader {
 public:
  explicit dot_reader(const std::string& s) : s_(s) {}

  void file() {
    skip();
    if (at_end()) fail("empty input");
    while (!at_end()) {
      graph();
      skip();
    }
  }

 private:
  void graph() {
    if (word() != "digraph") fail("expected 'digraph'");
    skip();
    if (peek() != '{') id();
    skip();
    expect('{');
    std::set<std::string> nodes;
    while (true) {
      skip();
      if (peek() == '}') {
        ++pos_;
        return;
      }
      std::string first = id();
      skip();
      if (first == "node" || first == "edge" || first == "graph") {
        attrs();
      } else if (peek() == '-') {
        expect('-');
        expect('>');
        skip();
        std::string second = id();
        if (!nodes.contains(first) || !nodes.contains(second)) fail("edge between undeclared nodes");
        skip();
        if (peek() == '[') attrs();
      } else {
        nodes.insert(first);
        if (peek() == '[') attrs();
      }
      skip();
      expect(';');
    }
  }

  void attrs() {
    expect('[');
    while (true) {
      skip();
      if (peek() == ']') {
        ++pos_;
        return;
      }
      id();
      skip();
      expect('=');
      skip();
      id();
      skip();
      if (peek() == ',') ++pos_;
    }
  }

  std::string id() {
    if (peek() == '"') return quoted();
    std::string w = word();
    if (w.empty()) fail("expected identifier");
    return w;
  }

  std::string word() {
    std::string w;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) w += s_[pos_++];
    return w;
  }

  std::string quoted() {
    expect('"');
    std::string w;
    while (true) {
      if (at_end()) fail("unterminated string");
      char c = s_[pos_++];
      if (c == '"') return w;
      if (c == '\\') {
        if (at_end()) fail("dangling escape");
        c = s_[pos_++];
      }
      w += c;
    }
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  bool at_end() const { return pos_ >= s_.size(); }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error(what + " at offset " + std::to_string(pos_));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

bool valid_dot(const std::string& text, std::string* why) {
  try {
    dot_reader(text).file();
    return true;
  } catch (const std::runtime_error& e) {
    if (why) *why = e.what();
    return false;
  }
}

}  // namespace stag::test
