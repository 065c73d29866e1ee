#include "mtlambda/pattern.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace mtlambda {

Integer q_value(std::uint64_t p, long m) {
  if (m < 0) throw std::invalid_argument("q_m: negative index");
  // p^{m-1} - p^{m-2} + ... down to p^0 (m even) or p^1 (m odd).
  const Integer pz(static_cast<unsigned long>(p));
  Integer total = 0;
  const long last = m % 2 == 0 ? 0 : 1;
  int sign = 1;
  for (long e = m - 1; e >= last; --e) {
    total += sign * ipow(pz, static_cast<unsigned long>(e));
    sign = -sign;
  }
  return total;
}

namespace {

std::string normalize(std::string_view in) {
  std::string out;
  for (std::size_t i = 0; i < in.size();) {
    // U+2212 minus, U+00B7 middle dot, U+22C5 dot operator
    if (in.compare(i, 3, "\xE2\x88\x92") == 0) {
      out += '-';
      i += 3;
    } else if (in.compare(i, 2, "\xC2\xB7") == 0) {
      out += '*';
      i += 2;
    } else if (in.compare(i, 3, "\xE2\x8B\x85") == 0) {
      out += '*';
      i += 3;
    } else if (in.compare(i, 5, "\\cdot") == 0) {
      out += '*';
      i += 5;
    } else if (in[i] == '$') {
      ++i;
    } else {
      out += in[i++];
    }
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view s, std::uint64_t p, long m) : s_(s), p_(p), m_(m) {}

  Integer parse_all() {
    Integer v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw PatternError("pattern: " + what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'm' || c == 'p' || c == 'q' || c == '(';
  }

  Integer expr() {
    Integer v;
    if (eat('-')) {
      v = -term();
    } else {
      eat('+');
      v = term();
    }
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Integer term() {
    Integer v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (at_factor_start()) {
        v *= factor();
      } else {
        return v;
      }
    }
  }

  Integer factor() {
    Integer base = atom();
    if (!eat('^')) return base;
    Integer e;
    if (eat('{')) {
      e = expr();
      if (!eat('}')) fail("expected '}'");
    } else {
      e = atom();
    }
    if (e < 0) fail("negative exponent");
    if (!e.fits_ulong_p()) fail("exponent too large");
    return ipow(base, e.get_ui());
  }

  Integer atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Integer(std::string(s_.substr(start, pos_ - start)));
    }
    if (c == '(') {
      ++pos_;
      Integer v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'q') {
      ++pos_;
      if (!eat('_')) fail("expected '_' after q");
      Integer idx;
      if (eat('{')) {
        idx = expr();
        if (!eat('}')) fail("expected '}'");
      } else {
        idx = atom();
      }
      if (!idx.fits_slong_p() || idx < 0) fail("q index out of range");
      return q_value(p_, idx.get_si());
    }
    if (c == 'm' || c == 'p') {
      ++pos_;
      if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) fail("unknown identifier");
      return c == 'm' ? Integer(m_) : Integer(static_cast<unsigned long>(p_));
    }
    fail("unknown token '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::uint64_t p_;
  long m_;
  std::size_t pos_ = 0;
};

struct Branch {
  std::string body;
  std::optional<int> parity;  // 0 even, 1 odd
};

std::vector<Branch> split_branches(const std::string& text) {
  std::vector<Branch> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = text.find(';', start);
    std::string part = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    Branch b;
    // A trailing "(m even)" / "(m odd)" tag, tolerant of spacing.
    const std::size_t open = part.rfind('(');
    if (open != std::string::npos) {
      std::string tag;
      for (char ch : part.substr(open)) {
        if (!std::isspace(static_cast<unsigned char>(ch))) tag += ch;
      }
      if (tag == "(meven)" || tag == "(odd)" || tag == "(modd)" || tag == "(even)") {
        b.parity = tag.find("even") != std::string::npos ? 0 : 1;
        part.erase(open);
      }
    }
    b.body = part;
    bool blank = true;
    for (char ch : part) blank = blank && std::isspace(static_cast<unsigned char>(ch));
    if (blank) throw PatternError("pattern: empty branch in \"" + text + "\"");
    out.push_back(std::move(b));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

}  // namespace

Integer predict_lambda(std::string_view pattern, std::uint64_t p, long m) {
  const std::string text = normalize(pattern);
  const std::vector<Branch> branches = split_branches(text);
  const int parity = static_cast<int>(((m % 2) + 2) % 2);
  for (const Branch& b : branches) {
    if (!b.parity || *b.parity == parity) return Parser(b.body, p, m).parse_all();
  }
  throw PatternError("pattern: no branch for m = " + std::to_string(m) + " in \"" + text + "\"");
}

bool pattern_is_total(std::string_view pattern) {
  const std::vector<Branch> branches = split_branches(normalize(pattern));
  bool even = false, odd = false;
  for (const Branch& b : branches) {
    if (!b.parity) return true;
    (*b.parity == 0 ? even : odd) = true;
  }
  return even && odd;
}

}  // namespace mtlambda
