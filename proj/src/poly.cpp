#include "caustic_bench/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace caustics {

void Poly1::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Poly1 Poly1::derivative() const {
  if (c_.size() <= 1) return Poly1();
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return Poly1(std::move(d));
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  if (c != Rational(0)) p.terms_.push_back({Expo(nvars, 0), c});
  return p;
}

Poly Poly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw std::domain_error("variable index out of range");
  Poly p(nvars);
  Expo e(nvars, 0);
  e[index] = 1;
  p.terms_.push_back({e, Rational(1)});
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_[0].first.begin(), terms_[0].first.end(),
                      [](std::uint8_t v) { return v == 0; }));
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw std::domain_error("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].second;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

double Poly::eval(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::domain_error("point dimension mismatch");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (int v = 0; v < nvars_; ++v) {
      for (int k = 0; k < e[v]; ++k) t *= point[v];
    }
    acc += t;
  }
  return acc;
}

Poly Poly::derivative(int var) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Expo d = e;
    d[var] -= 1;
    out.terms_.push_back({d, c * Rational(e[var])});
  }
  out.sort_and_merge();
  return out;
}

Poly1 Poly::restrict_to_var(int var, std::span<const double> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::domain_error("point dimension mismatch");
  std::vector<double> coeffs(degree_in(var) + 1, 0.0);
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (int v = 0; v < nvars_; ++v) {
      if (v == var) continue;
      for (int k = 0; k < e[v]; ++k) t *= point[v];
    }
    coeffs[e[var]] += t;
  }
  return Poly1(std::move(coeffs));
}

void Poly::add_term(const Expo& e, const Rational& c) {
  terms_.push_back({e, c});
}

void Poly::sort_and_merge() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Expo, Rational>> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(std::move(t));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto& t) { return t.second == Rational(0); }),
               merged.end());
  terms_ = std::move(merged);
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ != o.nvars_) throw std::domain_error("polynomial arity mismatch");
  for (const auto& t : o.terms_) terms_.push_back(t);
  sort_and_merge();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ != o.nvars_) throw std::domain_error("polynomial arity mismatch");
  for (const auto& t : o.terms_) terms_.push_back({t.first, -t.second});
  sort_and_merge();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (nvars_ != o.nvars_) throw std::domain_error("polynomial arity mismatch");
  Poly out(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Expo e(nvars_);
      for (int v = 0; v < nvars_; ++v) {
        int s = ea[v] + eb[v];
        if (s > 255) throw std::overflow_error("monomial exponent overflow");
        e[v] = static_cast<std::uint8_t>(s);
      }
      out.terms_.push_back({e, ca * cb});
    }
  }
  out.sort_and_merge();
  *this = std::move(out);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == Rational(0)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw std::domain_error("negative polynomial power");
  Poly out = Poly::constant(nvars_, Rational(1));
  Poly base = *this;
  while (k > 0) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

Poly Poly::remap_variables(int new_nvars, std::span<const int> mapping) const {
  if (static_cast<int>(mapping.size()) != nvars_) throw std::domain_error("mapping size mismatch");
  Poly out(new_nvars);
  for (const auto& [e, c] : terms_) {
    Expo ne(new_nvars, 0);
    for (int v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      if (mapping[v] < 0 || mapping[v] >= new_nvars) {
        throw std::domain_error("remap drops a variable that occurs in the polynomial");
      }
      ne[mapping[v]] = e[v];
    }
    out.terms_.push_back({ne, c});
  }
  out.sort_and_merge();
  return out;
}

std::string Poly::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  // Print highest-degree terms first; terms_ is sorted ascending.
  for (std::size_t idx = terms_.size(); idx-- > 0;) {
    const auto& [e, c] = terms_[idx];
    std::string mono;
    for (int v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    std::string coeff = c.str();
    std::string piece;
    if (mono.empty()) {
      piece = coeff;
    } else if (c == Rational(1)) {
      piece = mono;
    } else if (c == Rational(-1)) {
      piece = "-" + mono;
    } else {
      piece = coeff + "*" + mono;
    }
    if (out.empty()) {
      out = piece;
    } else if (!piece.empty() && piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

namespace {

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ >= s_.size()) return {Token::End, "", i_};
    std::size_t start = i_;
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return {Token::Number, s_.substr(start, i_ - start), start};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      return {Token::Ident, s_.substr(start, i_ - start), start};
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      ++i_;
      return {Token::Op, std::string(1, c), start};
    }
    throw std::invalid_argument("phase parse error at position " + std::to_string(start) +
                                ": unexpected character '" + std::string(1, c) + "'");
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

// The parser works over polynomials in a provisional variable space
// (x1..x32, a1..a8) and compacts afterwards.
constexpr int kMaxX = 32;
constexpr int kMaxA = 8;
constexpr int kScratchVars = kMaxX + kMaxA;

class Parser {
 public:
  explicit Parser(const std::string& s) : text_(s), lex_(s) { advance(); }

  Poly parse_expression() {
    Poly v = parse_term();
    while (cur_.kind == Token::Op && (cur_.text == "+" || cur_.text == "-")) {
      bool plus = cur_.text == "+";
      advance();
      Poly rhs = parse_term();
      if (plus) v += rhs; else v -= rhs;
    }
    return v;
  }

  void expect_end() const {
    if (cur_.kind != Token::End) fail(cur_.pos, "unexpected trailing input");
  }

  int max_x = 0;
  int max_a = 0;

 private:
  [[noreturn]] void fail(std::size_t pos, const std::string& msg) const {
    throw std::invalid_argument("phase parse error at position " + std::to_string(pos) + ": " +
                                msg);
  }

  void advance() { cur_ = lex_.next(); }

  Poly parse_term() {
    Poly v = parse_factor();
    while (cur_.kind == Token::Op && (cur_.text == "*" || cur_.text == "/")) {
      bool mul = cur_.text == "*";
      std::size_t pos = cur_.pos;
      advance();
      Poly rhs = parse_factor();
      if (mul) {
        v *= rhs;
      } else {
        if (!rhs.is_constant()) fail(pos, "division by a non-constant expression");
        Rational d = rhs.constant_value();
        if (d == Rational(0)) fail(pos, "division by zero");
        v *= Rational(1) / d;
      }
    }
    return v;
  }

  Poly parse_factor() {
    bool negate = false;
    while (cur_.kind == Token::Op && (cur_.text == "+" || cur_.text == "-")) {
      if (cur_.text == "-") negate = !negate;
      advance();
    }
    Poly v = parse_primary();
    if (cur_.kind == Token::Op && cur_.text == "^") {
      std::size_t pos = cur_.pos;
      advance();
      if (cur_.kind != Token::Number) fail(pos, "exponent must be a non-negative integer");
      long k = std::stol(cur_.text);
      advance();
      v = v.pow(static_cast<int>(k));
    }
    if (negate) v *= Rational(-1);
    return v;
  }

  Poly parse_primary() {
    if (cur_.kind == Token::Number) {
      Rational c(std::stoll(cur_.text));
      advance();
      return Poly::constant(kScratchVars, c);
    }
    if (cur_.kind == Token::Ident) {
      int index = resolve_variable(cur_.text, cur_.pos);
      advance();
      return Poly::variable(kScratchVars, index);
    }
    if (cur_.kind == Token::Op && cur_.text == "(") {
      advance();
      Poly v = parse_expression();
      if (!(cur_.kind == Token::Op && cur_.text == ")")) fail(cur_.pos, "expected ')'");
      advance();
      return v;
    }
    fail(cur_.pos, "expected a number, variable, or '('");
  }

  int resolve_variable(const std::string& name, std::size_t pos) {
    if (name == "a") {
      max_a = std::max(max_a, 1);
      return kMaxX;
    }
    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'a')) {
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
          fail(pos, "unknown variable '" + name + "'");
      }
      int idx = std::stoi(name.substr(1));
      if (idx < 1) fail(pos, "variable indices start at 1");
      if (name[0] == 'x') {
        if (idx > kMaxX) fail(pos, "x-variable index too large");
        max_x = std::max(max_x, idx);
        return idx - 1;
      }
      if (idx > kMaxA) fail(pos, "a-variable index too large");
      max_a = std::max(max_a, idx);
      return kMaxX + idx - 1;
    }
    fail(pos, "unknown variable '" + name + "'");
  }

  const std::string& text_;
  Lexer lex_;
  Token cur_{Token::End, "", 0};
};

}  // namespace

ParsedPhaseExpr parse_phase_expr(const std::string& text) {
  Parser parser(text);
  Poly scratch = parser.parse_expression();
  parser.expect_end();

  int n_x = parser.max_x;
  int n_alpha = std::max(parser.max_a, 1);

  // Compact the scratch layout (x1..x32, a1..a8) to [x1..x_nx, a1..a_nalpha].
  std::vector<int> mapping(kScratchVars, -1);
  for (int i = 0; i < n_x; ++i) mapping[i] = i;
  for (int i = 0; i < n_alpha; ++i) mapping[kMaxX + i] = n_x + i;

  ParsedPhaseExpr out;
  out.poly = scratch.remap_variables(n_x + n_alpha, mapping);
  out.n_x = n_x;
  out.n_alpha = n_alpha;
  return out;
}

}  // namespace caustics
