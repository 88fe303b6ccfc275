#pragma once

// Multivariate polynomials with exact rational coefficients, plus a plain-text
// parser for phase expressions like "a^3 + x1*a + x2".  Evaluation happens in
// double precision over a fixed monomial order, so results are reproducible
// bit for bit.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "caustic_bench/rational.hpp"

namespace caustics {

// Univariate polynomial with double coefficients (ascending powers).
// This is the workhorse for stationary-point search and grid counting.
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<double>& coeffs() const { return c_; }

  double eval(double t) const {
    double v = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * t + c_[i];
    return v;
  }
  Poly1 derivative() const;

 private:
  void trim();
  std::vector<double> c_;
};

class Poly {
 public:
  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int index);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  int total_degree() const;
  int degree_in(int var) const;

  double eval(std::span<const double> point) const;
  Poly derivative(int var) const;

  // Restrict to a single variable: all other coordinates are frozen at
  // `point` (the entry at `var` is ignored).
  Poly1 restrict_to_var(int var, std::span<const double> point) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  Poly pow(int k) const;

  // Re-index variables: mapping[old] = new index, or -1 if the old variable
  // must not occur.  Throws if a dropped variable is present.
  Poly remap_variables(int new_nvars, std::span<const int> mapping) const;

  std::string str(std::span<const std::string> names) const;

 private:
  using Expo = std::vector<std::uint8_t>;
  void add_term(const Expo& e, const Rational& c);
  void sort_and_merge();

  int nvars_;
  std::vector<std::pair<Expo, Rational>> terms_;  // sorted lexicographically
};

struct ParsedPhaseExpr {
  Poly poly;   // variables ordered x1..x_nx, a1..a_nalpha
  int n_x = 0;
  int n_alpha = 0;
};

// Parses the phase grammar: variables x1..xN and a (alias a1) or a1..aK,
// integer coefficients, rational constants via '/', operators + - * / ^ and
// parentheses with the usual precedence.  Throws std::invalid_argument with
// the 0-based character position on malformed input.
ParsedPhaseExpr parse_phase_expr(const std::string& text);

}  // namespace caustics
