#pragma once

// Exact arithmetic on Z[1/p] and the pieces of Q_p that it sees.

#include <cstdint>
#include <string>
#include <vector>

#include "gabnc/lca.hpp"

namespace gabnc {

/// num * p^exp with p not dividing num (num = 0 has exp = 0).
class PAdicRational {
 public:
  PAdicRational(int p, std::int64_t num, int exp = 0);
  /// Throws std::invalid_argument unless the denominator is a power of p.
  static PAdicRational from_rational(int p, const Rational& r);
  static PAdicRational parse(int p, const std::string& text);  // "3/4", "-5", "12"

  int p() const { return p_; }
  std::int64_t num() const { return num_; }
  int exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  /// p-adic valuation; undefined for 0.
  int valuation() const { return exp_; }

  Rational value() const;
  double to_double() const;
  std::string to_string() const;

  PAdicRational operator+(const PAdicRational& o) const;
  PAdicRational operator-(const PAdicRational& o) const;
  PAdicRational operator*(const PAdicRational& o) const;
  PAdicRational operator-() const { return {p_, -num_, exp_}; }

  friend bool operator==(const PAdicRational&, const PAdicRational&) = default;

 private:
  int p_;
  std::int64_t num_;
  int exp_;
};

/// p^{-exp}; |0|_p = 0.
Rational padic_abs(const PAdicRational& x);
/// |x + y|_p <= max(|x|_p, |y|_p).
bool ultrametric_check(const PAdicRational& x, const PAdicRational& y);
/// {x}_p in [0, 1): the part of x with negative powers of p.
Rational frac_part(const PAdicRational& x);
/// x in Z_p, i.e. |x|_p <= 1.
inline bool in_padic_integers(const PAdicRational& x) { return x.is_zero() || x.exp() >= 0; }

/// exp(2 pi i (x_inf y_inf - {x_p y_p}_p)).
Complex solenoid_character(double y_inf, const PAdicRational& y_p, double x_inf, const PAdicRational& x_p);

bool is_prime(int p);
/// p^k with overflow checks.
std::int64_t ipow(std::int64_t p, int k);

}  // namespace gabnc
