#include "gabnc/padic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "gabnc/errors.hpp"

namespace gabnc {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t ipow(std::int64_t p, int k) {
  if (k < 0) throw std::invalid_argument("negative exponent in ipow");
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i)
    if (__builtin_mul_overflow(r, p, &r)) throw MathError("integer overflow in p-adic arithmetic");
  return r;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw MathError("integer overflow in p-adic arithmetic");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw MathError("integer overflow in p-adic arithmetic");
  return r;
}

}  // namespace

PAdicRational::PAdicRational(int p, std::int64_t num, int exp) : p_(p), num_(num), exp_(exp) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (num_ % p_ == 0) {
    num_ /= p_;
    ++exp_;
  }
}

PAdicRational PAdicRational::from_rational(int p, const Rational& r) {
  std::int64_t den = r.denominator();
  int k = 0;
  while (den % p == 0) {
    den /= p;
    ++k;
  }
  if (den != 1) throw std::invalid_argument("denominator is not a power of p");
  return {p, r.numerator(), -k};
}

PAdicRational PAdicRational::parse(int p, const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    const std::int64_t num = std::stoll(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) throw std::invalid_argument("trailing");
    std::int64_t den = 1;
    if (slash != std::string::npos) {
      den = std::stoll(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1 || den <= 0) throw std::invalid_argument("bad denominator");
    }
    return from_rational(p, Rational(num, den));
  } catch (const MathError&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("not an element of Z[1/" + std::to_string(p) + "]: " + text);
  }
}

Rational PAdicRational::value() const {
  if (exp_ >= 0) return Rational(checked_mul(num_, ipow(p_, exp_)));
  return Rational(num_, ipow(p_, -exp_));
}

double PAdicRational::to_double() const { return static_cast<double>(num_) * std::pow(p_, exp_); }

std::string PAdicRational::to_string() const {
  const Rational v = value();
  return v.denominator() == 1 ? std::to_string(v.numerator())
                              : std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

PAdicRational PAdicRational::operator+(const PAdicRational& o) const {
  if (o.p_ != p_) throw std::invalid_argument("adding elements of Z[1/p] for different p");
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const int e = std::min(exp_, o.exp_);
  const std::int64_t a = checked_mul(num_, ipow(p_, exp_ - e));
  const std::int64_t b = checked_mul(o.num_, ipow(p_, o.exp_ - e));
  return {p_, checked_add(a, b), e};
}

PAdicRational PAdicRational::operator-(const PAdicRational& o) const { return *this + (-o); }

PAdicRational PAdicRational::operator*(const PAdicRational& o) const {
  if (o.p_ != p_) throw std::invalid_argument("multiplying elements of Z[1/p] for different p");
  if (is_zero() || o.is_zero()) return {p_, 0, 0};
  return {p_, checked_mul(num_, o.num_), exp_ + o.exp_};
}

Rational padic_abs(const PAdicRational& x) {
  if (x.is_zero()) return Rational(0);
  if (x.exp() >= 0) return Rational(1, ipow(x.p(), x.exp()));
  return Rational(ipow(x.p(), -x.exp()));
}

bool ultrametric_check(const PAdicRational& x, const PAdicRational& y) {
  return padic_abs(x + y) <= std::max(padic_abs(x), padic_abs(y));
}

Rational frac_part(const PAdicRational& x) {
  if (x.is_zero() || x.exp() >= 0) return Rational(0);
  const std::int64_t m = ipow(x.p(), -x.exp());
  return Rational(((x.num() % m) + m) % m, m);
}

Complex solenoid_character(double y_inf, const PAdicRational& y_p, double x_inf, const PAdicRational& x_p) {
  const double frac = boost::rational_cast<double>(frac_part(x_p * y_p));
  return std::polar(1.0, 2.0 * std::numbers::pi * (x_inf * y_inf - frac));
}

}  // namespace gabnc
