#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "cursed/error.hpp"

namespace cursed {

using Rational = mpq_class;

// Exact decimal or fraction parsing: "3", "-1/4", "0.125", "1e-3", "2.5E+2".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorKind::SyntaxError, "malformed number '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string num(text.substr(0, slash));
    std::string den(text.substr(slash + 1));
    auto is_int = [](const std::string& s, bool allow_sign) {
      size_t k = (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (k >= s.size()) return false;
      return std::all_of(s.begin() + k, s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!is_int(num, true) || !is_int(den, false)) throw fail();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0) throw fail();
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool any_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) throw fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) exp_negative = text[pos++] == '-';
    std::string exp_digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) exp_digits += text[pos++];
    if (exp_digits.empty() || exp_digits.size() > 6) throw fail();
    long e = std::stol(exp_digits);
    scale += exp_negative ? -e : e;
  }
  if (pos != text.size()) throw fail();
  mpz_class numerator(digits.empty() ? std::string("0") : digits);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational q = scale >= 0 ? Rational(numerator * power) : Rational(numerator, power);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  // Tolerance for best-response comparisons and normalization checks.
  static double tolerance() { return 1e-9; }
  static double normalization_tolerance() { return 1e-12; }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double to_double(double x) { return x; }
  static bool negligible(double x, double scale) { return std::abs(x) <= 1e-12 * scale; }
  static double magnitude(double x) { return std::abs(x); }
  static std::string to_string(double x) {
    char buf[64];
    for (int precision = 15; precision <= 17; ++precision) {
      std::snprintf(buf, sizeof buf, "%.*g", precision, x);
      if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
  }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational tolerance() { return 0; }
  static Rational normalization_tolerance() { return 0; }
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static bool negligible(const Rational& x, const Rational&) { return sgn(x) == 0; }
  static Rational magnitude(const Rational& x) { return abs(x); }
  static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <class S>
S from_rational(const Rational& q) {
  return scalar_traits<S>::from_rational(q);
}

template <class S>
S parse_scalar(std::string_view text) {
  return from_rational<S>(parse_rational(text));
}

template <class S>
double to_double(const S& x) {
  return scalar_traits<S>::to_double(x);
}

template <class S>
std::string scalar_to_string(const S& x) {
  return scalar_traits<S>::to_string(x);
}

template <class S>
bool approx_equal(const S& a, const S& b, const S& tol) {
  S d = a - b;
  return scalar_traits<S>::magnitude(d) <= tol;
}

// Truncated Laurent series in a tremble size eps:
//   value = eps^valuation * (c[0] + c[1] eps + ... + c[K-1] eps^(K-1)).
// Arithmetic keeps K terms of relative precision, which is enough to recover
// the eps -> 0 limit of ratios of nonnegative path weights exactly when S is
// exact.
template <class S>
class Series {
 public:
  static constexpr int kTerms = 8;

  Series() = default;
  Series(const S& constant) {  // NOLINT(google-explicit-constructor)
    coeffs_.push_back(constant);
    normalize();
  }

  static Series monomial(const S& coefficient, int order) {
    Series s;
    s.coeffs_.push_back(coefficient);
    s.valuation_ = order;
    s.normalize();
    return s;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int valuation() const { return valuation_; }
  const std::vector<S>& coefficients() const { return coeffs_; }

  // Coefficient of eps^k in the (truncated) expansion.
  S coefficient(int k) const {
    int idx = k - valuation_;
    if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return S(0);
    return coeffs_[idx];
  }

  S limit() const {
    if (is_zero() || valuation_ > 0) return S(0);
    if (valuation_ < 0) throw Error(ErrorKind::LimitDidNotStabilize, "series diverges as eps -> 0");
    return coeffs_.front();
  }

  double evaluate(double eps) const {
    double acc = 0;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) acc = acc * eps + to_double(coeffs_[k]);
    return acc * std::pow(eps, valuation_);
  }

  friend Series operator+(const Series& a, const Series& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Series out;
    out.valuation_ = std::min(a.valuation_, b.valuation_);
    out.coeffs_.assign(kTerms, S(0));
    std::vector<S> scale(kTerms, S(0));
    auto accumulate = [&](const Series& s) {
      int shift = s.valuation_ - out.valuation_;
      for (int k = 0; k < static_cast<int>(s.coeffs_.size()) && k + shift < kTerms; ++k) {
        out.coeffs_[k + shift] += s.coeffs_[k];
        scale[k + shift] = std::max(scale[k + shift], scalar_traits<S>::magnitude(s.coeffs_[k]));
      }
    };
    accumulate(a);
    accumulate(b);
    for (int k = 0; k < kTerms; ++k) {
      if (scalar_traits<S>::negligible(out.coeffs_[k], scale[k])) out.coeffs_[k] = S(0);
    }
    out.normalize();
    return out;
  }

  friend Series operator-(const Series& a) {
    Series out = a;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Series out;
    out.valuation_ = a.valuation_ + b.valuation_;
    int terms = std::min<int>(kTerms, static_cast<int>(a.coeffs_.size() + b.coeffs_.size()) - 1);
    out.coeffs_.assign(terms, S(0));
    for (int p = 0; p < static_cast<int>(a.coeffs_.size()); ++p) {
      for (int q = 0; q < static_cast<int>(b.coeffs_.size()) && p + q < terms; ++q) {
        out.coeffs_[p + q] += a.coeffs_[p] * b.coeffs_[q];
      }
    }
    out.normalize();
    return out;
  }

  friend Series operator/(const Series& a, const Series& b) {
    if (b.is_zero()) throw Error(ErrorKind::ZeroProbabilityObservation, "division by a zero series");
    if (a.is_zero()) return {};
    Series out;
    out.valuation_ = a.valuation_ - b.valuation_;
    std::vector<S> rem(kTerms, S(0));
    for (int k = 0; k < static_cast<int>(a.coeffs_.size()) && k < kTerms; ++k) rem[k] = a.coeffs_[k];
    out.coeffs_.assign(kTerms, S(0));
    for (int k = 0; k < kTerms; ++k) {
      S q = rem[k] / b.coeffs_[0];
      out.coeffs_[k] = q;
      for (int j = 0; j < static_cast<int>(b.coeffs_.size()) && k + j < kTerms; ++j) rem[k + j] -= q * b.coeffs_[j];
    }
    out.normalize();
    return out;
  }

  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

 private:
  void normalize() {
    size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == S(0)) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      valuation_ = 0;
      return;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(first));
    valuation_ += static_cast<int>(first);
    if (coeffs_.size() > static_cast<size_t>(kTerms)) coeffs_.resize(kTerms);
  }

  int valuation_ = 0;
  std::vector<S> coeffs_;
};

// Uniform zero test and limit over plain scalars and tremble series, so the
// belief machinery can be written once for both.
template <class P>
struct field_ops {
  static bool is_zero(const P& x) { return x == P(0); }
  static P limit(const P& x) { return x; }
};

template <class S>
struct field_ops<Series<S>> {
  static bool is_zero(const Series<S>& x) { return x.is_zero(); }
  static S limit(const Series<S>& x) { return x.limit(); }
};

template <class P>
bool is_zero(const P& x) {
  return field_ops<P>::is_zero(x);
}

}  // namespace cursed
