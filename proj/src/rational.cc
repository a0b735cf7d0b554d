// Copyright 2026 The mkcp-kit Authors
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

#include "mkcp/rational.h"

#include <cctype>
#include <cmath>
#include <string>

#include "mkcp/errors.h"

namespace mkcp {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class Pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const std::string original(text);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) {
      throw ParseError("malformed fraction '" + original + "'");
    }
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + original + "'");
    result = Rational(n, d);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!AllDigits(exp_text) || exp_text.size() > 6) {
        throw ParseError("malformed exponent in '" + original + "'");
      }
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string_view int_part = text, frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) {
      throw ParseError("malformed number '" + original + "'");
    }
    if ((!int_part.empty() && !AllDigits(int_part)) ||
        (!frac_part.empty() && !AllDigits(frac_part))) {
      throw ParseError("malformed number '" + original + "'");
    }
    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class mantissa(digits.empty() ? std::string("0") : digits);
    long scale = static_cast<long>(frac_part.size()) - exponent;
    if (scale >= 0) {
      result = Rational(mantissa, Pow10(static_cast<unsigned long>(scale)));
    } else {
      result = Rational(mantissa * Pow10(static_cast<unsigned long>(-scale)));
    }
    result.canonicalize();
  }
  return negative ? Rational(-result) : result;
}

Rational RationalFromDouble(double value) {
  if (!std::isfinite(value)) throw ParseError("non-finite number");
  return Rational(value);
}

std::string FormatRational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  mpz_class den = value.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return value.get_num().get_str() + "/" + value.get_den().get_str();

  unsigned long places = std::max(twos, fives);
  mpz_class scaled = value.get_num() * Pow10(places) / value.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

std::vector<double> ToDoubles(const std::vector<Rational>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const Rational& v : values) out.push_back(v.get_d());
  return out;
}

Rational FloorToGrid(double value, int bits) {
  double scaled = std::floor(std::ldexp(value, bits));
  mpz_class k;
  mpz_set_d(k.get_mpz_t(), scaled);
  mpz_class den = 1;
  den <<= bits;
  Rational r(k, den);
  r.canonicalize();
  return r;
}

}  // namespace mkcp
