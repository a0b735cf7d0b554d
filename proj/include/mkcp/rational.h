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

#ifndef MKCP_RATIONAL_H_
#define MKCP_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace mkcp {

// Weights, capacities and objective data are exact. Floating point only
// appears inside LP solves and sampling.
using Rational = mpq_class;

// Accepts "12", "-3", "0.125", "1.5e-3" and "3/8".
Rational ParseRational(std::string_view text);

// Exact value of a finite double.
Rational RationalFromDouble(double value);

// Integers print as integers, finite decimals as decimals, everything else
// as "p/q". ParseRational(FormatRational(x)) == x.
std::string FormatRational(const Rational& value);

inline double ToDouble(const Rational& value) { return value.get_d(); }

std::vector<double> ToDoubles(const std::vector<Rational>& values);

// Largest k * 2^-bits with k integer that does not exceed value.
Rational FloorToGrid(double value, int bits);

}  // namespace mkcp

#endif  // MKCP_RATIONAL_H_
