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

#ifndef MKCP_BENCH_H_
#define MKCP_BENCH_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mkcp {

struct BenchRow {
  std::string suite;
  int case_index = 0;
  uint64_t seed = 0;
  double value = 0.0;
  double reference = 0.0;
  double ratio = 1.0;  // value / reference, 1 when the reference is 0
  double runtime_ms = 0.0;
};

// Suites: tiny-exact, greedy, uniform, block-lp.
std::vector<std::string> BenchSuites();
// Smallest ratio the suite guarantees (0 when it only reports).
double BenchFloor(std::string_view suite);
// Throws PreconditionError for an unknown suite.
std::vector<BenchRow> RunBench(std::string_view suite, uint64_t seed, int workers = 1);

std::string BenchCsvHeader();
std::string BenchCsvLine(const BenchRow& row);

}  // namespace mkcp

#endif  // MKCP_BENCH_H_
