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

#ifndef MKCP_INSTANCE_IO_H_
#define MKCP_INSTANCE_IO_H_

#include <string>
#include <string_view>

#include "mkcp/instance.h"

namespace mkcp {

// JSON instance files. Numbers are integers, decimal strings or "p/q"
// strings; all are parsed exactly. Throws ParseError with field context.
Instance LoadInstance(std::string_view text);
std::string SaveInstance(const Instance& instance);

// Solutions refer to items by label.
Solution LoadSolution(const Instance& instance, std::string_view text);
std::string SaveSolution(const Instance& instance, const Solution& solution);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace mkcp

#endif  // MKCP_INSTANCE_IO_H_
