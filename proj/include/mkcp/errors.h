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

#ifndef MKCP_ERRORS_H_
#define MKCP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mkcp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files or values.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An item, bin or block id that does not exist.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Operation used outside its supported objective/constraint class.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Raised by the grouping packer when placement proves an input inequality
// false.
class PackingError : public Error {
 public:
  using Error::Error;
};

// Oracle size limits.
class LimitError : public Error {
 public:
  using Error::Error;
};

// Something that must never happen did. Maps to CLI exit code 2.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace mkcp

#endif  // MKCP_ERRORS_H_
