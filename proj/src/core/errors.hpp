// core/errors.hpp

// Copyright 2026  The revkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef REVKIT_CORE_ERRORS_HPP
#define REVKIT_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace revkit {

// Validation failures (bad arguments, violated preconditions) are reported as
// std::invalid_argument. Data- or environment-dependent failures use the
// classes below so callers can map them to distinct exit/status codes.

// Runtime failure on otherwise valid inputs (e.g. a decay curve that never
// reaches the fit range).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File and OS level failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace revkit

#endif  // REVKIT_CORE_ERRORS_HPP
