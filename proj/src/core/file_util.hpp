// core/file_util.hpp

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

#ifndef REVKIT_CORE_FILE_UTIL_HPP_
#define REVKIT_CORE_FILE_UTIL_HPP_

#include <cstdio>
#include <string>

#include "core/errors.hpp"

namespace revkit {

// Every writer in the library goes through the same temp-then-rename dance so
// that a crash mid-write, or two processes racing on the same output, never
// leaves a half-written file under the final name.

inline std::string temp_write_name(const std::string& path) {
  return path + ".tmp";
}

inline void commit_temp_file(const std::string& tmp, const std::string& path) {
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot move '" + tmp + "' into place as '" + path + "'");
  }
}

}  // namespace revkit

#endif  // REVKIT_CORE_FILE_UTIL_HPP_
