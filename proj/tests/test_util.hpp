// Copyright 2026 The ppovm Authors
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

#ifndef PPOVM_TESTS_TEST_UTIL_HPP
#define PPOVM_TESTS_TEST_UTIL_HPP

#include <optional>

#include "ppovm/error.hpp"

// Error code thrown by f(), or nullopt if it returned normally.
template <class F>
std::optional<ppovm::ErrorCode> thrown_code(F&& f) {
  try {
    f();
  } catch (const ppovm::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define EXPECT_ERROR_CODE(expr, ecode) EXPECT_EQ(thrown_code([&] { (void)(expr); }), ecode)

#endif  // PPOVM_TESTS_TEST_UTIL_HPP
