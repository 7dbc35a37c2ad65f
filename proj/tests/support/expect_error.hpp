// Copyright 2026 The cdmpo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gtest/gtest.h>

#include "cdmpo/errors.hpp"

#define EXPECT_CDMPO_ERROR(statement, expected_code)                        \
  do {                                                                      \
    try {                                                                   \
      statement;                                                            \
      ADD_FAILURE() << "expected " << ::cdmpo::to_string(expected_code);    \
    } catch (const ::cdmpo::Error& e) {                                     \
      EXPECT_EQ(e.code(), expected_code) << e.what();                       \
    }                                                                       \
  } while (false)
