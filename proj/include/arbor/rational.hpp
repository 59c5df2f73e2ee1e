// Copyright 2026 The Arbor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace arbor {

// Exact rationals. Always kept canonical (gcd-reduced, positive denominator).
using Rational = mpq_class;

// "num/den", with the denominator always written, e.g. "0/1", "1/5".
std::string to_string(const Rational& value);

// Accepts "n" or "n/d". Throws arbor::Error(kParse) on malformed input or a
// zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace arbor
