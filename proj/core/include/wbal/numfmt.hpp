// Copyright 2026 The wbal Authors
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

#ifndef WBAL_NUMFMT_HPP_
#define WBAL_NUMFMT_HPP_

#include <string>
#include <string_view>

namespace wbal {

// Shortest decimal that parses back to the identical double.
std::string format_real(double value);

// Strict decimal parse of a whole token; throws Errc::ParseError.
double parse_real(std::string_view token);

long long parse_integer(std::string_view token);

}  // namespace wbal

#endif  // WBAL_NUMFMT_HPP_
