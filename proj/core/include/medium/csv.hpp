/*
   Copyright 2026 The Medium Simulator Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace medium {

//! Shortest round-trip decimal form, independent of the global locale.
[[nodiscard]] std::string format_number(double value);
[[nodiscard]] std::string format_number(std::uint64_t value);
[[nodiscard]] std::string format_number(std::int64_t value);

//! Quotes a CSV field if it contains a comma, quote or newline.
[[nodiscard]] std::string csv_field(std::string_view text);

}  // namespace medium
