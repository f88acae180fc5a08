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

#include <stdexcept>
#include <string>

namespace medium {

class UnknownBlockError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

//! Raised when a numeric weight is requested for the longest-chain limit coefficient.
class LimitModeError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

//! Raised by strict comparison when the difference polynomial is of higher degree
//! than the root index and exactness can no longer be guaranteed.
class InexactComparisonError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace medium
