/*
 * Copyright 2026 The Woven Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <string_view>

namespace woven::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// Exit codes shared by every command.
enum Exit : int {
    kOk = 0,        ///< in W, woven, recovered, certified
    kNegative = 1,  ///< not in W, not woven, recovery impossible, not certified
    kUndecided = 2, ///< inconclusive at the available precision
    kUsage = 64,    ///< bad flags, unreadable or malformed input, size limits
};

/// Runs the command line; the JSON report goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace woven::cli
