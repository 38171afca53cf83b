// Copyright 2026 The mkpwc Authors
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

#ifndef MKPWC_CLI_HPP
#define MKPWC_CLI_HPP

#include <iosfwd>

namespace mkpwc::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;  // unreadable, unparsable or ill-stated instance
inline constexpr int kExitLpError = 3;
inline constexpr int kExitBadFlags = 4;

// Entry point behind the `mkpwc` executable. Subcommands: solve, bench, lp,
// gen, validate. Normal output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mkpwc::cli

#endif  // MKPWC_CLI_HPP
