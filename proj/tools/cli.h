// Copyright 2026 The soaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOAF_TOOLS_CLI_H_
#define SOAF_TOOLS_CLI_H_

#include <ostream>

namespace soaf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Runs the soaf command line. Returns the process exit code: 0 on success,
// 1 on runtime failure, 2 on usage or validation errors. Seeds default to
// the SOAF_SEED environment variable when --seed is absent.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

const char* ToolVersion();

}  // namespace soaf::cli

#endif  // SOAF_TOOLS_CLI_H_
