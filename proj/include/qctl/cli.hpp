// Copyright 2026 The qctl Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qctl::cli {

/// Exit status contract of the command-line tool.
enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2 };

/// Runs the `qctl` command line. `args` excludes the program name. Reports go
/// to `out`, diagnostics to `err`. When `timestamp` is empty the current UTC
/// time is used.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::string& timestamp = {});

}  // namespace qctl::cli
