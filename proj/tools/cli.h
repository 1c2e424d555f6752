/* Copyright 2026 The LRP Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef LRP_TOOLS_CLI_H_
#define LRP_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace lrp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNothingEvaluable = 3;

// Runs the `lrp` command line. Data goes to `out` or to files, diagnostics
// and warnings to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Parses "lo:step:hi" or a comma separated list.
std::vector<double> parse_tau_list(const std::string& text);

}  // namespace lrp::cli

#endif  // LRP_TOOLS_CLI_H_
