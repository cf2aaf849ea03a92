// Copyright 2026 The SoftModes Authors.
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

#ifndef SOFTMODES_CLI_HPP_
#define SOFTMODES_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace softmodes {

// Entry point of the `softmodes` command line tool. args[0] is the program
// name. Returns the process exit code; diagnostics go to `err`.
//
//   cluster INPUT.csv      run SoftModes / k-modes / k-means on a CSV file
//   generate bbm|ccm OUT   sample a synthetic labeled dataset
//   evaluate               score a prediction against ground truth
//   field                  rounding displacement field on the 2-simplex
//   experiment             run a JSON-described sweep
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace softmodes

#endif  // SOFTMODES_CLI_HPP_
