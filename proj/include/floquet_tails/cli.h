// Copyright 2026 The floquet-tails Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLOQUET_TAILS_CLI_H
#define FLOQUET_TAILS_CLI_H

namespace ft {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

/// Entry point of the ftails tool: evolve, classify, sigma-delta, fit-tail, fit-exp,
/// slope, hydro-spde, hydro-analytic, verify, export.
int run_cli(int argc, const char *const *argv);

}  // namespace ft

#endif
