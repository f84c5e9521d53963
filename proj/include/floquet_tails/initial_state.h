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

#ifndef FLOQUET_TAILS_INITIAL_STATE_H
#define FLOQUET_TAILS_INITIAL_STATE_H

#include <array>
#include <string>
#include <string_view>

namespace ft {

enum class InitialStateId {
    Staggered,        // up-down Neel pattern along z, up on site 0
    XPolarized,       // every spin along +x
    CurrentCarrying,  // spins rotate +x, +y, -x, -y around the chain
};

constexpr std::array<InitialStateId, 3> kAllInitialStates = {
    InitialStateId::Staggered, InitialStateId::XPolarized, InitialStateId::CurrentCarrying};

/// Short names used on the command line and in file names: staggered, xpol, current.
std::string_view state_name(InitialStateId id);
InitialStateId state_from_name(std::string_view name);

/// Translation period shared by the state and the circuit (2 or 4 sites).
int state_period(InitialStateId id);

}  // namespace ft

#endif
