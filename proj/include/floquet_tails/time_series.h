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

#ifndef FLOQUET_TAILS_TIME_SERIES_H
#define FLOQUET_TAILS_TIME_SERIES_H

#include <string>
#include <vector>

namespace ft {

/// (time step, value) pairs for one observable of one run.
struct TimeSeries {
    std::vector<double> t;
    std::vector<double> y;
    int num_qubits = 0;
    std::string state;
    std::string name;

    size_t size() const {
        return t.size();
    }
    /// Sub-series with window.first <= t <= window.second.
    TimeSeries windowed(double t_min, double t_max) const;
};

}  // namespace ft

#endif
