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

#ifndef FLOQUET_TAILS_TAILFIT_H
#define FLOQUET_TAILS_TAILFIT_H

#include <stdexcept>
#include <string>
#include <vector>

#include "floquet_tails/time_series.h"

namespace ft {

class FitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct FitWindow {
    double t_min = 20.0;
    double t_max = 300.0;
};

/// f_n(t) = c0/N + c1 t^-1/2 + c2 t^-1 + alpha_n t^-3/2, shared c0/N, c1, c2.
struct TailFitResult {
    double c0_over_n = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    std::vector<double> alpha;
    double residual_rms = 0.0;
    /// max(y) - min(y) over every series on the window.
    double data_range = 0.0;
    FitWindow window;
    int points = 0;

    double model(size_t series, double t) const;
};

/// Stacked linear least squares. Throws FitError when the design matrix is rank
/// deficient or a series has fewer than 8 points in the window.
TailFitResult fit_tail_joint(const std::vector<TimeSeries> &series, FitWindow window = {});

/// y = a exp(-t/tau) + b 2^-N/2.
struct ExpFitResult {
    double a = 0.0;
    double tau = 0.0;
    double b = 0.0;
    double floor = 0.0;  // b 2^-N/2
    double residual_rms = 0.0;
    /// Amplitude indistinguishable from zero, so tau is not identified.
    bool degenerate = false;
};

struct ExpFitOptions {
    double tau_min = 0.5;
    double tau_max = 100.0;
    int grid_points = 200;
    /// Golden-section refinement around the best grid point; off gives the raw grid optimum.
    bool refine = true;
    double t_min = 0.0;
    double t_max = 1e300;
};

/// Throws FitError on non-positive data or fewer than 8 points.
ExpFitResult fit_exp_floor(const TimeSeries &series, int num_qubits, const ExpFitOptions &opts = {});

struct SlopeResult {
    double slope = 0.0;
    double slope_stderr = 0.0;
    int points = 0;
    /// Fraction of window points dropped next to sign changes.
    double masked_fraction = 0.0;
};

/// OLS of log|y| on log t. Points adjacent to a sign change are masked; an exact zero in
/// the window throws FitError.
SlopeResult loglog_exponent(const TimeSeries &series, FitWindow window = {});

}  // namespace ft

#endif
