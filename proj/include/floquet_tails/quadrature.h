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

#ifndef FLOQUET_TAILS_QUADRATURE_H
#define FLOQUET_TAILS_QUADRATURE_H

#include <functional>
#include <stdexcept>
#include <string>

namespace ft {

/// Adaptive quadrature (GSL QAG family) failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
   public:
    QuadratureError(const std::string &what, double value, double abserr)
        : std::runtime_error(what), value(value), abserr(abserr) {}
    double value;
    double abserr;
};

struct QuadratureOptions {
    double epsabs = 0.0;
    double epsrel = 1e-10;
    size_t limit = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double abserr = 0.0;
};

using Integrand = std::function<double(double)>;

QuadratureResult integrate(const Integrand &f, double lo, double hi, const QuadratureOptions &opts = {});
/// [lo, inf).
QuadratureResult integrate_to_infinity(const Integrand &f, double lo, const QuadratureOptions &opts = {});
/// (-inf, inf).
QuadratureResult integrate_real_line(const Integrand &f, const QuadratureOptions &opts = {});

}  // namespace ft

#endif
