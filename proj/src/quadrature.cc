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

#include "floquet_tails/quadrature.h"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>

namespace ft {

namespace {

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace *w) const {
        gsl_integration_workspace_free(w);
    }
};

double trampoline(double x, void *params) {
    return (*static_cast<const Integrand *>(params))(x);
}

enum class Range { Finite, Upper, Full };

QuadratureResult run(const Integrand &f, double lo, double hi, Range range, const QuadratureOptions &opts) {
    static const bool handler_off = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)handler_off;

    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(opts.limit));
    gsl_function fn;
    fn.function = &trampoline;
    fn.params = const_cast<Integrand *>(&f);
    QuadratureResult r;
    int status = 0;
    switch (range) {
        case Range::Finite:
            status = gsl_integration_qag(&fn, lo, hi, opts.epsabs, opts.epsrel, opts.limit, GSL_INTEG_GAUSS61,
                                         ws.get(), &r.value, &r.abserr);
            break;
        case Range::Upper:
            status = gsl_integration_qagiu(&fn, lo, opts.epsabs, opts.epsrel, opts.limit, ws.get(), &r.value,
                                           &r.abserr);
            break;
        case Range::Full:
            status = gsl_integration_qagi(&fn, opts.epsabs, opts.epsrel, opts.limit, ws.get(), &r.value, &r.abserr);
            break;
    }
    if (status != GSL_SUCCESS) {
        throw QuadratureError(std::string("quadrature did not converge: ") + gsl_strerror(status) +
                                  " (value " + std::to_string(r.value) + ", abserr " + std::to_string(r.abserr) + ")",
                              r.value, r.abserr);
    }
    return r;
}

}  // namespace

QuadratureResult integrate(const Integrand &f, double lo, double hi, const QuadratureOptions &opts) {
    return run(f, lo, hi, Range::Finite, opts);
}

QuadratureResult integrate_to_infinity(const Integrand &f, double lo, const QuadratureOptions &opts) {
    return run(f, lo, 0.0, Range::Upper, opts);
}

QuadratureResult integrate_real_line(const Integrand &f, const QuadratureOptions &opts) {
    return run(f, 0.0, 0.0, Range::Full, opts);
}

}  // namespace ft
