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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "floquet_tails/hydro.h"

namespace ft {

Spectrum Spectrum::constant(double a) {
    Spectrum s;
    s.family = Family::Constant;
    s.amplitude = a;
    return s;
}

Spectrum Spectrum::gaussian(double a, double w) {
    Spectrum s;
    s.family = Family::Gaussian;
    s.amplitude = a;
    s.width = w;
    return s;
}

Spectrum Spectrum::cosine(double a, double b, double w) {
    Spectrum s;
    s.family = Family::Cosine;
    s.amplitude = a;
    s.cos_amplitude = b;
    s.width = w;
    return s;
}

Spectrum Spectrum::table(std::vector<double> k, std::vector<double> v) {
    if (k.size() != v.size() || k.size() < 2) {
        throw std::invalid_argument("spectrum table needs at least two (k, value) rows");
    }
    for (size_t i = 0; i < k.size(); i++) {
        if (k[i] < 0 || (i > 0 && k[i] <= k[i - 1])) {
            throw std::invalid_argument("spectrum table k must be non-negative and increasing");
        }
    }
    Spectrum s;
    s.family = Family::Table;
    s.table_k = std::move(k);
    s.table_v = std::move(v);
    return s;
}

Spectrum Spectrum::parse(const std::string &text) {
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (name == "zero") {
        return zero();
    }
    if (name == "file") {
        std::ifstream in(args);
        if (!in) {
            throw std::invalid_argument("cannot open spectrum file " + args);
        }
        std::vector<double> k, v;
        std::string line;
        while (std::getline(in, line)) {
            for (char &ch : line) {
                if (ch == ',') {
                    ch = ' ';
                }
            }
            std::istringstream ls(line);
            double a, b;
            if (line.empty() || line[0] == '#' || !(ls >> a >> b)) {
                continue;
            }
            k.push_back(a);
            v.push_back(b);
        }
        return table(std::move(k), std::move(v));
    }
    std::vector<double> vals;
    std::istringstream as(args);
    std::string tok;
    while (std::getline(as, tok, ',')) {
        vals.push_back(std::stod(tok));
    }
    if (name == "constant" && vals.size() == 1) {
        return constant(vals[0]);
    }
    if (name == "gaussian" && (vals.size() == 1 || vals.size() == 2)) {
        return gaussian(vals[0], vals.size() == 2 ? vals[1] : 1.0);
    }
    if (name == "cosine" && (vals.size() == 2 || vals.size() == 3)) {
        return cosine(vals[0], vals[1], vals.size() == 3 ? vals[2] : 1.0);
    }
    throw std::invalid_argument("bad spectrum '" + text +
                                "'; expected zero, constant:A, gaussian:A[,w], cosine:A,B[,w] or file:path");
}

double Spectrum::operator()(double k) const {
    k = std::abs(k);
    switch (family) {
        case Family::Zero:
            return 0.0;
        case Family::Constant:
            return amplitude;
        case Family::Gaussian:
            return amplitude * std::exp(-0.5 * k * k * width * width);
        case Family::Cosine:
            return amplitude + cos_amplitude * std::cos(k * width);
        case Family::Table: {
            if (k <= table_k.front()) {
                return table_v.front();
            }
            if (k > table_k.back()) {
                return 0.0;
            }
            auto it = std::upper_bound(table_k.begin(), table_k.end(), k);
            size_t i = it - table_k.begin();
            double f = (k - table_k[i - 1]) / (table_k[i] - table_k[i - 1]);
            return table_v[i - 1] + f * (table_v[i] - table_v[i - 1]);
        }
    }
    return 0.0;
}

double Spectrum::at_zero() const {
    return (*this)(0.0);
}

double Spectrum::curvature() const {
    switch (family) {
        case Family::Zero:
        case Family::Constant:
            return 0.0;
        case Family::Gaussian:
            return -amplitude * width * width;
        case Family::Cosine:
            return -cos_amplitude * width * width;
        case Family::Table: {
            double h = table_k[1] - table_k[0];
            return 2.0 * ((*this)(h) - at_zero()) / (h * h);
        }
    }
    return 0.0;
}

bool Spectrum::decays() const {
    return family == Family::Zero || family == Family::Gaussian || family == Family::Table;
}

double green_propagator(double k, double t, double d0) {
    if (t < 0) {
        throw std::invalid_argument("green_propagator needs t >= 0");
    }
    return std::exp(-d0 * k * k * t);
}

namespace {

QuadratureResult half_line(const Integrand &f, double k_max, const QuadratureOptions &q) {
    if (std::isinf(k_max)) {
        return integrate_to_infinity(f, 0.0, q);
    }
    return integrate(f, 0.0, k_max, q);
}

bool steady_finite(const SpectralModel &m, const AnalyticOptions &opts) {
    return !std::isinf(opts.k_max) || m.c_eta.decays();
}

// Absolute tolerance from the size of each spectral piece on its own, so transients that
// cancel to rounding level (matched spectra) still converge.
QuadratureOptions scaled_tolerance(const SpectralModel &m, double d0, double t, int k_power,
                                   const QuadratureOptions &q) {
    double amp = std::abs(m.c.at_zero()) + std::abs(m.c_eta.at_zero()) / (2.0 * d0);
    double width = 1.0 / std::sqrt(2.0 * d0 * std::max(t, 1e-12));
    QuadratureOptions out = q;
    out.epsabs = std::max(q.epsabs, q.epsrel * amp * std::pow(width, k_power + 1));
    return out;
}

QuadratureOptions steady_tolerance(const SpectralModel &m, double d0, double k_max, int k_power,
                                   const QuadratureOptions &q) {
    double width = std::isinf(k_max) ? 1.0 : k_max;
    if (m.c_eta.family == Spectrum::Family::Gaussian) {
        width = std::min(width, 1.0 / m.c_eta.width);
    } else if (m.c_eta.family == Spectrum::Family::Table) {
        width = std::min(width, m.c_eta.table_k.back());
    }
    QuadratureOptions out = q;
    out.epsabs = std::max(q.epsabs, q.epsrel * std::abs(m.c_eta.at_zero()) / (2.0 * d0) * std::pow(width, k_power + 1));
    return out;
}

}  // namespace

CorrelationValue equal_time_correlation(const SpectralModel &model, double d0, double t, double separation,
                                        const AnalyticOptions &opts) {
    if (t < 0 || d0 <= 0) {
        throw std::invalid_argument("equal_time_correlation needs t >= 0 and D0 > 0");
    }
    const double x = separation;
    auto transient = [&](double k) {
        return std::exp(-2.0 * d0 * k * k * t) * (model.c(k) - model.c_eta(k) / (2.0 * d0)) * std::cos(k * x);
    };
    CorrelationValue out;
    auto ex = half_line(transient, opts.k_max, scaled_tolerance(model, d0, t, 0, opts.quad));
    out.excess = ex.value / std::numbers::pi;
    out.abserr = ex.abserr / std::numbers::pi;
    if (model.c_eta.family == Spectrum::Family::Zero) {
        out.steady = 0.0;
    } else if (steady_finite(model, opts)) {
        auto st = half_line([&](double k) { return model.c_eta(k) / (2.0 * d0) * std::cos(k * x); }, opts.k_max,
                            steady_tolerance(model, d0, opts.k_max, 0, opts.quad));
        out.steady = st.value / std::numbers::pi;
        out.abserr += st.abserr / std::numbers::pi;
    } else {
        out.steady = std::numeric_limits<double>::quiet_NaN();
    }
    out.total = out.steady + out.excess;
    return out;
}

double equal_time_correlation_asymptotic(const SpectralModel &model, double d0, double t, double separation) {
    const double x = separation;
    double env = std::exp(-x * x / (8.0 * d0 * t)) / std::sqrt(8.0 * std::numbers::pi * d0 * t);
    double lead = model.c.at_zero() - model.c_eta.at_zero() / (2.0 * d0);
    double curv = model.c.curvature() - model.c_eta.curvature() / (2.0 * d0);
    return env * (lead + (4.0 * d0 * t - x * x) / (32.0 * d0 * d0 * t * t) * curv);
}

CorrelationValue gradient_correlation(const SpectralModel &model, double d0, double t, const AnalyticOptions &opts) {
    if (t <= 0 || d0 <= 0) {
        throw std::invalid_argument("gradient_correlation needs t > 0 and D0 > 0");
    }
    CorrelationValue out;
    auto ex = half_line(
        [&](double k) {
            return k * k * std::exp(-2.0 * d0 * k * k * t) * (model.c(k) - model.c_eta(k) / (2.0 * d0));
        },
        opts.k_max, scaled_tolerance(model, d0, t, 2, opts.quad));
    out.excess = ex.value / std::numbers::pi;
    out.abserr = ex.abserr / std::numbers::pi;
    if (model.c_eta.family == Spectrum::Family::Zero) {
        out.steady = 0.0;
    } else if (steady_finite(model, opts)) {
        auto st = half_line([&](double k) { return k * k * model.c_eta(k) / (2.0 * d0); }, opts.k_max,
                            steady_tolerance(model, d0, opts.k_max, 2, opts.quad));
        out.steady = st.value / std::numbers::pi;
    } else {
        out.steady = std::numeric_limits<double>::quiet_NaN();
    }
    out.total = out.steady + out.excess;
    return out;
}

double threepoint_gradient_tail(double c1, double c2, double d0, double t, double cutoff,
                                const QuadratureOptions &opts) {
    if (t <= 0 || d0 <= 0 || cutoff <= 0) {
        throw std::invalid_argument("threepoint_gradient_tail needs t > 0, D0 > 0, cutoff > 0");
    }
    if (c1 == 0.0 && c2 == 0.0) {
        return 0.0;
    }
    // The integrand is a degree-6 polynomial times exp(-b |k|^2); with k = q / sqrt(b) the
    // integral is b^-4 times its value at b = 1, which keeps the quadrature O(1).
    const double b = d0 * t + 1.0 / (cutoff * cutoff);
    QuadratureOptions inner = opts;
    inner.epsrel = opts.epsrel * 1e-2;
    auto outer = [&](double q1) {
        auto f = [&](double q2) {
            double q3 = -q1 - q2;
            double p = q1 * q2 * q3;
            double s = q1 * q1 * q1 + q2 * q2 * q2 + q3 * q3 * q3;
            return p * (c1 * p + c2 * s) * std::exp(-(q1 * q1 + q2 * q2 + q3 * q3));
        };
        return integrate_real_line(f, inner).value;
    };
    return integrate_real_line(outer, opts).value / std::pow(b, 4);
}

double threepoint_gradient_closed_form(double c1, double c2, double d0, double t, double cutoff) {
    const double b = d0 * t + 1.0 / (cutoff * cutoff);
    return (c1 + 3.0 * c2) * std::sqrt(3.0) * std::numbers::pi / (54.0 * std::pow(b, 4));
}

}  // namespace ft
