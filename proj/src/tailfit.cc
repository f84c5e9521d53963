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

#include "floquet_tails/tailfit.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ft {

TimeSeries TimeSeries::windowed(double t_min, double t_max) const {
    TimeSeries out;
    out.num_qubits = num_qubits;
    out.state = state;
    out.name = name;
    for (size_t i = 0; i < t.size(); i++) {
        if (t[i] >= t_min && t[i] <= t_max) {
            out.t.push_back(t[i]);
            out.y.push_back(y[i]);
        }
    }
    return out;
}

double TailFitResult::model(size_t series, double t) const {
    return c0_over_n + c1 / std::sqrt(t) + c2 / t + alpha.at(series) / (t * std::sqrt(t));
}

namespace {

constexpr size_t kMinPoints = 8;

// Least squares with column equilibration; throws on rank deficiency.
Eigen::VectorXd solve_scaled(Eigen::MatrixXd a, const Eigen::VectorXd &b) {
    Eigen::VectorXd scale(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); j++) {
        double n = a.col(j).norm();
        scale(j) = n > 0 ? 1.0 / n : 1.0;
        a.col(j) *= scale(j);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-10);
    if (qr.rank() < a.cols()) {
        throw FitError("design matrix is rank deficient (rank " + std::to_string(qr.rank()) + " of " +
                       std::to_string(a.cols()) + "); widen the fit window");
    }
    return qr.solve(b).cwiseProduct(scale);
}

}  // namespace

TailFitResult fit_tail_joint(const std::vector<TimeSeries> &series, FitWindow window) {
    if (series.empty()) {
        throw FitError("fit_tail_joint needs at least one series");
    }
    std::vector<TimeSeries> win;
    size_t rows = 0;
    for (const auto &s : series) {
        win.push_back(s.windowed(window.t_min, window.t_max));
        if (win.back().size() < kMinPoints) {
            throw FitError("series '" + s.name + "' has fewer than 8 points in the fit window");
        }
        rows += win.back().size();
    }
    const Eigen::Index cols = 3 + static_cast<Eigen::Index>(win.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd b(rows);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    Eigen::Index r = 0;
    for (size_t s = 0; s < win.size(); s++) {
        for (size_t i = 0; i < win[s].size(); i++, r++) {
            double t = win[s].t[i];
            if (t <= 0) {
                throw FitError("tail fit needs t > 0");
            }
            a(r, 0) = 1.0;
            a(r, 1) = 1.0 / std::sqrt(t);
            a(r, 2) = 1.0 / t;
            a(r, 3 + s) = 1.0 / (t * std::sqrt(t));
            b(r) = win[s].y[i];
            lo = std::min(lo, b(r));
            hi = std::max(hi, b(r));
        }
    }
    Eigen::VectorXd x = solve_scaled(a, b);

    TailFitResult res;
    res.c0_over_n = x(0);
    res.c1 = x(1);
    res.c2 = x(2);
    for (size_t s = 0; s < win.size(); s++) {
        res.alpha.push_back(x(3 + s));
    }
    res.residual_rms = std::sqrt((a * x - b).squaredNorm() / rows);
    res.data_range = hi - lo;
    res.window = window;
    res.points = static_cast<int>(rows);
    return res;
}

namespace {

struct ExpEval {
    double rss;
    double a;
    double floor;
};

// (a, floor) by 2x2 normal equations for fixed tau.
ExpEval eval_exp(const TimeSeries &s, double tau) {
    double see = 0, se = 0, sy = 0, sey = 0;
    const double n = static_cast<double>(s.size());
    for (size_t i = 0; i < s.size(); i++) {
        double e = std::exp(-s.t[i] / tau);
        see += e * e;
        se += e;
        sy += s.y[i];
        sey += e * s.y[i];
    }
    double det = see * n - se * se;
    ExpEval ev{};
    if (std::abs(det) < 1e-300) {
        ev.a = 0;
        ev.floor = sy / n;
    } else {
        ev.a = (sey * n - se * sy) / det;
        ev.floor = (see * sy - se * sey) / det;
    }
    double rss = 0;
    for (size_t i = 0; i < s.size(); i++) {
        double d = ev.a * std::exp(-s.t[i] / tau) + ev.floor - s.y[i];
        rss += d * d;
    }
    ev.rss = rss;
    return ev;
}

// Gauss-Newton in (a, log tau, floor) from the search optimum; returns false if it
// fails to improve.
bool polish_exp(const TimeSeries &s, double &tau, ExpEval &best, double tau_min, double tau_max) {
    double a = best.a, lt = std::log(tau), fl = best.floor;
    bool improved = false;
    for (int it = 0; it < 30; it++) {
        Eigen::MatrixXd j(s.size(), 3);
        Eigen::VectorXd r(s.size());
        double tt = std::exp(lt);
        for (size_t i = 0; i < s.size(); i++) {
            double e = std::exp(-s.t[i] / tt);
            j(i, 0) = e;
            j(i, 1) = a * e * s.t[i] / tt;
            j(i, 2) = 1.0;
            r(i) = s.y[i] - (a * e + fl);
        }
        Eigen::VectorXd step = j.colPivHouseholderQr().solve(r);
        if (!step.allFinite()) {
            break;
        }
        double nlt = lt + step(1);
        if (std::exp(nlt) < tau_min || std::exp(nlt) > tau_max) {
            break;
        }
        ExpEval ev = eval_exp(s, std::exp(nlt));
        if (!(ev.rss < best.rss) && !(ev.rss == 0 && best.rss == 0)) {
            break;
        }
        double change = std::abs(nlt - lt);
        lt = nlt;
        a = ev.a;
        fl = ev.floor;
        best = ev;
        tau = std::exp(lt);
        improved = true;
        if (change < 1e-15 || ev.rss == 0) {
            break;
        }
    }
    return improved;
}

}  // namespace

ExpFitResult fit_exp_floor(const TimeSeries &series, int num_qubits, const ExpFitOptions &opts) {
    TimeSeries s = series.windowed(opts.t_min, opts.t_max);
    if (s.size() < kMinPoints) {
        throw FitError("fit_exp_floor needs at least 8 points in the window");
    }
    double ymax = 0, ymin = std::numeric_limits<double>::infinity();
    for (double y : s.y) {
        if (!(y > 0)) {
            throw FitError("fit_exp_floor needs strictly positive data");
        }
        ymax = std::max(ymax, y);
        ymin = std::min(ymin, y);
    }
    if (!(opts.tau_min > 0) || !(opts.tau_max > opts.tau_min) || opts.grid_points < 3) {
        throw FitError("invalid tau search range");
    }

    const double l0 = std::log(opts.tau_min), l1 = std::log(opts.tau_max);
    const int n = opts.grid_points;
    int best_i = 0;
    ExpEval best{std::numeric_limits<double>::infinity(), 0, 0};
    for (int i = 0; i < n; i++) {
        ExpEval ev = eval_exp(s, std::exp(l0 + (l1 - l0) * i / (n - 1)));
        if (ev.rss < best.rss) {
            best = ev;
            best_i = i;
        }
    }
    double tau = std::exp(l0 + (l1 - l0) * best_i / (n - 1));

    if (opts.refine) {
        double lo = l0 + (l1 - l0) * std::max(best_i - 1, 0) / (n - 1);
        double hi = l0 + (l1 - l0) * std::min(best_i + 1, n - 1) / (n - 1);
        const double g = (std::sqrt(5.0) - 1) / 2;
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = eval_exp(s, std::exp(x1)).rss, f2 = eval_exp(s, std::exp(x2)).rss;
        for (int it = 0; it < 200 && hi - lo > 1e-14; it++) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = eval_exp(s, std::exp(x1)).rss;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = eval_exp(s, std::exp(x2)).rss;
            }
        }
        double lm = (lo + hi) / 2;
        ExpEval ev = eval_exp(s, std::exp(lm));
        if (ev.rss <= best.rss) {
            best = ev;
            tau = std::exp(lm);
        }
        polish_exp(s, tau, best, opts.tau_min, opts.tau_max);
    }

    ExpFitResult res;
    res.a = best.a;
    res.tau = tau;
    res.floor = best.floor;
    res.b = best.floor * std::ldexp(1.0, num_qubits / 2) * (num_qubits % 2 ? std::sqrt(2.0) : 1.0);
    res.residual_rms = std::sqrt(best.rss / s.size());
    double transient = std::abs(best.a) * std::exp(-s.t.front() / tau);
    res.degenerate = (ymax - ymin) <= 1e-12 * ymax || transient <= 1e-6 * ymax;
    return res;
}

SlopeResult loglog_exponent(const TimeSeries &series, FitWindow window) {
    TimeSeries s = series.windowed(window.t_min, window.t_max);
    for (double y : s.y) {
        if (y == 0.0) {
            throw FitError("series '" + series.name + "' is exactly zero inside the slope window");
        }
    }
    std::vector<bool> keep(s.size(), true);
    for (size_t i = 0; i + 1 < s.size(); i++) {
        if ((s.y[i] > 0) != (s.y[i + 1] > 0)) {
            keep[i] = false;
            keep[i + 1] = false;
        }
    }
    std::vector<double> lx, ly;
    for (size_t i = 0; i < s.size(); i++) {
        if (keep[i]) {
            if (!(s.t[i] > 0)) {
                throw FitError("log-log slope needs t > 0");
            }
            lx.push_back(std::log(s.t[i]));
            ly.push_back(std::log(std::abs(s.y[i])));
        }
    }
    if (lx.size() < 3) {
        throw FitError("fewer than 3 usable points for the log-log slope");
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < lx.size(); i++) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); i++) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    SlopeResult res;
    res.slope = sxy / sxx;
    double ssr = 0;
    for (size_t i = 0; i < lx.size(); i++) {
        double d = ly[i] - my - res.slope * (lx[i] - mx);
        ssr += d * d;
    }
    res.slope_stderr = lx.size() > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
    res.points = static_cast<int>(lx.size());
    res.masked_fraction = s.size() ? 1.0 - n / s.size() : 0.0;
    return res;
}

}  // namespace ft
