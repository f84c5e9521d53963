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

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "floquet_tails/hydro.h"

namespace ft {

void validate(const HydroParams &p) {
    if (!(p.d0 > 0)) {
        throw std::invalid_argument("D0 must be positive");
    }
    if (!(p.c0 >= 0)) {
        throw std::invalid_argument("C0 must be non-negative");
    }
    if (!(p.a > 0) || !(p.dt > 0)) {
        throw std::invalid_argument("lattice spacing and time step must be positive");
    }
    if (p.dt > p.a * p.a / (2.0 * p.d0)) {
        throw std::invalid_argument("unstable time step: dt = " + std::to_string(p.dt) +
                                    " exceeds a^2/(2 D0) = " + std::to_string(p.a * p.a / (2.0 * p.d0)));
    }
    if (p.length < 4 || p.length % 2 != 0) {
        throw std::invalid_argument("lattice length must be even and at least 4");
    }
    if (p.replicas < 1 || p.threads < 1) {
        throw std::invalid_argument("replicas and threads must be at least 1");
    }
}

double LatticeField::total() const {
    double s = 0.0;
    for (double v : m) {
        s += v;
    }
    return s;
}

void spde_step(LatticeField &field, const HydroParams &p, std::mt19937_64 &noise) {
    auto &m = field.m;
    const size_t n = m.size();
    const double k = p.dt / (p.a * p.a);
    const double noise_sd = std::sqrt(2.0 * p.c0 * p.dt / p.a) / p.a;
    std::normal_distribution<double> normal;
    // flux[x] lives on the link (x, x+1)
    std::vector<double> flux(n);
    for (size_t x = 0; x < n; x++) {
        size_t xp = x + 1 == n ? 0 : x + 1;
        double grad = m[xp] - m[x];
        double diff = -p.d0;
        if (p.d2 != 0.0) {
            double mid = 0.5 * (m[xp] + m[x]);
            diff += p.d2 * mid * mid;
        }
        flux[x] = k * diff * grad;
        if (p.c0 > 0.0) {
            flux[x] -= noise_sd * normal(noise);
        }
    }
    double left = flux[n - 1];
    for (size_t x = 0; x < n; x++) {
        m[x] -= flux[x] - left;
        left = flux[x];
    }
}

EnsembleKind ensemble_from_name(const std::string &name) {
    if (name == "iid") {
        return EnsembleKind::Iid;
    }
    if (name == "staggered") {
        return EnsembleKind::Staggered;
    }
    if (name == "matched") {
        return EnsembleKind::Matched;
    }
    if (name == "dipole") {
        return EnsembleKind::Dipole;
    }
    throw std::invalid_argument("unknown ensemble '" + name + "' (iid, staggered, matched, dipole)");
}

std::string ensemble_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::Iid:
            return "iid";
        case EnsembleKind::Staggered:
            return "staggered";
        case EnsembleKind::Matched:
            return "matched";
        case EnsembleKind::Dipole:
            return "dipole";
    }
    return "?";
}

double lattice_lambda(int j, int length) {
    return 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi * j / length));
}

double lattice_decay_factor(const HydroParams &p, int j) {
    return 1.0 - p.dt * p.d0 * lattice_lambda(j, p.length) / (p.a * p.a);
}

double lattice_stationary_spectrum(const HydroParams &p, int j) {
    if (p.c0 == 0.0) {
        return 0.0;
    }
    if (j % p.length == 0) {
        return 0.0;  // the zero mode carries no noise
    }
    double lam = lattice_lambda(j, p.length);
    return p.c0 / (p.a * p.d0 * (1.0 - p.dt * p.d0 * lam / (2.0 * p.a * p.a)));
}

double ensemble_spectrum(const HydroParams &p, const EnsembleSpec &spec, int j) {
    const double s2 = spec.sigma * spec.sigma;
    switch (spec.kind) {
        case EnsembleKind::Iid:
            return s2;
        case EnsembleKind::Staggered:
            return j == p.length / 2 ? s2 * p.length : 0.0;
        case EnsembleKind::Matched:
            return lattice_stationary_spectrum(p, j);
        case EnsembleKind::Dipole:
            return s2 * lattice_lambda(j, p.length);
    }
    return 0.0;
}

LatticePrediction lattice_prediction(const HydroParams &p, const EnsembleSpec &spec, long steps) {
    LatticePrediction out;
    const double inv_l = 1.0 / p.length;
    for (int j = 0; j < p.length; j++) {
        double r = lattice_decay_factor(p, j);
        double r2n = std::pow(r * r, static_cast<double>(steps));
        double c = ensemble_spectrum(p, spec, j);
        double s = lattice_stationary_spectrum(p, j);
        double g = lattice_lambda(j, p.length) / (p.a * p.a);
        double val = r2n * c + s * (1.0 - r2n);
        out.m2 += inv_l * val;
        out.grad2 += inv_l * g * val;
        out.steady_m2 += inv_l * s;
        out.steady_grad2 += inv_l * g * s;
    }
    return out;
}

namespace {

std::mutex &fftw_plan_mutex() {
    static std::mutex mu;
    return mu;
}

void sample_matched(const HydroParams &p, std::mt19937_64 &rng, std::vector<double> &m) {
    const int n = p.length;
    const int nc = n / 2 + 1;
    fftw_complex *z = fftw_alloc_complex(nc);
    double *out = fftw_alloc_real(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_c2r_1d(n, z, out, FFTW_ESTIMATE);
    }
    std::normal_distribution<double> normal;
    for (int j = 0; j < nc; j++) {
        double s = lattice_stationary_spectrum(p, j);
        if (j == 0 || j == n / 2) {
            z[j][0] = std::sqrt(n * s) * normal(rng);
            z[j][1] = 0.0;
        } else {
            double amp = std::sqrt(n * s / 2.0);
            z[j][0] = amp * normal(rng);
            z[j][1] = amp * normal(rng);
        }
    }
    fftw_execute(plan);
    for (int x = 0; x < n; x++) {
        m[x] = out[x] / n;
    }
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(z);
    fftw_free(out);
}

}  // namespace

LatticeField sample_initial(const HydroParams &p, const EnsembleSpec &spec, std::mt19937_64 &rng) {
    LatticeField f;
    f.m.assign(p.length, 0.0);
    std::bernoulli_distribution coin(0.5);
    switch (spec.kind) {
        case EnsembleKind::Iid:
            for (auto &v : f.m) {
                v = coin(rng) ? spec.sigma : -spec.sigma;
            }
            break;
        case EnsembleKind::Staggered: {
            double sign = coin(rng) ? 1.0 : -1.0;
            for (int x = 0; x < p.length; x++) {
                f.m[x] = sign * spec.sigma * (x % 2 ? -1.0 : 1.0);
            }
            break;
        }
        case EnsembleKind::Matched:
            sample_matched(p, rng, f.m);
            break;
        case EnsembleKind::Dipole: {
            std::vector<double> s(p.length);
            for (auto &v : s) {
                v = coin(rng) ? 1.0 : -1.0;
            }
            for (int x = 0; x < p.length; x++) {
                f.m[x] = spec.sigma * (s[x] - s[(x + p.length - 1) % p.length]);
            }
            break;
        }
    }
    return f;
}

SpdeResult spde_ensemble_run(const HydroParams &p, const EnsembleSpec &spec, const std::vector<double> &times,
                             int profile_range) {
    validate(p);
    if (p.replicas < 2) {
        throw std::invalid_argument("ensemble runs need at least 2 replicas");
    }
    if (profile_range < 0 || profile_range >= p.length) {
        throw std::invalid_argument("profile range must lie in [0, L)");
    }
    std::vector<long> steps;
    for (double t : times) {
        if (t < 0) {
            throw std::invalid_argument("record times must be non-negative");
        }
        steps.push_back(std::lround(t / p.dt));
    }
    if (!std::is_sorted(steps.begin(), steps.end())) {
        throw std::invalid_argument("record times must be increasing");
    }

    const size_t nt = steps.size();
    const size_t width = 3 + profile_range + 1;  // m2, grad2, grad3, profile
    std::vector<std::vector<double>> per_rep(p.replicas, std::vector<double>(nt * width));
    std::vector<double> drift(p.replicas, 0.0);
    std::atomic<bool> diverged{false};

    auto run_replica = [&](int rep) {
        std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32),
                          static_cast<std::uint32_t>(rep)};
        std::mt19937_64 rng(seq);
        LatticeField f = sample_initial(p, spec, rng);
        const double total0 = f.total();
        const int n = p.length;
        long done = 0;
        for (size_t i = 0; i < nt; i++) {
            for (; done < steps[i]; done++) {
                spde_step(f, p, rng);
            }
            double *row = &per_rep[rep][i * width];
            double m2 = 0, g2 = 0, g3 = 0;
            for (int x = 0; x < n; x++) {
                double v = f.m[x];
                double g = (f.m[(x + 1) % n] - v) / p.a;
                m2 += v * v;
                g2 += g * g;
                g3 += g * g * g;
            }
            if (!std::isfinite(m2) || !std::isfinite(g3)) {
                diverged = true;
                return;
            }
            row[0] = m2 / n;
            row[1] = g2 / n;
            row[2] = g3 / n;
            for (int r = 0; r <= profile_range; r++) {
                double c = 0;
                for (int x = 0; x < n; x++) {
                    c += f.m[x] * f.m[(x + r) % n];
                }
                row[3 + r] = c / n;
            }
        }
        drift[rep] = std::abs(f.total() - total0);
    };

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int rep = next++; rep < p.replicas; rep = next++) {
            run_replica(rep);
        }
    };
    int nthreads = std::min(p.threads, p.replicas);
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; i++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }

    if (diverged) {
        throw SpdeDivergence("SPDE field became non-finite; reduce dt, C0 or D2");
    }
    SpdeResult res;
    res.times.reserve(nt);
    for (long s : steps) {
        res.times.push_back(s * p.dt);
    }
    const double r = p.replicas;
    auto estimate = [&](size_t i, size_t col) {
        double sum = 0, sq = 0;
        for (int rep = 0; rep < p.replicas; rep++) {
            sum += per_rep[rep][i * width + col];
        }
        double mean = sum / r;
        for (int rep = 0; rep < p.replicas; rep++) {
            double d = per_rep[rep][i * width + col] - mean;
            sq += d * d;
        }
        return Estimate{mean, std::sqrt(sq / (r - 1) / r)};
    };
    for (size_t i = 0; i < nt; i++) {
        res.m2.push_back(estimate(i, 0));
        res.grad2.push_back(estimate(i, 1));
        res.grad3.push_back(estimate(i, 2));
        std::vector<Estimate> prof;
        for (int rr = 0; rr <= profile_range; rr++) {
            prof.push_back(estimate(i, 3 + rr));
        }
        res.profile.push_back(std::move(prof));
    }
    res.max_total_drift = *std::max_element(drift.begin(), drift.end());
    return res;
}

}  // namespace ft
