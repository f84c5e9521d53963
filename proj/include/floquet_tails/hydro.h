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

#ifndef FLOQUET_TAILS_HYDRO_H
#define FLOQUET_TAILS_HYDRO_H

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "floquet_tails/quadrature.h"

namespace ft {

// ---------------------------------------------------------------------------
// Continuum analytics

/// Even spectrum C(k) from a named family or a (k, value) table.
///   constant:  A
///   gaussian:  A exp(-k^2 w^2 / 2)
///   cosine:    A + B cos(k w)
///   table:     linear interpolation in |k|, zero past the last node
struct Spectrum {
    enum class Family { Zero, Constant, Gaussian, Cosine, Table };
    Family family = Family::Zero;
    double amplitude = 0.0;
    double width = 1.0;
    double cos_amplitude = 0.0;
    std::vector<double> table_k;
    std::vector<double> table_v;

    static Spectrum zero() {
        return {};
    }
    static Spectrum constant(double a);
    static Spectrum gaussian(double a, double w = 1.0);
    static Spectrum cosine(double a, double b, double w = 1.0);
    static Spectrum table(std::vector<double> k, std::vector<double> v);
    /// "constant:A", "gaussian:A[,w]", "cosine:A,B[,w]", "file:path" (two columns k,value).
    static Spectrum parse(const std::string &text);

    double operator()(double k) const;
    double at_zero() const;
    /// Second derivative at k = 0.
    double curvature() const;
    /// Integrable on the real line (decays past some k).
    bool decays() const;
};

struct SpectralModel {
    Spectrum c;      // initial two-point spectrum C_k
    Spectrum c_eta;  // noise spectrum, <eta eta> has Fourier transform C^eta_k
    double c1 = 0.0;
    double c2 = 0.0;
};

struct AnalyticOptions {
    /// Upper momentum cut; pi/a for comparisons with a lattice of spacing a.
    double k_max = std::numeric_limits<double>::infinity();
    QuadratureOptions quad;
};

/// G_k(t) = exp(-D0 k^2 t).
double green_propagator(double k, double t, double d0);

struct CorrelationValue {
    double total = 0.0;
    /// C^eta(x)/2D0 part; NaN when it is a distribution (non-decaying C^eta, infinite k_max).
    double steady = 0.0;
    /// total - steady: the part that relaxes.
    double excess = 0.0;
    double abserr = 0.0;
};

/// <m(x,t) m(x + separation, t)> by adaptive quadrature.
CorrelationValue equal_time_correlation(const SpectralModel &model, double d0, double t, double separation,
                                        const AnalyticOptions &opts = {});

/// Long-time expansion of the excess with the k^2 correction.
double equal_time_correlation_asymptotic(const SpectralModel &model, double d0, double t, double separation);

/// <(grad m)^2>(t); `excess` excludes the steady part.
CorrelationValue gradient_correlation(const SpectralModel &model, double d0, double t,
                                      const AnalyticOptions &opts = {});

/// Integral over k1, k2 (k3 = -k1 - k2) of
///   k1 k2 k3 G_k1 G_k2 G_k3 (c1 k1 k2 k3 + c2 (k1^3 + k2^3 + k3^3)) exp(-(k1^2+k2^2+k3^2)/cutoff^2).
double threepoint_gradient_tail(double c1, double c2, double d0, double t, double cutoff = 10.0,
                                const QuadratureOptions &opts = {});

/// Closed form of the same integral: (c1 + 3 c2) sqrt(3) pi / (54 b^4), b = D0 t + cutoff^-2.
double threepoint_gradient_closed_form(double c1, double c2, double d0, double t, double cutoff = 10.0);

// ---------------------------------------------------------------------------
// Lattice SPDE: dm/dt = -div j, j = -D0 grad m + D2 m^2 grad m - eta on a periodic ring

struct HydroParams {
    double d0 = 1.0;
    double c0 = 0.0;
    double d2 = 0.0;
    double a = 1.0;
    double dt = 0.2;
    int length = 4096;
    int replicas = 200;
    std::uint64_t seed = 1;
    int threads = 1;
};

/// The field went non-finite, e.g. a large D2 m^2 made the effective diffusion negative.
class SpdeDivergence : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument on dt > a^2/(2 D0), D0 <= 0, C0 < 0, or a tiny lattice.
void validate(const HydroParams &p);

struct LatticeField {
    std::vector<double> m;
    double total() const;
};

/// One explicit Euler-Maruyama step in flux form. `noise` supplies one standard normal
/// per link (ignored when C0 = 0).
void spde_step(LatticeField &field, const HydroParams &p, std::mt19937_64 &noise);

enum class EnsembleKind {
    Iid,        // independent +-sigma per site
    Staggered,  // sigma (-1)^x times a random global sign
    Matched,    // Gaussian with the discrete stationary spectrum of the noise
    Dipole,     // sigma (s_x - s_{x-1}), s iid +-1: C_k = sigma^2 lambda_k, empty at k = 0
};

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::Iid;
    double sigma = 1.0;
};

EnsembleKind ensemble_from_name(const std::string &name);
std::string ensemble_name(EnsembleKind kind);

/// Draws one initial field for replica `replica`.
LatticeField sample_initial(const HydroParams &p, const EnsembleSpec &spec, std::mt19937_64 &rng);

struct Estimate {
    double mean = 0.0;
    double stderr_mean = 0.0;
};

struct SpdeResult {
    std::vector<double> times;
    std::vector<Estimate> m2;
    std::vector<Estimate> grad2;
    std::vector<Estimate> grad3;
    /// profile[i][r] = <m_x m_{x+r}> at times[i], r = 0..profile_range.
    std::vector<std::vector<Estimate>> profile;
    double max_total_drift = 0.0;
};

/// Ensemble averages over `p.replicas` independent noise streams and initial fields, at the
/// requested times (rounded to whole steps). Deterministic for a given seed and any
/// thread count. Throws SpdeDivergence if any replica blows up.
SpdeResult spde_ensemble_run(const HydroParams &p, const EnsembleSpec &spec, const std::vector<double> &times,
                             int profile_range = 8);

/// Per-mode quantities of the linear scheme, k = 2 pi j / (L a).
double lattice_lambda(int j, int length);
/// Amplitude factor per step: 1 - dt D0 lambda / a^2.
double lattice_decay_factor(const HydroParams &p, int j);
/// Stationary <|m_k|^2>/L of the linear scheme.
double lattice_stationary_spectrum(const HydroParams &p, int j);
/// Initial <|m_k|^2>/L of an ensemble.
double ensemble_spectrum(const HydroParams &p, const EnsembleSpec &spec, int j);

struct LatticePrediction {
    double m2 = 0.0;
    double grad2 = 0.0;
    double steady_m2 = 0.0;
    double steady_grad2 = 0.0;
};

/// Exact ensemble means of the linear scheme (D2 = 0) after `steps` steps.
LatticePrediction lattice_prediction(const HydroParams &p, const EnsembleSpec &spec, long steps);

}  // namespace ft

#endif
