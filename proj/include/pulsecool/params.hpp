#pragma once

#include <string>
#include <vector>

namespace pulsecool {

/// Physical parameters in units of the cavity decay rate (kappa == 1).
struct SystemParams {
    double kappa = 1.0;
    double omega_m = 100.0;
    double delta = 100.0;
    double g_m = 1e-4;
    double gamma_m = 1e-3;
    double n_th = 100.0;
    double n_c = 0.0;

    /// Throws ValidationError naming the first violated field.
    void validate() const;

    /// Warnings that do not prevent a run (weak-coupling assumption).
    std::vector<std::string> warnings() const;

    bool weak_coupling() const { return g_m / omega_m < kWeakCouplingLimit; }

    static constexpr double kWeakCouplingLimit = 0.01;
};

/// Builds validated params. omega_m, delta and gamma_m must be positive; g_m,
/// n_th and n_c may be zero.
SystemParams make_params(double omega_m, double delta, double g_m, double gamma_m, double n_th,
                         double n_c = 0.0);

/// J = (g_m / omega_m) * (E / kappa).
struct EffectiveIntensity {
    double J = 0.0;
};

EffectiveIntensity effective_intensity(const SystemParams& params, double amplitude);

/// Inverse of effective_intensity: the amplitude E giving intensity J.
double amplitude_for_intensity(const SystemParams& params, double J);

} // namespace pulsecool
