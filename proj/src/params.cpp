#include "pulsecool/params.hpp"

#include "pulsecool/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace pulsecool {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw ValidationError(fmt::format("{} must be a finite positive rate, got {}", name, value));
}

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value))
        throw ValidationError(fmt::format("{} must be finite and >= 0, got {}", name, value));
}

} // namespace

void SystemParams::validate() const {
    if (kappa != 1.0)
        throw ValidationError(fmt::format("kappa must be 1 (all quantities are kappa-normalized), got {}", kappa));
    require_positive(omega_m, "omega_m");
    require_positive(delta, "delta");
    require_nonnegative(g_m, "g_m");
    require_positive(gamma_m, "gamma_m");
    require_nonnegative(n_th, "n_th");
    require_nonnegative(n_c, "n_c");
}

std::vector<std::string> SystemParams::warnings() const {
    std::vector<std::string> out;
    if (!weak_coupling())
        out.push_back(fmt::format("g_m/omega_m = {:.3g} is not << 1; the dropped nonlinear term may matter",
                                  g_m / omega_m));
    return out;
}

SystemParams make_params(double omega_m, double delta, double g_m, double gamma_m, double n_th, double n_c) {
    SystemParams p;
    p.omega_m = omega_m;
    p.delta = delta;
    p.g_m = g_m;
    p.gamma_m = gamma_m;
    p.n_th = n_th;
    p.n_c = n_c;
    p.validate();
    return p;
}

EffectiveIntensity effective_intensity(const SystemParams& params, double amplitude) {
    if (!(amplitude >= 0.0))
        throw ValidationError(fmt::format("drive amplitude must be >= 0, got {}", amplitude));
    return {(params.g_m / params.omega_m) * (amplitude / params.kappa)};
}

double amplitude_for_intensity(const SystemParams& params, double J) {
    if (!(J >= 0.0))
        throw ValidationError(fmt::format("effective intensity must be >= 0, got {}", J));
    if (params.g_m == 0.0)
        throw ValidationError("g_m = 0 cannot reach a nonzero effective intensity");
    return J * params.omega_m * params.kappa / params.g_m;
}

} // namespace pulsecool
