#include "pulsecool/numerics.hpp"

namespace pulsecool {

void Grid::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError(fmt::format("grid dt must be positive, got {}", dt));
    if (!(t_end > t_start) || !std::isfinite(t_end) || !std::isfinite(t_start))
        throw ValidationError(fmt::format("grid requires t_end > t_start, got [{}, {}]", t_start, t_end));
    if (sample_stride < 1)
        throw ValidationError(fmt::format("sample_stride must be >= 1, got {}", sample_stride));
    (void)step_count();
}

std::int64_t Grid::step_count() const {
    const double ratio = (t_end - t_start) / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-6 * std::max(1.0, rounded) || rounded < 1.0)
        throw ValidationError(
            fmt::format("grid span {} is not an integer multiple of dt = {}", t_end - t_start, dt));
    return static_cast<std::int64_t>(rounded);
}

Grid Grid::refined() const {
    Grid g = *this;
    g.dt = 0.5 * dt;
    g.sample_stride = 2 * sample_stride;
    return g;
}

} // namespace pulsecool
