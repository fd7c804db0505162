#include "pulsecool/drive.hpp"

#include "pulsecool/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace pulsecool {

namespace {

constexpr cdouble kI{0.0, 1.0};
constexpr int kMaxSimpsonDepth = 40;

void require(bool ok, const std::string& message) {
    if (!ok)
        throw ValidationError(message);
}

} // namespace

std::string_view to_string(EnvelopeKind kind) {
    switch (kind) {
    case EnvelopeKind::SquareSingle:
        return "square_single";
    case EnvelopeKind::SquareTrain:
        return "square_train";
    case EnvelopeKind::Gaussian:
        return "gaussian";
    case EnvelopeKind::Custom:
        return "custom";
    }
    return "unknown";
}

EnvelopeKind envelope_kind_from_string(std::string_view name) {
    if (name == "square_single")
        return EnvelopeKind::SquareSingle;
    if (name == "square_train")
        return EnvelopeKind::SquareTrain;
    if (name == "gaussian")
        return EnvelopeKind::Gaussian;
    if (name == "custom")
        return EnvelopeKind::Custom;
    throw ValidationError(fmt::format("unknown envelope kind '{}'", name));
}

DriveEnvelope DriveEnvelope::square_single(double amplitude, double duration) {
    require(amplitude >= 0.0 && std::isfinite(amplitude), fmt::format("E must be >= 0, got {}", amplitude));
    require(duration > 0.0 && std::isfinite(duration), fmt::format("t1 must be > 0, got {}", duration));
    DriveEnvelope env;
    env.kind_ = EnvelopeKind::SquareSingle;
    env.amplitude_ = amplitude;
    env.duration_ = duration;
    env.n_pulses_ = 1;
    return env;
}

DriveEnvelope DriveEnvelope::square_train(double amplitude, double duration, double interval,
                                          std::optional<std::int64_t> n_pulses) {
    require(amplitude >= 0.0 && std::isfinite(amplitude), fmt::format("E must be >= 0, got {}", amplitude));
    require(duration > 0.0 && std::isfinite(duration), fmt::format("t1 must be > 0, got {}", duration));
    require(interval >= 0.0 && std::isfinite(interval), fmt::format("t2 must be >= 0, got {}", interval));
    require(!n_pulses || *n_pulses >= 1, "n_pulses must be >= 1 when given");
    DriveEnvelope env;
    env.kind_ = EnvelopeKind::SquareTrain;
    env.amplitude_ = amplitude;
    env.duration_ = duration;
    env.interval_ = interval;
    env.n_pulses_ = n_pulses;
    return env;
}

DriveEnvelope DriveEnvelope::gaussian(double amplitude, double sigma, double center) {
    require(amplitude >= 0.0 && std::isfinite(amplitude), fmt::format("E must be >= 0, got {}", amplitude));
    require(sigma > 0.0 && std::isfinite(sigma), fmt::format("sigma must be > 0, got {}", sigma));
    require(std::isfinite(center), "gaussian center j0 must be finite");
    DriveEnvelope env;
    env.kind_ = EnvelopeKind::Gaussian;
    env.amplitude_ = amplitude;
    env.sigma_ = sigma;
    env.center_ = center;
    return env;
}

DriveEnvelope DriveEnvelope::custom(Sampler sampler, double peak) {
    require(static_cast<bool>(sampler), "custom envelope needs a sampler");
    require(peak >= 0.0 && std::isfinite(peak), fmt::format("custom peak amplitude must be >= 0, got {}", peak));
    DriveEnvelope env;
    env.kind_ = EnvelopeKind::Custom;
    env.amplitude_ = peak;
    env.sampler_ = std::move(sampler);
    return env;
}

std::optional<double> DriveEnvelope::time_into_pulse(double t) const {
    switch (kind_) {
    case EnvelopeKind::SquareSingle:
        if (t >= 0.0 && t <= duration_)
            return t;
        return std::nullopt;
    case EnvelopeKind::SquareTrain: {
        if (t < 0.0)
            return std::nullopt;
        if (t == 0.0)
            return 0.0;
        const double p = period();
        auto index = static_cast<std::int64_t>(std::floor(t / p));
        double local = t - static_cast<double>(index) * p;
        // t on a period boundary closes the previous window.
        if (local <= 0.0) {
            --index;
            local += p;
        }
        if (n_pulses_ && index >= *n_pulses_)
            return std::nullopt;
        if (local <= duration_)
            return local;
        return std::nullopt;
    }
    default:
        return std::nullopt;
    }
}

cdouble DriveEnvelope::at(double t) const {
    switch (kind_) {
    case EnvelopeKind::SquareSingle:
    case EnvelopeKind::SquareTrain:
        return time_into_pulse(t) ? cdouble{amplitude_, 0.0} : cdouble{0.0, 0.0};
    case EnvelopeKind::Gaussian: {
        const double x = sigma_ * (t - center_);
        return {amplitude_ * std::exp(-x * x), 0.0};
    }
    case EnvelopeKind::Custom:
        return sampler_(t);
    }
    return {0.0, 0.0};
}

cdouble envelope_at(const DriveEnvelope& env, double t) { return env.at(t); }

KernelEvaluator::KernelEvaluator(DriveEnvelope env, double delta, double rel_tolerance)
    : env_(std::move(env)), delta_(delta), abs_tolerance_(rel_tolerance * std::max(env_.amplitude(), 1.0)) {
    if (env_.is_square() && delta_ == 0.0)
        throw ValidationError("closed-form square kernel needs delta != 0");
}

FieldKernel KernelEvaluator::operator()(double t) {
    if (env_.is_square()) {
        const auto tau = env_.time_into_pulse(t);
        if (!tau)
            return {{0.0, 0.0}, false};
        const double e = env_.amplitude();
        return {kI * (e / delta_) * (1.0 - std::exp(kI * (delta_ * *tau))), true};
    }

    if (t < cached_t_) {
        cached_t_ = 0.0;
        cached_value_ = {0.0, 0.0};
    }
    if (t > cached_t_) {
        cached_value_ += integrate_segment(cached_t_, t);
        cached_t_ = t;
    }
    return {cached_value_, env_.at(t) != cdouble{0.0, 0.0}};
}

cdouble KernelEvaluator::integrate_segment(double a, double b) const {
    auto f = [this](double s) { return env_.at(s) * std::exp(kI * (delta_ * s)); };

    struct Simpson {
        static cdouble rule(double a, double b, cdouble fa, cdouble fm, cdouble fb) {
            return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        }
    };

    auto adaptive = [&](auto&& self, double lo, double hi, cdouble flo, cdouble fmid, cdouble fhi, cdouble whole,
                        double tol, int depth) -> cdouble {
        const double mid = 0.5 * (lo + hi);
        const double lmid = 0.5 * (lo + mid);
        const double rmid = 0.5 * (mid + hi);
        const cdouble flmid = f(lmid);
        const cdouble frmid = f(rmid);
        const cdouble left = Simpson::rule(lo, mid, flo, flmid, fmid);
        const cdouble right = Simpson::rule(mid, hi, fmid, frmid, fhi);
        const cdouble diff = left + right - whole;
        if (std::abs(diff) <= 15.0 * tol)
            return left + right + diff / 15.0;
        if (depth >= kMaxSimpsonDepth)
            throw NumericalError(
                fmt::format("kernel quadrature did not reach tolerance {} on [{}, {}]", tol, lo, hi));
        return self(self, lo, mid, flo, flmid, fmid, left, 0.5 * tol, depth + 1) +
               self(self, mid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth + 1);
    };

    // Long segments are cut below the oscillation period so the first Simpson
    // comparison cannot agree by accident.
    const double max_piece = 0.5 / std::max({std::abs(delta_), env_.sigma(), 1.0});
    const auto pieces = static_cast<std::int64_t>(std::ceil((b - a) / max_piece));
    const double h = (b - a) / static_cast<double>(std::max<std::int64_t>(pieces, 1));
    cdouble total{0.0, 0.0};
    for (std::int64_t k = 0; k < std::max<std::int64_t>(pieces, 1); ++k) {
        const double lo = a + static_cast<double>(k) * h;
        const double hi = (k + 1 == pieces) ? b : lo + h;
        const cdouble flo = f(lo);
        const cdouble fhi = f(hi);
        const cdouble fmid = f(0.5 * (lo + hi));
        const cdouble whole = Simpson::rule(lo, hi, flo, fmid, fhi);
        total += adaptive(adaptive, lo, hi, flo, fmid, fhi, whole, abs_tolerance_, 0);
    }
    return total;
}

FieldKernel kernel_at(const DriveEnvelope& env, double delta, double t) {
    KernelEvaluator eval(env, delta);
    return eval(t);
}

} // namespace pulsecool
