#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace pulsecool {

using cdouble = std::complex<double>;

enum class EnvelopeKind { SquareSingle, SquareTrain, Gaussian, Custom };

std::string_view to_string(EnvelopeKind kind);
EnvelopeKind envelope_kind_from_string(std::string_view name);

/// Pulse envelope E(t). Immutable once built; use the named constructors.
///
/// Square windows are half-open, (start, start + t1], except that the very
/// first pulse also covers t = 0 so a drive switched on at t = 0 reports
/// pulse_on there.
class DriveEnvelope {
public:
    using Sampler = std::function<cdouble(double)>;

    static DriveEnvelope square_single(double amplitude, double duration);
    /// n_pulses == nullopt means an unbounded train.
    static DriveEnvelope square_train(double amplitude, double duration, double interval,
                                      std::optional<std::int64_t> n_pulses = std::nullopt);
    static DriveEnvelope gaussian(double amplitude, double sigma, double center = kDefaultGaussianCenter);
    /// `peak` sets the amplitude scale used by the quadrature tolerance.
    static DriveEnvelope custom(Sampler sampler, double peak);

    EnvelopeKind kind() const { return kind_; }
    double amplitude() const { return amplitude_; }
    double duration() const { return duration_; }
    double interval() const { return interval_; }
    std::optional<std::int64_t> n_pulses() const { return n_pulses_; }
    double sigma() const { return sigma_; }
    double center() const { return center_; }
    double period() const { return duration_ + interval_; }

    bool is_square() const { return kind_ == EnvelopeKind::SquareSingle || kind_ == EnvelopeKind::SquareTrain; }

    /// E(t) as a complex amplitude.
    cdouble at(double t) const;

    /// For square kinds: time since the start of the active pulse, or nullopt
    /// when the drive is off at t.
    std::optional<double> time_into_pulse(double t) const;

    static constexpr double kDefaultGaussianCenter = 4.5;

private:
    DriveEnvelope() = default;

    EnvelopeKind kind_ = EnvelopeKind::SquareSingle;
    double amplitude_ = 0.0;
    double duration_ = 0.0;
    double interval_ = 0.0;
    std::optional<std::int64_t> n_pulses_;
    double sigma_ = 0.0;
    double center_ = 0.0;
    Sampler sampler_;
};

/// E(t) at time t (t >= 0).
cdouble envelope_at(const DriveEnvelope& env, double t);

struct FieldKernel {
    cdouble value;
    bool pulse_on = false;
};

/// Evaluates F(t) = \int_0^t E(s) e^{i delta s} ds.
///
/// Square kinds use the closed form iE/delta (1 - e^{i delta tau}), with tau
/// measured from the start of the active pulse and F reset to zero while the
/// drive is off. Other kinds integrate numerically with adaptive Simpson,
/// accumulating from the last query so a forward sweep costs O(step) per call.
/// Not thread-safe; each simulation owns its evaluator.
class KernelEvaluator {
public:
    KernelEvaluator(DriveEnvelope env, double delta, double rel_tolerance = 1e-10);

    FieldKernel operator()(double t);

    const DriveEnvelope& envelope() const { return env_; }

private:
    cdouble integrate_segment(double a, double b) const;

    DriveEnvelope env_;
    double delta_;
    double abs_tolerance_;
    double cached_t_ = 0.0;
    cdouble cached_value_{0.0, 0.0};
};

/// One-shot kernel evaluation (no cache reuse).
FieldKernel kernel_at(const DriveEnvelope& env, double delta, double t);

} // namespace pulsecool
