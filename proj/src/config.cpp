#include "pulsecool/config.hpp"

#include "pulsecool/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace pulsecool {

using nlohmann::json;

namespace {

// Reads fields from one JSON object, recording defaults and rejecting leftovers.
class Section {
public:
    Section(const json& parent, std::string name, std::vector<std::string>& notes, bool required = false)
        : name_(std::move(name)), notes_(notes) {
        if (!parent.contains(name_)) {
            if (required)
                throw ValidationError(fmt::format("missing required section '{}'", name_));
            notes_.push_back(fmt::format("{}: section absent, using defaults", name_));
            return;
        }
        const json& obj = parent.at(name_);
        if (!obj.is_object())
            throw ValidationError(fmt::format("'{}' must be an object", name_));
        obj_ = &obj;
    }

    bool has(const std::string& key) const { return obj_ && obj_->contains(key) && !obj_->at(key).is_null(); }

    double number(const std::string& key) {
        seen_.insert(key);
        if (!has(key))
            throw ValidationError(fmt::format("missing required key '{}.{}'", name_, key));
        return as_number(key);
    }

    double number(const std::string& key, double fallback, const std::string& why = {}) {
        seen_.insert(key);
        if (!has(key)) {
            notes_.push_back(fmt::format("{}.{} defaulted to {}{}", name_, key, fallback, why.empty() ? "" : " (" + why + ")"));
            return fallback;
        }
        return as_number(key);
    }

    std::optional<std::int64_t> optional_count(const std::string& key, const std::string& absent_meaning) {
        seen_.insert(key);
        if (!has(key)) {
            notes_.push_back(fmt::format("{}.{} unset: {}", name_, key, absent_meaning));
            return std::nullopt;
        }
        const json& v = obj_->at(key);
        if (!v.is_number_integer())
            throw ValidationError(fmt::format("'{}.{}' must be an integer", name_, key));
        return v.get<std::int64_t>();
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback) {
        seen_.insert(key);
        if (!has(key)) {
            notes_.push_back(fmt::format("{}.{} defaulted to {}", name_, key, fallback));
            return fallback;
        }
        const json& v = obj_->at(key);
        if (!v.is_number_integer())
            throw ValidationError(fmt::format("'{}.{}' must be an integer", name_, key));
        return v.get<std::int64_t>();
    }

    std::string string(const std::string& key, const std::string& fallback) {
        seen_.insert(key);
        if (!has(key)) {
            notes_.push_back(fmt::format("{}.{} defaulted to '{}'", name_, key, fallback));
            return fallback;
        }
        const json& v = obj_->at(key);
        if (!v.is_string())
            throw ValidationError(fmt::format("'{}.{}' must be a string", name_, key));
        return v.get<std::string>();
    }

    std::optional<std::vector<double>> numbers(const std::string& key) {
        seen_.insert(key);
        if (!has(key))
            return std::nullopt;
        const json& v = obj_->at(key);
        if (!v.is_array())
            throw ValidationError(fmt::format("'{}.{}' must be an array of numbers", name_, key));
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number())
                throw ValidationError(fmt::format("'{}.{}' must be an array of numbers", name_, key));
            out.push_back(x.get<double>());
        }
        return out;
    }

    void reject_unknown() const {
        if (!obj_)
            return;
        for (const auto& [key, _] : obj_->items())
            if (!seen_.contains(key))
                throw ValidationError(fmt::format("unknown key '{}.{}'", name_, key));
    }

    const std::string& name() const { return name_; }

private:
    double as_number(const std::string& key) const {
        const json& v = obj_->at(key);
        if (!v.is_number())
            throw ValidationError(fmt::format("'{}.{}' must be a number", name_, key));
        return v.get<double>();
    }

    std::string name_;
    std::vector<std::string>& notes_;
    const json* obj_ = nullptr;
    std::set<std::string> seen_;
};

// Prefixes validation errors with the section name so messages carry the key path.
template <class Fn>
void validate_in(const std::string& section, Fn&& fn) {
    try {
        fn();
    } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("{}: {}", section, e.what()));
    }
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json optional_to_json(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }

} // namespace

DriveEnvelope EnvelopeSpec::build() const {
    switch (kind) {
    case EnvelopeKind::SquareSingle:
        return DriveEnvelope::square_single(E, t1);
    case EnvelopeKind::SquareTrain:
        return DriveEnvelope::square_train(E, t1, t2, n_pulses);
    case EnvelopeKind::Gaussian:
        return DriveEnvelope::gaussian(E, sigma, j0);
    case EnvelopeKind::Custom:
        break;
    }
    throw ValidationError("custom envelopes cannot be described in a config file");
}

bool operator==(const SystemParams& a, const SystemParams& b) {
    return a.kappa == b.kappa && a.omega_m == b.omega_m && a.delta == b.delta && a.g_m == b.g_m &&
           a.gamma_m == b.gamma_m && a.n_th == b.n_th && a.n_c == b.n_c;
}

bool operator==(const Grid& a, const Grid& b) {
    return a.t_start == b.t_start && a.t_end == b.t_end && a.dt == b.dt && a.sample_stride == b.sample_stride;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.params == b.params && a.envelope == b.envelope && a.grid == b.grid && a.analysis == b.analysis &&
           a.output == b.output;
}

LoadedConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte);
        throw ValidationError(fmt::format("config parse error at line {}, column {}: {}", line, column, e.what()));
    }
    if (!doc.is_object())
        throw ValidationError("config root must be a JSON object");

    static const std::set<std::string> kSections{"params", "envelope", "grid", "analysis", "output"};
    for (const auto& [key, _] : doc.items())
        if (!kSections.contains(key))
            throw ValidationError(fmt::format("unknown key '{}'", key));

    LoadedConfig loaded;
    auto& notes = loaded.notes;
    ExperimentConfig& cfg = loaded.config;

    {
        Section s(doc, "params", notes, true);
        SystemParams& p = cfg.params;
        p.kappa = s.number("kappa", 1.0, "kappa-normalized units");
        p.omega_m = s.number("omega_m");
        p.g_m = s.number("g_m");
        p.gamma_m = s.number("gamma_m");
        p.n_th = s.number("n_th");
        p.delta = s.number("delta", p.omega_m, "red sideband, delta = omega_m");
        p.n_c = s.number("n_c", 0.0, "optical bath in vacuum");
        s.reject_unknown();
        validate_in("params", [&] { p.validate(); });
        for (auto& w : p.warnings())
            notes.push_back("warning: " + w);
    }
    {
        Section s(doc, "envelope", notes);
        EnvelopeSpec& e = cfg.envelope;
        const std::string kind = s.string("kind", "square_single");
        validate_in("envelope", [&] { e.kind = envelope_kind_from_string(kind); });
        if (e.kind == EnvelopeKind::Custom)
            throw ValidationError("envelope: custom envelopes cannot be described in a config file");
        e.E = s.number("E", e.E);
        e.t1 = s.number("t1", e.t1);
        e.t2 = s.number("t2", e.t2);
        e.n_pulses = s.optional_count("n_pulses", "unbounded train");
        e.sigma = s.number("sigma", e.sigma);
        e.j0 = s.number("j0", e.j0);
        s.reject_unknown();
        validate_in("envelope", [&] { (void)e.build(); });
    }
    {
        Section s(doc, "grid", notes);
        Grid& g = cfg.grid;
        g.t_start = s.number("t_start", 0.0);
        g.t_end = s.number("t_end", 6.0);
        g.dt = s.number("dt", 1e-4);
        g.sample_stride = s.integer("sample_stride", 20);
        s.reject_unknown();
        validate_in("grid", [&] { g.validate(); });
    }
    {
        Section s(doc, "analysis", notes);
        AnalysisSpec& a = cfg.analysis;
        a.window = s.number("window", mechanical_period(cfg.params), "one mechanical period");
        a.dip_window = s.number("dip_window", 0.0, "detect on the raw series");
        a.hysteresis = s.number("hysteresis", a.hysteresis);
        if (auto j = s.numbers("j_values"))
            a.j_values = *j;
        else
            notes.push_back("analysis.j_values defaulted to the standard 7-point ladder");
        a.pulse_duration = s.number("pulse_duration", a.pulse_duration);
        a.schedule_interval = s.number("schedule_interval", a.schedule_interval);
        a.schedule_pulses = s.optional_count("schedule_pulses", "unbounded schedule");
        if (auto w = s.numbers("compare_window")) {
            if (w->size() != 2 || !((*w)[1] > (*w)[0]))
                throw ValidationError("analysis.compare_window must be [t_lo, t_hi] with t_hi > t_lo");
            a.compare_window = std::array<double, 2>{(*w)[0], (*w)[1]};
        }
        s.reject_unknown();
        if (!(a.window > 0.0))
            throw ValidationError("analysis.window must be > 0");
        if (!(a.dip_window >= 0.0))
            throw ValidationError("analysis.dip_window must be >= 0");
        if (!(a.hysteresis >= 0.0))
            throw ValidationError("analysis.hysteresis must be >= 0");
        if (!(a.pulse_duration > 0.0))
            throw ValidationError("analysis.pulse_duration must be > 0");
        if (!(a.schedule_interval >= 0.0))
            throw ValidationError("analysis.schedule_interval must be >= 0");
    }
    {
        Section s(doc, "output", notes);
        cfg.output.path = s.string("path", cfg.output.path);
        cfg.output.format = s.string("format", cfg.output.format);
        s.reject_unknown();
        if (cfg.output.format != "csv")
            throw ValidationError(fmt::format("output.format '{}' is not supported (only csv)", cfg.output.format));
    }
    return loaded;
}

LoadedConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(fmt::format("cannot read config '{}'", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

json to_json(const EnvelopeSpec& e) {
    return {{"kind", std::string(to_string(e.kind))},
            {"E", e.E},
            {"t1", e.t1},
            {"t2", e.t2},
            {"n_pulses", optional_to_json(e.n_pulses)},
            {"sigma", e.sigma},
            {"j0", e.j0}};
}

json to_json(const ExperimentConfig& c) {
    json analysis = {{"window", c.analysis.window},
                     {"dip_window", c.analysis.dip_window},
                     {"hysteresis", c.analysis.hysteresis},
                     {"j_values", c.analysis.j_values},
                     {"pulse_duration", c.analysis.pulse_duration},
                     {"schedule_interval", c.analysis.schedule_interval},
                     {"schedule_pulses", optional_to_json(c.analysis.schedule_pulses)}};
    if (c.analysis.compare_window)
        analysis["compare_window"] = *c.analysis.compare_window;
    return {{"params",
             {{"kappa", c.params.kappa},
              {"omega_m", c.params.omega_m},
              {"delta", c.params.delta},
              {"g_m", c.params.g_m},
              {"gamma_m", c.params.gamma_m},
              {"n_th", c.params.n_th},
              {"n_c", c.params.n_c}}},
            {"envelope", to_json(c.envelope)},
            {"grid",
             {{"t_start", c.grid.t_start},
              {"t_end", c.grid.t_end},
              {"dt", c.grid.dt},
              {"sample_stride", c.grid.sample_stride}}},
            {"analysis", analysis},
            {"output", {{"path", c.output.path}, {"format", c.output.format}}}};
}

} // namespace pulsecool
