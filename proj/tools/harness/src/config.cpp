#include "weakcast/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace weakcast::harness {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

/// Reads optional fields of one JSON object and rejects unknown keys.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ValidationError(path_.empty() ? "$" : path_, "expected an object");
    }

    template <class T>
    bool get(const std::string& key, T& out) {
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end()) return false;
        try {
            out = it->template get<T>();
        } catch (const json::exception&) {
            throw ValidationError(join(path_, key), "has the wrong type");
        }
        return true;
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    Reader child(const std::string& key) {
        seen_.insert(key);
        return Reader(j_.at(key), join(path_, key));
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    std::string path(const std::string& key) const { return join(path_, key); }

    void finish() const {
        for (const auto& [key, value] : j_.items())
            if (!seen_.count(key)) throw ValidationError(join(path_, key), "unknown field");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& path, const std::string& message) {
    if (!ok) throw ValidationError(path, message);
}

void require_one_of(const std::string& value, std::initializer_list<const char*> options, const std::string& path) {
    for (const char* o : options)
        if (value == o) return;
    std::string list;
    for (const char* o : options) list += (list.empty() ? "" : ", ") + std::string(o);
    throw ValidationError(path, "must be one of " + list + " (got '" + value + "')");
}

SourceConfig source_from_json(const json& j, const std::string& path) {
    SourceConfig s;
    if (j.is_string()) {
        s.preset = j.get<std::string>();
        return s;
    }
    Reader r(j, path);
    r.get("preset", s.preset);
    r.get("kind", s.kind);
    r.get("values", s.values);
    if (!s.preset.empty()) {
        require(s.kind.empty(), r.path("kind"), "cannot be combined with a preset");
        r.finish();
        return s;
    }
    require(!s.kind.empty(), r.path("kind"), "is required without a preset");
    require_one_of(s.kind, {"iid", "markov", "periodic", "hmm", "ryabco"}, r.path("kind"));
    if (s.kind == "iid") {
        r.get("pmf", s.pmf);
    } else if (s.kind == "markov") {
        r.get("alphabet_size", s.alphabet_size);
        r.get("order", s.order);
        r.get("rows", s.rows);
    } else if (s.kind == "periodic") {
        r.get("alphabet_size", s.alphabet_size);
        r.get("cycle", s.cycle);
    } else if (s.kind == "hmm") {
        r.get("transition", s.rows);
        r.get("emission", s.emission);
    } else {
        r.get("delta_prefix", s.delta_prefix);
    }
    r.finish();
    return s;
}

json source_to_json(const SourceConfig& s) {
    json j;
    if (!s.preset.empty()) {
        j["preset"] = s.preset;
    } else {
        j["kind"] = s.kind;
        if (s.kind == "iid") j["pmf"] = s.pmf;
        if (s.kind == "markov") {
            j["alphabet_size"] = s.alphabet_size;
            j["order"] = s.order;
            j["rows"] = s.rows;
        }
        if (s.kind == "periodic") {
            j["alphabet_size"] = s.alphabet_size;
            j["cycle"] = s.cycle;
        }
        if (s.kind == "hmm") {
            j["transition"] = s.rows;
            j["emission"] = s.emission;
        }
        if (s.kind == "ryabco") j["delta_prefix"] = s.delta_prefix;
    }
    if (!s.values.empty()) j["values"] = s.values;
    return j;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    Reader r(j, "");
    require(r.has("source"), "source", "is required");
    c.source = source_from_json(r.raw("source"), "source");
    r.get("estimator", c.estimator);
    require_one_of(c.estimator, {"pattern", "cesaro", "side_info"}, "estimator");
    r.get("mode", c.mode);
    require_one_of(c.mode, {"finite", "real"}, "mode");
    r.get("side_info", c.side_info);
    require_one_of(c.side_info, {"state", "copy", "noise"}, "side_info");
    r.get("model", c.model);
    require_one_of(c.model, {"kt_mixture", "lz78"}, "model");
    r.get("n_grid", c.n_grid);
    require(!c.n_grid.empty(), "n_grid", "must not be empty");
    for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
        require(c.n_grid[i] > 0, "n_grid[" + std::to_string(i) + "]", "must be positive");
        require(i == 0 || c.n_grid[i] > c.n_grid[i - 1], "n_grid[" + std::to_string(i) + "]",
                "must be strictly increasing");
    }
    r.get("replicas", c.replicas);
    require(c.replicas >= 1, "replicas", "must be at least 1");
    r.get("seed", c.seed);
    r.get("output_dir", c.output_dir);
    r.get("workers", c.workers);
    require(c.workers >= 1, "workers", "must be at least 1");

    if (r.has("schedule")) {
        auto s = r.child("schedule");
        auto& sc = c.schedule;
        s.get("kind", sc.kind);
        require_one_of(sc.kind, {"auto", "finite_default", "known_entropy", "real_default", "fixed"}, "schedule.kind");
        s.get("epsilon", sc.epsilon);
        require(sc.epsilon > 0.0 && sc.epsilon < 1.0, "schedule.epsilon", "must lie in (0, 1)");
        s.get("rate_bits", sc.rate_bits);
        require(sc.rate_bits > 0.0, "schedule.rate_bits", "must be positive");
        s.get("max_level", sc.max_level);
        require(sc.max_level >= 1 && sc.max_level <= IntervalFieldHierarchy::kLevelLimit, "schedule.max_level",
                "must lie in [1, " + std::to_string(IntervalFieldHierarchy::kLevelLimit) + "]");
        s.get("j_base", sc.j_base);
        require(sc.j_base >= 1, "schedule.j_base", "must be at least 1");
        s.get("k", sc.k);
        require(sc.k >= 1, "schedule.k", "must be at least 1");
        s.get("ell", sc.ell);
        require(sc.ell >= 1, "schedule.ell", "must be at least 1");
        s.get("samples", sc.samples);
        require(sc.samples >= 1, "schedule.samples", "must be at least 1");
        if (s.has("default")) {
            auto d = s.child("default");
            auto& dm = sc.default_measure;
            d.get("kind", dm.kind);
            require_one_of(dm.kind, {"auto", "uniform", "dirac", "uniform_grid"}, "schedule.default.kind");
            d.get("at", dm.at);
            d.get("lo", dm.lo);
            d.get("hi", dm.hi);
            require(dm.lo < dm.hi, "schedule.default.hi", "must exceed lo");
            d.get("points", dm.points);
            require(dm.points >= 1, "schedule.default.points", "must be at least 1");
            d.finish();
        }
        s.finish();
    }
    if (r.has("recurrence")) {
        auto s = r.child("recurrence");
        auto& rc = c.recurrence;
        s.get("k_min", rc.k_min);
        s.get("k_max", rc.k_max);
        require(rc.k_min >= 1 && rc.k_max >= rc.k_min, "recurrence.k_max", "needs 1 <= k_min <= k_max");
        s.get("samples", rc.samples);
        require(rc.samples >= 1, "recurrence.samples", "must be at least 1");
        s.get("path_length", rc.path_length);
        s.get("kac_trials", rc.kac_trials);
        require(rc.kac_trials >= 1, "recurrence.kac_trials", "must be at least 1");
        s.get("kac_patterns", rc.kac_patterns);
        for (std::size_t i = 0; i < rc.kac_patterns.size(); ++i)
            require(!rc.kac_patterns[i].empty() && rc.kac_patterns[i].size() == rc.kac_patterns[0].size(),
                    "recurrence.kac_patterns[" + std::to_string(i) + "]", "patterns must be non-empty and share one length");
        s.finish();
    }
    if (r.has("predict")) {
        auto s = r.child("predict");
        s.get("task", c.predict.task);
        require_one_of(c.predict.task, {"classification", "regression", "plug_in"}, "predict.task");
        s.get("loss", c.predict.loss);
        s.finish();
    }
    r.finish();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    const auto& sc = c.schedule;
    const auto& dm = sc.default_measure;
    return json{
        {"source", source_to_json(c.source)},
        {"estimator", c.estimator},
        {"mode", c.mode},
        {"side_info", c.side_info},
        {"model", c.model},
        {"n_grid", c.n_grid},
        {"replicas", c.replicas},
        {"seed", c.seed},
        {"output_dir", c.output_dir},
        {"workers", c.workers},
        {"schedule",
         {{"kind", sc.kind},
          {"epsilon", sc.epsilon},
          {"rate_bits", sc.rate_bits},
          {"max_level", sc.max_level},
          {"j_base", sc.j_base},
          {"k", sc.k},
          {"ell", sc.ell},
          {"samples", sc.samples},
          {"default", {{"kind", dm.kind}, {"at", dm.at}, {"lo", dm.lo}, {"hi", dm.hi}, {"points", dm.points}}}}},
        {"recurrence",
         {{"k_min", c.recurrence.k_min},
          {"k_max", c.recurrence.k_max},
          {"samples", c.recurrence.samples},
          {"path_length", c.recurrence.path_length},
          {"kac_trials", c.recurrence.kac_trials},
          {"kac_patterns", c.recurrence.kac_patterns}}},
        {"predict", {{"task", c.predict.task}, {"loss", c.predict.loss}}},
    };
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("--config", "cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("--config", std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(j);
}

OracleSource build_source(const SourceConfig& s) {
    auto wrap = [](auto&& make, const std::string& path) -> OracleSource {
        try {
            return make();
        } catch (const ConfigError& e) {
            throw ValidationError(path, e.what());
        }
    };
    OracleSource src = wrap(
        [&] {
            if (!s.preset.empty()) return OracleSource::preset(s.preset);
            if (s.kind == "iid") return OracleSource::iid(s.pmf);
            if (s.kind == "markov") return OracleSource::markov(s.alphabet_size, s.order, s.rows);
            if (s.kind == "periodic") return OracleSource::periodic(s.cycle, s.alphabet_size);
            if (s.kind == "hmm") return OracleSource::hmm(s.rows, s.emission);
            return OracleSource::ryabco(s.delta_prefix);
        },
        s.preset.empty() ? "source" : "source.preset");
    if (!s.values.empty()) src = wrap([&] { return src.with_values(s.values); }, "source.values");
    return src;
}

namespace {

std::size_t side_alphabet_size(const ExperimentConfig& c, const OracleSource& src) {
    if (c.side_info == "copy") return src.alphabet_size();
    if (c.side_info == "noise") return 2;
    switch (src.kind()) {
        case SourceKind::markov: return src.rows().size();
        case SourceKind::periodic: return src.cycle().size();
        case SourceKind::hmm: return src.rows().size();
        default: throw ValidationError("side_info", "state side information needs a markov, periodic or hmm source");
    }
}

ConditionalDistribution build_default(const ExperimentConfig& c, const OracleSource& src, std::size_t alphabet) {
    const auto& dm = c.schedule.default_measure;
    std::string kind = dm.kind;
    if (kind == "auto") kind = c.mode == "finite" ? "uniform" : "dirac";
    if (c.mode == "finite") {
        require(kind == "uniform", "schedule.default.kind", "finite mode uses the uniform default");
        return ConditionalDistribution::uniform(alphabet, true);
    }
    (void)src;
    if (kind == "dirac") return ConditionalDistribution::dirac(dm.at, true);
    require(kind == "uniform_grid", "schedule.default.kind", "real mode uses dirac or uniform_grid");
    return ConditionalDistribution::uniform_grid(dm.lo, dm.hi, dm.points, true);
}

}  // namespace

Experiment prepare(const ExperimentConfig& config) {
    OracleSource src = build_source(config.source);
    const bool finite = config.mode == "finite";
    if (config.estimator != "pattern") {
        require(finite, "mode", "the " + config.estimator + " estimator needs finite mode");
    }
    std::size_t side = 0;
    if (config.estimator == "side_info") side = side_alphabet_size(config, src);
    const std::size_t alphabet = src.alphabet_size() * (side > 0 ? side : 1);

    const auto& sc = config.schedule;
    std::string kind = sc.kind;
    if (kind == "auto") kind = finite ? "finite_default" : "real_default";
    if (finite) require(kind != "real_default", "schedule.kind", "real_default needs real mode");
    if (!finite) require(kind == "real_default" || kind == "fixed", "schedule.kind", "real mode needs real_default or fixed");

    Quantizer quantizer = finite ? Quantizer::finite(src.alphabet())
                                 : Quantizer::intervals(IntervalFieldHierarchy(sc.max_level));
    const auto default_measure = build_default(config, src, finite ? src.alphabet_size() : 0);
    auto make_schedule = [&]() -> Schedule {
        try {
            if (kind == "finite_default") return Schedule::finite_default(alphabet, sc.epsilon);
            if (kind == "known_entropy") return Schedule::known_entropy(alphabet, sc.rate_bits, sc.epsilon);
            if (kind == "real_default") return Schedule::real_default(sc.max_level, sc.j_base, default_measure);
            return Schedule::fixed({sc.k, sc.ell, sc.samples}, default_measure);
        } catch (const ConfigError& e) {
            throw ValidationError("schedule", e.what());
        }
    };
    Schedule schedule = make_schedule();
    if (config.estimator == "pattern" && kind != "fixed" && kind != "real_default")
        schedule = schedule.with_default(default_measure);
    if (config.estimator != "cesaro") {
        try {
            schedule.validate(config.n_grid);
        } catch (const ConfigError& e) {
            throw ValidationError("schedule", e.what());
        }
    }
    if (!finite && kind == "fixed")
        require(sc.k <= sc.max_level, "schedule.k", "exceeds schedule.max_level");
    if (config.predict.task == "plug_in") {
        require(config.predict.loss.size() == src.alphabet_size(), "predict.loss", "needs one row per symbol");
        for (std::size_t i = 0; i < config.predict.loss.size(); ++i)
            require(!config.predict.loss[i].empty() && config.predict.loss[i].size() == config.predict.loss[0].size(),
                    "predict.loss[" + std::to_string(i) + "]", "rows must share a positive width");
    }
    return Experiment{config, std::move(src), std::move(quantizer), std::move(schedule), side};
}

}  // namespace weakcast::harness
