#include "weakcast/online.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "weakcast/errors.hpp"

namespace weakcast {

void LossLedger::record(double prediction, double outcome, double loss) {
    predictions_.push_back(prediction);
    outcomes_.push_back(outcome);
    losses_.push_back(loss);
}

double LossLedger::running_average() const { return running_average(losses_.size()); }

double LossLedger::running_average(std::size_t n) const {
    if (n == 0 || n > losses_.size()) throw InputError("running average needs 1 <= n <= steps");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += losses_[i];
    return acc / static_cast<double>(n);
}

std::vector<double> LossLedger::trajectory() const {
    std::vector<double> out(losses_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < losses_.size(); ++i) {
        acc += losses_[i];
        out[i] = acc / static_cast<double>(i + 1);
    }
    return out;
}

Symbol predict_class(std::span<const double> pmf) {
    if (pmf.empty()) throw InputError("cannot classify with an empty pmf");
    std::size_t best = 0;
    for (std::size_t x = 1; x < pmf.size(); ++x)
        if (pmf[x] > pmf[best]) best = x;
    return static_cast<Symbol>(best);
}

std::size_t plug_in_action(const ConditionalDistribution& estimate, const std::vector<std::vector<double>>& loss) {
    const auto p = estimate.masses();
    if (loss.size() != p.size()) throw InputError("loss table needs one row per symbol");
    const std::size_t actions = loss.front().size();
    if (actions == 0) throw InputError("loss table needs at least one action");
    for (const auto& row : loss)
        if (row.size() != actions) throw InputError("loss table rows must cover every action");
    std::size_t best = 0;
    double best_risk = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < actions; ++a) {
        double risk = 0.0;
        for (std::size_t x = 0; x < p.size(); ++x) risk += p[x] * loss[x][a];
        if (risk < best_risk) {
            best_risk = risk;
            best = a;
        }
    }
    return best;
}

double hamming_loss(double outcome, double action) noexcept { return outcome == action ? 0.0 : 1.0; }

double squared_loss(double outcome, double action) noexcept { return (outcome - action) * (outcome - action); }

PatternForecaster::PatternForecaster(Quantizer quantizer, Schedule schedule)
    : quantizer_(std::move(quantizer)), schedule_(std::move(schedule)) {}

void PatternForecaster::index_end(std::size_t end) {
    const std::size_t ell = active_->ell;
    if (end + 1 < ell) return;
    if (end + 1 == ell)
        last_key_ = packer_->pack(std::span<const AtomId>(codes_).subspan(0, ell));
    else
        last_key_ = packer_->roll(last_key_, codes_[end - ell], codes_[end]);
    ends_[last_key_].push_back(static_cast<std::uint32_t>(end));
}

void PatternForecaster::rebuild(const ScheduleStep& step) {
    active_ = step;
    packer_.emplace(quantizer_.radix(step.k), step.ell);
    codes_.clear();
    codes_.reserve(history_.capacity());
    ends_.clear();
    for (std::size_t e = 0; e < history_.size(); ++e) {
        codes_.push_back(quantizer_.quantize(history_[e], step.k));
        index_end(e);
    }
}

TruncatedEstimate PatternForecaster::forecast() {
    const std::size_t t = history_.size();
    TruncatedEstimate out{schedule_.default_measure(), schedule_.step_for(t), std::nullopt, true};
    if (t == 0 || t < out.step.ell) return out;
    const auto& step = out.step;
    if (!active_ || active_->k != step.k || active_->ell != step.ell) rebuild(step);

    RecurrenceRecord rec;
    rec.ell = step.ell;
    rec.requested_j = step.samples;
    const auto& ends = ends_.at(last_key_);  // back() is t-1 itself
    for (std::size_t i = ends.size() - 1; i-- > 0 && rec.taus.size() < step.samples;)
        rec.taus.push_back(t - 1 - ends[i]);
    rec.truncated = rec.taus.size() < step.samples;
    if (!rec.truncated) {
        rec.lambda = step.ell + rec.taus.back();
        if (quantizer_.is_finite()) {
            std::vector<std::size_t> counts(quantizer_.alphabet().size(), 0);
            for (std::size_t tau : rec.taus) ++counts[codes_[t - tau]];
            out.distribution = ConditionalDistribution::from_counts(counts);
        } else {
            std::vector<double> samples;
            samples.reserve(rec.taus.size());
            for (std::size_t tau : rec.taus) samples.push_back(history_[t - tau]);
            out.distribution = ConditionalDistribution::empirical(std::move(samples));
        }
        out.default_used = false;
    }
    out.record = std::move(rec);
    return out;
}

void PatternForecaster::push(double x) {
    const int level = active_ ? active_->k : 1;
    const AtomId code = quantizer_.quantize(x, level);  // validates x
    history_.push_back(x);
    if (!active_) return;
    codes_.push_back(code);
    index_end(history_.size() - 1);
}

ClassificationPredictor::ClassificationPredictor(Quantizer quantizer, Schedule schedule)
    : forecaster_(std::move(quantizer), std::move(schedule)) {
    if (!forecaster_.quantizer().is_finite()) throw ConfigError("classification needs a finite alphabet");
}

double ClassificationPredictor::predict() {
    return static_cast<double>(predict_class(forecaster_.forecast().distribution.masses()));
}

RegressionPredictor::RegressionPredictor(Quantizer quantizer, Schedule schedule)
    : forecaster_(std::move(quantizer), std::move(schedule)) {}

double RegressionPredictor::predict() { return forecaster_.forecast().distribution.mean(); }

PlugInPredictor::PlugInPredictor(Quantizer quantizer, Schedule schedule, std::vector<std::vector<double>> loss)
    : forecaster_(std::move(quantizer), std::move(schedule)), loss_(std::move(loss)) {
    if (!forecaster_.quantizer().is_finite()) throw ConfigError("plug-in decisions need a finite alphabet");
    if (loss_.size() != forecaster_.quantizer().alphabet().size())
        throw InputError("loss table needs one row per symbol");
}

double PlugInPredictor::predict() {
    return static_cast<double>(plug_in_action(forecaster_.forecast().distribution, loss_));
}

LossLedger run_online(std::span<const double> chronological, OnlinePredictor& predictor, const LossFunction& loss,
                      std::optional<double> oracle_target) {
    LossLedger ledger(oracle_target);
    for (double x : chronological) {
        const double action = predictor.predict();
        ledger.record(action, x, loss(x, action));
        predictor.observe(x);
    }
    return ledger;
}

SideInfoClassifier::SideInfoClassifier(std::size_t x_alphabet, std::size_t y_alphabet, Schedule schedule)
    : x_alphabet_(x_alphabet), y_alphabet_(y_alphabet), schedule_(std::move(schedule)) {
    if (x_alphabet < 2 || y_alphabet < 1) throw ConfigError("side-information alphabets are too small");
}

std::uint64_t SideInfoClassifier::anchor_key(std::size_t anchor, Symbol y_at_anchor) const {
    const std::size_t ell = active_->ell;
    std::uint64_t key = y_at_anchor;
    for (std::size_t i = 1; i <= ell; ++i) {
        key = key * y_alphabet_ + ys_[anchor - i];
        key = key * x_alphabet_ + xs_[anchor - i];
    }
    return key;
}

void SideInfoClassifier::rebuild(const ScheduleStep& step) {
    const double bits = static_cast<double>(step.ell + 1) * std::log2(static_cast<double>(y_alphabet_)) +
                        static_cast<double>(step.ell) * std::log2(static_cast<double>(x_alphabet_));
    if (bits > 63.0) throw ConfigError("side-information pattern does not fit a 64-bit key");
    active_ = step;
    anchors_.clear();
    for (std::size_t s = step.ell; s < xs_.size(); ++s)
        anchors_[anchor_key(s, ys_[s])].push_back(static_cast<std::uint32_t>(s));
}

ConditionalDistribution SideInfoClassifier::forecast(Symbol y_now) {
    if (y_now >= y_alphabet_) throw InputError("side symbol out of range");
    const std::size_t t = xs_.size();
    const auto step = schedule_.step_for(t);
    const auto fallback = ConditionalDistribution::uniform(x_alphabet_, true);
    if (t == 0 || t < step.ell) return fallback;
    if (!active_ || active_->ell != step.ell || active_->k != step.k) rebuild(step);
    const auto it = anchors_.find(anchor_key(t, y_now));
    if (it == anchors_.end() || it->second.size() < step.samples) return fallback;
    std::vector<std::size_t> counts(x_alphabet_, 0);
    const auto& list = it->second;
    for (std::size_t i = 0; i < step.samples; ++i) ++counts[xs_[list[list.size() - 1 - i]]];
    return ConditionalDistribution::from_counts(counts);
}

Symbol SideInfoClassifier::predict(Symbol y_now) { return predict_class(forecast(y_now).masses()); }

void SideInfoClassifier::observe(Symbol x, Symbol y) {
    if (x >= x_alphabet_ || y >= y_alphabet_) throw InputError("symbol out of range");
    xs_.push_back(x);
    ys_.push_back(y);
    const std::size_t s = xs_.size() - 1;
    if (active_ && s >= active_->ell) anchors_[anchor_key(s, y)].push_back(static_cast<std::uint32_t>(s));
}

LossLedger run_online_side_info(std::span<const Symbol> xs, std::span<const Symbol> ys, SideInfoClassifier& classifier,
                                std::optional<double> oracle_target) {
    if (xs.size() != ys.size()) throw InputError("side-information paths must be aligned");
    LossLedger ledger(oracle_target);
    for (std::size_t t = 0; t < xs.size(); ++t) {
        const Symbol guess = classifier.predict(ys[t]);
        ledger.record(guess, xs[t], guess == xs[t] ? 0.0 : 1.0);
        classifier.observe(xs[t], ys[t]);
    }
    return ledger;
}

double predict_regression(const SamplePath& path, const Schedule& schedule, const Quantizer& quantizer) {
    return estimate_truncated(path, schedule, quantizer).mean();
}

Symbol predict_class(const SamplePath& path, const Schedule& schedule, const Quantizer& quantizer) {
    if (!quantizer.is_finite()) throw ConfigError("classification needs a finite alphabet");
    return predict_class(estimate_truncated(path, schedule, quantizer).masses());
}

Symbol predict_class_side_info(const SamplePath& x_path, const SamplePath& y_path, double y_now,
                               const Schedule& schedule, const Quantizer& x_quantizer, const Quantizer& y_quantizer) {
    if (x_path.size() != y_path.size()) throw InputError("side-information paths must be aligned");
    const auto step = schedule.step_for(x_path.size());
    if (x_path.empty() || x_path.size() < step.ell) return 0;
    try {
        const auto est = estimate_with_side_info(x_path, y_path, y_now, x_quantizer, y_quantizer,
                                                 {step.k, step.ell, step.samples});
        return predict_class(est.distribution.masses());
    } catch (const InsufficientDataError&) {
        return 0;
    }
}

}  // namespace weakcast
