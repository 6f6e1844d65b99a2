#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "weakcast/alphabet.hpp"
#include "weakcast/distribution.hpp"
#include "weakcast/pattern_estimator.hpp"
#include "weakcast/recurrence.hpp"
#include "weakcast/schedule.hpp"

namespace weakcast {

/// Per-step record of an online run.
class LossLedger {
public:
    LossLedger() = default;
    explicit LossLedger(std::optional<double> oracle_target) : oracle_target_(oracle_target) {}

    void record(double prediction, double outcome, double loss);

    std::size_t steps() const noexcept { return losses_.size(); }
    /// (1/n) sum of the first n losses; n defaults to all of them.
    double running_average() const;
    double running_average(std::size_t n) const;
    /// Running average after every step.
    std::vector<double> trajectory() const;

    std::span<const double> predictions() const noexcept { return predictions_; }
    std::span<const double> outcomes() const noexcept { return outcomes_; }
    std::span<const double> losses() const noexcept { return losses_; }

    std::optional<double> oracle_target() const noexcept { return oracle_target_; }
    void set_oracle_target(double target) { oracle_target_ = target; }

private:
    std::vector<double> predictions_;
    std::vector<double> outcomes_;
    std::vector<double> losses_;
    std::optional<double> oracle_target_;
};

/// argmax with ties to the lowest index.
Symbol predict_class(std::span<const double> pmf);

/// argmin_a sum_x P(x) loss[x][a], ties to the lowest action. The table
/// needs a row per symbol of the pmf, all of the same positive width.
std::size_t plug_in_action(const ConditionalDistribution& estimate, const std::vector<std::vector<double>>& loss);

double hamming_loss(double outcome, double action) noexcept;
double squared_loss(double outcome, double action) noexcept;

/// Shifted truncated pattern estimator kept up to date one outcome at a
/// time. forecast() is the law of X_t given X_0..X_{t-1} and equals
/// estimate_truncated on that prefix; recurrence lookups go through a
/// position index per (level, ell) that grows with the history.
class PatternForecaster {
public:
    PatternForecaster(Quantizer quantizer, Schedule schedule);

    TruncatedEstimate forecast();
    void push(double x);

    std::size_t size() const noexcept { return history_.size(); }
    std::span<const double> history() const noexcept { return history_; }
    const Quantizer& quantizer() const noexcept { return quantizer_; }
    const Schedule& schedule() const noexcept { return schedule_; }

private:
    void rebuild(const ScheduleStep& step);
    void index_end(std::size_t end);

    Quantizer quantizer_;
    Schedule schedule_;
    std::vector<double> history_;
    std::optional<ScheduleStep> active_;
    std::optional<PatternPacker> packer_;
    std::vector<AtomId> codes_;
    std::uint64_t last_key_ = 0;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> ends_;
};

/// Sequential decision maker: predict() may read only what observe() fed.
class OnlinePredictor {
public:
    virtual ~OnlinePredictor() = default;
    virtual double predict() = 0;
    virtual void observe(double outcome) = 0;
};

class ClassificationPredictor final : public OnlinePredictor {
public:
    ClassificationPredictor(Quantizer quantizer, Schedule schedule);
    double predict() override;
    void observe(double outcome) override { forecaster_.push(outcome); }
    PatternForecaster& forecaster() noexcept { return forecaster_; }

private:
    PatternForecaster forecaster_;
};

/// Conditional mean of the forecast; the schedule's default measure should
/// be the point mass at 0 so the fallback prediction is 0.
class RegressionPredictor final : public OnlinePredictor {
public:
    RegressionPredictor(Quantizer quantizer, Schedule schedule);
    double predict() override;
    void observe(double outcome) override { forecaster_.push(outcome); }

private:
    PatternForecaster forecaster_;
};

class PlugInPredictor final : public OnlinePredictor {
public:
    PlugInPredictor(Quantizer quantizer, Schedule schedule, std::vector<std::vector<double>> loss);
    double predict() override;
    void observe(double outcome) override { forecaster_.push(outcome); }

private:
    PatternForecaster forecaster_;
    std::vector<std::vector<double>> loss_;
};

using LossFunction = std::function<double(double outcome, double action)>;

/// Sweeps t = 0..n-1: predict A_t from X^t, then reveal X_t and charge
/// loss(X_t, A_t).
LossLedger run_online(std::span<const double> chronological, OnlinePredictor& predictor, const LossFunction& loss,
                      std::optional<double> oracle_target = {});

/// Finite-alphabet classifier using a side observation Y_t that arrives
/// before X_t must be guessed. Patterns join X_{t-ell..t-1} and Y_{t-ell..t};
/// the schedule should be built for the joint alphabet |X||Y|.
class SideInfoClassifier {
public:
    SideInfoClassifier(std::size_t x_alphabet, std::size_t y_alphabet, Schedule schedule);

    /// Guess of X_t given the current side symbol.
    Symbol predict(Symbol y_now);
    /// Estimate behind predict(); uniform over X when no data is usable.
    ConditionalDistribution forecast(Symbol y_now);
    void observe(Symbol x, Symbol y);

    std::size_t size() const noexcept { return xs_.size(); }

private:
    std::uint64_t anchor_key(std::size_t anchor, Symbol y_at_anchor) const;
    void rebuild(const ScheduleStep& step);

    std::size_t x_alphabet_;
    std::size_t y_alphabet_;
    Schedule schedule_;
    std::vector<Symbol> xs_;
    std::vector<Symbol> ys_;
    std::optional<ScheduleStep> active_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> anchors_;
};

LossLedger run_online_side_info(std::span<const Symbol> xs, std::span<const Symbol> ys, SideInfoClassifier& classifier,
                                std::optional<double> oracle_target = {});

/// From-scratch forms (no incremental state), one prediction for the path
/// X^t held in `path`.
double predict_regression(const SamplePath& path, const Schedule& schedule, const Quantizer& quantizer);
Symbol predict_class(const SamplePath& path, const Schedule& schedule, const Quantizer& quantizer);
/// Side-information guess with the joint-alphabet schedule at n = path
/// length; falls back to symbol 0 when the search is truncated.
Symbol predict_class_side_info(const SamplePath& x_path, const SamplePath& y_path, double y_now,
                               const Schedule& schedule, const Quantizer& x_quantizer, const Quantizer& y_quantizer);

}  // namespace weakcast
