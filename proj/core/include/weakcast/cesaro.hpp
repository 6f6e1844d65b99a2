#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "weakcast/models.hpp"
#include "weakcast/sources.hpp"

namespace weakcast {

struct CesaroResult {
    std::vector<double> pmf;
    bool prior_only = false;  // n = 0: the model's prior prediction
};

/// Called once per term with t and Q(. | X^{-t}).
using CesaroTermVisitor = std::function<void(std::size_t, std::span<const double>)>;

/// (1/n) sum_{t<n} Q(. | X^{-t}) where Q(. | X^{-t}) is the prediction of a
/// fresh copy of `prototype` after reading X_{-t}, ..., X_{-1} in time
/// order. `past` is chronological (back() is X_{-1}). O(n^2) model updates.
CesaroResult cesaro_estimate(const SequentialModel& prototype, std::span<const Symbol> past,
                             const CesaroTermVisitor& visit = {});

/// Same estimate for KTMixtureModel(alphabet_size, max_order) in O(n M)
/// table operations: the window is grown backward one symbol at a time and
/// each component's count tables and log marginal are updated in place.
CesaroResult cesaro_estimate_kt(std::span<const Symbol> past, std::size_t alphabet_size, std::size_t max_order,
                                const CesaroTermVisitor& visit = {});

/// Dispatch: KT mixture of order max(1, floor(log2 n)) through the fast
/// path, LZ78 through the generic one.
CesaroResult cesaro_estimate(ModelKind kind, std::size_t alphabet_size, std::span<const Symbol> past);

/// Conditional estimator x^t -> P(. | x^t) used to build a compound model.
using ConditionalEstimator = std::function<std::vector<double>(std::span<const Symbol>)>;

/// Product model P(x^n) = prod_t P(x_t | x^t) driven by a conditional
/// estimator. predict() throws PositivityError on a zero mass.
class CompoundModel final : public SequentialModel {
public:
    CompoundModel(std::size_t alphabet_size, ConditionalEstimator estimator);

    std::size_t alphabet_size() const noexcept override { return alphabet_; }
    std::vector<double> predict() const override;
    std::unique_ptr<SequentialModel> fresh() const override;

protected:
    void observe(Symbol x) override { history_.push_back(x); }
    void clear() override { history_.clear(); }

private:
    std::size_t alphabet_;
    ConditionalEstimator estimator_;
    std::vector<Symbol> history_;
};

/// Compound model fed back from Cesaro estimates of the given kind.
CompoundModel cesaro_compound_model(ModelKind kind, std::size_t alphabet_size);

struct DivergenceRow {
    std::size_t n = 0;
    std::size_t replica = 0;
    double kl_bits = 0.0;      // I(P(.|X^-) | estimate)
    double variational = 0.0;
    double redundancy = 0.0;   // (L_Q(x^n) + log2 P(x^n)) / n
};

struct DivergenceCurveOptions {
    ModelKind model = ModelKind::kt_mixture;
    std::vector<std::size_t> n_grid;
    std::size_t replicas = 1;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    /// Extra older symbols generated before X^{-n_max} so the oracle sees
    /// more past than the estimator.
    std::size_t oracle_lead = 64;
};

/// One row per (n, replica), replicas in order. Replica r draws one path
/// with seed derive_seed(seed, r) and every n uses its most recent n values.
std::vector<DivergenceRow> expected_divergence_curve(const OracleSource& source,
                                                     const DivergenceCurveOptions& options);

struct DivergenceCurvePoint {
    std::size_t n = 0;
    double mean_kl_bits = 0.0;
    double se_kl_bits = 0.0;
    double mean_variational = 0.0;
    double mean_redundancy = 0.0;
};

std::vector<DivergenceCurvePoint> summarize_divergence(std::span<const DivergenceRow> rows);

}  // namespace weakcast
