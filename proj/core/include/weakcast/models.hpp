#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "weakcast/alphabet.hpp"

namespace weakcast {

/// Sequential probability assignment Q(x_t | x^t). The model holds the
/// consumed history; predict() is the law of the next symbol and update()
/// charges -log2 Q(x) to the running loss before absorbing x.
class SequentialModel {
public:
    virtual ~SequentialModel() = default;

    virtual std::size_t alphabet_size() const noexcept = 0;
    /// Strictly positive masses summing to 1.
    virtual std::vector<double> predict() const = 0;

    void update(Symbol x);
    void reset();

    /// Bits charged so far.
    double cumulative_log_loss() const noexcept { return loss_bits_; }
    std::size_t steps() const noexcept { return steps_; }

    /// A fresh model with the same parameters.
    virtual std::unique_ptr<SequentialModel> fresh() const = 0;

protected:
    virtual void observe(Symbol x) = 0;
    virtual void clear() = 0;

private:
    double loss_bits_ = 0.0;
    std::size_t steps_ = 0;
};

/// Bayes mixture of add-1/2 context models of orders 0..M with prior
/// weights proportional to 2^-m. An order-m component predicts uniformly
/// until it has m symbols of context.
class KTMixtureModel final : public SequentialModel {
public:
    KTMixtureModel(std::size_t alphabet_size, std::size_t max_order);

    std::size_t alphabet_size() const noexcept override { return alphabet_; }
    std::size_t max_order() const noexcept { return max_order_; }
    std::vector<double> predict() const override;
    std::unique_ptr<SequentialModel> fresh() const override;

    /// log2 P_m(x^t) of each component.
    const std::vector<double>& component_log_marginals() const noexcept { return log_marginal_; }
    /// Normalized posterior weights of the components.
    std::vector<double> posterior_weights() const;

    /// max(1, floor(log2 n)).
    static std::size_t default_order(std::size_t n);

protected:
    void observe(Symbol x) override;
    void clear() override;

private:
    struct Counts {
        std::vector<std::uint32_t> by_symbol;
        std::uint64_t total = 0;
    };

    std::uint64_t context_key(std::size_t order) const;
    double component_probability(std::size_t order, std::uint64_t key, Symbol x) const;

    std::size_t alphabet_;
    std::size_t max_order_;
    std::vector<Symbol> history_;
    std::vector<std::unordered_map<std::uint64_t, Counts>> tables_;
    std::vector<double> log_marginal_;
};

/// Incremental-parsing tree model. Each node counts 1 + the counts of its
/// children; from node u the next symbol x has probability
/// (count(child_x) + 1/2) / (count(u) - 1 + |X|/2). After a symbol with no
/// child the phrase ends, the leaf is added and parsing restarts at the root.
class LZ78Model final : public SequentialModel {
public:
    explicit LZ78Model(std::size_t alphabet_size);

    std::size_t alphabet_size() const noexcept override { return alphabet_; }
    std::vector<double> predict() const override;
    std::unique_ptr<SequentialModel> fresh() const override;

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t phrase_count() const noexcept { return nodes_.size() - 1; }
    /// Checks the count invariant over the whole tree.
    bool counts_consistent() const;
    std::size_t current_node() const noexcept { return path_.back(); }

protected:
    void observe(Symbol x) override;
    void clear() override;

private:
    struct Node {
        std::uint64_t count = 1;
        std::vector<std::int32_t> child;
    };

    std::size_t alphabet_;
    std::vector<Node> nodes_;
    std::vector<std::int32_t> path_;
};

enum class ModelKind { kt_mixture, lz78 };

ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind) noexcept;

/// `n_hint` sets the KT mixture order to max(1, floor(log2 n_hint)).
std::unique_ptr<SequentialModel> make_model(ModelKind kind, std::size_t alphabet_size, std::size_t n_hint);

}  // namespace weakcast
