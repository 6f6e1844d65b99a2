#include "weakcast/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "weakcast/errors.hpp"

namespace weakcast {

void SequentialModel::update(Symbol x) {
    if (x >= alphabet_size()) throw InputError("symbol index out of range");
    const auto q = predict();
    loss_bits_ -= std::log2(q[x]);
    ++steps_;
    observe(x);
}

void SequentialModel::reset() {
    loss_bits_ = 0.0;
    steps_ = 0;
    clear();
}

KTMixtureModel::KTMixtureModel(std::size_t alphabet_size, std::size_t max_order)
    : alphabet_(alphabet_size), max_order_(max_order) {
    if (alphabet_size < 2) throw ConfigError("model alphabet needs at least two symbols");
    const double bits = static_cast<double>(max_order) * std::log2(static_cast<double>(alphabet_size));
    if (bits > 62.0) throw ConfigError("KT mixture contexts of order " + std::to_string(max_order) +
                                       " do not fit a 64-bit key");
    clear();
}

std::size_t KTMixtureModel::default_order(std::size_t n) {
    if (n < 2) return 1;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n)))));
}

void KTMixtureModel::clear() {
    history_.clear();
    tables_.assign(max_order_ + 1, {});
    log_marginal_.assign(max_order_ + 1, 0.0);
}

std::unique_ptr<SequentialModel> KTMixtureModel::fresh() const {
    return std::make_unique<KTMixtureModel>(alphabet_, max_order_);
}

std::uint64_t KTMixtureModel::context_key(std::size_t order) const {
    std::uint64_t key = 0;
    for (std::size_t i = order; i-- > 0;) key = key * alphabet_ + history_[history_.size() - 1 - i];
    return key;
}

double KTMixtureModel::component_probability(std::size_t order, std::uint64_t key, Symbol x) const {
    const double a = static_cast<double>(alphabet_);
    if (history_.size() < order) return 1.0 / a;
    const auto& table = tables_[order];
    const auto it = table.find(key);
    if (it == table.end()) return 1.0 / a;
    return (it->second.by_symbol[x] + 0.5) / (static_cast<double>(it->second.total) + a / 2.0);
}

std::vector<double> KTMixtureModel::posterior_weights() const {
    std::vector<double> w(max_order_ + 1);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m <= max_order_; ++m) {
        w[m] = log_marginal_[m] - static_cast<double>(m);
        top = std::max(top, w[m]);
    }
    double total = 0.0;
    for (double& v : w) {
        v = std::exp2(v - top);
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

std::vector<double> KTMixtureModel::predict() const {
    const auto w = posterior_weights();
    std::vector<double> q(alphabet_, 0.0);
    for (std::size_t m = 0; m <= max_order_; ++m) {
        const std::uint64_t key = history_.size() >= m ? context_key(m) : 0;
        for (Symbol x = 0; x < alphabet_; ++x) q[x] += w[m] * component_probability(m, key, x);
    }
    return q;
}

void KTMixtureModel::observe(Symbol x) {
    for (std::size_t m = 0; m <= max_order_; ++m) {
        if (history_.size() < m) {
            log_marginal_[m] -= std::log2(static_cast<double>(alphabet_));
            continue;
        }
        const std::uint64_t key = context_key(m);
        log_marginal_[m] += std::log2(component_probability(m, key, x));
        auto& counts = tables_[m][key];
        if (counts.by_symbol.empty()) counts.by_symbol.assign(alphabet_, 0);
        ++counts.by_symbol[x];
        ++counts.total;
    }
    history_.push_back(x);
}

LZ78Model::LZ78Model(std::size_t alphabet_size) : alphabet_(alphabet_size) {
    if (alphabet_size < 2) throw ConfigError("model alphabet needs at least two symbols");
    clear();
}

void LZ78Model::clear() {
    nodes_.assign(1, Node{1, std::vector<std::int32_t>(alphabet_, -1)});
    path_.assign(1, 0);
}

std::unique_ptr<SequentialModel> LZ78Model::fresh() const { return std::make_unique<LZ78Model>(alphabet_); }

std::vector<double> LZ78Model::predict() const {
    const Node& u = nodes_[static_cast<std::size_t>(path_.back())];
    const double denom = static_cast<double>(u.count - 1) + static_cast<double>(alphabet_) / 2.0;
    std::vector<double> q(alphabet_);
    for (std::size_t x = 0; x < alphabet_; ++x) {
        const double c = u.child[x] < 0 ? 0.0 : static_cast<double>(nodes_[static_cast<std::size_t>(u.child[x])].count);
        q[x] = (c + 0.5) / denom;
    }
    return q;
}

void LZ78Model::observe(Symbol x) {
    const auto here = static_cast<std::size_t>(path_.back());
    const std::int32_t next = nodes_[here].child[x];
    if (next >= 0) {
        path_.push_back(next);
        return;
    }
    if (nodes_.size() >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
        throw InputError("LZ78 tree is full");
    const auto leaf = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{1, std::vector<std::int32_t>(alphabet_, -1)});
    nodes_[here].child[x] = leaf;
    for (std::int32_t v : path_) ++nodes_[static_cast<std::size_t>(v)].count;
    path_.assign(1, 0);
}

bool LZ78Model::counts_consistent() const {
    for (const auto& node : nodes_) {
        std::uint64_t sum = 1;
        for (std::int32_t c : node.child)
            if (c >= 0) sum += nodes_[static_cast<std::size_t>(c)].count;
        if (sum != node.count) return false;
    }
    return true;
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "kt_mixture") return ModelKind::kt_mixture;
    if (name == "lz78") return ModelKind::lz78;
    throw ConfigError("unknown model '" + std::string(name) + "' (expected kt_mixture or lz78)");
}

std::string_view to_string(ModelKind kind) noexcept {
    return kind == ModelKind::kt_mixture ? "kt_mixture" : "lz78";
}

std::unique_ptr<SequentialModel> make_model(ModelKind kind, std::size_t alphabet_size, std::size_t n_hint) {
    if (kind == ModelKind::lz78) return std::make_unique<LZ78Model>(alphabet_size);
    return std::make_unique<KTMixtureModel>(alphabet_size, KTMixtureModel::default_order(n_hint));
}

}  // namespace weakcast
