#include "weakcast/cesaro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "weakcast/divergence.hpp"
#include "weakcast/errors.hpp"
#include "weakcast/parallel.hpp"
#include "weakcast/rng.hpp"

namespace weakcast {

namespace {

void average_in(std::vector<double>& acc, std::span<const double> q) {
    for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += q[x];
}

}  // namespace

CesaroResult cesaro_estimate(const SequentialModel& prototype, std::span<const Symbol> past,
                             const CesaroTermVisitor& visit) {
    const std::size_t n = past.size();
    auto model = prototype.fresh();
    if (n == 0) return {model->predict(), true};
    std::vector<double> acc(prototype.alphabet_size(), 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        model->reset();
        for (std::size_t i = n - t; i < n; ++i) model->update(past[i]);
        const auto q = model->predict();
        if (visit) visit(t, q);
        average_in(acc, q);
    }
    for (double& v : acc) v /= static_cast<double>(n);
    return {std::move(acc), false};
}

CesaroResult cesaro_estimate_kt(std::span<const Symbol> past, std::size_t alphabet_size, std::size_t max_order,
                                const CesaroTermVisitor& visit) {
    const KTMixtureModel shape(alphabet_size, max_order);  // validates parameters
    const std::size_t n = past.size();
    const std::size_t a = alphabet_size;
    const double inv_a = 1.0 / static_cast<double>(a);
    const double log2_a = std::log2(static_cast<double>(a));
    if (n == 0) return {std::vector<double>(a, inv_a), true};
    for (Symbol x : past)
        if (x >= a) throw InputError("symbol index out of range");

    // lag(j) = X_{-j}.
    auto lag = [&](std::size_t j) { return past[n - j]; };
    // Context of the symbol at lag L for order m: lags L+1..L+m, most recent
    // least significant (the KTMixtureModel convention).
    auto context_of = [&](std::size_t at_lag, std::size_t m) {
        std::uint64_t key = 0;
        for (std::size_t i = m; i-- > 0;) key = key * a + lag(at_lag + 1 + i);
        return key;
    };

    struct Counts {
        std::vector<std::uint32_t> by_symbol;
        std::uint64_t total = 0;
    };
    const std::size_t orders = max_order + 1;
    std::vector<std::unordered_map<std::uint64_t, Counts>> tables(orders);
    std::vector<double> log_marginal(orders, 0.0);
    // The prediction context X_{-1..-m} never changes as the window grows.
    std::vector<std::uint64_t> predict_key(orders, 0);
    for (std::size_t m = 1; m < orders && m <= n; ++m) predict_key[m] = context_of(0, m);

    std::vector<double> acc(a, 0.0);
    std::vector<double> q(a);
    std::vector<double> w(orders);
    for (std::size_t t = 0; t < n; ++t) {
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < orders; ++m) {
            w[m] = log_marginal[m] - static_cast<double>(m);
            top = std::max(top, w[m]);
        }
        double total = 0.0;
        for (double& v : w) {
            v = std::exp2(v - top);
            total += v;
        }
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t m = 0; m < orders; ++m) {
            const double wm = w[m] / total;
            const Counts* c = nullptr;
            if (t >= m) {
                const auto it = tables[m].find(predict_key[m]);
                if (it != tables[m].end()) c = &it->second;
            }
            for (std::size_t x = 0; x < a; ++x)
                q[x] += wm * (c ? (c->by_symbol[x] + 0.5) / (static_cast<double>(c->total) + a / 2.0) : inv_a);
        }
        if (visit) visit(t, q);
        average_in(acc, q);
        if (t + 1 == n) break;
        // Prepend X_{-(t+1)}: the window becomes X_{-(t+1)}, ..., X_{-1}.
        for (std::size_t m = 0; m < orders; ++m) {
            if (t < m) {
                log_marginal[m] -= log2_a;
                continue;
            }
            // The symbol at lag t+1-m leaves the uniformly coded head and is
            // coded in its context; the new oldest symbol joins the head.
            const std::size_t at = t + 1 - m;
            const Symbol sym = lag(at);
            auto& counts = tables[m][context_of(at, m)];
            if (counts.by_symbol.empty()) counts.by_symbol.assign(a, 0);
            log_marginal[m] += std::log2((counts.by_symbol[sym] + 0.5) / (static_cast<double>(counts.total) + a / 2.0));
            ++counts.by_symbol[sym];
            ++counts.total;
        }
    }
    for (double& v : acc) v /= static_cast<double>(n);
    return {std::move(acc), false};
}

CesaroResult cesaro_estimate(ModelKind kind, std::size_t alphabet_size, std::span<const Symbol> past) {
    if (kind == ModelKind::kt_mixture)
        return cesaro_estimate_kt(past, alphabet_size, KTMixtureModel::default_order(past.size()));
    return cesaro_estimate(LZ78Model(alphabet_size), past);
}

CompoundModel::CompoundModel(std::size_t alphabet_size, ConditionalEstimator estimator)
    : alphabet_(alphabet_size), estimator_(std::move(estimator)) {
    if (alphabet_size < 2) throw ConfigError("model alphabet needs at least two symbols");
    if (!estimator_) throw ConfigError("compound model needs an estimator");
}

std::vector<double> CompoundModel::predict() const {
    auto q = estimator_(history_);
    if (q.size() != alphabet_) throw InputError("estimator returned a pmf of the wrong size");
    double sum = 0.0;
    for (double v : q) {
        if (!(v > 0.0)) throw PositivityError("estimate has a zero mass; compound log-loss would be infinite");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InputError("estimator returned an unnormalized pmf");
    return q;
}

std::unique_ptr<SequentialModel> CompoundModel::fresh() const {
    return std::make_unique<CompoundModel>(alphabet_, estimator_);
}

CompoundModel cesaro_compound_model(ModelKind kind, std::size_t alphabet_size) {
    return CompoundModel(alphabet_size, [kind, alphabet_size](std::span<const Symbol> history) {
        return cesaro_estimate(kind, alphabet_size, history).pmf;
    });
}

std::vector<DivergenceRow> expected_divergence_curve(const OracleSource& source,
                                                     const DivergenceCurveOptions& options) {
    if (options.n_grid.empty()) throw ConfigError("divergence curve needs an n grid");
    if (options.replicas == 0) throw ConfigError("divergence curve needs at least one replica");
    for (std::size_t i = 0; i < options.n_grid.size(); ++i)
        if (options.n_grid[i] == 0 || (i > 0 && options.n_grid[i] <= options.n_grid[i - 1]))
            throw ConfigError("n grid must be positive and strictly increasing");
    const std::size_t n_max = options.n_grid.back();
    const std::size_t a = source.alphabet_size();
    const std::size_t grid = options.n_grid.size();
    std::vector<DivergenceRow> rows(grid * options.replicas);

    parallel_for(options.replicas, options.workers, [&](std::size_t r) {
        const auto path = generate_symbols(source, n_max + options.oracle_lead, derive_seed(options.seed, r));
        OracleTracker tracker(source);
        for (Symbol x : path) tracker.push(x);
        if (!tracker.ready())
            throw UnsupportedSourceError("oracle conditional law unavailable for this " +
                                         std::string(to_string(source.kind())) + " path");
        const auto oracle = tracker.pmf();
        for (std::size_t g = 0; g < grid; ++g) {
            const std::size_t n = options.n_grid[g];
            const std::span<const Symbol> past(path.data() + path.size() - n, n);
            const auto estimate = cesaro_estimate(options.model, a, past);
            auto model = make_model(options.model, a, n);
            for (Symbol x : past) model->update(x);
            DivergenceRow& row = rows[r * grid + g];
            row.n = n;
            row.replica = r;
            row.kl_bits = kl_divergence(oracle, estimate.pmf);
            row.variational = variational_distance(oracle, estimate.pmf);
            row.redundancy = (model->cumulative_log_loss() + log2_marginal(source, past)) / static_cast<double>(n);
        }
    });
    return rows;
}

std::vector<DivergenceCurvePoint> summarize_divergence(std::span<const DivergenceRow> rows) {
    struct Acc {
        std::size_t count = 0;
        double kl = 0.0, kl2 = 0.0, var = 0.0, red = 0.0;
    };
    std::map<std::size_t, Acc> by_n;
    for (const auto& row : rows) {
        auto& acc = by_n[row.n];
        ++acc.count;
        acc.kl += row.kl_bits;
        acc.kl2 += row.kl_bits * row.kl_bits;
        acc.var += row.variational;
        acc.red += row.redundancy;
    }
    std::vector<DivergenceCurvePoint> out;
    for (const auto& [n, acc] : by_n) {
        const double c = static_cast<double>(acc.count);
        DivergenceCurvePoint p;
        p.n = n;
        p.mean_kl_bits = acc.kl / c;
        const double var = acc.count > 1 ? std::max(0.0, (acc.kl2 - c * p.mean_kl_bits * p.mean_kl_bits) / (c - 1)) : 0.0;
        p.se_kl_bits = std::sqrt(var / c);
        p.mean_variational = acc.var / c;
        p.mean_redundancy = acc.red / c;
        out.push_back(p);
    }
    return out;
}

}  // namespace weakcast
