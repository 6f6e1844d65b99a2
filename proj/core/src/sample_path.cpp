#include "weakcast/sample_path.hpp"

#include <algorithm>

#include "weakcast/errors.hpp"

namespace weakcast {

SamplePath SamplePath::from_lags(std::vector<double> lags) { return SamplePath(std::move(lags)); }

SamplePath SamplePath::from_chronological(std::span<const double> chronological) {
    return SamplePath(std::vector<double>(chronological.rbegin(), chronological.rend()));
}

SamplePath SamplePath::from_symbols(std::span<const Symbol> chronological) {
    std::vector<double> lags(chronological.size());
    std::transform(chronological.rbegin(), chronological.rend(), lags.begin(),
                   [](Symbol s) { return static_cast<double>(s); });
    return SamplePath(std::move(lags));
}

double SamplePath::lag(std::size_t t) const {
    if (t == 0 || t > values_.size()) throw InputError("lag outside the observed past");
    return values_[t - 1];
}

SamplePath SamplePath::most_recent(std::size_t n) const {
    if (n > values_.size()) throw InputError("requested more history than the path holds");
    return SamplePath(std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
}

}  // namespace weakcast
