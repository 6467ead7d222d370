#include "scanfdr/confusion.hpp"

#include <algorithm>
#include <vector>

namespace scanfdr {

ConfusionTable confusion(const RejectionOutcome& outcome, const PValueSample& sample) {
    if (!sample.has_labels()) {
        throw std::invalid_argument("confusion table needs null/alternative labels");
    }
    const auto& is_null = sample.is_null();
    std::vector<bool> rejected(sample.size(), false);
    for (const std::size_t i : outcome.rejected) {
        if (i >= sample.size()) throw std::out_of_range("rejected index outside the sample");
        rejected[i] = true;
    }

    ConfusionTable t;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (is_null[i]) {
            ++(rejected[i] ? t.V : t.U);
        } else {
            ++(rejected[i] ? t.S : t.T);
        }
    }
    return t;
}

double fdp(const ConfusionTable& table) {
    return static_cast<double>(table.V) / static_cast<double>(std::max<std::size_t>(table.R(), 1));
}

double fnp(const ConfusionTable& table) {
    if (table.n1() == 0) throw NoAlternatives();
    return static_cast<double>(table.T) / static_cast<double>(table.n1());
}

}  // namespace scanfdr
