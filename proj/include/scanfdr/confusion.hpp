#pragma once

#include <cstddef>
#include <stdexcept>

#include "scanfdr/procedures.hpp"
#include "scanfdr/pvalue_sample.hpp"

namespace scanfdr {

/// Outcome counts of one procedure on one labelled sample.
///
///                 accept   reject
///   null true       U        V      n0
///   null false      T        S      n1
///                   W        R      n
struct ConfusionTable {
    std::size_t U = 0;
    std::size_t V = 0;
    std::size_t T = 0;
    std::size_t S = 0;

    std::size_t n0() const noexcept { return U + V; }
    std::size_t n1() const noexcept { return T + S; }
    std::size_t R() const noexcept { return V + S; }
    std::size_t W() const noexcept { return U + T; }
    std::size_t n() const noexcept { return n0() + n1(); }

    bool operator==(const ConfusionTable&) const = default;
};

/// Thrown by fnp() when the table holds no false nulls.
class NoAlternatives : public std::domain_error {
public:
    NoAlternatives() : std::domain_error("FNP undefined: no false null hypotheses (n1 = 0)") {}
};

ConfusionTable confusion(const RejectionOutcome& outcome, const PValueSample& sample);

/// V / (R v 1)
double fdp(const ConfusionTable& table);
/// T / n1
double fnp(const ConfusionTable& table);

}  // namespace scanfdr
