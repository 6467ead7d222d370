#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scanfdr {

/// Raised when an input record cannot be parsed; carries the 1-based line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A set of P-values held in ascending order.
///
/// `sorted()[k]` is the (k+1)-th order statistic and came from input
/// position `original_index()[k]`. The optional truth labels stay in input
/// order: `is_null()[i]` is true when hypothesis i is a true null.
/// Indices are 0-based throughout.
class PValueSample {
public:
    explicit PValueSample(std::vector<double> pvalues,
                          std::optional<std::vector<bool>> is_null = std::nullopt);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    std::span<const double> sorted() const noexcept { return values_; }
    std::span<const std::size_t> original_index() const noexcept { return order_; }

    bool has_labels() const noexcept { return is_null_.has_value(); }
    const std::vector<bool>& is_null() const;

    /// P-value of input position i.
    double value_at(std::size_t input_index) const { return values_[rank_[input_index]]; }

    /// Number of values in the closed interval [s, t].
    std::size_t count_in(double s, double t) const;

private:
    std::vector<double> values_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> rank_;
    std::optional<std::vector<bool>> is_null_;
};

/// Reads `<p>` or `<p>,<0|1>` records (1 = null true); `#` lines and blank
/// lines are skipped. Labels must be present on every record or on none.
PValueSample read_pvalue_file(const std::filesystem::path& path);
PValueSample parse_pvalues(const std::string& text, const std::string& source = "<input>");

/// Writes the sample in input order, with labels when present.
void write_pvalue_file(const std::filesystem::path& path, const PValueSample& sample);

}  // namespace scanfdr
