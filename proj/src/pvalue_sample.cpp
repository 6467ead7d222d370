#include "scanfdr/pvalue_sample.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace scanfdr {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

PValueSample::PValueSample(std::vector<double> pvalues, std::optional<std::vector<bool>> is_null)
    : is_null_(std::move(is_null)) {
    const std::size_t n = pvalues.size();
    for (std::size_t i = 0; i < n; ++i) {
        // NaN fails both comparisons and is rejected here as well.
        if (!(pvalues[i] >= 0.0 && pvalues[i] <= 1.0)) {
            throw std::invalid_argument("P-value at position " + std::to_string(i) +
                                        " is outside [0,1]");
        }
    }
    if (is_null_ && is_null_->size() != n) {
        throw std::invalid_argument("label vector length does not match the number of P-values");
    }

    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

    values_.resize(n);
    rank_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        values_[k] = pvalues[order_[k]];
        rank_[order_[k]] = k;
    }
}

const std::vector<bool>& PValueSample::is_null() const {
    if (!is_null_) throw std::logic_error("sample carries no null/alternative labels");
    return *is_null_;
}

std::size_t PValueSample::count_in(double s, double t) const {
    if (s > t) return 0;
    auto lo = std::lower_bound(values_.begin(), values_.end(), s);
    auto hi = std::upper_bound(lo, values_.end(), t);
    return static_cast<std::size_t>(hi - lo);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token, const std::string& source, std::size_t line) {
    token = trim(token);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
        throw ParseError(source, line, "cannot parse P-value '" + std::string(token) + "'");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParseError(source, line, "P-value " + std::string(token) + " is outside [0,1]");
    }
    return v;
}

}  // namespace

PValueSample parse_pvalues(const std::string& text, const std::string& source) {
    std::vector<double> values;
    std::vector<bool> labels;
    std::optional<bool> labelled;

    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view rec = trim(raw);
        if (rec.empty() || rec.front() == '#') continue;

        const auto comma = rec.find(',');
        const bool has_label = comma != std::string_view::npos;
        if (labelled && *labelled != has_label) {
            throw ParseError(source, line, "mixed labelled and unlabelled records");
        }
        labelled = has_label;

        if (!has_label) {
            values.push_back(parse_double(rec, source, line));
            continue;
        }
        values.push_back(parse_double(rec.substr(0, comma), source, line));
        const std::string_view flag = trim(rec.substr(comma + 1));
        if (flag == "1") {
            labels.push_back(true);
        } else if (flag == "0") {
            labels.push_back(false);
        } else {
            throw ParseError(source, line, "null label must be 0 or 1, got '" + std::string(flag) + "'");
        }
    }

    if (labelled.value_or(false)) return PValueSample(std::move(values), std::move(labels));
    return PValueSample(std::move(values));
}

PValueSample read_pvalue_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pvalues(buf.str(), path.string());
}

void write_pvalue_file(const std::filesystem::path& path, const PValueSample& sample) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << std::setprecision(17);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        out << sample.value_at(i);
        if (sample.has_labels()) out << ',' << (sample.is_null()[i] ? 1 : 0);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace scanfdr
