#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string_view>

#include "scanfdr/harness.hpp"
#include "scanfdr/pvalue_sample.hpp"

namespace scanfdr {

namespace {

constexpr const char* kSummaryNote = "# se_* = sample standard deviation / sqrt(reps)";

std::ostringstream number_stream() {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    return out;
}

class CsvReader {
public:
    CsvReader(const std::string& text, std::string source, std::string_view header)
        : in_(text), source_(std::move(source)) {
        std::vector<std::string_view> cols;
        if (!next(cols)) throw ParseError(source_, line_ == 0 ? 1 : line_, "missing header line");
        if (current_ != header) {
            throw ParseError(source_, line_, "unexpected header '" + current_ + "', expected '" +
                                                 std::string(header) + "'");
        }
    }

    /// Next data row split on commas; false at end of input.
    bool next(std::vector<std::string_view>& cols) {
        while (std::getline(in_, current_)) {
            ++line_;
            if (!current_.empty() && current_.back() == '\r') current_.pop_back();
            if (current_.empty() || current_.front() == '#') continue;
            cols.clear();
            std::string_view rest = current_;
            for (;;) {
                const auto comma = rest.find(',');
                cols.push_back(rest.substr(0, comma));
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
            return true;
        }
        return false;
    }

    void expect_columns(const std::vector<std::string_view>& cols, std::size_t n) const {
        if (cols.size() != n) {
            throw ParseError(source_, line_, "expected " + std::to_string(n) + " fields, got " +
                                                 std::to_string(cols.size()));
        }
    }

    double real(std::string_view tok, const char* field) const {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
            throw ParseError(source_, line_, std::string("malformed ") + field + " '" + std::string(tok) + "'");
        }
        if (!std::isfinite(v)) {
            throw ParseError(source_, line_, std::string("non-finite ") + field + " '" + std::string(tok) + "'");
        }
        return v;
    }

    std::size_t count(std::string_view tok, const char* field) const {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
            throw ParseError(source_, line_, std::string("malformed ") + field + " '" + std::string(tok) + "'");
        }
        return v;
    }

    Method method(std::string_view tok) const {
        try {
            return parse_method(tok);
        } catch (const std::invalid_argument& e) {
            throw ParseError(source_, line_, e.what());
        }
    }

private:
    std::istringstream in_;
    std::string source_;
    std::string current_;
    std::size_t line_ = 0;
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string format_records(const std::vector<RepRecord>& rows) {
    auto out = number_stream();
    out << kRecordsHeader << '\n';
    for (const RepRecord& r : rows) {
        out << r.n << ',' << r.rep << ',' << to_string(r.method) << ',' << r.U << ',' << r.V << ',' << r.T
            << ',' << r.S << ',' << r.sigma << ',' << r.tau << ',' << r.fdp << ',' << r.fnp << ','
            << r.elapsed_ms << '\n';
    }
    return out.str();
}

std::vector<RepRecord> parse_records(const std::string& text, const std::string& source) {
    CsvReader reader(text, source, kRecordsHeader);
    std::vector<RepRecord> rows;
    std::vector<std::string_view> c;
    while (reader.next(c)) {
        reader.expect_columns(c, 12);
        RepRecord r;
        r.n = reader.count(c[0], "n");
        r.rep = reader.count(c[1], "rep");
        r.method = reader.method(c[2]);
        r.U = reader.count(c[3], "U");
        r.V = reader.count(c[4], "V");
        r.T = reader.count(c[5], "T");
        r.S = reader.count(c[6], "S");
        r.sigma = reader.real(c[7], "sigma");
        r.tau = reader.real(c[8], "tau");
        r.fdp = reader.real(c[9], "fdp");
        r.fnp = reader.real(c[10], "fnp");
        r.elapsed_ms = reader.real(c[11], "elapsed_ms");
        rows.push_back(r);
    }
    return rows;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
    auto out = number_stream();
    out << kSummaryNote << '\n' << kSummaryHeader << '\n';
    for (const SummaryRow& r : rows) {
        out << r.n << ',' << to_string(r.method) << ',' << r.mean_fdp << ',' << r.se_fdp << ',' << r.mean_fnp
            << ',' << r.se_fnp << ',' << r.reps << '\n';
    }
    return out.str();
}

std::vector<SummaryRow> parse_summary(const std::string& text, const std::string& source) {
    CsvReader reader(text, source, kSummaryHeader);
    std::vector<SummaryRow> rows;
    std::vector<std::string_view> c;
    while (reader.next(c)) {
        reader.expect_columns(c, 7);
        SummaryRow r;
        r.n = reader.count(c[0], "n");
        r.method = reader.method(c[1]);
        r.mean_fdp = reader.real(c[2], "mean_fdp");
        r.se_fdp = reader.real(c[3], "se_fdp");
        r.mean_fnp = reader.real(c[4], "mean_fnp");
        r.se_fnp = reader.real(c[5], "se_fnp");
        r.reps = reader.count(c[6], "reps");
        rows.push_back(r);
    }
    return rows;
}

std::string format_gcurve(const std::vector<GCurvePoint>& rows) {
    auto out = number_stream();
    out << kGCurveHeader << '\n';
    for (const GCurvePoint& p : rows) out << p.t << ',' << p.G << ',' << p.beta_t << '\n';
    return out.str();
}

void write_records(const std::filesystem::path& path, const std::vector<RepRecord>& rows) {
    spit(path, format_records(rows));
}

std::vector<RepRecord> read_records(const std::filesystem::path& path) {
    return parse_records(slurp(path), path.string());
}

void write_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
    spit(path, format_summary(rows));
}

std::vector<SummaryRow> read_summary(const std::filesystem::path& path) {
    return parse_summary(slurp(path), path.string());
}

void write_gcurve(const std::filesystem::path& path, const std::vector<GCurvePoint>& rows) {
    spit(path, format_gcurve(rows));
}

}  // namespace scanfdr
