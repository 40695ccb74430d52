#ifndef EVDFIT_IO_HPP
#define EVDFIT_IO_HPP

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evdfit/fit.hpp"

// Dataset files and the machine-readable report document.
//
// Plain datasets are whitespace/newline-separated reals; progressive datasets
// are two columns per line (failure value, removal count). '#' starts a
// comment anywhere on a line. Parsing is locale-independent (decimal point
// only). All numbers in reports and written datasets carry 17 significant
// digits, enough to round-trip a double exactly.

namespace evdfit {

inline constexpr const char* tool_version = "0.1.0";

// Missing or unreadable file (an argument-level problem, distinct from
// malformed contents).
class file_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_number(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw file_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::vector<std::string_view>> tokenize_lines(std::string_view text) {
    std::vector<std::vector<std::string_view>> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j > i) tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (!tokens.empty()) lines.push_back(std::move(tokens));
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    return lines;
}

inline double parse_real(std::string_view token) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw std::domain_error("malformed number: '" + std::string(token) + "'");
    if (!std::isfinite(value))
        throw std::domain_error("dataset values must be finite: '" + std::string(token) + "'");
    return value;
}

inline int parse_count(std::string_view token) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0)
        throw std::domain_error("malformed removal count: '" + std::string(token) + "'");
    return value;
}

}  // namespace detail

inline std::vector<double> read_plain_dataset(const std::string& path) {
    const std::string text = detail::read_file(path);  // tokens are views into this
    std::vector<double> values;
    for (const auto& tokens : detail::tokenize_lines(text))
        for (const auto& t : tokens) values.push_back(detail::parse_real(t));
    if (values.size() < 2)
        throw std::domain_error("dataset must contain at least two values: " + path);
    return values;
}

struct ProgressiveRow {
    double value;
    int removals;
};

inline std::vector<ProgressiveRow> read_progressive_dataset(const std::string& path) {
    const std::string text = detail::read_file(path);
    std::vector<ProgressiveRow> rows;
    for (const auto& tokens : detail::tokenize_lines(text)) {
        if (tokens.size() != 2)
            throw std::domain_error("progressive dataset rows need two columns: " + path);
        rows.push_back({detail::parse_real(tokens[0]), detail::parse_count(tokens[1])});
    }
    if (rows.size() < 2)
        throw std::domain_error("dataset must contain at least two rows: " + path);
    return rows;
}

inline void write_plain_dataset(std::ostream& out, const std::vector<double>& values) {
    for (double v : values) out << format_number(v) << '\n';
}

inline void write_progressive_dataset(std::ostream& out, const std::vector<double>& values,
                                      const std::vector<int>& removals) {
    for (std::size_t i = 0; i < values.size(); ++i)
        out << format_number(values[i]) << ' ' << removals[i] << '\n';
}

// Compact JSON with 17-significant-digit numbers and a fixed key order.
class JsonBuilder {
public:
    JsonBuilder& begin_object() {
        separator();
        out_ += '{';
        fresh_ = true;
        return *this;
    }
    JsonBuilder& end_object() {
        out_ += '}';
        fresh_ = false;
        return *this;
    }
    JsonBuilder& begin_array() {
        separator();
        out_ += '[';
        fresh_ = true;
        return *this;
    }
    JsonBuilder& end_array() {
        out_ += ']';
        fresh_ = false;
        return *this;
    }
    JsonBuilder& key(std::string_view k) {
        separator();
        append_string(k);
        out_ += ':';
        fresh_ = true;
        return *this;
    }
    JsonBuilder& value(double v) {
        separator();
        out_ += format_number(v);
        fresh_ = false;
        return *this;
    }
    JsonBuilder& value(int v) {
        separator();
        out_ += std::to_string(v);
        fresh_ = false;
        return *this;
    }
    JsonBuilder& value(std::uint64_t v) {
        separator();
        out_ += std::to_string(v);
        fresh_ = false;
        return *this;
    }
    JsonBuilder& value(std::string_view v) {
        separator();
        append_string(v);
        fresh_ = false;
        return *this;
    }
    // keep string literals away from the bool overload
    JsonBuilder& value(const char* v) { return value(std::string_view(v)); }
    JsonBuilder& value(bool v) {
        separator();
        out_ += v ? "true" : "false";
        fresh_ = false;
        return *this;
    }
    const std::string& str() const noexcept { return out_; }

private:
    void separator() {
        if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[' &&
            out_.back() != ':')
            out_ += ',';
        fresh_ = false;
    }
    void append_string(std::string_view s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\r': out_ += "\\r"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }

    std::string out_;
    bool fresh_ = true;
};

// Echo of the inputs a report describes.
struct ReportInput {
    std::string source;  // dataset path, or "simulated"
    Family family;
    Regime regime;
    int n = 0;
    int r = 0;
    std::optional<double> censor_time;  // type1 only
    std::vector<int> removals;          // progressive only
};

struct ReportConfig {
    double tolerance = 0.0;
    int max_iterations = 0;
    double initial = 0.0;
    bool aitken = false;
};

namespace detail {

inline void append_input(JsonBuilder& j, const ReportInput& in) {
    j.key("input").begin_object();
    j.key("source").value(in.source);
    j.key("family").value(to_string(in.family));
    j.key("censoring").value(in.regime == Regime::complete ? "none" : to_string(in.regime));
    j.key("n").value(in.n);
    j.key("r").value(in.r);
    if (in.censor_time) j.key("time").value(*in.censor_time);
    if (!in.removals.empty()) {
        j.key("removals").begin_array();
        for (int ri : in.removals) j.value(ri);
        j.end_array();
    }
    j.end_object();
}

inline const char* primary_name(Family f) { return f == Family::weibull ? "beta" : "sigma"; }
inline const char* secondary_name(Family f) { return f == Family::weibull ? "theta" : "mu"; }

}  // namespace detail

// The single structured fit report emitted on standard output.
inline std::string render_fit_report(const ReportInput& input, const std::string& method,
                                     const ReportConfig& config, double primary,
                                     double secondary, int iterations,
                                     const std::string& termination, double final_residual,
                                     double log_likelihood,
                                     std::optional<std::uint64_t> seed = {}) {
    JsonBuilder j;
    j.begin_object();
    j.key("tool").value("evdfit");
    j.key("version").value(tool_version);
    j.key("command").value("fit");
    detail::append_input(j, input);
    j.key("method").value(method);
    j.key("config").begin_object();
    j.key("tolerance").value(config.tolerance);
    j.key("max_iterations").value(config.max_iterations);
    j.key("initial").value(config.initial);
    j.key("acceleration").value(config.aitken ? "aitken" : "off");
    j.end_object();
    j.key("estimates").begin_object();
    j.key(detail::primary_name(input.family)).value(primary);
    j.key(detail::secondary_name(input.family)).value(secondary);
    j.end_object();
    j.key("solver").begin_object();
    j.key("iterations").value(iterations);
    j.key("termination").value(termination);
    j.key("final_residual").value(final_residual);
    j.end_object();
    j.key("log_likelihood").value(log_likelihood);
    if (seed) j.key("seed").value(*seed);
    j.end_object();
    return j.str();
}

}  // namespace evdfit

#endif  // EVDFIT_IO_HPP
