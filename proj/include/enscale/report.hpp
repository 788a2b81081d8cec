#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "enscale/errors.hpp"
#include "enscale/ratio.hpp"

// Deterministic result envelope shared by every CLI subcommand. Field order
// is fixed by insertion and numbers are formatted by one rule, so identical
// inputs always serialize to identical bytes in both JSON and CSV.

namespace enscale::report {

/// Canonical number rendering: decimal with 15 digits after the leading
/// significant digit inside [1e-9, 1e9), scientific outside, trailing
/// zeros stripped.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";

    char buf[48];
    const double magnitude = std::fabs(v);
    const bool scientific = magnitude >= 1e9 || magnitude < 1e-9;
    if (scientific) {
        std::snprintf(buf, sizeof buf, "%.15e", v);
        std::string s = buf;
        // strip trailing zeros of the mantissa: 1.250000000000000e-10 -> 1.25e-10
        const std::size_t epos = s.find('e');
        std::size_t last = epos - 1;
        while (s[last] == '0') --last;
        if (s[last] == '.') --last;
        return s.substr(0, last + 1) + s.substr(epos);
    }

    const int leading = static_cast<int>(std::floor(std::log10(magnitude)));
    int decimals = 15 - leading;
    if (decimals < 0) decimals = 0;
    if (decimals > 40) decimals = 40;
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s.find('.') != std::string::npos) {
        std::size_t last = s.size() - 1;
        while (s[last] == '0') --last;
        if (s[last] == '.') --last;
        s.resize(last + 1);
    }
    return s;
}

inline std::string escape_json(std::string_view raw) {
    std::string out;
    out.reserve(raw.size() + 2);
    for (const char c : raw) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

/// One named value; `quoted` marks JSON strings vs bare numerals.
struct Field {
    std::string key;
    std::string value;
    bool quoted = false;
};

inline Field number_field(std::string key, double v) {
    return Field{std::move(key), format_double(v), false};
}

inline Field integer_field(std::string key, long long v) {
    return Field{std::move(key), std::to_string(v), false};
}

inline Field text_field(std::string key, std::string v) {
    return Field{std::move(key), std::move(v), true};
}

inline Field ratio_field(std::string key, const Ratio& r) {
    return Field{std::move(key), r.str(), true};
}

/// A named table: fixed column order, cells pre-formatted as bare numerals.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

using ResultItem = std::variant<Field, Table>;

struct Envelope {
    std::string command;
    std::vector<Field> inputs;
    std::vector<ResultItem> results;
    std::vector<std::string> warnings;
};

namespace detail {

inline void append_field_json(std::string& out, const Field& f) {
    out += '"';
    out += escape_json(f.key);
    out += "\":";
    if (f.quoted) {
        out += '"';
        out += escape_json(f.value);
        out += '"';
    } else {
        out += f.value;
    }
}

inline void append_table_json(std::string& out, const Table& t) {
    out += '"';
    out += escape_json(t.name);
    out += "\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (r) out += ',';
        out += '{';
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) out += ',';
            out += '"';
            out += escape_json(t.columns[c]);
            out += "\":";
            out += t.rows[r][c];
        }
        out += '}';
    }
    out += ']';
}

inline void append_results_json(std::string& out, const Envelope& e) {
    out += '{';
    bool first = true;
    for (const auto& item : e.results) {
        if (!first) out += ',';
        first = false;
        if (std::holds_alternative<Field>(item))
            append_field_json(out, std::get<Field>(item));
        else
            append_table_json(out, std::get<Table>(item));
    }
    out += '}';
}

}  // namespace detail

/// JSON rendering of the envelope; with `quiet` only the results object.
inline std::string to_json(const Envelope& e, bool quiet = false) {
    std::string out;
    if (quiet) {
        detail::append_results_json(out, e);
        out += '\n';
        return out;
    }
    out += "{\"command\":\"";
    out += escape_json(e.command);
    out += "\",\"inputs\":{";
    for (std::size_t i = 0; i < e.inputs.size(); ++i) {
        if (i) out += ',';
        detail::append_field_json(out, e.inputs[i]);
    }
    out += "},\"results\":";
    detail::append_results_json(out, e);
    out += ",\"warnings\":[";
    for (std::size_t i = 0; i < e.warnings.size(); ++i) {
        if (i) out += ',';
        out += '"';
        out += escape_json(e.warnings[i]);
        out += '"';
    }
    out += "]}\n";
    return out;
}

namespace detail {

inline std::string csv_cell(std::string_view raw) {
    if (raw.find_first_of(",\"\n") == std::string_view::npos) return std::string(raw);
    std::string out = "\"";
    for (const char c : raw) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

/// CSV rendering: '#'-prefixed metadata lines, then one header+rows section
/// per table; consecutive scalar results are grouped into single-row tables.
/// With `quiet` the metadata lines are dropped.
inline std::string to_csv(const Envelope& e, bool quiet = false) {
    std::string out;
    if (!quiet) {
        out += "# command: " + e.command + "\n";
        out += "# inputs:";
        for (const auto& f : e.inputs) out += " " + f.key + "=" + f.value;
        out += '\n';
        for (const auto& w : e.warnings) out += "# warning: " + w + "\n";
    }

    std::vector<const Field*> pending;
    int sections = 0;
    const auto begin_section = [&] {
        if (sections++ > 0) out += '\n';
    };
    const auto flush_scalars = [&] {
        if (pending.empty()) return;
        begin_section();
        for (std::size_t i = 0; i < pending.size(); ++i) {
            if (i) out += ',';
            out += detail::csv_cell(pending[i]->key);
        }
        out += '\n';
        for (std::size_t i = 0; i < pending.size(); ++i) {
            if (i) out += ',';
            out += detail::csv_cell(pending[i]->value);
        }
        out += '\n';
        pending.clear();
    };

    for (const auto& item : e.results) {
        if (std::holds_alternative<Field>(item)) {
            pending.push_back(&std::get<Field>(item));
            continue;
        }
        flush_scalars();
        begin_section();
        const Table& t = std::get<Table>(item);
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) out += ',';
            out += detail::csv_cell(t.columns[c]);
        }
        out += '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                out += detail::csv_cell(row[c]);
            }
            out += '\n';
        }
    }
    flush_scalars();
    return out;
}

/// Structured error object for exit-1 paths.
inline std::string error_to_json(const Error& err) {
    std::string out = "{\"error\":{\"code\":\"";
    out += escape_json(err.code_name());
    out += "\",\"message\":\"";
    out += escape_json(err.what());
    out += "\",\"parameter\":\"";
    out += escape_json(err.parameter());
    out += "\"}}\n";
    return out;
}

inline std::string error_to_csv(const Error& err) {
    std::string out = "error_code,message,parameter\n";
    out += detail::csv_cell(err.code_name());
    out += ',';
    out += detail::csv_cell(err.what());
    out += ',';
    out += detail::csv_cell(err.parameter());
    out += '\n';
    return out;
}

}  // namespace enscale::report
