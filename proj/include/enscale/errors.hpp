#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace enscale {

/// Stable error codes surfaced by every module (and by the CLI as exit-1
/// error objects).
enum class Errc {
    parameter_domain,   // argument outside its documented domain
    range_overflow,     // result not representable in double
    parse,              // malformed input document
    empty_graph,        // edge-list document with no edges
    disconnected,       // metric requires a connected graph
    degenerate_graph,   // fewer than two nodes
    entropy_undefined,  // log base (path length) <= 1
    io,                 // file could not be read
};

constexpr std::string_view errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::parameter_domain:  return "PARAMETER_DOMAIN";
        case Errc::range_overflow:    return "RANGE_OVERFLOW";
        case Errc::parse:             return "PARSE_ERROR";
        case Errc::empty_graph:       return "EMPTY_GRAPH";
        case Errc::disconnected:      return "DISCONNECTED";
        case Errc::degenerate_graph:  return "DEGENERATE_GRAPH";
        case Errc::entropy_undefined: return "ENTROPY_UNDEFINED";
        case Errc::io:                return "IO_ERROR";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, std::string parameter = {})
        : std::runtime_error(message), code_(code), parameter_(std::move(parameter)) {}

    Errc code() const noexcept { return code_; }
    std::string_view code_name() const noexcept { return errc_name(code_); }

    /// Name of the offending parameter, empty when not applicable.
    const std::string& parameter() const noexcept { return parameter_; }

private:
    Errc code_;
    std::string parameter_;
};

namespace detail {

inline void require(bool ok, Errc code, const std::string& message,
                    const std::string& parameter = {}) {
    if (!ok) throw Error(code, message, parameter);
}

}  // namespace detail

}  // namespace enscale
