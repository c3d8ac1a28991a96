#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "afsec/network.hpp"

namespace afsec {

/// Parse failure in a network description; `key` names the offending
/// entry ("" when the problem is not tied to one key).
struct NetParseError : std::runtime_error {
    std::string key;
    NetParseError(std::string k, const std::string& msg)
        : std::runtime_error(msg), key(std::move(k)) {}
};

/// Parses the flat key-value network description:
///   L, N, h_s, h_mid (comma-separated, empty or omitted when L = 1),
///   h_t, h_e, P_s, P, sigma2
/// one `key = value` pair per line; '#' starts a comment. Values accept
/// shortest round-trip decimals and 0x hex floats, so files written by
/// write_network parse back bit-exactly.
EcgalNetwork parse_network(std::string_view text);

/// parse_network over a file's contents.
EcgalNetwork load_network(const std::filesystem::path& path);

/// Serializes a network in the format parse_network accepts; doubles are
/// written as shortest round-trip decimals.
std::string write_network(const EcgalNetwork& net);

/// Shortest decimal that parses back to exactly v.
std::string format_double(double v);

/// Strict double parser (full-string match); accepts 0x hex floats.
/// Throws std::invalid_argument on malformed input.
double parse_double(std::string_view text);

}  // namespace afsec
