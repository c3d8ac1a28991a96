#include "afsec/net_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace afsec {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    std::string_view body = text;
    bool negative = false;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    double v = 0.0;
    std::from_chars_result res{};
    if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
        body.remove_prefix(2);
        res = std::from_chars(body.data(), body.data() + body.size(), v,
                              std::chars_format::hex);
    } else {
        res = std::from_chars(body.data(), body.data() + body.size(), v);
    }
    if (res.ec != std::errc{} || res.ptr != body.data() + body.size())
        throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    return negative ? -v : v;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

constexpr std::array<std::string_view, 9> kKeys = {"L",   "N",   "h_s", "h_mid", "h_t",
                                                   "h_e", "P_s", "P",   "sigma2"};

bool known_key(std::string_view k) {
    for (auto key : kKeys)
        if (key == k) return true;
    return false;
}

double parse_value(const std::string& key, std::string_view text) {
    try {
        return parse_double(text);
    } catch (const std::invalid_argument& e) {
        throw NetParseError(key, "key '" + key + "': " + e.what());
    }
}

int parse_int(const std::string& key, std::string_view text) {
    const double v = parse_value(key, text);
    if (!(std::isfinite(v)) || v != std::floor(v) || std::abs(v) > 1e9)
        throw NetParseError(key, "key '" + key + "' must be an integer");
    return static_cast<int>(v);
}

}  // namespace

EcgalNetwork parse_network(std::string_view text) {
    std::map<std::string, std::string, std::less<>> entries;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw NetParseError("", "line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!known_key(key))
            throw NetParseError(key, "unknown key '" + key + "'");
        if (!entries.emplace(key, value).second)
            throw NetParseError(key, "duplicate key '" + key + "'");
    }

    const auto require = [&](std::string_view key) -> const std::string& {
        const auto it = entries.find(key);
        if (it == entries.end())
            throw NetParseError(std::string(key), "missing key '" + std::string(key) + "'");
        return it->second;
    };

    EcgalNetwork net;
    net.L = parse_int("L", require("L"));
    net.N = parse_int("N", require("N"));
    net.h_s = parse_value("h_s", require("h_s"));
    net.h_t = parse_value("h_t", require("h_t"));
    net.h_e = parse_value("h_e", require("h_e"));
    net.P_s = parse_value("P_s", require("P_s"));
    net.P = parse_value("P", require("P"));
    net.sigma2 = parse_value("sigma2", require("sigma2"));

    net.h_mid.clear();
    if (const auto it = entries.find("h_mid"); it != entries.end()) {
        std::string_view rest = it->second;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            if (!item.empty()) net.h_mid.push_back(parse_value("h_mid", item));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    } else if (net.L > 1) {
        throw NetParseError("h_mid", "missing key 'h_mid'");
    }

    try {
        net.validate();
    } catch (const std::invalid_argument& e) {
        throw NetParseError("", std::string("invalid network: ") + e.what());
    }
    return net;
}

EcgalNetwork load_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw NetParseError("", "cannot open network file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

std::string write_network(const EcgalNetwork& net) {
    std::string out;
    out += "L = " + std::to_string(net.L) + "\n";
    out += "N = " + std::to_string(net.N) + "\n";
    out += "h_s = " + format_double(net.h_s) + "\n";
    out += "h_mid = ";
    for (std::size_t i = 0; i < net.h_mid.size(); ++i) {
        if (i) out += ",";
        out += format_double(net.h_mid[i]);
    }
    out += "\n";
    out += "h_t = " + format_double(net.h_t) + "\n";
    out += "h_e = " + format_double(net.h_e) + "\n";
    out += "P_s = " + format_double(net.P_s) + "\n";
    out += "P = " + format_double(net.P) + "\n";
    out += "sigma2 = " + format_double(net.sigma2) + "\n";
    return out;
}

}  // namespace afsec
