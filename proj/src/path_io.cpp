#include "reflkit/path_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace reflkit {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

void write_path_csv(std::ostream& out, const SamplePath& path) {
    out << "# seed=" << path.seed << '\n';
    out << "# delta=" << format_double(path.delta) << " sigma=" << format_double(path.sigma)
        << " mode=" << to_string(path.barrier.mode())
        << " lower=" << format_double(path.barrier.lower());
    if (const auto u = path.barrier.upper()) out << " upper=" << format_double(*u);
    out << '\n';
    out << "t,x,l_reg,r_reg\n";
    for (std::size_t k = 0; k < path.size(); ++k) {
        out << format_double(path.times[k]) << ',' << format_double(path.x[k]) << ','
            << format_double(path.l_reg[k]) << ',' << format_double(path.r_reg[k]) << '\n';
    }
}

namespace {

void parse_metadata(std::string_view line, std::map<std::string, std::string>& meta) {
    line.remove_prefix(1);  // '#'
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && line[pos] == ' ') ++pos;
        const auto end = std::min(line.find(' ', pos), line.size());
        const auto token = line.substr(pos, end - pos);
        const auto eq = token.find('=');
        if (eq != std::string_view::npos) {
            meta[std::string(token.substr(0, eq))] = std::string(token.substr(eq + 1));
        }
        pos = end;
    }
}

}  // namespace

SamplePath read_path_csv(std::istream& in) {
    std::map<std::string, std::string> meta;
    std::string line;
    bool header_seen = false;
    SamplePath path;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            parse_metadata(line, meta);
            continue;
        }
        if (!header_seen) {
            if (line != "t,x,l_reg,r_reg") {
                throw std::invalid_argument("path CSV: expected header 't,x,l_reg,r_reg', got '" +
                                            line + "'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw std::invalid_argument("path CSV line " + std::to_string(line_no) +
                                        ": expected 4 fields");
        }
        path.times.push_back(parse_double(fields[0]));
        path.x.push_back(parse_double(fields[1]));
        path.l_reg.push_back(parse_double(fields[2]));
        path.r_reg.push_back(parse_double(fields[3]));
    }
    if (!header_seen) throw std::invalid_argument("path CSV: missing header");

    auto get = [&](const char* key) -> std::optional<std::string> {
        const auto it = meta.find(key);
        return it == meta.end() ? std::nullopt : std::optional<std::string>(it->second);
    };

    if (const auto s = get("seed")) path.seed = std::stoull(*s);
    if (const auto s = get("sigma")) path.sigma = parse_double(*s);
    if (const auto s = get("delta")) {
        path.delta = parse_double(*s);
    } else if (path.times.size() >= 2) {
        path.delta = path.times[1] - path.times[0];
    }

    const double lower = get("lower") ? parse_double(*get("lower")) : 0.0;
    const auto mode = get("mode") ? parse_barrier_mode(*get("mode")) : BarrierMode::two_sided;
    if (mode == BarrierMode::two_sided) {
        const double upper = get("upper") ? parse_double(*get("upper")) : 3.0;
        path.barrier = BarrierConfig::two_sided(lower, upper);
    } else {
        path.barrier = BarrierConfig::one_sided(lower);
    }
    return path;
}

}  // namespace reflkit
