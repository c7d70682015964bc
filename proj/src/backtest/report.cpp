// Copyright 2026 The QTCNN Bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qtcnn/backtest/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/format.hpp"

namespace qtcnn::backtest {

namespace {

constexpr const char* kTableHeader = "date,return";

}  // namespace

std::string fingerprint(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& [k, v] : entries) {
        feed(k);
        feed("=");
        feed(v);
        feed("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_report(const Report& r) {
    std::ostringstream out;
    out << "model=" << r.model << '\n'
        << "k=" << r.k << '\n'
        << "seed=" << r.seed << '\n'
        << "n_days=" << r.n_days << '\n'
        << "sharpe=" << format_double(r.sharpe) << '\n'
        << "ci_low=" << format_double(r.ci_low) << '\n'
        << "ci_high=" << format_double(r.ci_high) << '\n'
        << "config_fingerprint=" << r.config_fingerprint << '\n'
        << kTableHeader << '\n';
    for (const auto& d : r.returns) out << d.date.iso() << ',' << format_double(d.value) << '\n';
    return out.str();
}

Report parse_report(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Report r;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw DataError("report line " + std::to_string(line_no) + ": " + what);
    };
    auto field = [&](const char* key) {
        ++line_no;
        if (!std::getline(in, line)) fail(std::string("missing field ") + key);
        const std::string prefix = std::string(key) + "=";
        if (line.rfind(prefix, 0) != 0) fail(std::string("expected field ") + key);
        return line.substr(prefix.size());
    };
    auto real = [&](const char* key) {
        const auto v = parse_double(field(key));
        if (!v) fail(std::string("bad value for ") + key);
        return *v;
    };
    auto integer = [&](const char* key) {
        const auto v = parse_int<std::uint64_t>(field(key));
        if (!v) fail(std::string("bad value for ") + key);
        return *v;
    };
    r.model = field("model");
    r.k = integer("k");
    r.seed = integer("seed");
    r.n_days = integer("n_days");
    r.sharpe = real("sharpe");
    r.ci_low = real("ci_low");
    r.ci_high = real("ci_high");
    r.config_fingerprint = field("config_fingerprint");
    ++line_no;
    if (!std::getline(in, line) || line != kTableHeader) fail("expected return table header");
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) fail("expected date,return");
        const auto date = Date::parse(std::string_view(line).substr(0, comma));
        const auto value = parse_double(std::string_view(line).substr(comma + 1));
        if (!date || !value) fail("bad return row");
        r.returns.push_back({*date, *value});
    }
    if (r.returns.size() != r.n_days) fail("n_days does not match the return table");
    return r;
}

void write_report(const Report& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write report " + path.string());
    out << format_report(report);
    if (!out) throw IoError("write failed for " + path.string());
}

Report read_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read report " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_report(ss.str());
}

}  // namespace qtcnn::backtest
