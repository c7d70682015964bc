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


#include "qtcnn/datapipe/panel.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/format.hpp"

namespace qtcnn::datapipe {

namespace {

constexpr std::array<std::string_view, 10> kColumns{"Date",   "SecuritiesCode", "Open",
                                                    "High",   "Low",            "Close",
                                                    "Volume", "AdjustmentFactor", "SupervisionFlag",
                                                    "Target"};

enum Col { kDate, kCode, kOpen, kHigh, kLow, kClose, kVolume, kFactor, kFlag, kTarget };

// Splits one CSV record; double quotes group fields and "" escapes a quote.
std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

std::string_view trim_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
}

class Locator {
  public:
    Locator(const std::filesystem::path& path, std::size_t line) : path_(path.string()), line_(line) {}
    [[noreturn]] void fail(std::string_view column, const std::string& what) const {
        throw IngestionError(path_ + ":" + std::to_string(line_) + ": column " + std::string(column) + ": " + what);
    }

  private:
    std::string path_;
    std::size_t line_;
};

std::map<std::string, std::size_t> header_index(const std::vector<std::string>& header) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < header.size(); ++i) idx[header[i]] = i;
    return idx;
}

double parse_number(const std::string& field, std::string_view column, const Locator& loc, bool optional) {
    if (field.empty()) {
        if (optional) return kAbsent;
        loc.fail(column, "missing value");
    }
    const auto v = parse_double(field);
    if (!v || !std::isfinite(*v)) loc.fail(column, "cannot parse '" + field + "' as a number");
    return *v;
}

bool parse_bool(const std::string& field, std::string_view column, const Locator& loc) {
    if (field == "True" || field == "true" || field == "1") return true;
    if (field == "False" || field == "false" || field == "0" || field.empty()) return false;
    loc.fail(column, "cannot parse '" + field + "' as a boolean");
}

std::set<std::int64_t> load_universe(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read stock list " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IngestionError(path.string() + ": empty stock list");
    const auto idx = header_index(split_csv(trim_cr(line)));
    for (const char* c : {"SecuritiesCode", "Universe0"}) {
        if (!idx.count(c)) throw IngestionError(path.string() + ": missing column " + c);
    }
    std::set<std::int64_t> keep;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim_cr(line).empty()) continue;
        const auto f = split_csv(trim_cr(line));
        const Locator loc(path, lineno);
        const std::size_t ci = idx.at("SecuritiesCode"), ui = idx.at("Universe0");
        if (f.size() <= std::max(ci, ui)) loc.fail("SecuritiesCode", "row has too few fields");
        const auto code = parse_int<std::int64_t>(f[ci]);
        if (!code) loc.fail("SecuritiesCode", "cannot parse '" + f[ci] + "' as an integer");
        if (parse_bool(f[ui], "Universe0", loc)) keep.insert(*code);
    }
    return keep;
}

}  // namespace

void Panel::sort_canonical() {
    std::sort(rows.begin(), rows.end(), [](const PanelRow& a, const PanelRow& b) {
        return a.code != b.code ? a.code < b.code : a.date < b.date;
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].code == rows[i - 1].code && rows[i].date == rows[i - 1].date) {
            throw DataError("duplicate row for security " + std::to_string(rows[i].code) + " on " +
                            rows[i].date.iso());
        }
    }
}

bool Panel::is_sorted() const {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& a = rows[i - 1];
        const auto& b = rows[i];
        if (a.code > b.code || (a.code == b.code && !(a.date < b.date))) return false;
    }
    return true;
}

std::vector<Date> Panel::dates() const {
    std::vector<Date> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.date);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Panel load_panel(const std::filesystem::path& path, const std::optional<std::filesystem::path>& stock_list) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read panel " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IngestionError(path.string() + ": empty file");
    const auto idx = header_index(split_csv(trim_cr(line)));
    std::array<std::size_t, kColumns.size()> col{};
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
        const auto it = idx.find(std::string(kColumns[c]));
        if (it == idx.end()) throw IngestionError(path.string() + ": missing column " + std::string(kColumns[c]));
        col[c] = it->second;
    }
    const std::size_t width = *std::max_element(col.begin(), col.end()) + 1;

    std::optional<std::set<std::int64_t>> universe;
    if (stock_list) universe = load_universe(*stock_list);

    Panel panel;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto text = trim_cr(line);
        if (text.empty()) continue;
        const auto f = split_csv(text);
        const Locator loc(path, lineno);
        if (f.size() < width) loc.fail("Date", "row has " + std::to_string(f.size()) + " fields");

        PanelRow r;
        const auto date = Date::parse(f[col[kDate]]);
        if (!date) loc.fail("Date", "cannot parse '" + f[col[kDate]] + "' as YYYY-MM-DD");
        r.date = *date;
        const auto code = parse_int<std::int64_t>(f[col[kCode]]);
        if (!code) loc.fail("SecuritiesCode", "cannot parse '" + f[col[kCode]] + "' as an integer");
        r.code = *code;
        r.open = parse_number(f[col[kOpen]], "Open", loc, true);
        r.high = parse_number(f[col[kHigh]], "High", loc, true);
        r.low = parse_number(f[col[kLow]], "Low", loc, true);
        r.close = parse_number(f[col[kClose]], "Close", loc, true);
        r.volume = parse_number(f[col[kVolume]], "Volume", loc, true);
        const double factor = parse_number(f[col[kFactor]], "AdjustmentFactor", loc, true);
        r.adjustment_factor = present(factor) ? factor : 1.0;
        r.supervision_flag = parse_bool(f[col[kFlag]], "SupervisionFlag", loc);
        r.target = parse_number(f[col[kTarget]], "Target", loc, true);

        for (auto [value, name] : {std::pair{r.open, "Open"}, std::pair{r.high, "High"}, std::pair{r.low, "Low"},
                                   std::pair{r.close, "Close"}}) {
            if (present(value) && !(value > 0.0)) loc.fail(name, "price must be positive");
        }
        if (present(r.volume) && r.volume < 0.0) loc.fail("Volume", "volume must be non-negative");
        if (!(r.adjustment_factor > 0.0)) loc.fail("AdjustmentFactor", "factor must be positive");

        if (universe && !universe->count(r.code)) continue;
        panel.rows.push_back(r);
    }
    panel.sort_canonical();
    return panel;
}

void write_panel_csv(const Panel& panel, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (std::size_t c = 0; c < kColumns.size(); ++c) out << (c ? "," : "") << kColumns[c];
    out << '\n';
    auto num = [](double v) { return present(v) ? format_double(v) : std::string(); };
    // Rows go out in (date, code) order, like the original competition files.
    std::vector<const PanelRow*> order;
    order.reserve(panel.rows.size());
    for (const auto& r : panel.rows) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(), [](const PanelRow* a, const PanelRow* b) {
        return a->date != b->date ? a->date < b->date : a->code < b->code;
    });
    for (const PanelRow* r : order) {
        out << r->date.iso() << ',' << r->code << ',' << num(r->open) << ',' << num(r->high) << ',' << num(r->low)
            << ',' << num(r->close) << ',' << num(r->volume) << ',' << format_double(r->adjustment_factor) << ','
            << (r->supervision_flag ? "True" : "False") << ',' << num(r->target) << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace qtcnn::datapipe
