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


#include "qtcnn/datapipe/sample_set.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::datapipe {

namespace {

constexpr std::array<char, 8> kMagic{'Q', 'T', 'S', 'A', 'M', 'P', 'L', 'E'};
constexpr std::uint32_t kVersion = 1;

class Writer {
  public:
    explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary), path_(path) {
        if (!out_) throw IoError("cannot write " + path.string());
    }
    template <class T>
    void pod(const T& v) {
        out_.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
    template <class T>
    void array(const std::vector<T>& v) {
        pod<std::uint64_t>(v.size());
        out_.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
    }
    void string(const std::string& s) {
        pod<std::uint64_t>(s.size());
        out_.write(s.data(), static_cast<std::streamsize>(s.size()));
    }
    void finish() {
        out_.flush();
        if (!out_) throw IoError("write failed for " + path_.string());
    }

  private:
    std::ofstream out_;
    std::filesystem::path path_;
};

class Reader {
  public:
    explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary), path_(path) {
        if (!in_) throw IoError("cannot read " + path.string());
    }
    template <class T>
    T pod() {
        T v{};
        in_.read(reinterpret_cast<char*>(&v), sizeof v);
        check();
        return v;
    }
    template <class T>
    std::vector<T> array() {
        const auto n = pod<std::uint64_t>();
        if (n > (std::uint64_t{1} << 34)) throw DataError(path_.string() + ": corrupt array length");
        std::vector<T> v(n);
        in_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
        check();
        return v;
    }
    std::string string() {
        const auto n = pod<std::uint64_t>();
        if (n > (1u << 20)) throw DataError(path_.string() + ": corrupt string length");
        std::string s(n, '\0');
        in_.read(s.data(), static_cast<std::streamsize>(n));
        check();
        return s;
    }

  private:
    void check() {
        if (!in_) throw DataError(path_.string() + ": truncated sample file");
    }
    std::ifstream in_;
    std::filesystem::path path_;
};

}  // namespace

std::vector<std::size_t> SampleSet::labeled_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 0 || labels[i] == 1) out.push_back(i);
    }
    return out;
}

SampleSet SampleSet::subset(std::span<const std::size_t> indices) const {
    SampleSet out;
    out.split = split;
    out.seq_len = seq_len;
    out.n_features = n_features;
    out.feature_names = feature_names;
    const std::size_t w = window_size();
    out.sequences.reserve(indices.size() * w);
    for (std::size_t i : indices) {
        if (i >= size()) throw ArgumentError("sample index out of range");
        const auto win = window(i);
        out.sequences.insert(out.sequences.end(), win.begin(), win.end());
        out.labels.push_back(labels[i]);
        out.keys.push_back(keys[i]);
        out.targets.push_back(targets[i]);
        out.tradable.push_back(tradable[i]);
        const auto r = raw(i);
        out.raw_last.insert(out.raw_last.end(), r.begin(), r.end());
    }
    return out;
}

void SampleSet::validate() const {
    const std::size_t n = size();
    if (sequences.size() != n * window_size() || labels.size() != n || targets.size() != n ||
        tradable.size() != n || raw_last.size() != n * kRawColumns) {
        throw DataError("sample set arrays have inconsistent lengths");
    }
    if (feature_names.size() != n_features) throw DataError("sample set feature names do not match F");
    if (n > 0 && seq_len == 0) throw DataError("sample set has zero sequence length");
    for (auto l : labels) {
        if (l != 0 && l != 1 && l != kUnlabeled) throw DataError("sample label outside {0, 1, unlabeled}");
    }
}

void write_sample_set(const SampleSet& set, const std::filesystem::path& path) {
    set.validate();
    Writer w(path);
    for (char c : kMagic) w.pod(c);
    w.pod(kVersion);
    w.string(set.split);
    w.pod<std::uint64_t>(set.seq_len);
    w.pod<std::uint64_t>(set.n_features);
    w.pod<std::uint64_t>(set.feature_names.size());
    for (const auto& name : set.feature_names) w.string(name);
    w.array(set.sequences);
    w.array(set.labels);
    std::vector<std::int32_t> dates;
    std::vector<std::int64_t> codes;
    for (const auto& k : set.keys) {
        dates.push_back(k.date.days());
        codes.push_back(k.code);
    }
    w.array(dates);
    w.array(codes);
    w.array(set.targets);
    w.array(set.tradable);
    w.array(set.raw_last);
    w.finish();
}

SampleSet read_sample_set(const std::filesystem::path& path) {
    Reader r(path);
    std::array<char, 8> magic{};
    for (char& c : magic) c = r.pod<char>();
    if (magic != kMagic) throw DataError(path.string() + ": not a sample file");
    if (r.pod<std::uint32_t>() != kVersion) throw DataError(path.string() + ": unsupported sample file version");
    SampleSet set;
    set.split = r.string();
    set.seq_len = r.pod<std::uint64_t>();
    set.n_features = r.pod<std::uint64_t>();
    const auto n_names = r.pod<std::uint64_t>();
    if (n_names > 4096) throw DataError(path.string() + ": corrupt feature count");
    for (std::uint64_t i = 0; i < n_names; ++i) set.feature_names.push_back(r.string());
    set.sequences = r.array<double>();
    set.labels = r.array<std::int8_t>();
    const auto dates = r.array<std::int32_t>();
    const auto codes = r.array<std::int64_t>();
    if (dates.size() != codes.size()) throw DataError(path.string() + ": key arrays differ in length");
    for (std::size_t i = 0; i < dates.size(); ++i) set.keys.push_back({Date(dates[i]), codes[i]});
    set.targets = r.array<double>();
    set.tradable = r.array<std::uint8_t>();
    set.raw_last = r.array<double>();
    set.validate();
    return set;
}

}  // namespace qtcnn::datapipe
