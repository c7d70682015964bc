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

#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qtcnn {

/// Calendar day, stored as days since 1970-01-01.
class Date {
  public:
    constexpr Date() = default;
    constexpr explicit Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}
    Date(int year, unsigned month, unsigned day);

    /// Parses `YYYY-MM-DD`. Returns nullopt on malformed or invalid dates.
    static std::optional<Date> parse(std::string_view iso);

    std::string iso() const;
    int year() const;
    constexpr std::int32_t days() const { return days_; }

    Date plus_days(std::int32_t n) const { return Date(days_ + n); }

    friend constexpr auto operator<=>(Date, Date) = default;

  private:
    std::int32_t days_ = 0;
};

}  // namespace qtcnn
