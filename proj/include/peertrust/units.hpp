#pragma once

namespace peertrust {

// The simulator clock runs in hours; the scoring curves take hours, months
// and years respectively.
inline constexpr double kHoursPerMonth = 720.0;
inline constexpr double kHoursPerYear = 8760.0;

struct Hours {
  double value = 0.0;
};

struct Months {
  double value = 0.0;
};

struct Years {
  double value = 0.0;
};

constexpr Months to_months(Hours h) noexcept { return Months{h.value / kHoursPerMonth}; }
constexpr Years to_years(Hours h) noexcept { return Years{h.value / kHoursPerYear}; }

}  // namespace peertrust
