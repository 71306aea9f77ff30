#include "netlsd/time_grid.hpp"

#include <cmath>
#include <string>

#include "netlsd/errors.hpp"

namespace netlsd {

GridSpacing grid_spacing_from_string(std::string_view s) {
  if (s == "log" || s == "logarithmic") return GridSpacing::Logarithmic;
  if (s == "lin" || s == "linear") return GridSpacing::Linear;
  throw ArgumentError("unknown grid spacing '" + std::string(s) + "' (expected log or lin)");
}

std::string_view to_string(GridSpacing s) {
  return s == GridSpacing::Logarithmic ? "log" : "lin";
}

TimeGrid make_time_grid(int count, double t_min, double t_max, GridSpacing spacing) {
  if (count < 1) throw ArgumentError("time grid needs at least one point");
  if (t_min > t_max || (count > 1 && t_min == t_max))
    throw ArgumentError("time grid needs t_min < t_max");
  if (spacing == GridSpacing::Logarithmic && t_min <= 0.0)
    throw ArgumentError("logarithmic time grid needs t_min > 0");

  TimeGrid g;
  g.count = count;
  g.t_min = t_min;
  g.t_max = t_max;
  g.spacing = spacing;
  g.values.resize(static_cast<std::size_t>(count));
  if (count == 1) {
    g.values[0] = t_min;
    return g;
  }
  const double denom = static_cast<double>(count - 1);
  if (spacing == GridSpacing::Linear) {
    for (int i = 0; i < count; ++i)
      g.values[static_cast<std::size_t>(i)] =
          t_min + (t_max - t_min) * (static_cast<double>(i) / denom);
  } else {
    const double e0 = std::log10(t_min);
    const double e1 = std::log10(t_max);
    for (int i = 0; i < count; ++i)
      g.values[static_cast<std::size_t>(i)] =
          std::pow(10.0, e0 + (e1 - e0) * (static_cast<double>(i) / denom));
  }
  // Pin the endpoints so round-tripping through the grid parameters is
  // bit-exact.
  g.values.front() = t_min;
  g.values.back() = t_max;
  return g;
}

TimeGrid default_heat_grid() { return make_time_grid(250, 1e-2, 1e2, GridSpacing::Logarithmic); }

TimeGrid default_wave_grid(int count) {
  if (count < 1) throw ArgumentError("time grid needs at least one point");
  constexpr double kTau = 6.283185307179586476925286766559;
  TimeGrid g;
  g.count = count;
  g.spacing = GridSpacing::Linear;
  g.values.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    g.values[static_cast<std::size_t>(i)] = kTau * static_cast<double>(i) / static_cast<double>(count);
  g.t_min = g.values.front();
  g.t_max = g.values.back();
  return g;
}

}  // namespace netlsd
