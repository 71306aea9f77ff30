#pragma once

#include <string_view>
#include <vector>

namespace netlsd {

enum class GridSpacing { Logarithmic, Linear };

GridSpacing grid_spacing_from_string(std::string_view s);
std::string_view to_string(GridSpacing s);

/// Ascending evaluation scales for the trace kernels, together with the
/// parameters that generated them (kept for file headers and compatibility
/// checks).
struct TimeGrid {
  std::vector<double> values;
  int count = 0;
  double t_min = 0.0;
  double t_max = 0.0;
  GridSpacing spacing = GridSpacing::Logarithmic;
};

/// count >= 1 points between t_min and t_max inclusive; logarithmic spacing
/// distributes the base-10 exponents evenly. count == 1 collapses to
/// [t_min].
TimeGrid make_time_grid(int count, double t_min, double t_max, GridSpacing spacing);

/// 250 logarithmically spaced scales over [1e-2, 1e2].
TimeGrid default_heat_grid();

/// `count` scales t_i = 2*pi*i/count, i.e. a linear grid over [0, 2*pi)
/// that leaves the period endpoint out.
TimeGrid default_wave_grid(int count = 250);

}  // namespace netlsd
