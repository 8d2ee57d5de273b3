#pragma once

#include <string>
#include <vector>

#include "striplab/contact.hpp"

namespace striplab {

// Sampled map v(s,t) in R^4 on a uniform rectangular grid, row-major in s then
// t.  For half-disk energy grids the two coordinates are (rho, phi) instead of
// (s, t); the CSV format keeps the s,t column names either way.
struct FieldGrid {
  double s_min = 0.0, s_max = 1.0;
  double t_min = 0.0, t_max = 1.0;
  int n_s = 0, n_t = 0;
  std::vector<Vector4> values;

  static FieldGrid make(double s_min, double s_max, int n_s, double t_min,
                        double t_max, int n_t);

  double hs() const { return (s_max - s_min) / (n_s - 1); }
  double ht() const { return (t_max - t_min) / (n_t - 1); }
  double s(int i) const { return s_min + hs() * i; }
  double t(int j) const { return t_min + ht() * j; }

  Vector4& at(int i, int j) { return values[static_cast<size_t>(i) * n_t + j]; }
  const Vector4& at(int i, int j) const {
    return values[static_cast<size_t>(i) * n_t + j];
  }
  std::vector<Vector4> row(int i) const {
    return {values.begin() + static_cast<long>(i) * n_t,
            values.begin() + static_cast<long>(i + 1) * n_t};
  }
};

// Second-order finite differences (centered inside, one-sided at edges).
Vector4 fd_s(const FieldGrid& g, int i, int j);
Vector4 fd_t(const FieldGrid& g, int i, int j);

// CSV with header "s,t,tau,theta,x,y", row-major in s then t.
void save_grid_csv(const FieldGrid& g, const std::string& path);
FieldGrid load_grid_csv(const std::string& path);

}  // namespace striplab
