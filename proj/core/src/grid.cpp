#include "striplab/grid.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "striplab/errors.hpp"

namespace striplab {

FieldGrid FieldGrid::make(double s_min, double s_max, int n_s, double t_min,
                          double t_max, int n_t) {
  if (n_s < 3 || n_t < 3) fail("GridTooShort", "need n_s, n_t >= 3");
  if (!(s_max > s_min) || !(t_max > t_min)) fail("BadArgument", "empty grid range");
  FieldGrid g;
  g.s_min = s_min;
  g.s_max = s_max;
  g.t_min = t_min;
  g.t_max = t_max;
  g.n_s = n_s;
  g.n_t = n_t;
  g.values.assign(static_cast<size_t>(n_s) * n_t, Vector4::Zero());
  return g;
}

Vector4 fd_s(const FieldGrid& g, int i, int j) {
  const double h = g.hs();
  if (i > 0 && i < g.n_s - 1) return (g.at(i + 1, j) - g.at(i - 1, j)) / (2.0 * h);
  if (i == 0)
    return (-1.5 * g.at(0, j) + 2.0 * g.at(1, j) - 0.5 * g.at(2, j)) / h;
  return (1.5 * g.at(i, j) - 2.0 * g.at(i - 1, j) + 0.5 * g.at(i - 2, j)) / h;
}

Vector4 fd_t(const FieldGrid& g, int i, int j) {
  const double h = g.ht();
  if (j > 0 && j < g.n_t - 1) return (g.at(i, j + 1) - g.at(i, j - 1)) / (2.0 * h);
  if (j == 0)
    return (-1.5 * g.at(i, 0) + 2.0 * g.at(i, 1) - 0.5 * g.at(i, 2)) / h;
  return (1.5 * g.at(i, j) - 2.0 * g.at(i, j - 1) + 0.5 * g.at(i, j - 2)) / h;
}

void save_grid_csv(const FieldGrid& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("IoFailure", "cannot write " + path);
  out << "s,t,tau,theta,x,y\n";
  char buf[192];
  for (int i = 0; i < g.n_s; ++i) {
    for (int j = 0; j < g.n_t; ++j) {
      const Vector4& v = g.at(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    g.s(i), g.t(j), v(0), v(1), v(2), v(3));
      out << buf;
    }
  }
  if (!out) fail("IoFailure", "write failed: " + path);
}

FieldGrid load_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IoFailure", "cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("s,t,tau,theta,x,y", 0) != 0)
    fail("IoFailure", "expected header s,t,tau,theta,x,y in " + path);
  std::vector<std::array<double, 6>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::array<double, 6> vals{};
    for (double& v : vals) {
      if (!std::getline(row, cell, ',')) fail("IoFailure", "short row in " + path);
      v = std::stod(cell);
    }
    rows.push_back(vals);
  }
  if (rows.size() < 9) fail("IoFailure", "grid CSV too small");
  // infer n_t from the first repeat of the s coordinate
  int n_t = 0;
  for (const auto& r : rows) {
    if (r[0] != rows[0][0]) break;
    ++n_t;
  }
  if (n_t < 3 || rows.size() % n_t != 0)
    fail("IoFailure", "grid CSV is not a full rectangular grid");
  const int n_s = static_cast<int>(rows.size()) / n_t;
  FieldGrid g = FieldGrid::make(rows.front()[0], rows.back()[0], n_s,
                                rows.front()[1], rows[n_t - 1][1], n_t);
  for (int i = 0; i < n_s; ++i)
    for (int j = 0; j < n_t; ++j) {
      const auto& r = rows[static_cast<size_t>(i) * n_t + j];
      g.at(i, j) = Vector4(r[2], r[3], r[4], r[5]);
    }
  return g;
}

}  // namespace striplab
