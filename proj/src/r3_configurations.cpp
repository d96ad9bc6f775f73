#include "r3_configurations.hpp"

#include <array>
#include <bitset>
#include <cmath>
#include <numbers>

namespace vkslice::detail {

namespace {

struct Vec {
  double x, y;
};

double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
Vec sub(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }

// Intersection of the lines p + t*u and q + s*v.
Vec meet(Vec p, Vec u, Vec q, Vec v) {
  const double t = cross(sub(q, p), v) / cross(u, v);
  return {p.x + t * u.x, p.y + t * u.y};
}

int key(const R3Configuration& c) {
  return (c.top_alpha_first ? 1 : 0) | (c.middle_alpha_first ? 2 : 0) | (c.bottom_beta_first ? 4 : 0) |
         (c.sign_alpha > 0 ? 8 : 0) | (c.sign_beta > 0 ? 16 : 0) | (c.sign_gamma > 0 ? 32 : 0);
}

// Sweeps directions of three straight strands (top, middle, bottom) over a
// fine grid and records every combinatorial picture they produce. The sign
// of a crossing is the sign of cross(over, under).
std::bitset<64> build_table() {
  std::bitset<64> table;
  constexpr int steps = 48;
  const double pi = std::numbers::pi;
  auto sgn = [](double v) { return v > 0 ? 1 : -1; };
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j)
      for (int k = 0; k < steps; ++k) {
        const double ti = 2 * pi * i / steps + 0.013;
        const double tj = 2 * pi * j / steps + 0.029;
        const double tk = 2 * pi * k / steps + 0.047;
        const Vec top{std::cos(ti), std::sin(ti)};
        const Vec mid{std::cos(tj), std::sin(tj)};
        const Vec bot{std::cos(tk), std::sin(tk)};
        if (std::abs(cross(top, mid)) < 1e-3 || std::abs(cross(top, bot)) < 1e-3 ||
            std::abs(cross(mid, bot)) < 1e-3) {
          continue;
        }
        for (double offset : {-1.0, 1.0}) {
          const Vec origin{0, 0};
          const Vec bot_point{-bot.y * offset, bot.x * offset};
          const Vec p_alpha = meet(origin, top, origin, mid);
          const Vec p_beta = meet(origin, top, bot_point, bot);
          const Vec p_gamma = meet(origin, mid, bot_point, bot);
          R3Configuration cfg{dot(sub(p_alpha, p_beta), top) < 0, dot(sub(p_alpha, p_gamma), mid) < 0,
                              dot(sub(p_beta, p_gamma), bot) < 0, sgn(cross(top, mid)), sgn(cross(top, bot)),
                              sgn(cross(mid, bot))};
          table.set(static_cast<std::size_t>(key(cfg)));
        }
      }
  return table;
}

}  // namespace

bool r3_realizable(const R3Configuration& cfg) {
  static const std::bitset<64> table = build_table();
  return table.test(static_cast<std::size_t>(key(cfg)));
}

}  // namespace vkslice::detail
