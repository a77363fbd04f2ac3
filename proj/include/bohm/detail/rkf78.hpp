#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "bohm/errors.hpp"
#include "bohm/integrator.hpp"

namespace bohm::detail {

// Classic Fehlberg 7(8) embedded pair.  The 8th order solution is propagated;
// the error estimate is the difference against the embedded 7th order one,
// which reduces to (41/840) h (k0 + k10 - k11 - k12).
inline constexpr std::size_t rkf78_stages = 13;

inline constexpr double rkf78_c[rkf78_stages] = {
    0.0,       2.0 / 27.0, 1.0 / 9.0, 1.0 / 6.0, 5.0 / 12.0, 0.5, 5.0 / 6.0,
    1.0 / 6.0, 2.0 / 3.0,  1.0 / 3.0, 1.0,       0.0,        1.0};

inline constexpr double rkf78_a[rkf78_stages][12] = {
    {},
    {2.0 / 27.0},
    {1.0 / 36.0, 1.0 / 12.0},
    {1.0 / 24.0, 0.0, 1.0 / 8.0},
    {5.0 / 12.0, 0.0, -25.0 / 16.0, 25.0 / 16.0},
    {1.0 / 20.0, 0.0, 0.0, 1.0 / 4.0, 1.0 / 5.0},
    {-25.0 / 108.0, 0.0, 0.0, 125.0 / 108.0, -65.0 / 27.0, 125.0 / 54.0},
    {31.0 / 300.0, 0.0, 0.0, 0.0, 61.0 / 225.0, -2.0 / 9.0, 13.0 / 900.0},
    {2.0, 0.0, 0.0, -53.0 / 6.0, 704.0 / 45.0, -107.0 / 9.0, 67.0 / 90.0, 3.0},
    {-91.0 / 108.0, 0.0, 0.0, 23.0 / 108.0, -976.0 / 135.0, 311.0 / 54.0,
     -19.0 / 60.0, 17.0 / 6.0, -1.0 / 12.0},
    {2383.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0, -301.0 / 82.0,
     2133.0 / 4100.0, 45.0 / 82.0, 45.0 / 164.0, 18.0 / 41.0},
    {3.0 / 205.0, 0.0, 0.0, 0.0, 0.0, -6.0 / 41.0, -3.0 / 205.0, -3.0 / 41.0,
     3.0 / 41.0, 6.0 / 41.0, 0.0},
    {-1777.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0,
     -289.0 / 82.0, 2193.0 / 4100.0, 51.0 / 82.0, 33.0 / 164.0, 12.0 / 41.0,
     0.0, 1.0},
};

inline constexpr double rkf78_b8[rkf78_stages] = {
    0.0,         0.0,         0.0, 0.0,          0.0,
    34.0 / 105.0, 9.0 / 35.0,  9.0 / 35.0, 9.0 / 280.0, 9.0 / 280.0,
    0.0,         41.0 / 840.0, 41.0 / 840.0};

inline constexpr double rkf78_err_w = 41.0 / 840.0;

// Integrate y' = rhs(t, y) from t to t_end in place.  rhs may throw
// SingularityError, which maps to hit_singularity.  on_accept(t, y) runs
// after every accepted step and may return false to abort, which also maps
// to hit_singularity (used for node-proximity stopping).  h carries the
// adapted signed step across calls; pass 0 to initialize from cfg.h_init.
template <std::size_t N, class RHS, class OnAccept>
TrajectoryStatus rkf78_integrate(RHS&& rhs, std::array<double, N>& y,
                                 double& t, double t_end,
                                 const IntegratorConfig& cfg, double& h,
                                 std::size_t& steps, std::size_t& rejected,
                                 OnAccept&& on_accept) {
  using Arr = std::array<double, N>;
  if (t_end == t) return TrajectoryStatus::completed;
  const double dir = t_end > t ? 1.0 : -1.0;
  if (h == 0.0 || h * dir <= 0.0) h = dir * cfg.h_init;
  h = dir * std::clamp(std::abs(h), cfg.h_min, cfg.h_max);

  std::array<Arr, rkf78_stages> k;
  Arr ytmp, ynew;

  while ((t_end - t) * dir > 0.0) {
    if (steps + rejected >= cfg.max_steps) return TrajectoryStatus::step_limit;

    double hs = h;
    bool landing = false;
    if ((t + hs - t_end) * dir >= 0.0) {
      hs = t_end - t;
      landing = true;
    }

    try {
      rhs(t, y, k[0]);
      for (std::size_t s = 1; s < rkf78_stages; ++s) {
        for (std::size_t i = 0; i < N; ++i) {
          double acc = 0.0;
          for (std::size_t j = 0; j < s; ++j) acc += rkf78_a[s][j] * k[j][i];
          ytmp[i] = y[i] + hs * acc;
        }
        rhs(t + rkf78_c[s] * hs, ytmp, k[s]);
      }
    } catch (const SingularityError&) {
      return TrajectoryStatus::hit_singularity;
    }

    double ratio = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (std::size_t s = 0; s < rkf78_stages; ++s)
        acc += rkf78_b8[s] * k[s][i];
      ynew[i] = y[i] + hs * acc;
      double err = std::abs(hs * rkf78_err_w *
                            (k[0][i] + k[10][i] - k[11][i] - k[12][i]));
      double scale =
          cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      ratio = std::max(ratio, err / scale);
    }

    if (!(ratio <= 1.0)) {  // rejected (NaN lands here as well)
      ++rejected;
      if (std::abs(hs) <= cfg.h_min * (1.0 + std::abs(t)))
        return TrajectoryStatus::step_limit;  // step collapse
      double fac = std::isfinite(ratio)
                       ? std::clamp(0.9 * std::pow(ratio, -0.125), 0.1, 0.9)
                       : 0.1;
      h = hs * fac;
      continue;
    }

    ++steps;
    t = landing ? t_end : t + hs;
    y = ynew;
    if (!on_accept(t, y)) return TrajectoryStatus::hit_singularity;

    double fac = ratio > 0.0
                     ? std::clamp(0.9 * std::pow(ratio, -0.125), 0.2, 5.0)
                     : 5.0;
    if (!landing) h = hs * fac;  // after a landing step keep the prior h
    h = dir * std::clamp(std::abs(h), cfg.h_min, cfg.h_max);
  }
  return TrajectoryStatus::completed;
}

}  // namespace bohm::detail
