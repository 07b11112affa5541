// experiments.cpp — run-time search at fixed success probability and the
// omega-interpolated scaling sweep.

#include "adsearch/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace adsearch {

namespace {

constexpr int kMaxDoublings = 60;
constexpr int kMaxBisections = 200;
constexpr int kFallbackScanPoints = 64;

double probability_at(const SearchModel& model, const Schedule& sched,
                      const CouplingSpec& spec, double omega, double runtime,
                      double ode_tol) {
  return success_probability(
      model, sched, DecoherenceParams::from_omega(omega, runtime, spec),
      ode_tol);
}

}  // namespace

SweepRecord runtime_for_success(const SearchModel& model,
                                const CouplingSpec& spec, double omega,
                                double target, double p_tol, double ode_tol) {
  if (!(target > 0.0 && target < 1.0)) {
    throw std::domain_error("target probability must lie in (0, 1)");
  }
  SweepRecord rec;
  rec.omega = omega;
  rec.n_items = model.n_items;

  const Schedule sched(model);
  const double p_zero = 1.0 / static_cast<double>(model.n_items);
  if (std::abs(p_zero - target) <= p_tol) {
    rec.runtime_at_target = 0.0;
    rec.achieved_probability = p_zero;
    rec.flag = "at_zero";
    return rec;
  }
  if (target < p_zero) {
    throw std::domain_error(
        "target below the zero-run-time success probability 1/N");
  }

  const auto probe = [&](double t) {
    return probability_at(model, sched, spec, omega, t, ode_tol);
  };

  // Geometric bracketing from T0 = sqrt(N)/4.
  double t_lo = 0.0;
  double p_lo = p_zero;
  double t_hi = std::sqrt(static_cast<double>(model.n_items)) / 4.0;
  double p_hi = probe(t_hi);
  int doublings = 0;
  while (p_hi < target) {
    if (++doublings > kMaxDoublings) {
      throw std::runtime_error("no run-time bracket after 60 doublings");
    }
    t_lo = t_hi;
    p_lo = p_hi;
    t_hi *= 2.0;
    p_hi = probe(t_hi);
  }

  // The bisection assumes the success probability is locally monotone in T;
  // check the ordering at the bracket midpoint and fall back to a log-spaced
  // scan for the first crossing when it fails.
  const double t_mid = 0.5 * (t_lo + t_hi);
  double p_mid = t_lo > 0.0 ? probe(t_mid) : p_hi;
  if (t_lo > 0.0 &&
      !(p_lo <= p_mid + 1e-9 && p_mid <= p_hi + 1e-9)) {
    rec.flag = "nonmonotone_bracket";
    double prev_t = t_lo > 0.0 ? t_lo : t_hi / (1 << 20);
    double prev_p = p_lo;
    for (int i = 1; i <= kFallbackScanPoints; ++i) {
      const double t = prev_t == 0.0
                           ? t_hi
                           : t_lo * std::pow(t_hi / t_lo,
                                             static_cast<double>(i) /
                                                 kFallbackScanPoints);
      const double p = probe(t);
      if (p >= target) {
        t_hi = t;
        p_hi = p;
        t_lo = prev_t;
        p_lo = prev_p;
        break;
      }
      prev_t = t;
      prev_p = p;
    }
  }

  int iterations = 0;
  double t_best = t_hi;
  double p_best = p_hi;
  while (std::abs(p_best - target) > p_tol) {
    if (++iterations > kMaxBisections) {
      rec.flag = rec.flag.empty() ? "bisection_stalled" : rec.flag;
      break;
    }
    const double t = 0.5 * (t_lo + t_hi);
    const double p = probe(t);
    t_best = t;
    p_best = p;
    if (p < target) {
      t_lo = t;
    } else {
      t_hi = t;
    }
  }

  rec.runtime_at_target = t_best;
  rec.achieved_probability = p_best;
  rec.bisection_iterations = iterations;
  return rec;
}

std::vector<SweepRecord> scaling_sweep(const SweepConfig& config) {
  const std::size_t cells =
      config.omega_list.size() * config.n_list.size();
  std::vector<SweepRecord> records(cells);

  unsigned workers = config.workers > 0
                         ? static_cast<unsigned>(config.workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(cells, 1));

  std::atomic<std::size_t> next{0};
  const auto run_cell = [&](std::size_t index) {
    const std::size_t i_omega = index / config.n_list.size();
    const std::size_t i_n = index % config.n_list.size();
    const double omega = config.omega_list[i_omega];
    const std::int64_t n = config.n_list[i_n];
    try {
      records[index] =
          runtime_for_success(SearchModel(n), config.coupling, omega,
                              config.target, config.p_tol, config.ode_tol);
    } catch (const std::exception& e) {
      SweepRecord rec;
      rec.omega = omega;
      rec.n_items = n;
      rec.flag = std::string("error:") + e.what();
      records[index] = rec;
    }
  };

  if (workers <= 1 || cells <= 1) {
    for (std::size_t i = 0; i < cells; ++i) run_cell(i);
    return records;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < cells;
           i = next.fetch_add(1)) {
        run_cell(i);
      }
    });
  }
  for (auto& t : pool) t.join();
  return records;
}

SlopeFit slope_fit(std::span<const SweepRecord> records, std::int64_t n_min,
                   std::int64_t n_max) {
  std::vector<std::pair<double, double>> pts;  // (log2 N, log2 T)
  double omega = 0.0;
  for (const auto& rec : records) {
    if (rec.n_items < n_min || rec.n_items > n_max) continue;
    if (!rec.flag.empty() && rec.flag != "nonmonotone_bracket") continue;
    if (!(rec.runtime_at_target > 0.0)) continue;
    pts.emplace_back(std::log2(static_cast<double>(rec.n_items)),
                     std::log2(rec.runtime_at_target));
    omega = rec.omega;
  }
  if (pts.size() < 4) {
    throw std::runtime_error("slope fit needs at least four usable records");
  }
  std::sort(pts.begin(), pts.end());

  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : pts) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(pts.size());
  mean_y /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  SlopeFit fit;
  fit.omega = omega;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss = 0.0;
  for (const auto& [x, y] : pts) {
    const double resid = y - (fit.intercept + fit.slope * x);
    ss += resid * resid;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(pts.size()));
  const auto& last = pts[pts.size() - 1];
  const auto& prev = pts[pts.size() - 2];
  fit.tail_slope = (last.second - prev.second) / (last.first - prev.first);
  fit.n_min = n_min;
  fit.n_max = n_max;
  return fit;
}

}  // namespace adsearch
