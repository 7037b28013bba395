#pragma once

#include <span>
#include <utility>
#include <vector>

#include "xidiv/numerics.hpp"
#include "xidiv/xi.hpp"

namespace xidiv {

struct ZeroEntry {
  double t = 0.0;
  double bracket_width = 0.0;
  XiRoute route = XiRoute::direct;
};

struct ZeroList {
  std::vector<ZeroEntry> zeros;
  double range_lo = 0.0;
  double range_hi = 0.0;
  double scan_step = 0.0;
};

struct StripNode {
  double sigma = 0.0;
  double t = 0.0;
  double abs_xi = 0.0;
};

struct StripCensus {
  std::vector<double> sigma_grid;
  std::vector<double> t_grid;
  double min_abs_xi = 0.0;
  double argmin_sigma = 0.0;
  double argmin_t = 0.0;
  long cell_count = 0;
  std::vector<StripNode> nodes;  // filled only when requested
};

/// Real-valued Xi(t) by the chosen route (direct or integral_eq1).
double xi_on_line(double t, XiRoute route, const NumericConfig& cfg);

/// Sign-change census of Xi on [t_lo, t_hi]. Grid samples are split across
/// `threads` workers (0 = hardware concurrency) with an order-preserving
/// merge, so the result does not depend on the thread count.
ZeroList scan_critical_line(double t_lo, double t_hi, double step, const NumericConfig& cfg,
                            XiRoute route = XiRoute::direct, unsigned threads = 0);

/// (t, Xi(t)) samples on the scan grid, for plotting.
std::vector<std::pair<double, double>> sample_critical_line(double t_lo, double t_hi,
                                                            double step,
                                                            const NumericConfig& cfg,
                                                            XiRoute route = XiRoute::direct,
                                                            unsigned threads = 0);

/// min |xi(sigma + i t)| over the product grid, for sigma in (1/2, 1).
/// Evidence gathered at finitely many nodes; not a nonvanishing proof.
StripCensus scan_strip(double sigma_lo, double sigma_hi, double t_lo, double t_hi,
                       double d_sigma, double d_t, const NumericConfig& cfg,
                       bool keep_nodes = false, unsigned threads = 0);

/// Census over explicit node lists with sigma anywhere in (0, 1).
StripCensus strip_census(std::span<const double> sigmas, std::span<const double> ts,
                         const NumericConfig& cfg, bool keep_nodes = false,
                         unsigned threads = 0);

/// Zero counts on [0, t_hi] from the direct and the integral route.
std::pair<int, int> zero_count_vs_eq1(double t_hi, const NumericConfig& cfg);

}  // namespace xidiv
