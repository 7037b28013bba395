#pragma once

#include <functional>
#include <span>
#include <vector>

#include "xidiv/numerics.hpp"

namespace xidiv {

struct PhiEvaluation {
  double sigma = 0.0;
  Complex s;
  Complex value;
  double normalizer = 0.0;  // xi(sigma)
};

/// phi_sigma(s) = int_R e^{s u} e^{sigma u / 2} Psi(u) du / xi(sigma), as two
/// half-line integrals. Converges for |Re s + sigma/2| < 1/4; DomainError
/// otherwise. Throws EvaluationError when xi(sigma) vanishes numerically.
PhiEvaluation phi_sigma(Complex s, double sigma, const NumericConfig& cfg);

struct ZeroPair {
  double tau = 0.0;      // zero of phi_sigma(-sigma/2 + i tau)
  double xi_zero = 0.0;  // nearest zero t of Xi(t)
  double ratio = 0.0;    // xi_zero / tau
  double mismatch = 0.0; // |xi_zero - 2 tau|
};

struct ZeroCorrespondence {
  double sigma = 0.0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  std::vector<double> phi_roots;
  std::vector<double> xi_zeros;  // zeros of Xi on [2 tau_lo, 2 tau_hi]
  std::vector<ZeroPair> pairs;
  double observed_scale = 0.0;   // median of pair ratios; 0 when no pairs
};

/// Zeros of tau -> phi_sigma(-sigma/2 + i tau) on [tau_lo, tau_hi] (the line
/// where the transform is real and its argument maps onto the critical
/// line), paired with zeros of Xi found independently by the direct route.
/// An empty or inverted range returns an empty correspondence.
ZeroCorrespondence phi_zero_correspondence(double sigma, double tau_lo, double tau_hi,
                                           const NumericConfig& cfg);

struct MixtureScale {
  double scale = 0.0;
  double weight = 0.0;
};

/// Probability measure on [0, inf) with finitely many atoms. Construction
/// rejects negative or non-finite entries and normalizes the weights.
class DiscreteMixture {
 public:
  explicit DiscreteMixture(std::vector<MixtureScale> atoms);
  const std::vector<MixtureScale>& atoms() const { return atoms_; }

 private:
  std::vector<MixtureScale> atoms_;
};

/// sum_i w_i (1 + s x_i)^{-2} for s >= 0.
double kristiansen_lt(const DiscreteMixture& mix, double s);

/// Infinite-divisibility criterion: h(s) = -(log f)'(s) by central
/// differences with step cm_step, then cm_test on h. Throws DomainError
/// if f is not positive at a sampled point.
CMReport id_criterion_check(const std::function<double(double)>& f,
                            std::span<const double> grid, const NumericConfig& cfg);

struct GGCDiagnostics {
  double sigma = 0.0;
  std::vector<double> s_grid;
  std::vector<double> ratio_values;  // phi(0) / phi(sqrt(s)) on s_grid
  CMReport cm_report;
  CMReport log_ratio_cm_report;
  double step_used = 0.0;            // finite-difference step of both reports
  double drift = 0.0;                // phi'(0) / phi(0), central difference
  std::vector<double> flagged;       // grid points dropped for |phi| near zero
  bool monotone_decreasing = false;
  bool monotone_increasing = false;
};

/// R(s) = phi_sigma(0) / phi_sigma(sqrt(s)) on the grid, with cm_test on R
/// and on -(log R)'. The finite-difference step is shrunk below cfg.cm_step
/// when the grid sits close to zero or to the convergence edge.
GGCDiagnostics ggc_diagnostics(double sigma, std::span<const double> s_grid,
                               const NumericConfig& cfg);

}  // namespace xidiv
