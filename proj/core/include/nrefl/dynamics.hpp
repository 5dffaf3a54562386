#pragma once

#include <array>
#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "nrefl/gaudin.hpp"
#include "nrefl/spin.hpp"

namespace nrefl {

using Complex = std::complex<double>;

/// Spin values indexed by spin_var: (s_1^+, s_1^-, s_1^z, s_2^+, ...).
struct PhaseState {
  double t = 0.0;
  std::vector<Complex> x;

  static PhaseState from_sites(const std::vector<std::array<Complex, 3>>& spins);
  int sites() const { return static_cast<int>(x.size() / 3); }
  bool finite() const;
};

/// sum_i w_i H_i with residue Hamiltonians.
SpinPoly combined_hamiltonian(const GaudinModel& model, const std::vector<Scalar>& weights);

/// xdot = {x, H} for every generator x, compiled for floating evaluation.
class VectorField {
 public:
  VectorField(const SpinPoly& h, int sites);
  std::vector<Complex> operator()(const std::vector<Complex>& x) const;
  const SpinPoly& component(std::size_t var) const { return exact_.at(var); }

 private:
  std::vector<SpinPoly> exact_;
  std::vector<CompiledPoly> compiled_;
};

/// tr B and det B at fixed spectral probes, from exact site weights.
class ProbeSet {
 public:
  /// Probes at poles are dropped and reported in `warnings`.
  ProbeSet(const GaudinModel& model, const std::vector<Scalar>& probes);
  /// Floating probes; dropped when some denominator has modulus below 1e-12.
  ProbeSet(const GaudinModel& model, const std::vector<Complex>& probes);

  std::size_t size() const { return lambdas_.size(); }
  const std::vector<Complex>& lambdas() const { return lambdas_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// B(lambda_p) at a state as [[b11, b12], [b21, b22]].
  std::array<Complex, 4> B(std::size_t p, const std::vector<Complex>& x) const;

 private:
  std::vector<Complex> lambdas_;
  std::vector<std::vector<Complex>> weights_;  // per probe, per site
  std::vector<std::string> warnings_;
};

/// z_max + 3, z_max + 5, z_max + 7.
std::vector<Scalar> default_probes(const GaudinModel& model);

struct SpectralPoint {
  Complex lambda, trB, detB;
  Complex eig1, eig2;
};

std::vector<SpectralPoint> spectral_scan(const ProbeSet& probes, const std::vector<Complex>& x);

struct LogRow {
  double t = 0.0;
  std::vector<Complex> H, C, trB, detB;
};

struct DriftSummary {
  std::vector<double> H, C, detB, eig;
  double max_all() const;
};

struct SimulationResult {
  std::vector<LogRow> rows;
  PhaseState final_state;
  DriftSummary drift;
  bool aborted = false;
  std::string failure;
  std::size_t steps = 0;
};

struct SimulationOptions {
  double t_end = 10.0;
  double dt = 1e-3;
  std::size_t log_every = 100;
};

/// One classical RK4 step.
std::vector<Complex> rk4_step(const VectorField& f, const std::vector<Complex>& x, double dt);

/// Fixed-step RK4. Monitors every H_k, every Casimir and the probes at each step;
/// a NaN or Inf stops the run and keeps the last finite state.
SimulationResult rk4_simulate(const GaudinModel& model, const SpinPoly& h, const PhaseState& initial,
                              const SimulationOptions& opts, const ProbeSet& probes);

/// Final state only, without monitoring.
PhaseState rk4_integrate(const VectorField& f, const PhaseState& initial, double t_end, double dt);

/// log2(|x_h - x_{h/2}| / |x_{h/2} - x_{h/4}|) at t_end.
double rk4_order_estimate(const VectorField& f, const PhaseState& initial, double t_end, double h);

/// Header t, H_1..H_L, C_1..C_L, then trB_re_p, trB_im_p, detB_re_p, detB_im_p per probe.
void write_csv(std::ostream& os, const SimulationResult& result, int sites, std::size_t probes);

/// An elliptic starting point (s^- close to -s^+) that keeps flows bounded.
PhaseState default_initial_state(int sites);

}  // namespace nrefl
