#include "nrefl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace nrefl {

PhaseState PhaseState::from_sites(const std::vector<std::array<Complex, 3>>& spins) {
  PhaseState s;
  for (const auto& site : spins) s.x.insert(s.x.end(), site.begin(), site.end());
  return s;
}

bool PhaseState::finite() const {
  return std::all_of(x.begin(), x.end(), [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

SpinPoly combined_hamiltonian(const GaudinModel& model, const std::vector<Scalar>& weights) {
  if (weights.size() != static_cast<std::size_t>(model.L())) throw StructuralError("one Hamiltonian weight per site expected");
  SpinPoly h;
  for (int i = 1; i <= model.L(); ++i) {
    const Scalar& w = weights[static_cast<std::size_t>(i - 1)];
    if (!w.is_zero()) h += model.hamiltonian_residue(i) * w;
  }
  return h;
}

VectorField::VectorField(const SpinPoly& h, int sites) {
  for (int j = 1; j <= sites; ++j)
    for (Spin c : {Spin::plus, Spin::minus, Spin::z}) {
      exact_.push_back(poisson_bracket(SpinPoly::gen(j, c), h));
      compiled_.emplace_back(exact_.back());
    }
}

std::vector<Complex> VectorField::operator()(const std::vector<Complex>& x) const {
  std::vector<Complex> out(compiled_.size());
  for (std::size_t i = 0; i < compiled_.size(); ++i) out[i] = compiled_[i](x);
  return out;
}

// ---- probes --------------------------------------------------------------------

ProbeSet::ProbeSet(const GaudinModel& model, const std::vector<Scalar>& probes) {
  for (const auto& lam : probes) {
    std::vector<Complex> w;
    try {
      for (int m = 1; m <= model.L(); ++m) w.push_back(model.site_weight(m, lam).to_complex());
    } catch (const PoleError& e) {
      warnings_.push_back("probe " + lam.to_string() + " skipped: " + e.what());
      continue;
    }
    lambdas_.push_back(lam.to_complex());
    weights_.push_back(std::move(w));
  }
}

namespace {

/// Floating value of a split-linear rational function; false when a factor is below the threshold.
bool eval_float(const RatFun<Scalar>& f, const Complex& x, Complex* out) {
  Complex den = f.lead().to_complex();
  for (const auto& fac : f.denominator()) {
    const Complex d = x - fac.root.to_complex();
    if (std::abs(d) < 1e-12) return false;
    den *= std::pow(d, fac.multiplicity);
  }
  Complex num = 0;
  const auto& c = f.numerator().coeffs();
  for (std::size_t i = c.size(); i-- > 0;) num = num * x + c[i].to_complex();
  *out = num / den;
  return true;
}

}  // namespace

ProbeSet::ProbeSet(const GaudinModel& model, const std::vector<Complex>& probes) {
  std::vector<RatFun<Scalar>> sym;
  for (int m = 1; m <= model.L(); ++m) sym.push_back(model.site_weight_symbolic(m));
  for (const auto& lam : probes) {
    std::vector<Complex> w(sym.size());
    bool ok = true;
    for (std::size_t m = 0; m < sym.size() && ok; ++m) ok = eval_float(sym[m], lam, &w[m]);
    if (!ok) {
      std::ostringstream os;
      os << "probe " << lam << " skipped: within 1e-12 of a pole";
      warnings_.push_back(os.str());
      continue;
    }
    lambdas_.push_back(lam);
    weights_.push_back(std::move(w));
  }
}

std::array<Complex, 4> ProbeSet::B(std::size_t p, const std::vector<Complex>& x) const {
  Complex half_z = 0, plus = 0, minus = 0;
  const auto& w = weights_.at(p);
  for (std::size_t m = 0; m < w.size(); ++m) {
    plus += w[m] * x[3 * m];
    minus += w[m] * x[3 * m + 1];
    half_z += w[m] * x[3 * m + 2] * 0.5;
  }
  return {half_z, plus, minus, -half_z};
}

std::vector<Scalar> default_probes(const GaudinModel& model) {
  Rational top(0);
  bool first = true;
  for (const auto& z : model.sites()) {
    Rational v;
    if (z.is_rational()) {
      v = z.rational();
    } else {
      v = Rational(static_cast<long>(std::ceil(std::abs(z.to_complex()))));
    }
    if (first || v > top) top = v;
    first = false;
  }
  return {Scalar(top + 3), Scalar(top + 5), Scalar(top + 7)};
}

std::vector<SpectralPoint> spectral_scan(const ProbeSet& probes, const std::vector<Complex>& x) {
  std::vector<SpectralPoint> out;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const auto b = probes.B(p, x);
    SpectralPoint s;
    s.lambda = probes.lambdas()[p];
    s.trB = b[0] + b[3];
    s.detB = b[0] * b[3] - b[1] * b[2];
    const Complex disc = std::sqrt(s.trB * s.trB * 0.25 - s.detB);
    s.eig1 = s.trB * 0.5 + disc;
    s.eig2 = s.trB * 0.5 - disc;
    out.push_back(s);
  }
  return out;
}

// ---- integration ---------------------------------------------------------------

std::vector<Complex> rk4_step(const VectorField& f, const std::vector<Complex>& x, double dt) {
  const std::size_t n = x.size();
  std::vector<Complex> tmp(n);
  const auto k1 = f(x);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
  const auto k2 = f(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
  const auto k3 = f(tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
  const auto k4 = f(tmp);
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

double DriftSummary::max_all() const {
  double m = 0;
  for (const auto* v : {&H, &C, &detB, &eig})
    for (double d : *v) m = std::max(m, d);
  return m;
}

namespace {

double rel_change(const Complex& now, const Complex& start) {
  const double scale = std::abs(start);
  return scale > 0 ? std::abs(now - start) / scale : std::abs(now - start);
}

struct Monitor {
  std::vector<CompiledPoly> H, C;
  const ProbeSet* probes;

  LogRow sample(double t, const std::vector<Complex>& x) const {
    LogRow r;
    r.t = t;
    for (const auto& h : H) r.H.push_back(h(x));
    for (const auto& c : C) r.C.push_back(c(x));
    for (const auto& s : spectral_scan(*probes, x)) {
      r.trB.push_back(s.trB);
      r.detB.push_back(s.detB);
    }
    return r;
  }
};

}  // namespace

SimulationResult rk4_simulate(const GaudinModel& model, const SpinPoly& h, const PhaseState& initial,
                              const SimulationOptions& opts, const ProbeSet& probes) {
  if (!(opts.dt > 0) || !(opts.t_end > 0)) throw StructuralError("dt and t_end must be positive");
  if (initial.sites() != model.L() || initial.x.size() != static_cast<std::size_t>(3 * model.L()))
    throw StructuralError("initial state has the wrong number of sites");
  if (!initial.finite()) throw NumericError("initial state is not finite");
  const VectorField field(h, model.L());
  Monitor mon;
  mon.probes = &probes;
  for (int i = 1; i <= model.L(); ++i) {
    mon.H.emplace_back(model.hamiltonian_residue(i));
    mon.C.emplace_back(model.casimir(i));
  }
  const std::size_t log_every = std::max<std::size_t>(1, opts.log_every);

  SimulationResult res;
  const LogRow start = mon.sample(initial.t, initial.x);
  const auto start_scan = spectral_scan(probes, initial.x);
  res.drift.H.assign(start.H.size(), 0.0);
  res.drift.C.assign(start.C.size(), 0.0);
  res.drift.detB.assign(start.detB.size(), 0.0);
  res.drift.eig.assign(start.detB.size(), 0.0);
  res.rows.push_back(start);

  const auto steps = static_cast<std::size_t>(std::llround(opts.t_end / opts.dt));
  PhaseState cur = initial;
  for (std::size_t s = 1; s <= steps; ++s) {
    PhaseState next;
    next.x = rk4_step(field, cur.x, opts.dt);
    next.t = initial.t + static_cast<double>(s) * opts.dt;
    if (!next.finite()) {
      res.aborted = true;
      std::ostringstream os;
      os << "non-finite state after t = " << cur.t;
      res.failure = os.str();
      break;
    }
    cur = std::move(next);
    ++res.steps;
    const LogRow row = mon.sample(cur.t, cur.x);
    for (std::size_t k = 0; k < row.H.size(); ++k) res.drift.H[k] = std::max(res.drift.H[k], rel_change(row.H[k], start.H[k]));
    for (std::size_t k = 0; k < row.C.size(); ++k) res.drift.C[k] = std::max(res.drift.C[k], rel_change(row.C[k], start.C[k]));
    const auto scan = spectral_scan(probes, cur.x);
    for (std::size_t p = 0; p < scan.size(); ++p) {
      res.drift.detB[p] = std::max(res.drift.detB[p], rel_change(scan[p].detB, start_scan[p].detB));
      // Eigenvalues come as a +-pair (B is traceless), so compare the unordered pair.
      const double e = std::min(rel_change(scan[p].eig1, start_scan[p].eig1), rel_change(scan[p].eig1, start_scan[p].eig2));
      res.drift.eig[p] = std::max(res.drift.eig[p], e);
    }
    if (s % log_every == 0 || s == steps) res.rows.push_back(row);
  }
  res.final_state = cur;
  return res;
}

PhaseState rk4_integrate(const VectorField& f, const PhaseState& initial, double t_end, double dt) {
  PhaseState cur = initial;
  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  for (std::size_t s = 0; s < steps; ++s) cur.x = rk4_step(f, cur.x, dt);
  cur.t = initial.t + static_cast<double>(steps) * dt;
  if (!cur.finite()) throw NumericError("integration produced a non-finite state");
  return cur;
}

double rk4_order_estimate(const VectorField& f, const PhaseState& initial, double t_end, double h) {
  const auto a = rk4_integrate(f, initial, t_end, h).x;
  const auto b = rk4_integrate(f, initial, t_end, h / 2).x;
  const auto c = rk4_integrate(f, initial, t_end, h / 4).x;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i] - c[i]));
  }
  return std::log2(num / den);
}

void write_csv(std::ostream& os, const SimulationResult& result, int sites, std::size_t probes) {
  os << "t";
  for (int i = 1; i <= sites; ++i) os << ",H_" << i;
  for (int i = 1; i <= sites; ++i) os << ",C_" << i;
  for (std::size_t p = 1; p <= probes; ++p) os << ",trB_re_" << p << ",trB_im_" << p << ",detB_re_" << p << ",detB_im_" << p;
  os << "\n";
  os << std::setprecision(17);
  for (const auto& r : result.rows) {
    os << r.t;
    for (const auto& h : r.H) os << "," << h.real();
    for (const auto& c : r.C) os << "," << c.real();
    for (std::size_t p = 0; p < r.trB.size(); ++p)
      os << "," << r.trB[p].real() << "," << r.trB[p].imag() << "," << r.detB[p].real() << "," << r.detB[p].imag();
    os << "\n";
  }
}

PhaseState default_initial_state(int sites) {
  std::vector<std::array<Complex, 3>> s;
  for (int j = 0; j < sites; ++j) {
    const double p = 1.0 - 0.5 * (j % 2) + 0.1 * (j / 2);
    const double m = -(1.0 + 0.5 * (j % 2)) - 0.1 * (j / 2);
    const double z = j % 2 ? -0.3 : 0.5;
    s.push_back({Complex(p), Complex(m), Complex(z)});
  }
  return PhaseState::from_sites(s);
}

}  // namespace nrefl
