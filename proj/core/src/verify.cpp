#include "nrefl/verify.hpp"

#include <json.hpp>

namespace nrefl {

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.zero ? 0 : 1;
  return n;
}

std::string VerificationReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["case"] = case_name;
  j["subject"] = subject;
  j["seed"] = seed;
  j["samples_per_variable"] = samples_per_variable;
  ordered_json list = ordered_json::array();
  for (const auto& s : samples) {
    ordered_json e;
    e["index"] = s.index;
    e["point"] = s.point;
    e["status"] = s.zero ? "exact-zero" : "nonzero";
    if (s.witness) e["witness"] = ordered_json{{"row", s.witness->row}, {"col", s.witness->col}, {"value", s.witness->value}};
    for (const auto& [k, v] : s.extra) e[k] = v;
    list.push_back(std::move(e));
  }
  j["samples"] = std::move(list);
  if (!notes.empty()) {
    ordered_json n = ordered_json::object();
    for (const auto& [k, v] : notes) n[k] = v;
    j["notes"] = std::move(n);
  }
  j["failures"] = failures();
  j["verdict"] = passed() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

std::string render_point(const std::vector<Scalar>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].to_string();
  return s + ")";
}

SampleRecord matrix_record(const SpectralMatrix& residual) {
  SampleRecord r;
  if (auto w = residual.first_nonzero()) {
    r.zero = false;
    r.witness = Witness{w->first, w->second, residual(w->first, w->second).to_string()};
  }
  return r;
}

SampleRecord spin_matrix_record(const SpinMatrix& residual) {
  SampleRecord r;
  if (auto w = residual.first_nonzero()) {
    r.zero = false;
    r.witness = Witness{w->first, w->second, residual(w->first, w->second).to_string()};
  }
  return r;
}

SampleRecord spin_record(const SpinPoly& residual) {
  SampleRecord r;
  if (!residual.is_zero()) {
    r.zero = false;
    r.witness = Witness{0, 0, residual.to_string()};
  }
  return r;
}

std::vector<SampleRecord> sample_points(std::size_t arity, std::size_t tuples, Sampler& sampler,
                                        const std::function<SampleRecord(const std::vector<Scalar>&)>& check) {
  constexpr int kMaxRejections = 1000;
  std::vector<SampleRecord> out;
  for (std::size_t i = 0; i < tuples; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRejections) throw PoleError("no sample point away from the poles after " + std::to_string(kMaxRejections) + " draws");
      const std::vector<Scalar> p = sampler.next_point(arity);
      try {
        SampleRecord r = check(p);
        r.index = i;
        r.point = render_point(p);
        out.push_back(std::move(r));
        break;
      } catch (const PoleError&) {
      } catch (const SingularMatrix&) {
      } catch (const DivisionByZero&) {
      }
    }
  }
  return out;
}

namespace {

VerificationReport make_report(std::string case_name, std::string subject, const VerifyOptions& opts) {
  VerificationReport r;
  r.case_name = std::move(case_name);
  r.subject = std::move(subject);
  r.seed = opts.seed;
  r.samples_per_variable = opts.samples_per_variable;
  return r;
}

std::size_t tuple_count(const VerifyOptions& opts, std::size_t arity) {
  return opts.tuples.value_or(opts.samples_per_variable * arity);
}

}  // namespace

VerificationReport verify_r(const std::string& subject, const RMatrixFun& r, const VerifyOptions& opts) {
  VerificationReport rep = make_report(r.name(), subject, opts);
  Sampler sampler(opts.seed);
  if (subject == "cybe") {
    rep.samples = sample_points(3, tuple_count(opts, 3), sampler, [&](const std::vector<Scalar>& p) {
      return matrix_record(cybe_residual(r, p[0], p[1], p[2]));
    });
  } else if (subject == "skew") {
    rep.samples = sample_points(2, tuple_count(opts, 2), sampler, [&](const std::vector<Scalar>& p) {
      return matrix_record(skew_residual(r, p[0], p[1]));
    });
  } else {
    throw ParseError("unknown r-matrix subject '" + subject + "'");
  }
  return rep;
}

VerificationReport verify_case(const std::string& subject, const KSolution& ks, const VerifyOptions& opts) {
  VerificationReport rep = make_report(ks.label, subject, opts);
  Sampler sampler(opts.seed);
  auto pairs = [&](const std::function<SampleRecord(const Scalar&, const Scalar&)>& f) {
    rep.samples = sample_points(2, tuple_count(opts, 2), sampler, [&](const std::vector<Scalar>& p) { return f(p[0], p[1]); });
  };
  if (subject == "nre") {
    pairs([&](const Scalar& l, const Scalar& n) { return matrix_record(nre_residual(ks, l, n)); });
  } else if (subject == "compact") {
    pairs([&](const Scalar& l, const Scalar& n) { return matrix_record(compact_form_residual(ks, l, n)); });
  } else if (subject == "symmetry") {
    const Scalar omega = Scalar::zeta(static_cast<int>(ks.N));
    rep.notes.emplace_back("omega", omega.to_string());
    pairs([&](const Scalar& l, const Scalar& n) { return matrix_record(symmetry_relation_residual(ks, omega, l, n)); });
  } else if (subject == "functional") {
    pairs([&](const Scalar& l, const Scalar& n) {
      SampleRecord r;
      const Scalar v = scalar_functional_residual(ks, l, n);
      if (!v.is_zero()) {
        r.zero = false;
        r.witness = Witness{0, 0, v.to_string()};
      }
      return r;
    });
  } else if (subject == "equivalence") {
    equivalence_transform(ks);  // unsupported cases fail before any sampling
    pairs([&](const Scalar& l, const Scalar& m) {
      const EquivalenceSample s = equivalence_check(ks, l, m);
      SampleRecord r = matrix_record(s.rbar - s.transformed);
      r.extra.emplace_back("rbar_00", s.rbar(0, 0).to_string());
      r.extra.emplace_back("rbar_01", s.rbar(0, 1).to_string());
      r.extra.emplace_back("transformed_01", s.transformed(0, 1).to_string());
      return r;
    });
  } else if (subject == "nunitarity") {
    rep.samples = sample_points(1, tuple_count(opts, 1), sampler, [&](const std::vector<Scalar>& p) {
      const UnitaritySample u = n_unitarity_at(ks, p[0]);
      SampleRecord r;
      r.zero = u.ok;
      r.extra.emplace_back("f", u.f ? u.f->to_string() : "not scalar");
      if (u.expected) r.extra.emplace_back("expected", u.expected->to_string());
      if (!u.ok) {
        const SpectralMatrix kn = k_iter(ks, ks.N, p[0]);
        SampleRecord w = u.f ? SampleRecord{} : matrix_record(kn - SpectralMatrix::identity(ks.n).scaled(kn(0, 0)));
        r.witness = w.witness ? w.witness : Witness{0, 0, (*u.f - *u.expected).to_string()};
      }
      return r;
    });
  } else if (subject == "rbar-cybe") {
    const RMatrixFun rbar = build_rbar(ks.base_r, ks);
    rep.samples = sample_points(3, tuple_count(opts, 3), sampler, [&](const std::vector<Scalar>& p) {
      return matrix_record(cybe_residual(rbar, p[0], p[1], p[2]));
    });
  } else {
    throw ParseError("unknown verification subject '" + subject + "'");
  }
  return rep;
}

VerificationReport verify_gaudin(const std::string& subject, const GaudinModel& model, const VerifyOptions& opts) {
  VerificationReport rep = make_report(to_string(model.mode()) + " L=" + std::to_string(model.L()), subject, opts);
  Sampler sampler(opts.seed);
  auto pairs = [&](const std::function<SampleRecord(const Scalar&, const Scalar&)>& f) {
    rep.samples = sample_points(2, tuple_count(opts, 2), sampler, [&](const std::vector<Scalar>& p) { return f(p[0], p[1]); });
  };
  if (subject == "involution") {
    std::size_t idx = 0;
    for (int i = 1; i <= model.L(); ++i)
      for (int k = i + 1; k <= model.L(); ++k) {
        SampleRecord r = spin_record(involution_residual(model, i, k));
        r.index = idx++;
        r.point = "{H_" + std::to_string(i) + ", H_" + std::to_string(k) + "}";
        rep.samples.push_back(std::move(r));
      }
  } else if (subject == "residue-equality") {
    for (int m = 1; m <= model.L(); ++m) {
      SampleRecord r = spin_record(model.hamiltonian_residue(m) - model.hamiltonian_explicit(m));
      r.index = static_cast<std::size_t>(m - 1);
      r.point = "H_" + std::to_string(m);
      rep.samples.push_back(std::move(r));
    }
  } else if (subject == "rbb") {
    pairs([&](const Scalar& l, const Scalar& m) { return spin_matrix_record(rbb_residual(model, l, m)); });
  } else if (subject == "lax") {
    pairs([&](const Scalar& l, const Scalar& n) { return spin_matrix_record(lax_residual(model, l, n, 2)); });
  } else if (subject == "mk") {
    pairs([&](const Scalar& l, const Scalar& n) { return spin_matrix_record(mk_residual(model, l, n, 2)); });
  } else if (subject == "trbrackets") {
    pairs([&](const Scalar& l, const Scalar& n) {
      SampleRecord r;
      for (auto [p, q] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 3u}}) {
        const SpinPoly res = trB_bracket_residual(model, p, q, l, n);
        if (!res.is_zero() && r.zero) {
          r.zero = false;
          r.witness = Witness{p, q, res.to_string()};
        }
      }
      return r;
    });
  } else if (subject == "local-poisson") {
    pairs([&](const Scalar& l, const Scalar& m) { return spin_matrix_record(local_poisson_residual(model, 1, l, m)); });
  } else {
    throw ParseError("unknown model subject '" + subject + "'");
  }
  return rep;
}

}  // namespace nrefl
