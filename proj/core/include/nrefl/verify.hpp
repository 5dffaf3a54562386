#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nrefl/gaudin.hpp"
#include "nrefl/reflection.hpp"
#include "nrefl/rmatrix.hpp"
#include "nrefl/sampling.hpp"

namespace nrefl {

/// First nonzero entry of a residual.
struct Witness {
  std::size_t row = 0, col = 0;
  std::string value;
};

struct SampleRecord {
  std::size_t index = 0;
  std::string point;
  bool zero = true;
  std::optional<Witness> witness;
  std::vector<std::pair<std::string, std::string>> extra;
};

struct VerificationReport {
  std::string case_name;
  std::string subject;
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples_per_variable = kDefaultSamplesPerVariable;
  std::vector<SampleRecord> samples;
  std::vector<std::pair<std::string, std::string>> notes;

  bool passed() const;
  std::size_t failures() const;
  /// Deterministic JSON (fixed key order, no timestamps).
  std::string to_json() const;
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples_per_variable = kDefaultSamplesPerVariable;
  /// Overrides the default tuple count of samples_per_variable * arity.
  std::optional<std::size_t> tuples;
};

/// Draws tuples of rational points; a check that throws PoleError, SingularMatrix or
/// DivisionByZero rejects the point and a fresh one is drawn.
std::vector<SampleRecord> sample_points(std::size_t arity, std::size_t tuples, Sampler& sampler,
                                        const std::function<SampleRecord(const std::vector<Scalar>&)>& check);

std::string render_point(const std::vector<Scalar>& p);
SampleRecord matrix_record(const SpectralMatrix& residual);
SampleRecord spin_matrix_record(const SpinMatrix& residual);
SampleRecord spin_record(const SpinPoly& residual);

/// subject: cybe or skew.
VerificationReport verify_r(const std::string& subject, const RMatrixFun& r, const VerifyOptions& opts = {});

/// subject: nre, compact, nunitarity, symmetry, equivalence, rbar-cybe, functional.
VerificationReport verify_case(const std::string& subject, const KSolution& ks, const VerifyOptions& opts = {});

/// subject: involution, residue-equality, rbb, lax, mk, trbrackets, local-poisson.
VerificationReport verify_gaudin(const std::string& subject, const GaudinModel& model, const VerifyOptions& opts = {});

}  // namespace nrefl
