#pragma once

// Seeded randomized verification of identities and transforms, plus probes of
// the singular regions of the two-term result.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyp32/identities.hpp"
#include "hyp32/numerics.hpp"
#include "hyp32/series.hpp"

namespace hyp32 {

/// Rectangle [re_lo, re_hi] x [im_lo, im_hi] in the complex plane.
struct Box {
  double re_lo = 0.0, re_hi = 0.0;
  double im_lo = 0.0, im_hi = 0.0;
};

struct SampleConstraints {
  Box a_box{-2.0, 0.9, -1.0, 1.0};
  Box b_box{0.2, 4.0, -1.0, 1.0};
  Box c_box{0.2, 4.0, -1.0, 1.0};
  int m_lo = 0, m_hi = 6;
  int n_lo = 0, n_hi = 6;
  /// Lower bound on Re(2 - a + m + n).
  double min_decay = 1.0;
  /// Minimum distance of b - c from the integers in [-m, n], of a from every
  /// integer, and of the Gamma arguments from the nonpositive integers.
  double lattice_margin = 0.05;
  bool allow_complex = true;
  /// Force n = m after drawing.
  bool equal_mn = false;
  /// Skip the distance check on a (used when a sits on a pole by design).
  bool check_a_lattice = true;
  /// When set, require Re(c - b) - n >= this value.
  std::optional<double> min_c_minus_b_minus_n;
};

struct Sampled {
  std::vector<Params3F2NegDiff> params;
  Status status = Status::ok;
  std::string reason;
};

/// Deterministic in (c, seed, count). Gives up after 1000 * count draws.
Sampled sample_params(const SampleConstraints& c, std::uint64_t seed, int count);

/// True when p satisfies every constraint in c.
bool satisfies(const SampleConstraints& c, const Params3F2NegDiff& p);

struct NamedValue {
  std::string name;
  Cx value{};
  bool integer = false;
};

struct Failure {
  std::vector<NamedValue> params;
  Cx lhs{};
  Cx rhs{};
  double rel_err = 0.0;
};

struct VerifyReport {
  std::string identity;
  std::string reference;
  int samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double max_rel_err = 0.0;
  double median_rel_err = 0.0;
  int excluded = 0;
  std::vector<Failure> failures;

  int evaluated() const { return samples - excluded; }
};

struct CheckOptions {
  /// Closed-form reference; the oracle when empty.
  std::optional<IdentityId> reference;
  Precision precision = Precision::binary128;
  Tolerance oracle_tol{1e-13};
  /// 0 picks the hardware concurrency (capped at 16).
  int threads = 0;
};

VerifyReport check_identity(IdentityId id, SampleConstraints c, std::uint64_t seed,
                            int count, double tol, const CheckOptions& opt = {});

/// The transformation rules, each checked by evaluating both sides.
enum class TransformId { TH, THOMAE2, PF, RD, RE, LIN, KAR, KA };

std::string_view to_string(TransformId id);
std::optional<TransformId> transform_from_key(std::string_view key);

struct TransformOptions {
  /// Constraints used by KA; the others draw from fixed boxes.
  SampleConstraints constraints{};
  /// Fixed argument for KA; random with |z| <= 0.6 when empty.
  std::optional<Cx> z;
  Tolerance series_tol{1e-14};
  int threads = 0;
};

VerifyReport check_transform(TransformId id, std::uint64_t seed, int count, double tol,
                             const TransformOptions& opt = {});

enum class ProbePath { a_to_1, b_to_c_integer };

struct ProbePoint {
  double offset = 0.0;
  Cx value{};
  Status status = Status::ok;
  /// |first| and |second| term of the two-term result at the one-sided point.
  double first_term = 0.0;
  double second_term = 0.0;
  Cx reference{};
  Status reference_status = Status::ok;
};

/// Offsets 1e-2, 1e-3, ... (`steps` of them). a_to_1: the identity is
/// evaluated at a = 1 + h and a = 1 - h and the mean is reported; the
/// reference is eval_a1_limit. b_to_c_integer: b = c + j + h for the integer
/// j in [-m, n] nearest to b - c; the reference is the oracle.
std::vector<ProbePoint> probe_singular(IdentityId id, ProbePath path, int steps,
                                       const Params3F2NegDiff& base);

std::string report_to_json(const VerifyReport& r, int indent = 2);

}  // namespace hyp32
