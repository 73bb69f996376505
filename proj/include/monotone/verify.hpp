#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monotone/operators.hpp"
#include "monotone/probe.hpp"
#include "monotone/resolvent.hpp"

namespace monotone {

// Outcome of a single representation-formula check. PremiseFailed means a
// hypothesis of the statement under test was violated by the instance (the
// claim itself is untested); Inconclusive means the probe protocol produced
// too little evidence to decide either way (never reported as a pass).
enum class CheckStatus { Pass, Fail, PremiseFailed, Inconclusive };

const char* to_string(CheckStatus s);

struct SupportPayload {
  bool finite = true;
  double value = 0.0;
};

struct VerificationReport {
  std::string theorem_id;
  CheckStatus status = CheckStatus::Inconclusive;
  double distance = 0.0;
  double tolerance = 0.0;
  std::string detail;

  std::optional<PolyhedralSet> estimated_set;
  std::optional<PolyhedralSet> oracle_set;
  std::optional<SupportPayload> estimated_support;
  std::optional<SupportPayload> oracle_support;
  std::vector<PolyhedralSet> estimated_pieces;  // boundary checks only
  std::vector<PolyhedralSet> oracle_pieces;
  bool strict_inclusion = false;  // min-norm face checks only

  std::string trace_header;
  std::vector<std::string> trace;  // comma-separated rows matching trace_header

  bool passed() const { return status == CheckStatus::Pass; }
};

// registered theorem_id tags, in gallery order
const std::vector<std::string>& registered_checks();

// set-valued limit of operator values along shrinking directional probes
// against the exact face of the value at x
VerificationReport check_face_limsup(const Operator& a, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& v, const LimitProbe& probe,
                                     double tolerance = 1e-6);

// explicit sequence witnessing a face member as a limit of nearby values
struct FaceSequenceStep {
  int n = 0;
  double t = 0.0;
  Eigen::VectorXd w;
  Eigen::VectorXd a_star;
  double membership_residual = 0.0;
  double w_error = 0.0;
  double a_error = 0.0;
};

struct FaceSequence {
  std::vector<FaceSequenceStep> steps;
  bool geometric_tail = false;  // tail errors shrink by >= 10% per step or are ~0
  VerificationReport report;
};

FaceSequence check_face_sequence(const Operator& a, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& xstar, const Eigen::VectorXd& v,
                                 int n_max = 40, double membership_tol = 1e-8,
                                 double final_tol = 1e-5);

// min-norm selection limits land inside the face (possibly strictly)
VerificationReport check_minnorm_face(const Operator& a, const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& v, const LimitProbe& probe,
                                      double tolerance = 1e-6);

// support value of the face via liminf of min-norm pairings, with the
// tangent-cone gate deciding the infinite branch
VerificationReport check_support_minnorm(const Operator& a, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& v, const LimitProbe& probe,
                                         double tolerance = 1e-6);

// trichotomy version driven by an arbitrary selection policy on a dense set
VerificationReport check_support_selection(const Operator& a, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& v, const LimitProbe& probe,
                                           double tolerance = 1e-6);

// boundary of the value at x as the limit of nearby values, against the
// face-union oracle
VerificationReport check_boundary(const Operator& a, const Eigen::VectorXd& x,
                                  const LimitProbe& probe, double tolerance = 1e-5);

enum class DecomposeMode { DirectionalInterior, DenseAllDirections };

// value decomposition: hull of selection clusters plus the domain normal cone,
// compared by support functions over a seeded direction net
VerificationReport check_decompose(const Operator& a, const Eigen::VectorXd& x,
                                   const LimitProbe& probe, DecomposeMode mode,
                                   double tolerance = 1e-6, int n_directions = 200);

// locally bounded min-norm selection forces values into normal cone + rho-ball
VerificationReport check_local_bound(const Operator& a, const Eigen::VectorXd& x, double radius,
                                     double rho, int n_samples = 40, unsigned seed = 0,
                                     double tolerance = 1e-8);

struct RegionSpec {
  Eigen::VectorXd center;
  double radius = 1.0;
  int n_samples = 60;     // premise sample size
  int n_validation = 40;  // disjoint validation sample size
  unsigned seed = 0;
};

enum class UniqueMode { MinNorm, Intersection };

// two operators with equal domains and equal min-norm selections (or
// intersecting values on a dense sample) must agree everywhere
VerificationReport check_unique_determination(const Operator& a1, const Operator& a2,
                                              UniqueMode mode, const RegionSpec& region,
                                              double tolerance = 1e-8);

// bounded subgradient selection on a dense sample forces a Lipschitz bound
VerificationReport check_lipschitz_bound(const MaxAffineFunction& f, const SpaceSpec& space,
                                         double ell, unsigned seed = 0, int n_samples = 200,
                                         int n_pairs = 500);

// vanishing-resolvent recovery of the min-norm selection
VerificationReport check_yosida_minnorm(const Operator& a, const Eigen::VectorXd& x,
                                        const Schedule& schedule = Schedule{},
                                        double tolerance = 1e-5);

}  // namespace monotone
