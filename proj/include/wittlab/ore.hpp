#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wittlab/module.hpp"
#include "wittlab/omega.hpp"
#include "wittlab/padic.hpp"

namespace wittlab {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// c with alpha * c = d in W_Q.
PAdicApprox solve_in_wq(const PAdicApprox& alpha, const PAdicApprox& d);

// Window [lo, hi] of sum_i c_i V^i in I = (prod W_Q V^i)[V^{-1}]. Slots
// outside the window are zero below lo; above hi they are zero when
// finite_tail is set and unknown otherwise. Absent slots inside the window
// are exact zeros.
struct ICheckElement {
  const FqContext* field = nullptr;
  int lo = 0;
  int hi = 0;
  std::map<int, PAdicApprox> slots;
  bool finite_tail = true;
  bool truncated = false;

  ICheckElement() = default;
  ICheckElement(const FqContext& f, int lo_, int hi_, bool finite = true);
  static ICheckElement from_omega(const OmegaElement& x);

  PAdicApprox at(int i) const;
  void set(int i, const PAdicApprox& x);
  bool is_zero() const;
  // Lowest precision over nonzero slots (absolute).
  std::int64_t precision_floor() const;
  ICheckElement operator+(const ICheckElement& o) const;
  ICheckElement operator-(const ICheckElement& o) const;
  std::string to_string() const;
};

// Element of J = I / prod W V^i: slots i >= 0 are classes in W_Q/W, stored by
// their principal parts.
struct JElement {
  const FqContext* field = nullptr;
  int lo = 0;
  int hi = 0;
  std::map<int, PAdicApprox> slots;

  JElement() = default;
  JElement(const FqContext& f, int lo_, int hi_);
  PAdicApprox at(int i) const;
  void set(int i, const PAdicApprox& x);
  bool is_zero() const;
  std::string to_string() const;
};

JElement to_j(const ICheckElement& x);

// alpha * c with slot k = sum_i alpha_i sigma^{-i}(c_{k-i}). An unknown tail
// in c leaves the top slots unknown; they are dropped and `truncated` is set,
// or PrecisionError is thrown when allow_truncation is false.
ICheckElement left_mul(const OmegaElement& alpha, const ICheckElement& c, bool allow_truncation = true);

struct BaerResult {
  ICheckElement c;
  ICheckElement residual;  // alpha * c - a on the window of a
  std::int64_t precision_floor = 0;
};

// Solves alpha * c = a slot by slot from the lowest slot of a. With hi set
// and a finite tail in a, the window of a is first extended to hi.
BaerResult baer_extend(const OmegaElement& alpha, const ICheckElement& a, std::optional<int> hi = std::nullopt);

struct RescaleStep {
  unsigned k = 0;  // V-exponent being solved
  unsigned s = 0;  // everything chosen so far was multiplied by p^s
};

struct ClmWitness {
  OmegaElement gamma, delta;
  std::string method;       // "inductive" or "ore-linear"
  std::string orientation;  // "solve-gamma" or "solve-delta"
  std::vector<RescaleStep> history;
  unsigned window_lo = 0, window_hi = 0;
  OmegaElement residual;  // gamma*alpha - delta*beta
  bool exact = false;
};

struct ClmOptions {
  unsigned extra_steps = 16;
  unsigned max_degree_increase = 4;
  Deadline deadline;
};

// gamma, delta with gamma*alpha = delta*beta != 0 at the working precision.
// The inductive procedure runs first; if it does not close up within its
// window the degree-bounded linear system over W_m is solved instead.
ClmWitness common_left_multiple(const OmegaElement& alpha, const OmegaElement& beta, const ClmOptions& opt = {});

// Minimal lift: negative slots unchanged, nonnegative slots the principal
// parts padded with zero digits to absolute precision alpha.precision().
ICheckElement lift_through_quotient(const OmegaElement& alpha, const JElement& b);

struct LiftPairResult {
  ICheckElement a_lift, b_lift;
  std::string adjusted;  // "none", "b", "a", "both" or "failed"
  ICheckElement residual;  // gamma * a' - delta * b' on the window
  bool residual_zero = false;
  bool quotients_match = false;  // R(a') = a and R(b') = b
};

// Lifts a, b in J with gamma*a = delta*b to a', b' in I with
// gamma*a' = delta*b' modulo p^m (the omega precision, where gamma and
// delta are defined) on slots up to max(window_hi, a.hi, b.hi). The
// nonnegative parts of b' are adjusted first, then those of a', then both,
// each by an exact linear solve over W_N(F_p).
LiftPairResult lift_pair(const OmegaElement& gamma, const OmegaElement& delta, const JElement& a, const JElement& b,
                         int window_hi);

struct TorsionComparison {
  std::vector<unsigned> p_torsion;
  std::vector<unsigned> v_torsion;
  bool coincide = false;
  ChainMatrix p_kernel, v_kernel;
};

// Kernels of the p-action and the V-action on M as submodules.
TorsionComparison torsion_compare(const FiniteChainModule& m, const SemilinearMap& p_action,
                                  const SemilinearMap& v_action);

// Same module and actions in the coordinates x' = P^{-1} x for a random
// unimodular P, with redundant relations appended.
struct PresentedActions {
  FiniteChainModule module;
  SemilinearMap p_action, v_action;
};
PresentedActions random_presentation_change(const FiniteChainModule& m, const SemilinearMap& p_action,
                                            const SemilinearMap& v_action, std::mt19937_64& rng);

}  // namespace wittlab
