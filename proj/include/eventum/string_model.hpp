// string_model.hpp - the truncated past/future string model.
//
// The extended space is the tensor product
//     [system, g(-0), g(+0), g(-1), g(+1), ..., g(-(T-1)), g(+(T-1))]
// of the system with T past and T future pointer sites (factor-0-major
// composite indices).  One step of the dynamics scatters the system
// against the incoming future site +0 through the dilation unitary W
// and shifts the string:
//     U:  psi (x) chi- chi+ (x) chi-1 chi+1 ...
//           ->  W(psi (x) chi+) chi+1 (x) chi- chi+2 ...
// i.e. U = P o (W on [system, +0]) where the factor routing P sends
// +0 -> -0, -k -> -(k+1), +k -> +(k-1), and recycles -(T-1) -> +(T-1)
// (cyclic closure).  For t <= T steps the recycled sites are still in
// vacuum, so every tested identity is exact at finite T.

#pragma once

#include <utility>
#include <vector>

#include "eventum/dilation.hpp"
#include "eventum/distribution.hpp"
#include "eventum/linalg.hpp"

namespace eventum {

// a string site: -k (past) or +k (future), k = 0..T-1
struct Site {
  bool past = true;
  int k = 0;

  static Site minus(int k) { return Site{true, k}; }
  static Site plus(int k) { return Site{false, k}; }
};

struct StringModel {
  Dilation dil;
  int horizon = 0;          // T
  FactorSpace space;        // [d, p, p, ..., p], 1 + 2T factors
  Operator step_unitary;    // dense U
  std::vector<long> step_route;  // index permutation realizing P
  StateVector vacuum_state;      // Phi0 on the 2T pointer sites

  int system_dim() const { return dil.system_dim; }
  int pointer_dim() const { return dil.pointer_dim; }
  long total_dim() const { return space.total_dim(); }
};

// default dimension cap d p^{2T} (overridable, env EVENTUM_DIM_CAP in
// the CLI)
inline constexpr long kDefaultDimCap = 8192;

StringModel build_step_unitary(const Dilation& dil, int horizon,
                               long dim_cap = kDefaultDimCap);

// the free shift: the same factor routing with no scattering
Operator build_free_shift(const StringModel& model);

// tensor factor holding the given site
int site_factor(const StringModel& model, Site s);

// multiplication by the numeric outcome label at one site (0 on
// vacuum), identity elsewhere; diagonal and Hermitian
Operator pointer_observable(const StringModel& model, Site s);

// psi (x) Phi0
StateVector initial_state(const StringModel& model, const StateVector& psi);

// ===== structured products with U =====
// U = P W~ with W~ local to factors [0, 2]; applying U or U^dag to
// vectors and matrices costs O(dim^2 * d p) instead of a dense product.

StateVector step_apply(const StringModel& model, const StateVector& v);
StateVector step_apply_inv(const StringModel& model, const StateVector& v);
Operator step_conjugate(const StringModel& model, Operator a);      // U^dag A U
Operator step_conjugate_inv(const StringModel& model, Operator a);  // U A U^dag

// U^t (psi (x) Phi0)
StateVector evolve(const StringModel& model, const StateVector& psi, int t);

// ===== Heisenberg picture and causality checks =====

// U^{-t} A U^t; throws std::domain_error beyond the horizon
Operator heisenberg_transform(const StringModel& model, const Operator& a,
                              int t);

// || T^t Y_s T^{-t} - U^t Y_s U^{-t} || for past site s = -s_past;
// the shift reversal identity makes both sides Y_{s-t}
double check_shift_reversal(const StringModel& model, int t, int s_past);

// res_BY = ||[B(t), Y_-(r)]||, res_YY = ||[Y_-(t), Y_-(r)]|| for
// 0 <= r <= t <= T, with B(t) = U^{-t}(B (x) I)U^t and
// Y_-(r) = U^{-r}(I (x) Y_{-0})U^r.  Both computed through the exact
// reduction ||[B(t),Y_-(r)]|| = ||[B (x) I, U^k Y_{-0} U^{-k}]||,
// k = t - r, by unitary invariance of the spectral norm.
std::pair<double, double> check_nondemolition(const StringModel& model,
                                              const Operator& b_sys, int t,
                                              int r);

// the same grid over all system matrix units and 0 <= r <= t <= t_max,
// returning max residuals; shares the U^k Y U^{-k} conjugations
struct NondemolitionGrid {
  double max_res_by = 0;
  double max_res_yy = 0;
};
NondemolitionGrid nondemolition_grid(const StringModel& model, int t_max);

// forward_residual = max ||[U^dag A U, Pi]|| and
// inverse_violation = max ||[U A U^dag, Pi]|| over the generators A
// and all past-site diagonal spectral projectors Pi; membership in the
// past-diagonal algebra is commutation with every such projector
std::pair<double, double> check_algebra_invariance(
    const StringModel& model, const std::vector<Operator>& generators);

// the default generator set: X_sys (x) y-diagonal at -0 and a
// future-factor pointer flip (PauliX on levels 1,2) at +0
std::vector<Operator> default_invariance_generators(const StringModel& model);
Operator future_pauli_x_generator(const StringModel& model);

// joint distribution of (Y_-(1), ..., Y_-(t)) read from
// Psi(t) = U^t (psi (x) Phi0); the outcome of step r sits at site
// -(t-r).  Sequences over {0..m}^t; vacuum-containing sequences carry
// mass <= 1e-12
SequenceDistribution joint_outcome_distribution(const StringModel& model,
                                                const StateVector& psi, int t);

// unnormalized conditional system state: the component of Psi_t on
// (outcomes at sites -(t-1)..-0) (x) (vacuum elsewhere)
StateVector extract_conditioned_state(const StringModel& model,
                                      const StateVector& psi_t,
                                      const std::vector<int>& outcomes);

// mass of Psi(t) = U^t(psi (x) Phi0) outside the faithful sector
// (future or deep-past sites not in vacuum); 0 within 1e-10 for t <= T
double vacuum_persistence_residual(const StringModel& model,
                                   const StateVector& psi, int t);

// reflection R (sites -k <-> +k) and the reversed-causality checks
struct ReflectionReport {
  double involution = 0;          // ||R^2 - I||
  double reflect_identity = 0;    // max_k ||R Y_{-k} R - Y_{+k}||
  double reversed_causality = 0;  // max ||[B(t), Y_+(r)]||, t <= r <= 0
};
ReflectionReport reflect_and_reverse(const StringModel& model);

}  // namespace eventum
