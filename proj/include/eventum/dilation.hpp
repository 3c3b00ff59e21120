// dilation.hpp - unitary dilations of a reduction family on the
// system (x) pointer space.
//
// The pointer space has dimension m+1 with index 0 the vacuum state
// chi0 = |0> and index y the registered outcome y.  The pointer is the
// least significant tensor factor, so extraction of the family is a
// literal sub-block read:
//     (I (x) <y|) W (I (x) |0>) = V(y),   (I (x) <0|) W (I (x) |0>) = 0.
// The canonical form is
//     W = e^{-iE} [[0, F^dag], [F, I(x)1 - F F^dag]]
// with F the isometry stacking F(y) = e^{iE} V(y).

#pragma once

#include <vector>

#include "eventum/linalg.hpp"
#include "eventum/reduction.hpp"

namespace eventum {

struct Dilation {
  int system_dim = 0;
  int pointer_dim = 0;  // m+1, index 0 = vacuum
  Operator W;           // unitary on system_dim * pointer_dim
  Operator E;           // Hermitian system action (zero when absent)
  // base-measure weights of the dilated family, needed to unabsorb the
  // sqrt(mu) rescaling on extraction; all ones for counting measure
  std::vector<double> weights;

  int num_outcomes() const { return pointer_dim - 1; }
};

// (I (x) <row|) W (I (x) |col|) as a system_dim x system_dim block
Operator dilation_block(const Operator& w, int system_dim, int pointer_dim,
                        int row, int col);

// Canonical block dilation of a complete-observation family.  Weighted
// measures are folded as V(y) <- sqrt(mu_y) V(y) before stacking and
// unfolded again on extraction/verification.
Dilation canonical_dilation(const ReductionFamily& fam, const Operator& e_action);
Dilation canonical_dilation(const ReductionFamily& fam);  // E = 0

// Von Neumann pointer measurement as an explicit unitary:
// W = (e^{-iE} (x) I) S with S the controlled cyclic shift
// |x> (x) |y>  ->  |x> (x) |y + x mod n> in X's eigenbasis.
// The pointer starts at phi instead of a distinguished vacuum, so this
// is a Dilation-like pair rather than a Dilation.
struct PointerShiftDilation {
  Operator W;       // unitary on d * n
  StateVector phi;  // initial pointer state
};
PointerShiftDilation pointer_shift_dilation(const Operator& x_obs,
                                            const StateVector& phi,
                                            const Operator& e_action);

struct DilationReport {
  double unitarity_left = 0;    // ||W^dag W - I||
  double unitarity_right = 0;   // ||W W^dag - I||
  double vacuum_block = 0;      // ||(I(x)<0|)W(I(x)|0>)||
  double extraction_max = 0;    // max_y ||block(y,0)/sqrt(mu_y) - V(y)||

  double max_residual() const;
};

// measures the Dilation invariants against the given family; reports,
// never throws
DilationReport verify_dilation(const Dilation& dil, const ReductionFamily& fam);

// Time-reversed family V*(y) = (I (x) <y|) W^{-1} (I (x) |0>), the
// reduction performed by the inverse interaction.  For canonical
// dilations V*(y) = F(y) e^{iE}.  Throws std::domain_error when the
// vacuum block of W^dag exceeds 1e-9 ("reversal leaks into vacuum").
ReductionFamily reversed_family(const Dilation& dil);

}  // namespace eventum
