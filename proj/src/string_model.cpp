// string_model.cpp - truncated string dynamics, causality checks, and
// the joint outcome distribution.
//
// U = P W~ with W~ local to the factors [system, +0], so products and
// conjugations with U are computed through the factored form: a
// permutation table plus a small-block apply.  The dense U demanded by
// the StringModel contract is assembled once from the same pieces.

#include "eventum/string_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eventum {

namespace {

const std::vector<int> kWTargets = {0, 2};  // (system, site +0)

void require_horizon(const StringModel& model, int t) {
  if (t < 0) throw std::invalid_argument("negative step count");
  if (t > model.horizon)
    throw std::domain_error(
        "horizon exceeded: truncated string is no longer faithful beyond T steps");
}

// diagonal of the pointer observable at a site, as real values
Eigen::VectorXd pointer_diagonal(const StringModel& model, Site s) {
  const long dim = model.total_dim();
  const int f = site_factor(model, s);
  const long stride = model.space.stride(f);
  const int p = model.pointer_dim();
  Eigen::VectorXd diag(dim);
  for (long i = 0; i < dim; ++i)
    diag(i) = static_cast<double>((i / stride) % p);
  return diag;
}

// ||[M, D]|| for diagonal D: the commutator is M_ij (d_j - d_i)
double diagonal_commutator_norm(const Operator& m, const Eigen::VectorXd& d) {
  Operator c(m.rows(), m.cols());
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i)
      c(i, j) = m(i, j) * (d(j) - d(i));
  return spectral_norm(c);
}

// ||[B~, M]|| with B~ = B embedded on the system factor
double system_commutator_norm(const StringModel& model, const Operator& b,
                              const Operator& m) {
  Operator c = embed_apply_left(b, model.space, {0}, m) -
               embed_apply_right(m, b, model.space, {0});
  return spectral_norm(c);
}

// 0/1 diagonal of the projector onto pointer value c at a past site
Eigen::VectorXd site_projector_diagonal(const StringModel& model, Site s,
                                        int value) {
  const long dim = model.total_dim();
  const int f = site_factor(model, s);
  const long stride = model.space.stride(f);
  const int p = model.pointer_dim();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (long i = 0; i < dim; ++i)
    if ((i / stride) % p == value) diag(i) = 1.0;
  return diag;
}

}  // namespace

int site_factor(const StringModel& model, Site s) {
  if (s.k < 0 || s.k >= model.horizon)
    throw std::invalid_argument("site index outside the simulated range");
  return s.past ? 1 + 2 * s.k : 2 + 2 * s.k;
}

StringModel build_step_unitary(const Dilation& dil, int horizon,
                               long dim_cap) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const int d = dil.system_dim;
  const int p = dil.pointer_dim;

  long dim = d;
  for (int i = 0; i < 2 * horizon; ++i) {
    dim *= p;
    if (dim > dim_cap)
      throw std::length_error("dimension cap exceeded: d p^{2T} > " +
                              std::to_string(dim_cap));
  }

  StringModel model;
  model.dil = dil;
  model.horizon = horizon;
  std::vector<int> dims(1 + 2 * horizon, p);
  dims[0] = d;
  model.space = FactorSpace(dims);

  // factor routing of one step: +0 -> -0 (carrying W's pointer output),
  // -k -> -(k+1), +k -> +(k-1), and -(T-1) recycled to +(T-1)
  std::vector<int> route(1 + 2 * horizon);
  route[0] = 0;
  route[2] = 1;                                      // +0 -> -0
  for (int k = 0; k + 1 < horizon; ++k) {
    route[1 + 2 * k] = 1 + 2 * (k + 1);              // -k -> -(k+1)
    route[2 + 2 * (k + 1)] = 2 + 2 * k;              // +(k+1) -> +k
  }
  route[1 + 2 * (horizon - 1)] = 2 + 2 * (horizon - 1);
  model.step_route = factor_permutation_table(model.space, route);

  Operator wtilde = embed_on_factors(dil.W, model.space, kWTargets);
  model.step_unitary = Operator(dim, dim);
  for (long i = 0; i < dim; ++i)
    model.step_unitary.row(model.step_route[i]) = wtilde.row(i);

  model.vacuum_state = StateVector::Zero(dim / d);
  model.vacuum_state(0) = 1.0;
  return model;
}

Operator build_free_shift(const StringModel& model) {
  return permutation_operator(model.step_route);
}

Operator pointer_observable(const StringModel& model, Site s) {
  return pointer_diagonal(model, s).cast<Complex>().asDiagonal();
}

StateVector initial_state(const StringModel& model, const StateVector& psi) {
  if (psi.size() != model.system_dim())
    throw std::invalid_argument("system state dimension mismatch");
  return tensor_product_vec(psi, model.vacuum_state);
}

// ===== structured products =====

StateVector step_apply(const StringModel& model, const StateVector& v) {
  return apply_permutation(
      model.step_route, embed_apply_vec(model.dil.W, model.space, kWTargets, v));
}

StateVector step_apply_inv(const StringModel& model, const StateVector& v) {
  StateVector u(v.size());
  for (long i = 0; i < v.size(); ++i) u(i) = v(model.step_route[i]);
  return embed_apply_vec(model.dil.W.adjoint(), model.space, kWTargets, u);
}

Operator step_conjugate(const StringModel& model, Operator a) {
  a = permute_conjugate_inv(model.step_route, a);
  a = embed_apply_left(model.dil.W.adjoint(), model.space, kWTargets, a);
  return embed_apply_right(a, model.dil.W, model.space, kWTargets);
}

Operator step_conjugate_inv(const StringModel& model, Operator a) {
  a = embed_apply_left(model.dil.W, model.space, kWTargets, a);
  a = embed_apply_right(a, model.dil.W.adjoint(), model.space, kWTargets);
  return permute_conjugate(model.step_route, a);
}

StateVector evolve(const StringModel& model, const StateVector& psi, int t) {
  StateVector v = initial_state(model, psi);
  for (int k = 0; k < t; ++k) v = step_apply(model, v);
  return v;
}

// ===== Heisenberg picture and checks =====

Operator heisenberg_transform(const StringModel& model, const Operator& a,
                              int t) {
  require_horizon(model, t);
  if (a.rows() != model.total_dim() || a.cols() != model.total_dim())
    throw std::invalid_argument("operator dimension mismatch");
  Operator out = a;
  for (int k = 0; k < t; ++k) out = step_conjugate(model, out);
  return out;
}

double check_shift_reversal(const StringModel& model, int t, int s_past) {
  require_horizon(model, t);
  if (s_past < 0 || s_past >= model.horizon || s_past + t > model.horizon - 1)
    throw std::invalid_argument("site or shifted site outside the past range");

  // T^t Y_s T^{-t}: permutation conjugation of a diagonal
  Eigen::VectorXd lhs = pointer_diagonal(model, Site::minus(s_past));
  for (int k = 0; k < t; ++k) {
    Eigen::VectorXd next(lhs.size());
    for (long i = 0; i < lhs.size(); ++i) next(model.step_route[i]) = lhs(i);
    lhs = next;
  }

  // U^t Y_s U^{-t}
  Operator rhs = pointer_observable(model, Site::minus(s_past));
  for (int k = 0; k < t; ++k) rhs = step_conjugate_inv(model, rhs);

  rhs -= Operator(lhs.cast<Complex>().asDiagonal());
  return spectral_norm(rhs);
}

std::pair<double, double> check_nondemolition(const StringModel& model,
                                              const Operator& b_sys, int t,
                                              int r) {
  require_horizon(model, t);
  if (r < 0 || r > t) throw std::invalid_argument("need 0 <= r <= t");
  if (b_sys.rows() != model.system_dim() ||
      b_sys.cols() != model.system_dim())
    throw std::invalid_argument("system operator dimension mismatch");

  // ||[B(t), Y_-(r)]|| = ||[B (x) I, K]||, K = U^k Y_-0 U^{-k}, k = t-r
  const int k = t - r;
  Operator kmat = pointer_observable(model, Site::minus(0));
  for (int j = 0; j < k; ++j) kmat = step_conjugate_inv(model, kmat);

  double res_by = system_commutator_norm(model, b_sys, kmat);
  double res_yy =
      diagonal_commutator_norm(kmat, pointer_diagonal(model, Site::minus(0)));
  return {res_by, res_yy};
}

NondemolitionGrid nondemolition_grid(const StringModel& model, int t_max) {
  require_horizon(model, t_max);
  const int d = model.system_dim();
  Eigen::VectorXd y0 = pointer_diagonal(model, Site::minus(0));

  NondemolitionGrid grid;
  Operator kmat = Operator(y0.cast<Complex>().asDiagonal());
  // residuals for the pair (t, r) depend only on k = t - r
  for (int k = 0; k <= t_max; ++k) {
    if (k > 0) kmat = step_conjugate_inv(model, kmat);
    double yy = diagonal_commutator_norm(kmat, y0);
    if (yy > grid.max_res_yy) grid.max_res_yy = yy;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Operator unit = Operator::Zero(d, d);
        unit(a, b) = 1.0;
        double by = system_commutator_norm(model, unit, kmat);
        if (by > grid.max_res_by) grid.max_res_by = by;
      }
  }
  return grid;
}

std::pair<double, double> check_algebra_invariance(
    const StringModel& model, const std::vector<Operator>& generators) {
  double forward = 0, inverse = 0;
  for (const Operator& gen : generators) {
    if (gen.rows() != model.total_dim() || gen.cols() != model.total_dim())
      throw std::invalid_argument("generator dimension mismatch");
    Operator fwd = step_conjugate(model, gen);
    Operator inv = step_conjugate_inv(model, gen);
    for (int s = 0; s < model.horizon; ++s)
      for (int c = 0; c < model.pointer_dim(); ++c) {
        Eigen::VectorXd proj =
            site_projector_diagonal(model, Site::minus(s), c);
        double rf = diagonal_commutator_norm(fwd, proj);
        if (rf > forward) forward = rf;
        double ri = diagonal_commutator_norm(inv, proj);
        if (ri > inverse) inverse = ri;
      }
  }
  return {forward, inverse};
}

Operator future_pauli_x_generator(const StringModel& model) {
  const int p = model.pointer_dim();
  // PauliX on the first two outcome levels (1,2), or on (0,1) when the
  // pointer has a single outcome
  Operator flip = Operator::Identity(p, p);
  int a = (p >= 3) ? 1 : 0;
  int b = a + 1;
  flip(a, a) = 0;
  flip(b, b) = 0;
  flip(a, b) = 1;
  flip(b, a) = 1;
  return embed_on_factors(flip, model.space,
                          {site_factor(model, Site::plus(0))});
}

std::vector<Operator> default_invariance_generators(const StringModel& model) {
  const int d = model.system_dim();
  const int p = model.pointer_dim();
  // B (x) ydiag at -0, identity on the future
  Operator b = Operator::Identity(d, d);
  if (d >= 2) {
    b = Operator::Zero(d, d);
    b(0, 1) = 1;
    b(1, 0) = 1;
  }
  Operator ydiag = Operator::Zero(p, p);
  for (int c = 0; c < p; ++c) ydiag(c, c) = static_cast<double>(c);
  Operator gen1 = embed_on_factors(tensor_product(b, ydiag), model.space,
                                   {0, site_factor(model, Site::minus(0))});
  return {gen1, future_pauli_x_generator(model)};
}

SequenceDistribution joint_outcome_distribution(const StringModel& model,
                                                const StateVector& psi,
                                                int t) {
  require_horizon(model, t);
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("initial state is not normalized");

  StateVector state = evolve(model, psi, t);

  // outcome of step r (r = 1..t) sits at site -(t-r)
  const int p = model.pointer_dim();
  std::vector<long> strides(t);
  for (int r = 1; r <= t; ++r)
    strides[r - 1] = model.space.stride(site_factor(model, Site::minus(t - r)));

  long patterns = 1;
  for (int r = 0; r < t; ++r) patterns *= p;

  std::vector<double> mass(patterns, 0.0);
  for (long i = 0; i < state.size(); ++i) {
    double a2 = std::norm(state(i));
    long key = 0;
    for (int r = 0; r < t; ++r) key = key * p + (i / strides[r]) % p;
    mass[key] += a2;
  }

  SequenceDistribution dist;
  dist.steps = t;
  dist.entries.reserve(patterns);
  for (long key = 0; key < patterns; ++key) {
    SequenceMass e;
    e.sequence.resize(t);
    long rem = key;
    for (int r = t - 1; r >= 0; --r) {
      e.sequence[r] = static_cast<int>(rem % p);
      rem /= p;
    }
    e.mass = mass[key];
    dist.entries.push_back(std::move(e));
  }
  dist.sort_entries();
  return dist;
}

StateVector extract_conditioned_state(const StringModel& model,
                                      const StateVector& psi_t,
                                      const std::vector<int>& outcomes) {
  const int t = static_cast<int>(outcomes.size());
  require_horizon(model, t);
  if (psi_t.size() != model.total_dim())
    throw std::invalid_argument("extended state dimension mismatch");

  std::vector<int> digits(model.space.num_factors(), 0);
  for (int r = 1; r <= t; ++r) {
    int y = outcomes[r - 1];
    if (y < 1 || y >= model.pointer_dim())
      throw std::invalid_argument("outcome label out of range");
    digits[site_factor(model, Site::minus(t - r))] = y;
  }

  const int d = model.system_dim();
  StateVector out(d);
  for (int x = 0; x < d; ++x) {
    digits[0] = x;
    out(x) = psi_t(model.space.compose(digits));
  }
  return out;
}

double vacuum_persistence_residual(const StringModel& model,
                                   const StateVector& psi, int t) {
  require_horizon(model, t);
  StateVector state = evolve(model, psi, t);

  // sites that must still be in vacuum: every future site and every
  // past site deeper than -(t-1)
  std::vector<long> strides;
  for (int k = 0; k < model.horizon; ++k) {
    strides.push_back(model.space.stride(site_factor(model, Site::plus(k))));
    if (k >= t)
      strides.push_back(model.space.stride(site_factor(model, Site::minus(k))));
  }

  const int p = model.pointer_dim();
  double outside = 0;
  for (long i = 0; i < state.size(); ++i) {
    for (long s : strides)
      if ((i / s) % p != 0) {
        outside += std::norm(state(i));
        break;
      }
  }
  return outside;
}

ReflectionReport reflect_and_reverse(const StringModel& model) {
  const int nf = model.space.num_factors();
  std::vector<int> route(nf);
  route[0] = 0;
  for (int k = 0; k < model.horizon; ++k) {
    route[site_factor(model, Site::minus(k))] =
        site_factor(model, Site::plus(k));
    route[site_factor(model, Site::plus(k))] =
        site_factor(model, Site::minus(k));
  }
  std::vector<long> rtab = factor_permutation_table(model.space, route);

  ReflectionReport rep;

  // R^2 = I as a permutation identity
  bool involutive = true;
  for (long i = 0; i < static_cast<long>(rtab.size()); ++i)
    if (rtab[rtab[i]] != i) involutive = false;
  rep.involution =
      involutive ? 0.0
                 : spectral_norm(permutation_operator(rtab) *
                                     permutation_operator(rtab) -
                                 Operator::Identity(rtab.size(), rtab.size()));

  // R Y_{-k} R = Y_{+k}: diagonal permuted against diagonal
  for (int k = 0; k < model.horizon; ++k) {
    Eigen::VectorXd dminus = pointer_diagonal(model, Site::minus(k));
    Eigen::VectorXd dplus = pointer_diagonal(model, Site::plus(k));
    double res = 0;
    for (long i = 0; i < dminus.size(); ++i)
      res = std::max(res, std::abs(dminus(i) - dplus(rtab[i])));
    if (res > rep.reflect_identity) rep.reflect_identity = res;
  }

  // reversed causality [B(t), Y_+(r)] = 0 for t <= r <= 0:
  // conjugating by U^{|r|} reduces the pair to (t-r, 0), so the
  // residual depends only on j = |t| - |r|
  const int d = model.system_dim();
  Eigen::VectorXd yplus0 = pointer_diagonal(model, Site::plus(0));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Operator unit = Operator::Zero(d, d);
      unit(a, b) = 1.0;
      Operator l = embed_on_factors(unit, model.space, {0});
      for (int j = 0; j <= model.horizon; ++j) {
        if (j > 0) l = step_conjugate_inv(model, l);
        double res = diagonal_commutator_norm(l, yplus0);
        if (res > rep.reversed_causality) rep.reversed_causality = res;
      }
    }
  return rep;
}

}  // namespace eventum
