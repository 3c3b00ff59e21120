// dilation.cpp - canonical block dilation, pointer-shift dilation,
// verification, and the time-reversed family.

#include "eventum/dilation.hpp"

#include <cmath>
#include <stdexcept>

namespace eventum {

Operator dilation_block(const Operator& w, int system_dim, int pointer_dim,
                        int row, int col) {
  if (w.rows() != static_cast<long>(system_dim) * pointer_dim)
    throw std::invalid_argument("dilation dimension mismatch");
  if (row < 0 || row >= pointer_dim || col < 0 || col >= pointer_dim)
    throw std::invalid_argument("pointer index out of range");
  Operator block(system_dim, system_dim);
  for (int x = 0; x < system_dim; ++x)
    for (int xp = 0; xp < system_dim; ++xp)
      block(x, xp) = w(static_cast<long>(x) * pointer_dim + row,
                       static_cast<long>(xp) * pointer_dim + col);
  return block;
}

Dilation canonical_dilation(const ReductionFamily& fam,
                            const Operator& e_action) {
  double residual = validate_completeness(fam);
  if (residual > 1e-9)
    throw std::invalid_argument("family fails completeness, residual " +
                                std::to_string(residual));
  if (!fam.complete_observation())
    throw std::invalid_argument("canonical dilation needs complete observation");
  const int d = fam.system_dim;
  const int m = fam.num_outcomes();
  for (int i = 0; i < m; ++i)
    if (fam.outcomes.labels[i] != i + 1)
      throw std::invalid_argument("canonical dilation needs labels 1..m in order");
  if (e_action.rows() != d || e_action.cols() != d)
    throw std::invalid_argument("E dimension mismatch");

  const int p = m + 1;
  Operator expe = exp_minus_i(e_action);        // e^{-iE}
  Operator expe_inv = expe.adjoint();           // e^{+iE}

  // F(y) = e^{iE} sqrt(mu_y) V(y); the stacked column F is an isometry
  std::vector<Operator> f(m);
  for (int y = 1; y <= m; ++y)
    f[y - 1] = expe_inv * (std::sqrt(fam.outcomes.weights[y - 1]) *
                           fam.kraus_for(y));

  // M = [[0, F^dag], [F, I(x)1 - F F^dag]] in block form, pointer least
  // significant; then W = (e^{-iE} (x) 1) M
  const long dim = static_cast<long>(d) * p;
  Operator mblock = Operator::Zero(dim, dim);
  auto put = [&](int row, int col, const Operator& a) {
    for (int x = 0; x < d; ++x)
      for (int xp = 0; xp < d; ++xp)
        mblock(static_cast<long>(x) * p + row,
               static_cast<long>(xp) * p + col) = a(x, xp);
  };
  for (int y = 1; y <= m; ++y) {
    put(0, y, f[y - 1].adjoint());
    put(y, 0, f[y - 1]);
    for (int yp = 1; yp <= m; ++yp) {
      Operator corner = -f[y - 1] * f[yp - 1].adjoint();
      if (y == yp) corner += Operator::Identity(d, d);
      put(y, yp, corner);
    }
  }

  Dilation dil;
  dil.system_dim = d;
  dil.pointer_dim = p;
  dil.E = e_action;
  dil.weights = fam.outcomes.weights;
  dil.W = tensor_product(expe, Operator::Identity(p, p)) * mblock;
  return dil;
}

Dilation canonical_dilation(const ReductionFamily& fam) {
  return canonical_dilation(
      fam, Operator::Zero(fam.system_dim, fam.system_dim));
}

PointerShiftDilation pointer_shift_dilation(const Operator& x_obs,
                                            const StateVector& phi,
                                            const Operator& e_action) {
  const int n = static_cast<int>(phi.size());
  if (std::abs(phi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("pointer state phi is not normalized");
  auto clusters = cluster_spectrum(x_obs, 1e-8);
  const int d = static_cast<int>(x_obs.rows());

  // S = sum_x P_x (x) C^x with C the cyclic shift |y> -> |y+1 mod n>
  Operator cshift = Operator::Zero(n, n);
  for (int y = 0; y < n; ++y) cshift((y + 1) % n, y) = 1.0;

  Operator s = Operator::Zero(static_cast<long>(d) * n,
                              static_cast<long>(d) * n);
  for (const auto& c : clusters) {
    double r = std::round(c.value);
    if (std::abs(c.value - r) > 1e-9 || r < 0 || r >= n)
      throw std::invalid_argument("X spectrum is not integer in Z_n");
    Operator cpow = Operator::Identity(n, n);
    for (int k = 0; k < static_cast<int>(r); ++k) cpow = cshift * cpow;
    s += tensor_product(c.projector, cpow);
  }

  PointerShiftDilation out;
  out.phi = phi;
  out.W = tensor_product(exp_minus_i(e_action), Operator::Identity(n, n)) * s;
  return out;
}

double DilationReport::max_residual() const {
  double r = unitarity_left;
  if (unitarity_right > r) r = unitarity_right;
  if (vacuum_block > r) r = vacuum_block;
  if (extraction_max > r) r = extraction_max;
  return r;
}

DilationReport verify_dilation(const Dilation& dil,
                               const ReductionFamily& fam) {
  DilationReport rep;
  const long dim = dil.W.rows();
  Operator g = dil.W.adjoint() * dil.W - Operator::Identity(dim, dim);
  rep.unitarity_left = spectral_norm(g);
  g = dil.W * dil.W.adjoint() - Operator::Identity(dim, dim);
  rep.unitarity_right = spectral_norm(g);
  rep.vacuum_block = spectral_norm(
      dilation_block(dil.W, dil.system_dim, dil.pointer_dim, 0, 0));
  for (int i = 0; i < fam.num_outcomes(); ++i) {
    int y = fam.outcomes.labels[i];
    if (y <= 0 || y >= dil.pointer_dim) continue;
    Operator block =
        dilation_block(dil.W, dil.system_dim, dil.pointer_dim, y, 0);
    // unabsorb the sqrt(mu) folded in at construction time
    double mu = (y - 1 < static_cast<int>(dil.weights.size()))
                    ? dil.weights[y - 1]
                    : 1.0;
    block /= std::sqrt(mu);
    double res = spectral_norm(block - fam.kraus_for(y));
    if (res > rep.extraction_max) rep.extraction_max = res;
  }
  return rep;
}

ReductionFamily reversed_family(const Dilation& dil) {
  Operator wd = dil.W.adjoint();
  double leak =
      spectral_norm(dilation_block(wd, dil.system_dim, dil.pointer_dim, 0, 0));
  if (leak > 1e-9)
    throw std::domain_error("reversal leaks into vacuum, residual " +
                            std::to_string(leak));
  std::vector<Operator> vs;
  for (int y = 1; y < dil.pointer_dim; ++y)
    vs.push_back(dilation_block(wd, dil.system_dim, dil.pointer_dim, y, 0));
  return make_family(dil.system_dim, std::move(vs));
}

}  // namespace eventum
