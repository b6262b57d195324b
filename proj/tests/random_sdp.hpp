#pragma once

#include <algorithm>
#include <random>

#include "volmom/conic.hpp"

namespace volmom::testing {

struct RandomSdp {
  conic::StandardConicProblem problem;
  std::vector<double> y_feasible;
};

/// Strictly feasible primal and dual by construction: F0 = S - sum y*_i F_i
/// with S positive definite at a random y*, and c_i = -<F_i, X*> for a
/// positive definite X*. Blocks are at most 8 x 8 and there are at most 30
/// variables; roughly one problem in four gets an extra nonnegative block.
inline RandomSdp random_sdp(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> nblocks(1, 3), bsize(1, 8);
  RandomSdp out;
  auto& p = out.problem;

  const int nb = nblocks(gen);
  const bool lp_block = std::uniform_int_distribution<int>(0, 3)(gen) == 0;
  std::vector<int> sizes;
  int entries = 0;
  for (int b = 0; b < nb + (lp_block ? 1 : 0); ++b) {
    sizes.push_back(bsize(gen));
    entries += b == nb ? sizes.back() : sizes.back() * (sizes.back() + 1) / 2;
  }
  // Fewer variables than free matrix entries keeps the F_i independent.
  p.num_vars = static_cast<std::size_t>(
      std::uniform_int_distribution<int>(1, std::min(30, std::max(1, entries / 2)))(gen));
  out.y_feasible.resize(p.num_vars);
  for (auto& y : out.y_feasible) y = u(gen);
  p.objective.assign(p.num_vars, 0.0);

  auto random_pd = [&](int s) {
    Eigen::MatrixXd a(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) a(i, j) = u(gen);
    return Eigen::MatrixXd(a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(s, s));
  };

  for (int b = 0; b < static_cast<int>(sizes.size()); ++b) {
    conic::Block blk;
    const bool diag = b == nb;
    blk.kind = diag ? conic::ConeKind::Nonneg : conic::ConeKind::PSD;
    const int s = sizes[b];
    blk.size = static_cast<std::size_t>(s);
    Eigen::MatrixXd f0 = random_pd(s);
    const Eigen::MatrixXd x = random_pd(s);
    if (diag) f0 = Eigen::MatrixXd(f0.diagonal().asDiagonal());
    blk.coefficients.resize(p.num_vars);
    for (std::size_t i = 0; i < p.num_vars; ++i) {
      Eigen::MatrixXd fi = Eigen::MatrixXd::Zero(s, s);
      for (int r = 0; r < s; ++r)
        for (int c = r; c < s; ++c) {
          if (diag && r != c) continue;
          if (u(gen) < -0.2 && !(b == 0 && r == 0 && c == 0)) continue;
          const double v = u(gen);
          fi(r, c) = fi(c, r) = v;
          blk.coefficients[i].push_back({r, c, v});
        }
      f0 -= out.y_feasible[i] * fi;
      p.objective[i] -= (fi.array() * x.array()).sum();
    }
    for (int r = 0; r < s; ++r)
      for (int c = r; c < s; ++c)
        if (f0(r, c) != 0.0 && (!diag || r == c)) blk.constant.push_back({r, c, f0(r, c)});
    p.blocks.push_back(std::move(blk));
  }
  return out;
}

}  // namespace volmom::testing
