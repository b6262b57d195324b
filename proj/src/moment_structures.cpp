#include "volmom/moment_structures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace volmom {

Eigen::MatrixXd AffineMatrixMap::instantiate(const MomentVector& y) const {
  if (y.n != n) throw Error("instantiate: dimension mismatch");
  if (y.basis != basis) throw Error("instantiate: moment vector basis differs from map basis");
  if (y.degree < moment_degree)
    throw Error("instantiate: need moments up to degree " + std::to_string(moment_degree) +
                ", have " + std::to_string(y.degree));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t r = 0; r < coefficients.size(); ++r) {
    const double v = y.values[r];
    if (v == 0.0) continue;
    for (const auto& e : coefficients[r]) m(e.row, e.col) += v * e.value;
  }
  return m.selfadjointView<Eigen::Upper>();
}

Eigen::MatrixXd AffineMatrixMap::coefficient_matrix(std::size_t moment_rank) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (const auto& e : coefficients.at(moment_rank)) m(e.row, e.col) = e.value;
  return m.selfadjointView<Eigen::Upper>();
}

AffineMatrixMap localizing_matrix_map(const MultiPoly& g_in, std::size_t n, int d,
                                      Basis basis) {
  if (g_in.dimension() != n) throw Error("localizing_matrix_map: dimension mismatch");
  if (d < 0) throw Error("localizing_matrix_map: negative block degree");
  const MultiPoly g = convert(g_in, basis);
  const auto rows = index_set(n, d);
  AffineMatrixMap map;
  map.n = n;
  map.size = rows.size();
  map.basis = basis;
  map.moment_degree = 2 * d + std::max(g.degree(), 0);
  map.coefficients.resize(monomial_count(n, map.moment_degree));
  std::map<std::size_t, double> entry;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i; j < rows.size(); ++j) {
      entry.clear();
      for (const auto& [ab, c] : basis_product(rows[i], rows[j], basis))
        for (const auto& [gi, gc] : g.terms())
          for (const auto& [t, tc] : basis_product(ab, gi, basis)) entry[rank(t)] += c * gc * tc;
      for (const auto& [r, v] : entry)
        if (v != 0.0)
          map.coefficients[r].push_back({static_cast<int>(i), static_cast<int>(j), v});
    }
  }
  return map;
}

AffineMatrixMap moment_matrix_map(std::size_t n, int d, Basis basis) {
  return localizing_matrix_map(MultiPoly::constant(n, 1.0, basis), n, d, basis);
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto ev = es.eigenvalues().cwiseAbs();
  return ev.maxCoeff() / ev.minCoeff();
}

DominanceReport dominance_check(const MomentVector& y1, const MomentVector& y2,
                                const std::vector<MultiPoly>& g, int d) {
  if (y1.n != y2.n || y1.degree != y2.degree || y1.basis != y2.basis)
    throw Error("dominance_check: moment vectors differ in shape");
  const MomentVector y0 = y2 - y1;
  DominanceReport rep;
  rep.tolerance = 1e-8 * std::abs(y2.mass());
  rep.min_eig_moment = min_eigenvalue(moment_matrix_map(y0.n, d, y0.basis).instantiate(y0));
  rep.dominated = rep.min_eig_moment >= -rep.tolerance;
  for (const auto& gj : g) {
    const int rj = (std::max(gj.degree(), 0) + 1) / 2;
    if (d - rj < 0) throw Error("dominance_check: degree too low for localizing constraint");
    const double ev =
        min_eigenvalue(localizing_matrix_map(gj, y0.n, d - rj, y0.basis).instantiate(y0));
    rep.min_eig_localizing.push_back(ev);
    rep.dominated = rep.dominated && ev >= -rep.tolerance;
  }
  return rep;
}

}  // namespace volmom
