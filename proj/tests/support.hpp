#pragma once

// Independent reference computations used as test oracles. None of these call
// into the routine they check.

#include <Eigen/Dense>

#include "swapsteer/network.hpp"

namespace oracle {

using swapsteer::CMatrix;
using swapsteer::Complex;
using swapsteer::RVector;

/// Ascending eigenvalues from Eigen's tridiagonal QR solver.
inline RVector eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double min_eigenvalue(const CMatrix& m) { return eigenvalues(m)(0); }

/// PT on A by explicit element swap |i j><k l| -> |k j><i l|.
inline CMatrix partial_transpose_a(const CMatrix& m, int da, int db) {
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) out(k * db + j, i * db + l) = m(i * db + j, k * db + l);
  return out;
}

/// Trace norm of the realigned matrix, built by vectorising the blocks of m
/// and decomposed by divide and conquer SVD.
inline double realignment_trace_norm(const CMatrix& m, int da, int db) {
  CMatrix r(da * da, db * db);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k) {
      const CMatrix block = m.block(i * db, k * db, db, db);
      for (int j = 0; j < db; ++j)
        for (int l = 0; l < db; ++l) r(i * da + k, j * db + l) = block(j, l);
    }
  Eigen::BDCSVD<CMatrix> svd(r);
  return svd.singularValues().sum();
}

/// p = Tr[(M (x) N) rho1 (x) rho2] summed index by index, with the state in
/// A1 B1 A2 B2 order and the operators in A1 A2 / B1 B2 order.
inline double born_probability(const CMatrix& rho1, const CMatrix& rho2, const CMatrix& m, const CMatrix& n, int da1,
                               int db1, int da2, int db2) {
  Complex p(0.0);
  for (int a1 = 0; a1 < da1; ++a1)
    for (int a2 = 0; a2 < da2; ++a2)
      for (int c1 = 0; c1 < da1; ++c1)
        for (int c2 = 0; c2 < da2; ++c2) {
          const Complex mv = m(a1 * da2 + a2, c1 * da2 + c2);
          if (mv == Complex(0.0)) continue;
          for (int b1 = 0; b1 < db1; ++b1)
            for (int b2 = 0; b2 < db2; ++b2)
              for (int e1 = 0; e1 < db1; ++e1)
                for (int e2 = 0; e2 < db2; ++e2) {
                  const Complex nv = n(b1 * db2 + b2, e1 * db2 + e2);
                  if (nv == Complex(0.0)) continue;
                  p += mv * nv * rho1(c1 * db1 + e1, a1 * db1 + b1) * rho2(c2 * db2 + e2, a2 * db2 + b2);
                }
        }
  return p.real();
}

/// Full correlation table by the index-by-index Born rule.
inline swapsteer::CorrelationTable correlations(const swapsteer::Scenario& s) {
  const int da1 = s.rho1.dims().a, db1 = s.rho1.dims().b, da2 = s.rho2.dims().a, db2 = s.rho2.dims().b;
  const int settings = static_cast<int>(s.alice.size());
  const int outcomes = static_cast<int>(s.alice.front().size());
  const int bob = static_cast<int>(s.bob.size());
  swapsteer::CorrelationTable t(settings, outcomes, bob);
  for (int x = 0; x < settings; ++x)
    for (int a = 0; a < outcomes; ++a)
      for (int b = 0; b < bob; ++b)
        t.at(x, a, b) = born_probability(s.rho1.matrix(), s.rho2.matrix(), s.alice[x][a], s.bob[b], da1, db1, da2, db2);
  return t;
}

/// Projector onto |phi+_d>, written out entrywise.
inline CMatrix phi_plus(int d) {
  CMatrix p = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i * d + i, j * d + j) = 1.0 / d;
  return p;
}

}  // namespace oracle
