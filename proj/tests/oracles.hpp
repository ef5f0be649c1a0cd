#pragma once

// Brute-force reference computations used only by tests. Everything here is
// written directly from index definitions and shares no code path with the
// library kernels it checks (apart from the Eigen storage types).

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ctrlfree/linalg.hpp"

namespace oracle {

using ctrlfree::Complex;
using ctrlfree::ComplexMatrix;
using ctrlfree::ComplexVector;
using Index = Eigen::Index;

inline int bit(Index value, int pos_from_msb, int width) {
  return static_cast<int>((value >> (width - 1 - pos_from_msb)) & 1);
}

/// (iA iB, jA jB) = A[iA, jA] * B[iB, jB], four explicit loops.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index ia = 0; ia < a.rows(); ++ia)
    for (Index ib = 0; ib < b.rows(); ++ib)
      for (Index ja = 0; ja < a.cols(); ++ja)
        for (Index jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = a(ia, ja) * b(ib, jb);
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

/// Partial trace keeping the listed wire positions (ascending), by summing
/// rho over every pair of full indices that agree on the traced bits.
inline ComplexMatrix trace_keep(const ComplexMatrix& rho, int width,
                                const std::vector<int>& keep) {
  const Index dk = Index{1} << keep.size();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  const Index dim = Index{1} << width;
  auto kept_index = [&](Index full) {
    Index k = 0;
    for (int p : keep) k = (k << 1) | bit(full, p, width);
    return k;
  };
  auto traced_equal = [&](Index x, Index y) {
    for (int p = 0; p < width; ++p) {
      bool kept = false;
      for (int q : keep) kept = kept || q == p;
      if (!kept && bit(x, p, width) != bit(y, p, width)) return false;
    }
    return true;
  };
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      if (traced_equal(i, j)) out(kept_index(i), kept_index(j)) += rho(i, j);
  return out;
}

/// W for the ancilla (x) S (x) E register, assembled entry by entry:
/// control 0 applies U to E, control 1 applies U to S.
inline ComplexMatrix gadget_block_form(const ComplexMatrix& u) {
  const Index d = u.rows();
  ComplexMatrix w = ComplexMatrix::Zero(2 * d * d, 2 * d * d);
  for (Index a = 0; a < 2; ++a)
    for (Index s = 0; s < d; ++s)
      for (Index e = 0; e < d; ++e)
        for (Index s2 = 0; s2 < d; ++s2)
          for (Index e2 = 0; e2 < d; ++e2) {
            const Index row = (a * d + s2) * d + e2;
            const Index col = (a * d + s) * d + e;
            if (a == 0 && s2 == s) w(row, col) = u(e2, e);
            if (a == 1 && e2 == e) w(row, col) = u(s2, s);
          }
  return w;
}

/// Controlled-U from the definition C(U)|0,x> = |0,x>, C(U)|1,x> = |1>U|x>.
inline ComplexMatrix controlled(const ComplexMatrix& u) {
  const Index d = u.rows();
  ComplexMatrix c = ComplexMatrix::Zero(2 * d, 2 * d);
  for (Index i = 0; i < d; ++i) c(i, i) = 1.0;
  c.bottomRightCorner(d, d) = u;
  return c;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline ComplexVector vec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

}  // namespace oracle
