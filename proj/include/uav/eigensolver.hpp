#pragma once

// Dense nonsymmetric eigenvalue solver: balancing, Householder reduction to
// upper Hessenberg form, then Francis double-shift QR iteration. Eigenvalues
// only. Works for any real floating-point Scalar Eigen accepts.

#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "uav/errors.hpp"

namespace uav {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct EigenSolverOptions {
  bool balance = true;
  // Total QR sweeps allowed are iteration_factor * n.
  int iteration_factor = 100;
};

// Row/column index range [low, high] left active after permutation balancing.
// Rows and columns outside it carry eigenvalues on the diagonal already.
struct BalanceRange {
  Eigen::Index low = 0;
  Eigen::Index high = -1;
};

namespace detail {

template <typename Scalar>
void swap_indices(DenseMatrix<Scalar>& a, Eigen::Index i, Eigen::Index j) {
  if (i == j) return;
  a.row(i).swap(a.row(j));
  a.col(i).swap(a.col(j));
}

}  // namespace detail

// In-place balancing. Symmetric row/column permutations move isolated
// eigenvalues to the corners; diagonal power-of-two scaling then equalises
// row and column norms of the remaining block. Both are exact similarities.
template <typename Scalar>
BalanceRange balance(DenseMatrix<Scalar>& a) {
  using std::abs;
  const Eigen::Index n = a.rows();
  BalanceRange range{0, n - 1};
  if (n == 0) return range;
  Eigen::Index& low = range.low;
  Eigen::Index& high = range.high;

  // Rows with no off-diagonal entries in the active block go to the bottom.
  for (bool found = true; found && high >= 0;) {
    found = false;
    for (Eigen::Index j = high; j >= 0; --j) {
      bool isolated = true;
      for (Eigen::Index i = 0; i <= high && isolated; ++i)
        if (i != j && a(j, i) != Scalar(0)) isolated = false;
      if (!isolated) continue;
      detail::swap_indices(a, j, high);
      if (high == 0) return range;
      --high;
      found = true;
      break;
    }
  }

  // Columns with no off-diagonal entries in the active block go to the left.
  for (bool found = true; found;) {
    found = false;
    for (Eigen::Index j = low; j <= high; ++j) {
      bool isolated = true;
      for (Eigen::Index i = low; i <= high && isolated; ++i)
        if (i != j && a(i, j) != Scalar(0)) isolated = false;
      if (!isolated) continue;
      detail::swap_indices(a, j, low);
      ++low;
      found = true;
      break;
    }
  }

  const Scalar radix(2);
  const Scalar radix2 = radix * radix;
  for (bool changed = true; changed;) {
    changed = false;
    for (Eigen::Index i = low; i <= high; ++i) {
      Scalar c(0), r(0);
      for (Eigen::Index j = low; j <= high; ++j) {
        if (j == i) continue;
        c += abs(a(j, i));
        r += abs(a(i, j));
      }
      if (c == Scalar(0) || r == Scalar(0)) continue;
      const Scalar s = c + r;
      Scalar f(1);
      Scalar g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < Scalar(0.95) * s) {
        a.row(i) /= f;
        a.col(i) *= f;
        changed = true;
      }
    }
  }
  return range;
}

// In-place Householder reduction of the [low, high] block to upper Hessenberg
// form. Entries below the first subdiagonal are set to exactly zero.
template <typename Scalar>
void hessenberg_reduce(DenseMatrix<Scalar>& a, BalanceRange range) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = a.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(n);
  for (Eigen::Index k = range.low; k + 2 <= range.high; ++k) {
    const Eigen::Index len = range.high - k;
    auto x = a.col(k).segment(k + 1, len);
    const Scalar scale = x.cwiseAbs().sum();
    if (scale == Scalar(0)) continue;
    Scalar tail(0);
    for (Eigen::Index i = 1; i < len; ++i) tail += abs(x(i));
    if (tail == Scalar(0)) continue;

    auto h = v.head(len);
    h = x / scale;
    Scalar alpha = sqrt(h.squaredNorm());
    if (h(0) > Scalar(0)) alpha = -alpha;
    h(0) -= alpha;
    const Scalar vnorm2 = h.squaredNorm();

    // A <- (I - 2 v v^T / v^T v) A (I - 2 v v^T / v^T v) on rows/cols k+1..high.
    for (Eigen::Index j = k; j < n; ++j) {
      Scalar dot(0);
      for (Eigen::Index i = 0; i < len; ++i) dot += h(i) * a(k + 1 + i, j);
      const Scalar f = Scalar(2) * dot / vnorm2;
      for (Eigen::Index i = 0; i < len; ++i) a(k + 1 + i, j) -= f * h(i);
    }
    for (Eigen::Index i = 0; i <= range.high; ++i) {
      Scalar dot(0);
      for (Eigen::Index j = 0; j < len; ++j) dot += a(i, k + 1 + j) * h(j);
      const Scalar f = Scalar(2) * dot / vnorm2;
      for (Eigen::Index j = 0; j < len; ++j) a(i, k + 1 + j) -= f * h(j);
    }
    a(k + 1, k) = alpha * scale;
    for (Eigen::Index i = k + 2; i <= range.high; ++i) a(i, k) = Scalar(0);
  }
}

// Eigenvalues of an upper Hessenberg matrix (destroyed) via Francis
// double-shift QR with deflation. Diagonal entries outside `range` are
// taken as already isolated eigenvalues.
template <typename Scalar>
std::vector<std::complex<Scalar>> hessenberg_qr_eigenvalues(DenseMatrix<Scalar>& h,
                                                            BalanceRange range,
                                                            int iteration_factor = 100) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index size = h.rows();
  std::vector<Scalar> re(static_cast<std::size_t>(size), Scalar(0));
  std::vector<Scalar> im(static_cast<std::size_t>(size), Scalar(0));
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Eigen::Index low = range.low;
  const Eigen::Index high = range.high;

  Scalar norm(0);
  for (Eigen::Index i = 0; i < size; ++i) {
    if (i < low || i > high) re[i] = h(i, i);
    for (Eigen::Index j = std::max<Eigen::Index>(i - 1, 0); j < size; ++j) norm += abs(h(i, j));
  }

  const long long budget = static_cast<long long>(iteration_factor) * std::max<Eigen::Index>(size, 1);
  long long total = 0;
  int iter = 0;
  Scalar exshift(0);
  Scalar p(0), q(0), r(0), s(0), z(0), t, w, x, y;
  Eigen::Index n = high;

  while (n >= low) {
    Eigen::Index l = n;
    while (l > low) {
      s = abs(h(l - 1, l - 1)) + abs(h(l, l));
      if (s == Scalar(0)) s = norm;
      if (abs(h(l, l - 1)) < eps * s) break;
      --l;
    }

    if (l == n) {
      h(n, n) += exshift;
      re[n] = h(n, n);
      im[n] = Scalar(0);
      --n;
      iter = 0;
    } else if (l == n - 1) {
      w = h(n, n - 1) * h(n - 1, n);
      p = (h(n - 1, n - 1) - h(n, n)) / Scalar(2);
      q = p * p + w;
      z = sqrt(abs(q));
      h(n, n) += exshift;
      h(n - 1, n - 1) += exshift;
      x = h(n, n);
      if (q >= Scalar(0)) {
        z = p >= Scalar(0) ? p + z : p - z;
        re[n - 1] = x + z;
        re[n] = re[n - 1];
        if (z != Scalar(0)) re[n] = x - w / z;
        im[n - 1] = im[n] = Scalar(0);
      } else {
        re[n - 1] = re[n] = x + p;
        im[n - 1] = z;
        im[n] = -z;
      }
      n -= 2;
      iter = 0;
    } else {
      if (++total > budget) {
        std::ostringstream os;
        os << "QR iteration did not converge within " << budget << " sweeps (n = " << size
           << ", unreduced block rows " << l << ".." << n << ", Hessenberg 1-norm " << norm
           << ")";
        throw ConvergenceError(os.str());
      }
      x = h(n, n);
      y = Scalar(0);
      w = Scalar(0);
      if (l < n) {
        y = h(n - 1, n - 1);
        w = h(n, n - 1) * h(n - 1, n);
      }
      // Exceptional shifts break cycles on stubborn blocks.
      if (iter == 10) {
        exshift += x;
        for (Eigen::Index i = low; i <= n; ++i) h(i, i) -= x;
        s = abs(h(n, n - 1)) + abs(h(n - 1, n - 2));
        x = y = Scalar(0.75) * s;
        w = Scalar(-0.4375) * s * s;
      }
      if (iter == 30) {
        s = (y - x) / Scalar(2);
        s = s * s + w;
        if (s > Scalar(0)) {
          s = sqrt(s);
          if (y < x) s = -s;
          s = x - w / ((y - x) / Scalar(2) + s);
          for (Eigen::Index i = low; i <= n; ++i) h(i, i) -= s;
          exshift += s;
          x = y = w = Scalar(0.964);
        }
      }
      ++iter;

      // Look for two consecutive small subdiagonal elements.
      Eigen::Index m = n - 2;
      while (m >= l) {
        z = h(m, m);
        r = x - z;
        s = y - z;
        p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - r - s;
        r = h(m + 2, m + 1);
        s = abs(p) + abs(q) + abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        if (abs(h(m, m - 1)) * (abs(q) + abs(r)) <
            eps * (abs(p) * (abs(h(m - 1, m - 1)) + abs(z) + abs(h(m + 1, m + 1)))))
          break;
        --m;
      }
      for (Eigen::Index i = m + 2; i <= n; ++i) {
        h(i, i - 2) = Scalar(0);
        if (i > m + 2) h(i, i - 3) = Scalar(0);
      }

      // Double QR step on rows l..n, columns m..n.
      for (Eigen::Index k = m; k <= n - 1; ++k) {
        const bool notlast = k != n - 1;
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : Scalar(0);
          x = abs(p) + abs(q) + abs(r);
          if (x == Scalar(0)) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = sqrt(p * p + q * q + r * r);
        if (p < Scalar(0)) s = -s;
        if (s == Scalar(0)) continue;
        if (k != m)
          h(k, k - 1) = -s * x;
        else if (l != m)
          h(k, k - 1) = -h(k, k - 1);
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (Eigen::Index j = k; j <= n; ++j) {
          t = h(k, j) + q * h(k + 1, j);
          if (notlast) {
            t += r * h(k + 2, j);
            h(k + 2, j) -= t * z;
          }
          h(k, j) -= t * x;
          h(k + 1, j) -= t * y;
        }
        const Eigen::Index last = std::min(n, k + 3);
        for (Eigen::Index i = l; i <= last; ++i) {
          t = x * h(i, k) + y * h(i, k + 1);
          if (notlast) {
            t += z * h(i, k + 2);
            h(i, k + 2) -= t * r;
          }
          h(i, k) -= t;
          h(i, k + 1) -= t * q;
        }
      }
    }
  }

  std::vector<std::complex<Scalar>> out;
  out.reserve(static_cast<std::size_t>(size));
  for (Eigen::Index i = 0; i < size; ++i) out.emplace_back(re[i], im[i]);
  return out;
}

// All n eigenvalues of a real square matrix, with multiplicity. Complex
// eigenvalues come out as adjacent conjugate pairs, positive imaginary first.
// Throws DomainError on non-square or non-finite input and ConvergenceError
// when the sweep budget runs out.
template <typename Derived>
std::vector<std::complex<typename Derived::Scalar>> eigenvalues(
    const Eigen::MatrixBase<Derived>& m, const EigenSolverOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw DomainError("eigenvalues require a square matrix");
  if (m.rows() == 0) throw DomainError("eigenvalues require a non-empty matrix");
  if (!m.allFinite()) throw DomainError("eigenvalues require finite matrix entries");

  DenseMatrix<Scalar> work = m;
  BalanceRange range{0, work.rows() - 1};
  if (options.balance) range = balance(work);
  hessenberg_reduce(work, range);
  return hessenberg_qr_eigenvalues(work, range, options.iteration_factor);
}

}  // namespace uav
