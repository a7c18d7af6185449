#pragma once

// Dense interval matrices (real and rectangular-complex), rigorous sup-norm
// bounds, verified inverse enclosures and Gershgorin disks. Kept independent
// of Eigen's expression machinery: interval containment must survive exactly
// the operations written here, so the loops are explicit.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cuspid/interval.hpp"

namespace cuspid {

class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static IntervalMatrix identity(int n) {
    IntervalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Interval(1.0);
    return m;
  }
  // entrywise enclosure of a point matrix
  static IntervalMatrix enclose(const Eigen::MatrixXd& p) {
    IntervalMatrix m(int(p.rows()), int(p.cols()));
    for (int i = 0; i < p.rows(); ++i)
      for (int j = 0; j < p.cols(); ++j) m(i, j) = Interval(p(i, j));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Interval& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Interval& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Eigen::MatrixXd midpoint() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mid();
    return m;
  }

  bool contains(const Eigen::MatrixXd& p) const {
    if (p.rows() != rows_ || p.cols() != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!(*this)(i, j).contains(p(i, j))) return false;
    return true;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Interval> a_;
};

inline IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b) {
  IntervalMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}
inline IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
  IntervalMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}
inline IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b) {
  IntervalMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Interval s(0.0);
      for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}
inline IntervalMatrix operator*(const Eigen::MatrixXd& a, const IntervalMatrix& b) {
  return IntervalMatrix::enclose(a) * b;
}
inline IntervalMatrix operator*(const IntervalMatrix& a, const Eigen::MatrixXd& b) {
  return a * IntervalMatrix::enclose(b);
}

inline std::vector<Interval> operator*(const IntervalMatrix& a, const std::vector<Interval>& v) {
  std::vector<Interval> r(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    Interval s(0.0);
    for (int k = 0; k < a.cols(); ++k) s += a(i, k) * v[k];
    r[i] = s;
  }
  return r;
}

// rigorous upper bound of the induced sup norm (max absolute row sum) over
// every point matrix contained in M
inline double mat_norm_sup_upper(const IntervalMatrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < m.cols(); ++j) row = rnd::add_up(row, mag(m(i, j)));
    best = std::max(best, row);
  }
  return best;
}

inline double vec_norm_sup_upper(const std::vector<Interval>& v) {
  double best = 0.0;
  for (const Interval& x : v) best = std::max(best, mag(x));
  return best;
}

// Enclosure of the exact inverse of a point matrix. Q is a floating
// approximate inverse; with delta an upper bound of ||I - QP||_inf < 1 the
// Neumann series gives ||P^-1 - Q||_inf <= ||Q||_inf * delta / (1 - delta),
// and the induced sup norm dominates every entry.
inline IntervalMatrix enclose_inverse(const Eigen::MatrixXd& p) {
  const int n = int(p.rows());
  if (p.cols() != n) throw Error("enclose_inverse requires a square matrix");
  Eigen::MatrixXd q = p.partialPivLu().inverse();
  if (!q.allFinite()) throw NotVerifiablyInvertible(std::numeric_limits<double>::infinity());
  IntervalMatrix residual = IntervalMatrix::identity(n) - IntervalMatrix::enclose(q) * IntervalMatrix::enclose(p);
  double delta = mat_norm_sup_upper(residual);
  if (!(delta < 1.0)) throw NotVerifiablyInvertible(delta);
  double qnorm = mat_norm_sup_upper(IntervalMatrix::enclose(q));
  Interval eta = Interval(qnorm) * Interval(delta) / (Interval(1.0) - Interval(delta));
  IntervalMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = Interval::pm(q(i, j), eta.hi);
  return inv;
}

// ---------------------------------------------------------------------------
// complex interval matrices (rectangular enclosures per entry)

class ComplexIntervalMatrix {
 public:
  ComplexIntervalMatrix() = default;
  ComplexIntervalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static ComplexIntervalMatrix identity(int n) {
    ComplexIntervalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ComplexInterval(1.0, 0.0);
    return m;
  }
  static ComplexIntervalMatrix enclose(const Eigen::MatrixXcd& p) {
    ComplexIntervalMatrix m(int(p.rows()), int(p.cols()));
    for (int i = 0; i < p.rows(); ++i)
      for (int j = 0; j < p.cols(); ++j)
        m(i, j) = ComplexInterval(Interval(p(i, j).real()), Interval(p(i, j).imag()));
    return m;
  }
  static ComplexIntervalMatrix from_real(const IntervalMatrix& p) {
    ComplexIntervalMatrix m(p.rows(), p.cols());
    for (int i = 0; i < p.rows(); ++i)
      for (int j = 0; j < p.cols(); ++j) m(i, j) = ComplexInterval(p(i, j), Interval(0.0));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  ComplexInterval& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const ComplexInterval& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<ComplexInterval> a_;
};

inline ComplexIntervalMatrix operator-(const ComplexIntervalMatrix& a, const ComplexIntervalMatrix& b) {
  ComplexIntervalMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}
inline ComplexIntervalMatrix operator*(const ComplexIntervalMatrix& a, const ComplexIntervalMatrix& b) {
  ComplexIntervalMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      ComplexInterval s;
      for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

inline double mat_norm_sup_upper(const ComplexIntervalMatrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < m.cols(); ++j) row = rnd::add_up(row, mod_up(m(i, j)));
    best = std::max(best, row);
  }
  return best;
}

// complex analogue of enclose_inverse; the entrywise bound from the sup norm
// is applied to both real and imaginary parts
inline ComplexIntervalMatrix enclose_inverse(const Eigen::MatrixXcd& p) {
  const int n = int(p.rows());
  if (p.cols() != n) throw Error("enclose_inverse requires a square matrix");
  Eigen::MatrixXcd q = p.partialPivLu().inverse();
  if (!q.allFinite()) throw NotVerifiablyInvertible(std::numeric_limits<double>::infinity());
  ComplexIntervalMatrix residual =
      ComplexIntervalMatrix::identity(n) - ComplexIntervalMatrix::enclose(q) * ComplexIntervalMatrix::enclose(p);
  double delta = mat_norm_sup_upper(residual);
  if (!(delta < 1.0)) throw NotVerifiablyInvertible(delta);
  double qnorm = mat_norm_sup_upper(ComplexIntervalMatrix::enclose(q));
  Interval eta = Interval(qnorm) * Interval(delta) / (Interval(1.0) - Interval(delta));
  ComplexIntervalMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      inv(i, j) = ComplexInterval(Interval::pm(q(i, j).real(), eta.hi), Interval::pm(q(i, j).imag(), eta.hi));
  return inv;
}

// ---------------------------------------------------------------------------
// Gershgorin disks

struct Disk {
  ComplexInterval center;
  Interval radius;  // radius.hi is the rigorous bound

  // false only when zero verifiably lies outside the disk
  bool may_contain_zero() const { return mod_down(center) <= radius.hi; }

  // rigorous: every point of the disk has nonzero real part
  bool excludes_imaginary_axis() const {
    double re_lo = rnd::sub_down(center.re.lo, radius.hi);
    double re_hi = rnd::add_up(center.re.hi, radius.hi);
    return re_lo > 0.0 || re_hi < 0.0;
  }
};

// Disk i is centered at L(i,i) with radius an upper bound of the off-diagonal
// absolute row sum; the union contains the spectrum of every point matrix in
// L, and pairwise disjoint disks isolate exactly one eigenvalue each.
inline std::vector<Disk> gershgorin_disks(const ComplexIntervalMatrix& l) {
  const int n = l.rows();
  if (l.cols() != n) throw Error("gershgorin_disks requires a square matrix");
  std::vector<Disk> disks(n);
  for (int i = 0; i < n; ++i) {
    double r_up = 0.0, r_lo = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      r_up = rnd::add_up(r_up, mod_up(l(i, j)));
      r_lo = rnd::add_down(r_lo, mod_down(l(i, j)));
    }
    disks[i] = Disk{l(i, i), Interval(std::min(r_lo, r_up), r_up)};
  }
  return disks;
}

inline std::vector<Disk> gershgorin_disks(const IntervalMatrix& l) {
  return gershgorin_disks(ComplexIntervalMatrix::from_real(l));
}

// true only when the centers are verifiably farther apart than the radii sum
inline bool disks_disjoint(const Disk& a, const Disk& b) {
  double center_gap = mod_down(a.center - b.center);
  double radius_sum = rnd::add_up(a.radius.hi, b.radius.hi);
  return center_gap > radius_sum;
}

}  // namespace cuspid
