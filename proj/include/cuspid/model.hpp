#pragma once

// Parameter-dependent vector fields f(x, lambda) with analytic derivative
// actions up to third order, evaluable over doubles and over intervals.
//
// Every component is a sum of rational terms P/Q with polynomial P, Q in the
// packed variable z = (x_1..x_n, lambda_1, lambda_2). Derivative polynomials
// are formed symbolically once (bake), so evaluation of the full derivative
// tensors is exact analytic arithmetic in the requested scalar type; no
// finite differences and no runtime differentiation are involved.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "cuspid/errors.hpp"
#include "cuspid/interval.hpp"

namespace cuspid {

constexpr int kMaxVars = 18;

template <class S>
inline S scalar_from(double v) {
  return S(v);
}
template <>
inline double scalar_from<double>(double v) {
  return v;
}

struct Monomial {
  double coef = 0.0;
  std::array<std::uint8_t, kMaxVars> exp{};
};

inline Monomial mono(double coef, std::initializer_list<std::pair<int, int>> vars = {}) {
  Monomial m;
  m.coef = coef;
  for (auto& [v, e] : vars) m.exp[size_t(v)] = std::uint8_t(e);
  return m;
}

struct Poly {
  std::vector<Monomial> terms;

  Poly() = default;
  Poly(std::initializer_list<Monomial> ts) : terms(ts) { compress(); }
  static Poly constant(double c) { return Poly{mono(c)}; }

  bool is_zero() const { return terms.empty(); }

  void compress() {
    std::vector<Monomial> out;
    for (const Monomial& t : terms) {
      if (t.coef == 0.0) continue;
      bool merged = false;
      for (Monomial& o : out)
        if (o.exp == t.exp) {
          o.coef += t.coef;
          merged = true;
          break;
        }
      if (!merged) out.push_back(t);
    }
    std::erase_if(out, [](const Monomial& t) { return t.coef == 0.0; });
    terms = std::move(out);
  }

  Poly diff(int var) const {
    Poly d;
    for (const Monomial& t : terms) {
      if (t.exp[size_t(var)] == 0) continue;
      Monomial m = t;
      m.coef *= double(m.exp[size_t(var)]);
      m.exp[size_t(var)] -= 1;
      d.terms.push_back(m);
    }
    d.compress();
    return d;
  }

  int max_exponent() const {
    int e = 0;
    for (const Monomial& t : terms)
      for (int v = 0; v < kMaxVars; ++v) e = std::max(e, int(t.exp[size_t(v)]));
    return e;
  }

  // pw is a power table: pw[v * stride + e] = z_v^e
  template <class S>
  S eval(const S* pw, int stride, int nvars) const {
    S acc = scalar_from<S>(0.0);
    for (const Monomial& t : terms) {
      S term = scalar_from<S>(t.coef);
      for (int v = 0; v < nvars; ++v)
        if (t.exp[size_t(v)] != 0) term = term * pw[v * stride + t.exp[size_t(v)]];
      acc += term;
    }
    return acc;
  }
};

inline int idx2(int m, int a, int b) {
  if (a > b) std::swap(a, b);
  return a * m - a * (a - 1) / 2 + (b - a);
}
inline int count2(int m) { return m * (m + 1) / 2; }
inline int count3(int m) { return m * (m + 1) * (m + 2) / 6; }

// A rational term P/Q (Q omitted for plain polynomials) together with its
// symbolic derivative polynomials through order three.
struct RationalTerm {
  Poly num;
  Poly den;  // empty -> polynomial term
  bool is_rational = false;

  std::vector<Poly> num_d1, num_d2, num_d3;
  std::vector<Poly> den_d1, den_d2, den_d3;

  static RationalTerm polynomial(Poly p) {
    RationalTerm t;
    t.num = std::move(p);
    return t;
  }
  static RationalTerm rational(Poly n, Poly d) {
    RationalTerm t;
    t.num = std::move(n);
    t.den = std::move(d);
    t.is_rational = true;
    return t;
  }

  void bake(int m) {
    auto bake_one = [m](const Poly& p, std::vector<Poly>& d1, std::vector<Poly>& d2, std::vector<Poly>& d3) {
      d1.resize(size_t(m));
      d2.resize(size_t(count2(m)));
      d3.resize(size_t(count3(m)));
      for (int a = 0; a < m; ++a) d1[size_t(a)] = p.diff(a);
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) d2[size_t(idx2(m, a, b))] = d1[size_t(a)].diff(b);
      int k = 0;
      for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b)
          for (int c = b; c < m; ++c) d3[size_t(k++)] = d2[size_t(idx2(m, a, b))].diff(c);
    };
    bake_one(num, num_d1, num_d2, num_d3);
    if (is_rational) bake_one(den, den_d1, den_d2, den_d3);
  }
};

template <class S>
struct ModelEval {
  int n = 0, m = 0, order = 0;
  std::vector<S> f;  // n
  std::vector<S> J;  // n*m
  std::vector<S> H;  // n*m*m, symmetric in the trailing two indices
  std::vector<S> T;  // n*m*m*m, symmetric in the trailing three indices

  void resize(int n_, int m_, int order_) {
    n = n_;
    m = m_;
    order = order_;
    f.assign(size_t(n), scalar_from<S>(0.0));
    if (order >= 1) J.assign(size_t(n) * m, scalar_from<S>(0.0));
    if (order >= 2) H.assign(size_t(n) * m * m, scalar_from<S>(0.0));
    if (order >= 3) T.assign(size_t(n) * m * m * m, scalar_from<S>(0.0));
  }

  S& j(int i, int a) { return J[size_t(i) * m + a]; }
  const S& j(int i, int a) const { return J[size_t(i) * m + a]; }
  S& h(int i, int a, int b) { return H[(size_t(i) * m + a) * m + b]; }
  const S& h(int i, int a, int b) const { return H[(size_t(i) * m + a) * m + b]; }
  S& t(int i, int a, int b, int c) { return T[((size_t(i) * m + a) * m + b) * m + c]; }
  const S& t(int i, int a, int b, int c) const { return T[((size_t(i) * m + a) * m + b) * m + c]; }
};

struct StatePoint {
  Eigen::VectorXd x;
  Eigen::Vector2d lambda;

  Eigen::VectorXd z() const {
    Eigen::VectorXd out(x.size() + 2);
    out.head(x.size()) = x;
    out.tail(2) = lambda;
    return out;
  }
  static StatePoint from_z(const Eigen::VectorXd& z) {
    StatePoint p;
    p.x = z.head(z.size() - 2);
    p.lambda = z.tail(2);
    return p;
  }
};

struct ModelDefaults {
  double h0 = 0.1;        // initial continuation stepsize
  double h_max = 0.5;     // stepsize cap
  double r_star = 1e-12;  // Newton-Kantorovich candidate radius
};

class EquilibriumModel {
 public:
  std::string name;
  int n = 0;
  std::vector<double> region_lo, region_hi;  // bounds for z, length n+2
  std::vector<double> seed;                  // z near the manifold, length n+2
  ModelDefaults defaults;
  bool interval_capable = true;

  int m() const { return n + 2; }

  void add_term(int comp, RationalTerm t) {
    comps_.resize(size_t(n));
    comps_[size_t(comp)].push_back(std::move(t));
  }

  void bake() {
    max_exp_ = 1;
    for (auto& comp : comps_)
      for (RationalTerm& t : comp) {
        t.bake(m());
        max_exp_ = std::max({max_exp_, t.num.max_exponent(), t.den.max_exponent()});
      }
  }

  bool inside_region(const Eigen::VectorXd& z, double margin_frac = 0.0) const {
    for (int a = 0; a < m(); ++a) {
      double margin = margin_frac * (region_hi[size_t(a)] - region_lo[size_t(a)]);
      if (z[a] < region_lo[size_t(a)] - margin || z[a] > region_hi[size_t(a)] + margin) return false;
    }
    return true;
  }

  template <class S>
  void eval(const S* z, int order, ModelEval<S>& out) const {
    const int mm = m();
    out.resize(n, mm, order);
    const int stride = max_exp_ + 1;
    // power table pw[v][e] = z_v^e
    std::vector<S> pw(size_t(mm) * stride, scalar_from<S>(1.0));
    for (int v = 0; v < mm; ++v)
      for (int e = 1; e <= max_exp_; ++e) pw[size_t(v) * stride + e] = pw[size_t(v) * stride + e - 1] * z[v];

    const int c2 = count2(mm), c3 = count3(mm);
    std::vector<S> r1(static_cast<size_t>(mm));
    std::vector<S> r2(static_cast<size_t>(c2));
    std::vector<S> r3(static_cast<size_t>(c3));
    std::vector<S> q1, q2v, q3v;

    for (int i = 0; i < n; ++i) {
      for (const RationalTerm& term : comps_[size_t(i)]) {
        S p0 = term.num.eval(pw.data(), stride, mm);
        for (int a = 0; a < mm; ++a)
          r1[size_t(a)] = order >= 1 ? term.num_d1[size_t(a)].eval(pw.data(), stride, mm) : scalar_from<S>(0.0);
        if (order >= 2)
          for (int k = 0; k < c2; ++k) r2[size_t(k)] = term.num_d2[size_t(k)].eval(pw.data(), stride, mm);
        if (order >= 3)
          for (int k = 0; k < c3; ++k) r3[size_t(k)] = term.num_d3[size_t(k)].eval(pw.data(), stride, mm);

        S r0 = p0;
        if (term.is_rational) {
          S q0 = term.den.eval(pw.data(), stride, mm);
          if (!invertible(q0)) throw DomainError("vanishing denominator in model '" + name + "'");
          q1.assign(size_t(mm), scalar_from<S>(0.0));
          if (order >= 1)
            for (int a = 0; a < mm; ++a) q1[size_t(a)] = term.den_d1[size_t(a)].eval(pw.data(), stride, mm);
          if (order >= 2) {
            q2v.resize(size_t(c2));
            for (int k = 0; k < c2; ++k) q2v[size_t(k)] = term.den_d2[size_t(k)].eval(pw.data(), stride, mm);
          }
          if (order >= 3) {
            q3v.resize(size_t(c3));
            for (int k = 0; k < c3; ++k) q3v[size_t(k)] = term.den_d3[size_t(k)].eval(pw.data(), stride, mm);
          }

          // quotient rule applied recursively: with r = P/Q,
          //   r'   = (P' - r Q') / Q
          //   r''  = (P'' - r'Q' - r'Q' - r Q'') / Q   (indices symmetrized)
          //   r''' analogously with all lower-order products subtracted
          r0 = p0 / q0;
          if (order >= 1)
            for (int a = 0; a < mm; ++a) r1[size_t(a)] = (r1[size_t(a)] - r0 * q1[size_t(a)]) / q0;
          if (order >= 2)
            for (int a = 0; a < mm; ++a)
              for (int b = a; b < mm; ++b) {
                int k = idx2(mm, a, b);
                r2[size_t(k)] = (r2[size_t(k)] - r1[size_t(a)] * q1[size_t(b)] - r1[size_t(b)] * q1[size_t(a)] -
                                 r0 * q2v[size_t(k)]) /
                                q0;
              }
          if (order >= 3) {
            int k = 0;
            for (int a = 0; a < mm; ++a)
              for (int b = a; b < mm; ++b)
                for (int c = b; c < mm; ++c) {
                  S val = r3[size_t(k)];
                  val = val - r2[size_t(idx2(mm, a, b))] * q1[size_t(c)] -
                        r2[size_t(idx2(mm, a, c))] * q1[size_t(b)] - r2[size_t(idx2(mm, b, c))] * q1[size_t(a)];
                  val = val - r1[size_t(a)] * q2v[size_t(idx2(mm, b, c))] -
                        r1[size_t(b)] * q2v[size_t(idx2(mm, a, c))] - r1[size_t(c)] * q2v[size_t(idx2(mm, a, b))];
                  val = val - r0 * q3v[size_t(k)];
                  r3[size_t(k)] = val / q0;
                  ++k;
                }
          }
        }

        out.f[size_t(i)] += r0;
        if (order >= 1)
          for (int a = 0; a < mm; ++a) out.j(i, a) += r1[size_t(a)];
        if (order >= 2)
          for (int a = 0; a < mm; ++a)
            for (int b = a; b < mm; ++b) {
              const S& v = r2[size_t(idx2(mm, a, b))];
              out.h(i, a, b) += v;
              if (a != b) out.h(i, b, a) += v;
            }
        if (order >= 3) {
          int k = 0;
          for (int a = 0; a < mm; ++a)
            for (int b = a; b < mm; ++b)
              for (int c = b; c < mm; ++c) {
                const S& v = r3[size_t(k++)];
                add_sym3(out, i, a, b, c, v);
              }
        }
      }
    }
  }

  // ---- float conveniences -------------------------------------------------

  Eigen::VectorXd f(const Eigen::VectorXd& z) const {
    ModelEval<double> ev;
    eval(z.data(), 0, ev);
    return Eigen::Map<Eigen::VectorXd>(ev.f.data(), n);
  }
  // full n x (n+2) Jacobian with respect to (x, lambda)
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& z) const {
    ModelEval<double> ev;
    eval(z.data(), 1, ev);
    Eigen::MatrixXd j(n, m());
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < m(); ++a) j(i, a) = ev.j(i, a);
    return j;
  }
  Eigen::MatrixXd state_jacobian(const Eigen::VectorXd& z) const {
    ModelEval<double> ev;
    eval(z.data(), 1, ev);
    Eigen::MatrixXd j(n, n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) j(i, a) = ev.j(i, a);
    return j;
  }
  Eigen::MatrixXd lambda_jacobian(const Eigen::VectorXd& z) const {
    ModelEval<double> ev;
    eval(z.data(), 1, ev);
    Eigen::MatrixXd j(n, 2);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < 2; ++a) j(i, a) = ev.j(i, n + a);
    return j;
  }
  // D_xx f (u, v) for u, v in R^n
  Eigen::VectorXd d2xx(const Eigen::VectorXd& z, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    ModelEval<double> ev;
    eval(z.data(), 2, ev);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out[i] += ev.h(i, a, b) * u[a] * v[b];
    return out;
  }
  // D_xxx f (u, v, w) for u, v, w in R^n
  Eigen::VectorXd d3xxx(const Eigen::VectorXd& z, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                        const Eigen::VectorXd& w) const {
    ModelEval<double> ev;
    eval(z.data(), 3, ev);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) out[i] += ev.t(i, a, b, c) * u[a] * v[b] * w[c];
    return out;
  }

 private:
  static bool invertible(double q) { return q != 0.0; }
  static bool invertible(const Interval& q) { return !q.contains_zero(); }

  template <class S>
  static void add_sym3(ModelEval<S>& out, int i, int a, int b, int c, const S& v) {
    // distinct permutations of the sorted triple (a <= b <= c)
    if (a == b && b == c) {
      out.t(i, a, a, a) += v;
    } else if (a == b) {
      out.t(i, a, a, c) += v;
      out.t(i, a, c, a) += v;
      out.t(i, c, a, a) += v;
    } else if (b == c) {
      out.t(i, a, b, b) += v;
      out.t(i, b, a, b) += v;
      out.t(i, b, b, a) += v;
    } else {
      out.t(i, a, b, c) += v;
      out.t(i, a, c, b) += v;
      out.t(i, b, a, c) += v;
      out.t(i, b, c, a) += v;
      out.t(i, c, a, b) += v;
      out.t(i, c, b, a) += v;
    }
  }

  std::vector<std::vector<RationalTerm>> comps_;
  int max_exp_ = 1;
};

}  // namespace cuspid
