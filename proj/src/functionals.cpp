#include "tracemono/functionals.hpp"

#include <cmath>

namespace tracemono {

double real_trace(const Matrix& m, double tol) {
  Complex tr = m.trace();
  double scale = std::max(1.0, std::abs(tr));
  if (std::abs(tr.imag()) > tol * scale)
    throw InvalidInput("real_trace: imaginary residue above tolerance");
  return tr.real();
}

double lieb_concave_form(const Matrix& k, const PsdMatrix& a, const PsdMatrix& b,
                         double s, double t) {
  if (s < 0.0 || t < 0.0 || s + t > 1.0 + 1e-12)
    throw DomainError("lieb_concave_form: need s,t >= 0 and s+t <= 1");
  if (k.rows() != a.dim() || k.cols() != b.dim())
    throw InvalidInput("lieb_concave_form: dimension mismatch");
  Matrix as = s == 0.0 ? mat_pow(a.mat(), 0.0) : mat_pow(a.mat(), s);
  Matrix bt = t == 0.0 ? mat_pow(b.mat(), 0.0) : mat_pow(b.mat(), t);
  return real_trace(k.adjoint() * as * k * bt);
}

double lieb_convex_form(const Matrix& k, const PdMatrix& x, const PdMatrix& y,
                        double s, double t) {
  if (s < 0.0 || t < 0.0 || s + t > 1.0 + 1e-12)
    throw DomainError("lieb_convex_form: need s,t >= 0 and s+t <= 1");
  Matrix ys = mat_pow(y, -s);
  Matrix xt = mat_pow(x, -t);
  return real_trace(k.adjoint() * ys * k * xt);
}

double umegaki(const PdMatrix& x, const PdMatrix& y) {
  if (x.dim() != y.dim()) throw InvalidInput("umegaki: dimension mismatch");
  double trx = real_trace(x.mat()), try_ = real_trace(y.mat());
  if (std::abs(trx - 1.0) > 1e-8 || std::abs(try_ - 1.0) > 1e-8)
    throw InvalidInput("umegaki: inputs must have unit trace");
  Matrix diff = mat_log(x.mat(), x.floor() * 0.5) - mat_log(y.mat(), y.floor() * 0.5);
  double d = real_trace(x.mat() * diff);
  // Klein: D(X||Y) >= 0 with equality iff X = Y.
  if (d < -1e-8 * std::max(1.0, std::abs(d)))
    throw InvalidInput("umegaki: negative relative entropy, inputs inconsistent");
  return d;
}

double renyi_limit_quotient(const PdMatrix& x, const PdMatrix& y, double t) {
  if (!(t > 0.0 && t < 1.0))
    throw DomainError("renyi_limit_quotient: t must lie in (0, 1)");
  double q = real_trace(mat_pow(y, 1.0 - t) * mat_pow(x, t));
  return (1.0 - q) / (1.0 - t);
}

double epstein(const PsdMatrix& a, const Matrix& b, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("epstein: p must lie in (0, 1]");
  Matrix inner = symmetrize(b.adjoint() * mat_pow(a.mat(), p) * b);
  return real_trace(mat_pow(inner, 1.0 / p));
}

double epstein_general(const PsdMatrix& a, const Matrix& b, double s, double r) {
  if (!(s > 0.0 && s <= 1.0) || !(r > 0.0 && r <= 1.0))
    throw DomainError("epstein_general: need 0 < s <= 1 and 0 < r <= 1");
  Matrix inner = symmetrize(b.adjoint() * mat_pow(a.mat(), s) * b);
  return real_trace(mat_pow(inner, r / s));
}

double neg_power_form(const PdMatrix& a, const Matrix& b, double s, double q) {
  if (!(s >= 0.0 && s < 1.0) || !(q > 0.0 && q < 1.0))
    throw DomainError("neg_power_form: need 0 <= s < 1 and 0 < q < 1");
  Matrix inner = symmetrize(b.adjoint() * mat_pow(a, -s) * b);
  return real_trace(mat_pow(inner, q));
}

double sandwiched_trace(const PsdMatrix& rho, const PdMatrix& sigma, double alpha) {
  if (!(alpha > 1.0)) throw DomainError("sandwiched_trace: alpha must exceed 1");
  double e = (1.0 - alpha) / (2.0 * alpha);
  Matrix se = mat_pow(sigma, e);
  Matrix inner = symmetrize(se * rho.mat() * se);
  return real_trace(mat_pow(inner, alpha));
}

double ando_form(const PdMatrix& a, const Matrix& b, double p, double r) {
  if (!(p > 1.0 && p <= 2.0) || !(r >= 1.0))
    throw DomainError("ando_form: need 1 < p <= 2 and r >= 1");
  Matrix inner = symmetrize(b.adjoint() * mat_pow(a, p) * b);
  return real_trace(mat_pow(inner, r / p));
}

const std::vector<FunctionalId>& functional_registry() {
  static const std::vector<FunctionalId> reg = {
      {"lieb_concave", {"K", "A", "B"}, {"s", "t"}},
      {"lieb_convex", {"K", "X", "Y"}, {"s", "t"}},
      {"epstein", {"A", "B"}, {"p"}},
      {"epstein_general", {"A", "B"}, {"s", "r"}},
      {"neg_power", {"A", "B"}, {"s", "q"}},
      {"ando", {"A", "B"}, {"p", "r"}},
  };
  return reg;
}

}  // namespace tracemono
