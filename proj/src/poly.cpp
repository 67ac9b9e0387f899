#include "fasim/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fasim {

Poly::Poly(std::vector<ExactScalar> ascending) : coeffs_(std::move(ascending)) {
  while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.emplace_back(0);
}

ExactScalar Poly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : ExactScalar(0); }

Poly Poly::derivative() const {
  if (coeffs_.size() == 1) return Poly();
  std::vector<ExactScalar> out;
  out.reserve(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    out.push_back(coeffs_[k] * ExactScalar(static_cast<long long>(k)));
  }
  return Poly(std::move(out));
}

Poly poly_add(const Poly& a, const Poly& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<ExactScalar> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a.coeff(k) + b.coeff(k);
  return Poly(std::move(out));
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, ExactScalar(-1))); }

Poly poly_mul(const Poly& a, const Poly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<ExactScalar> out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return Poly(std::move(out));
}

Poly poly_scale(const Poly& a, const ExactScalar& c) {
  std::vector<ExactScalar> out;
  out.reserve(a.coeffs().size());
  for (const auto& v : a.coeffs()) out.push_back(v * c);
  return Poly(std::move(out));
}

ComplexF poly_eval(const Poly& p, ComplexF s) {
  const std::complex<double> z = s;
  std::complex<double> acc = 0.0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + to_float(*it);
  return ComplexF(acc);
}

std::optional<ExactScalar> poly_equal_up_to_scale(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return ExactScalar(1);
    return std::nullopt;
  }
  if (a.degree() != b.degree()) return std::nullopt;
  const ExactScalar c = a.leading() / b.leading();
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    if (a.coeffs()[k] != c * b.coeffs()[k]) return std::nullopt;
  }
  return c;
}

namespace {

void sort_roots(std::vector<ComplexF>& r) {
  std::sort(r.begin(), r.end(), [](const ComplexF& x, const ComplexF& y) {
    if (x.re() != y.re()) return x.re() < y.re();
    return x.im() < y.im();
  });
}

std::vector<ComplexF> quadratic_roots(const Poly& p) {
  const ExactScalar& c = p.coeffs()[0];
  const ExactScalar& b = p.coeffs()[1];
  const ExactScalar& a = p.coeffs()[2];
  const ExactScalar disc = b * b - ExactScalar(4) * a * c;
  if (disc.sign() < 0) {
    const double re = to_float(-b / (ExactScalar(2) * a));
    const double im = std::sqrt(to_float(-disc / (ExactScalar(4) * a * a)));
    return {ComplexF(re, -im), ComplexF(re, im)};
  }
  if (disc.is_zero()) {
    const double r = to_float(-b / (ExactScalar(2) * a));
    return {ComplexF(r), ComplexF(r)};
  }
  // Cancellation-free pair: q = -(b + sign(b) sqrt(disc)) / 2.
  const double bf = to_float(b);
  const double sq = std::sqrt(to_float(disc));
  const double qv = -0.5 * (bf + (bf >= 0 ? sq : -sq));
  const double r1 = qv / to_float(a);
  const double r2 = to_float(c) / qv;
  return {ComplexF(r1), ComplexF(r2)};
}

std::vector<ComplexF> durand_kerner(const Poly& p, double tol) {
  const std::size_t n = p.degree();
  std::vector<std::complex<double>> monic(n + 1);
  double radius = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    monic[k] = to_float(p.coeffs()[k] / p.leading());
    if (k < n) radius = std::max(radius, std::abs(monic[k]));
  }
  radius += 1.0;

  auto eval = [&](std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = n + 1; k-- > 0;) acc = acc * z + monic[k];
    return acc;
  };

  std::vector<std::complex<double>> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n) + 0.4;
    z[i] = std::polar(radius, angle);
  }

  for (int iter = 0; iter < kDurandKernerMaxIter; ++iter) {
    bool converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) denom *= z[i] - z[j];
      }
      if (denom == 0.0) denom = std::complex<double>(tol, tol);
      const std::complex<double> step = eval(z[i]) / denom;
      z[i] -= step;
      if (std::abs(step) > tol * std::max(1.0, std::abs(z[i]))) converged = false;
    }
    if (converged) {
      std::vector<ComplexF> out;
      out.reserve(n);
      for (const auto& r : z) out.emplace_back(r);
      return out;
    }
  }
  throw Error(ErrorKind::NoConvergence, "Durand-Kerner did not converge in " + std::to_string(kDurandKernerMaxIter) + " iterations");
}

}  // namespace

std::vector<ComplexF> roots(const Poly& p, double tol) {
  if (p.degree() == 0) {
    throw Error(ErrorKind::DegreeZero, "root finding needs degree >= 1");
  }
  std::vector<ComplexF> r;
  if (p.degree() == 1) {
    r.emplace_back(to_float(-p.coeffs()[0] / p.coeffs()[1]));
  } else if (p.degree() == 2) {
    r = quadratic_roots(p);
  } else {
    r = durand_kerner(p, tol);
  }
  sort_roots(r);
  return r;
}

TransferFunction::TransferFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw Error(ErrorKind::ZeroDenominator, "transfer function denominator is the zero polynomial");
  }
}

ComplexF TransferFunction::eval(ComplexF s) const {
  const std::complex<double> d = poly_eval(den_, s);
  if (d == 0.0) {
    throw Error(ErrorKind::DivisionByZero, "transfer function evaluated at a pole");
  }
  return ComplexF(std::complex<double>(poly_eval(num_, s)) / d);
}

}  // namespace fasim
