#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "fasim/exactnum.hpp"

namespace fasim {

/// Dense polynomial in s with exact coefficients in ascending power order
/// (coeffs()[k] multiplies s^k). Leading zeros are trimmed on construction;
/// the zero polynomial is the single coefficient 0.
class Poly {
 public:
  Poly() : coeffs_{ExactScalar(0)} {}
  explicit Poly(std::vector<ExactScalar> ascending);
  Poly(std::initializer_list<ExactScalar> ascending) : Poly(std::vector<ExactScalar>(ascending)) {}

  static Poly constant(const ExactScalar& c) { return Poly({c}); }

  const std::vector<ExactScalar>& coeffs() const noexcept { return coeffs_; }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0].is_zero(); }
  const ExactScalar& leading() const noexcept { return coeffs_.back(); }
  /// Coefficient of s^k, zero past the degree.
  ExactScalar coeff(std::size_t k) const;

  Poly derivative() const;

  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  std::vector<ExactScalar> coeffs_;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const ExactScalar& c);

/// Horner evaluation on binary64 images of the coefficients.
ComplexF poly_eval(const Poly& p, ComplexF s);

/// Returns c != 0 with a = c*b when such a c exists.
std::optional<ExactScalar> poly_equal_up_to_scale(const Poly& a, const Poly& b);

constexpr double kDefaultRootTol = 1e-12;
constexpr int kDurandKernerMaxIter = 200;

/// Numeric roots sorted by (Re, Im). Degrees 1 and 2 use closed forms on the
/// exact coefficients; higher degrees use Durand-Kerner.
std::vector<ComplexF> roots(const Poly& p, double tol = kDefaultRootTol);

/// Ratio num/den of two polynomials in s.
class TransferFunction {
 public:
  TransferFunction(Poly num, Poly den);

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  bool proper() const noexcept { return num_.degree() <= den_.degree(); }
  bool strictly_proper() const noexcept { return num_.is_zero() || num_.degree() < den_.degree(); }

  ComplexF eval(ComplexF s) const;

  friend bool operator==(const TransferFunction& a, const TransferFunction& b) = default;

 private:
  Poly num_;
  Poly den_;
};

}  // namespace fasim
