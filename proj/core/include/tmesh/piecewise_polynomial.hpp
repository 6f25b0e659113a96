#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tmesh {

/// Polynomial pieces on b_0 < ... < b_n. Piece i lives on [b_i, b_{i+1}) and
/// is stored as coefficients c_0..c_d of sum c_k (x - b_i)^k. The function is
/// zero outside [b_0, b_n]; at b_n the last piece is used.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;
  /// Throws std::invalid_argument unless the breakpoints strictly increase
  /// and there is one coefficient row per interval.
  PiecewisePolynomial(std::vector<double> breaks, std::vector<std::vector<double>> coefficients);

  std::span<const double> breaks() const { return breaks_; }
  std::size_t pieces() const { return coeffs_.size(); }
  std::span<const double> piece(std::size_t i) const { return coeffs_[i]; }
  /// Highest stored power over all pieces.
  int degree() const;

  double operator()(double x) const;
  /// Value of piece i at x (no range check).
  double eval_piece(std::size_t i, double x) const;

  PiecewisePolynomial derivative(int times = 1) const;
  /// The antiderivative that vanishes at b_0 and is continuous.
  PiecewisePolynomial antiderivative() const;
  double integral() const;
  /// Pointwise product; both operands must share their breakpoints.
  PiecewisePolynomial operator*(const PiecewisePolynomial& other) const;
  /// x -> f(scale * x + shift) for scale > 0.
  PiecewisePolynomial compose_affine(double scale, double shift) const;

  /// Largest jump |left limit - right value| of the given derivative at the
  /// interior breakpoints.
  double max_jump(int derivative_order = 0) const;

 private:
  std::vector<double> breaks_;
  std::vector<std::vector<double>> coeffs_;
};

}  // namespace tmesh
