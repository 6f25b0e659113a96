#include "tmesh/piecewise_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tmesh {

namespace {

double horner(std::span<const double> c, double t) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
  return v;
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breaks, std::vector<std::vector<double>> coefficients)
    : breaks_(std::move(breaks)), coeffs_(std::move(coefficients)) {
  if (breaks_.size() < 2 || coeffs_.size() + 1 != breaks_.size()) {
    throw std::invalid_argument("PiecewisePolynomial: need one coefficient row per interval");
  }
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(breaks_[i - 1] < breaks_[i])) throw std::invalid_argument("PiecewisePolynomial: breaks must increase");
  }
}

int PiecewisePolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& c : coeffs_) d = std::max(d, c.size());
  return static_cast<int>(d) - 1;
}

double PiecewisePolynomial::eval_piece(std::size_t i, double x) const { return horner(coeffs_[i], x - breaks_[i]); }

double PiecewisePolynomial::operator()(double x) const {
  if (breaks_.empty() || x < breaks_.front() || x > breaks_.back()) return 0.0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
  i = std::min(i == 0 ? 0 : i - 1, coeffs_.size() - 1);
  return eval_piece(i, x);
}

PiecewisePolynomial PiecewisePolynomial::derivative(int times) const {
  PiecewisePolynomial out = *this;
  for (int t = 0; t < times; ++t) {
    for (auto& c : out.coeffs_) {
      if (c.size() <= 1) {
        c.assign(1, 0.0);
        continue;
      }
      for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = c[k] * static_cast<double>(k);
      c.pop_back();
    }
  }
  return out;
}

PiecewisePolynomial PiecewisePolynomial::antiderivative() const {
  PiecewisePolynomial out = *this;
  double offset = 0.0;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) {
    const auto& src = coeffs_[i];
    std::vector<double> c(src.size() + 1, 0.0);
    c[0] = offset;
    for (std::size_t k = 0; k < src.size(); ++k) c[k + 1] = src[k] / static_cast<double>(k + 1);
    offset = horner(c, breaks_[i + 1] - breaks_[i]);
    out.coeffs_[i] = std::move(c);
  }
  return out;
}

double PiecewisePolynomial::integral() const {
  const auto a = antiderivative();
  return a.eval_piece(a.pieces() - 1, breaks_.back());
}

PiecewisePolynomial PiecewisePolynomial::operator*(const PiecewisePolynomial& other) const {
  if (breaks_ != other.breaks_) throw std::invalid_argument("PiecewisePolynomial: product needs equal breaks");
  PiecewisePolynomial out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& a = coeffs_[i];
    const auto& b = other.coeffs_[i];
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) c[j + k] += a[j] * b[k];
    out.coeffs_[i] = std::move(c);
  }
  return out;
}

PiecewisePolynomial PiecewisePolynomial::compose_affine(double scale, double shift) const {
  if (!(scale > 0.0)) throw std::invalid_argument("PiecewisePolynomial: affine scale must be positive");
  // With s = scale*x + shift and x_i the preimage of b_i, s - b_i = scale*(x - x_i).
  PiecewisePolynomial out = *this;
  for (auto& b : out.breaks_) b = (b - shift) / scale;
  for (auto& c : out.coeffs_) {
    double f = 1.0;
    for (auto& v : c) {
      v *= f;
      f *= scale;
    }
  }
  return out;
}

double PiecewisePolynomial::max_jump(int derivative_order) const {
  const auto d = derivative(derivative_order);
  double worst = 0.0;
  for (std::size_t i = 1; i < d.pieces(); ++i) {
    const double left = d.eval_piece(i - 1, breaks_[i]);
    const double right = d.eval_piece(i, breaks_[i]);
    worst = std::max(worst, std::abs(left - right));
  }
  return worst;
}

}  // namespace tmesh
