#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spherebound {

/// Fixed (non-random) direction s in R^n with its squared Euclidean norm
/// cached. s need not be a unit vector; the zero vector is allowed.
class DirectionVector {
public:
  explicit DirectionVector(std::vector<double> components);

  /// k-th standard basis vector of R^n.
  static DirectionVector basis(std::size_t n, std::size_t k = 0);

  std::size_t dimension() const noexcept { return components_.size(); }
  std::span<const double> components() const noexcept { return components_; }
  double squared_norm() const noexcept { return squared_norm_; }
  bool is_basis_vector() const noexcept { return basis_index_ >= 0; }
  /// Index of the single unit entry when is_basis_vector(), else -1.
  long basis_index() const noexcept { return basis_index_; }

  DirectionVector scaled(double factor) const;

private:
  std::vector<double> components_;
  double squared_norm_ = 0.0;
  long basis_index_ = -1;
};

/// E|e_k|^q for e uniform on the unit sphere in R^n:
///   Gamma(n/2) Gamma((q+1)/2) / (sqrt(pi) Gamma((q+n)/2)).
/// Valid for any real q > 0. Throws DimensionError for n < 2 and
/// std::domain_error for q <= 0 or non-finite q.
double component_abs_moment(std::size_t n, double q);

/// Natural log of component_abs_moment; stays finite where the moment itself
/// underflows (large q).
double log_component_abs_moment(std::size_t n, double q);

/// (n E|e_k|^q)^(2/q), the Jensen upper bound on E||e||_q^2. Requires
/// 2 <= q < inf.
double jensen_q_norm_sq_bound(std::size_t n, double q);

/// E<s,e>^2 = ||s||^2 / n.
double inner_product_sq_moment(std::size_t n, const DirectionVector& s);

/// E<s,e>^4 = 3 ||s||^4 / (n (n + 2)).
double inner_product_fourth_moment(std::size_t n, const DirectionVector& s);

}  // namespace spherebound
