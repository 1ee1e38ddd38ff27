#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "holocalc/matrix.hpp"

namespace holocalc {

/// A seminorm on C^n. Two models:
///
///  - weighted_sup: p(x) = max_i w_i |x_i| with weights w_i >= 0. Zero
///    weights give genuine kernels, so quotient vs universal boundedness is
///    a real distinction. Mixed operator seminorms have an exact closed form.
///
///  - derived: p'(x) = max_{0<=k<=N} p(U_k x) where U_k are precomputed
///    scaled operator powers (renorming constructions). Evaluatable only;
///    operator seminorms of derived members are sampling estimates.
class Seminorm {
public:
  enum class Kind { WeightedSup, Derived };

  static Seminorm weighted_sup(std::vector<double> weights);
  /// base: weights of the underlying weighted_sup member; stack: the scaled
  /// powers U_k (each n x n); mu: the scaling parameter the stack was built
  /// with (kept for reporting).
  static Seminorm derived(std::vector<double> base,
                          std::shared_ptr<const std::vector<Matrix>> stack,
                          double mu);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double mu() const { return mu_; }
  std::size_t stack_depth() const { return stack_ ? stack_->size() : 0; }
  const std::vector<Matrix>& stack() const { return *stack_; }

  double operator()(const Vector& x) const;

  /// True when w_i > 0 (derived members count their base weights; the k = 0
  /// stack term dominates the base seminorm pointwise).
  bool covers(std::size_t i) const { return weights_[i] > 0.0; }

private:
  Kind kind_ = Kind::WeightedSup;
  std::vector<double> weights_;
  std::shared_ptr<const std::vector<Matrix>> stack_;
  double mu_ = 0.0;
};

double seminorm_eval(const Seminorm& p, const Vector& x);

/// Exact pointwise domination test for weighted_sup seminorms: the least
/// r >= 0 with p <= r q, or nullopt when no finite r exists.
std::optional<double> domination_constant(const Seminorm& p, const Seminorm& q);

/// A finite separating family of seminorms.
class Calibration {
public:
  /// Throws PreconditionError unless the family is separating (every
  /// coordinate is covered by a member with positive weight); non-Hausdorff
  /// families would make spectra ill defined.
  explicit Calibration(std::vector<Seminorm> members);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  const Seminorm& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Seminorm>& members() const { return members_; }

  bool all_weighted_sup() const;
  /// Directed: every pair is dominated pointwise by some member.
  bool is_principal() const;

  static Calibration max_norm(std::size_t n);  // the single all-ones member

private:
  std::vector<Seminorm> members_;
  std::size_t dim_ = 0;
};

/// Closure of a weighted_sup calibration under pointwise maxima; the result
/// is directed, Q-equivalent to the input, and a fixed point of the
/// operation. Member count is capped at 4095 derived joins.
Calibration principal_closure(const Calibration& p);

/// Q-equivalence, exact member-wise form: every member of each family is
/// dominated pointwise by a constant times a member of the other (decidable
/// for weighted_sup families).
bool q_equivalent(const Calibration& a, const Calibration& b);

/// Desk-scale surrogate: domination constants are certified on a seeded
/// vector sample instead of pointwise. Join closures pass this check even
/// though no single original member dominates a join everywhere.
bool q_equivalent_sampled(const Calibration& a, const Calibration& b,
                          std::size_t samples = 512, std::uint64_t seed = 0);

}  // namespace holocalc
