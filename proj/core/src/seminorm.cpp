#include "holocalc/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "holocalc/rng.hpp"

namespace holocalc {

Seminorm Seminorm::weighted_sup(std::vector<double> weights) {
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw PreconditionError("Seminorm: weights must be finite and nonnegative");
  Seminorm p;
  p.kind_ = Kind::WeightedSup;
  p.weights_ = std::move(weights);
  return p;
}

Seminorm Seminorm::derived(std::vector<double> base,
                           std::shared_ptr<const std::vector<Matrix>> stack,
                           double mu) {
  if (!stack || stack->empty())
    throw PreconditionError("Seminorm: derived member needs a nonempty power stack");
  if (!(mu > 0.0)) throw PreconditionError("Seminorm: derived scale mu must be positive");
  for (double w : base)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw PreconditionError("Seminorm: weights must be finite and nonnegative");
  for (const auto& u : *stack)
    if (u.rows() != base.size() || u.cols() != base.size())
      throw DimensionError("Seminorm: power stack does not match base dimension");
  Seminorm p;
  p.kind_ = Kind::Derived;
  p.weights_ = std::move(base);
  p.stack_ = std::move(stack);
  p.mu_ = mu;
  return p;
}

double Seminorm::operator()(const Vector& x) const {
  if (x.size() != dim()) throw DimensionError("Seminorm: dimension mismatch");
  if (kind_ == Kind::WeightedSup) {
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      best = std::max(best, weights_[i] * std::abs(x[i]));
    return best;
  }
  double best = 0.0;
  for (const auto& u : *stack_) {
    const Vector ux = u.apply(x);
    for (std::size_t i = 0; i < ux.size(); ++i)
      best = std::max(best, weights_[i] * std::abs(ux[i]));
  }
  return best;
}

double seminorm_eval(const Seminorm& p, const Vector& x) { return p(x); }

std::optional<double> domination_constant(const Seminorm& p, const Seminorm& q) {
  if (p.kind() != Seminorm::Kind::WeightedSup || q.kind() != Seminorm::Kind::WeightedSup)
    return std::nullopt;
  if (p.dim() != q.dim()) throw DimensionError("domination_constant: dimension mismatch");
  double r = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double wp = p.weights()[i], wq = q.weights()[i];
    if (wp == 0.0) continue;
    if (wq == 0.0) return std::nullopt;  // p sees a direction q kills
    r = std::max(r, wp / wq);
  }
  return r;
}

Calibration::Calibration(std::vector<Seminorm> members) : members_(std::move(members)) {
  if (members_.empty()) throw PreconditionError("Calibration: family must be nonempty");
  dim_ = members_.front().dim();
  for (const auto& p : members_)
    if (p.dim() != dim_) throw DimensionError("Calibration: members of mixed dimension");
  for (std::size_t i = 0; i < dim_; ++i) {
    bool covered = false;
    for (const auto& p : members_)
      if (p.covers(i)) {
        covered = true;
        break;
      }
    if (!covered)
      throw PreconditionError("Calibration: family is not separating (coordinate " +
                              std::to_string(i) + " is killed by every member)");
  }
}

bool Calibration::all_weighted_sup() const {
  for (const auto& p : members_)
    if (p.kind() != Seminorm::Kind::WeightedSup) return false;
  return true;
}

bool Calibration::is_principal() const {
  if (!all_weighted_sup()) return false;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) {
      bool dominated = false;
      for (std::size_t c = 0; c < size() && !dominated; ++c) {
        dominated = true;
        for (std::size_t i = 0; i < dim_; ++i) {
          const double join = std::max(members_[a].weights()[i], members_[b].weights()[i]);
          if (members_[c].weights()[i] < join) {
            dominated = false;
            break;
          }
        }
      }
      if (!dominated) return false;
    }
  }
  return true;
}

Calibration Calibration::max_norm(std::size_t n) {
  return Calibration({Seminorm::weighted_sup(std::vector<double>(n, 1.0))});
}

Calibration principal_closure(const Calibration& p) {
  if (!p.all_weighted_sup())
    throw PreconditionError("principal_closure: only weighted_sup members can be joined");
  const std::size_t n = p.dim();
  std::set<std::vector<double>> seen;
  std::vector<std::vector<double>> out;
  for (const auto& m : p.members()) {
    if (seen.insert(m.weights()).second) out.push_back(m.weights());
  }
  // saturate under pairwise maxima; for k originals this terminates with at
  // most 2^k - 1 distinct joins
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t sz = out.size();
    for (std::size_t a = 0; a < sz; ++a) {
      for (std::size_t b = a + 1; b < sz; ++b) {
        std::vector<double> join(n);
        for (std::size_t i = 0; i < n; ++i) join[i] = std::max(out[a][i], out[b][i]);
        if (seen.insert(join).second) {
          out.push_back(std::move(join));
          grew = true;
          if (out.size() > 4095)
            throw PreconditionError("principal_closure: join closure exceeds 4095 members");
        }
      }
    }
  }
  std::vector<Seminorm> members;
  members.reserve(out.size());
  for (auto& w : out) members.push_back(Seminorm::weighted_sup(std::move(w)));
  return Calibration(std::move(members));
}

bool q_equivalent(const Calibration& a, const Calibration& b) {
  auto dominated_somewhere = [](const Seminorm& p, const Calibration& family) {
    for (const auto& q : family.members())
      if (domination_constant(p, q)) return true;
    return false;
  };
  for (const auto& p : a.members())
    if (!dominated_somewhere(p, b)) return false;
  for (const auto& q : b.members())
    if (!dominated_somewhere(q, a)) return false;
  return true;
}

bool q_equivalent_sampled(const Calibration& a, const Calibration& b,
                          std::size_t samples, std::uint64_t seed) {
  if (a.dim() != b.dim()) return false;
  Rng rng(seed ^ 0x9eebULL);
  std::vector<Vector> xs;
  xs.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) xs.push_back(rng.vector(a.dim()));

  auto dominated_on_sample = [&](const Seminorm& p, const Calibration& family) {
    for (const auto& q : family.members()) {
      double r = 0.0;
      bool finite = true;
      for (const auto& x : xs) {
        const double px = p(x), qx = q(x);
        if (px == 0.0) continue;
        if (qx == 0.0) {
          finite = false;
          break;
        }
        r = std::max(r, px / qx);
      }
      if (finite && r < 1e15) return true;
    }
    return false;
  };
  for (const auto& p : a.members())
    if (!dominated_on_sample(p, b)) return false;
  for (const auto& q : b.members())
    if (!dominated_on_sample(q, a)) return false;
  return true;
}

}  // namespace holocalc
