#include "vmeas/bundle.hpp"

#include <stdexcept>

namespace vmeas {

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<QVec>& generators) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  for (const auto& g : generators) {
    if (g.dim() != ambient_dim) throw std::invalid_argument("subspace generator has the wrong dimension");
    QVec r = g - s.project(g);
    if (!r.is_zero()) s.basis_.push_back(std::move(r));
  }
  return s;
}

Subspace Subspace::whole(std::size_t ambient_dim) {
  std::vector<QVec> e;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    QVec v(ambient_dim);
    v[i] = 1;
    e.push_back(std::move(v));
  }
  return span(ambient_dim, e);
}

QVec Subspace::project(const QVec& v) const {
  if (v.dim() != ambient_dim_) throw std::invalid_argument("vector has the wrong dimension");
  QVec out(ambient_dim_);
  for (const auto& b : basis_) out += b * (dot(v, b) / b.squared_norm());
  return out;
}

Magnitude Subspace::distance(const QVec& v) const { return Magnitude::sqrt_of((v - project(v)).squared_norm()); }

BanachBundle::BanachBundle(std::size_t ambient_dim, int depth, std::vector<Subspace> fibers)
    : ambient_dim_(ambient_dim), depth_(depth), fibers_(std::move(fibers)) {
  for (const auto& f : fibers_)
    if (f.ambient_dim() != ambient_dim_) throw std::invalid_argument("bundle fiber has the wrong ambient dimension");
}

BanachBundle BanachBundle::constant(std::size_t ambient_dim, int depth, std::size_t fiber_count, const Subspace& fiber) {
  return BanachBundle(ambient_dim, depth, std::vector<Subspace>(fiber_count, fiber));
}

}  // namespace vmeas
