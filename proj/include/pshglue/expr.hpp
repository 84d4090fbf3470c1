#pragma once

#include <memory>
#include <vector>

#include "json.hpp"
#include "pshglue/bump.hpp"
#include "pshglue/convex.hpp"
#include "pshglue/holo.hpp"
#include "pshglue/smooth1.hpp"
#include "pshglue/types.hpp"

namespace pshglue {

namespace detail {
struct Node;
}

// Immutable expression tree for a real-valued scalar field on a domain in C^n.
// Nodes are shared and never mutated after construction, so the same tree can
// be evaluated concurrently from many threads.
class FieldExpr {
 public:
  FieldExpr() = default;
  explicit FieldExpr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  bool valid() const { return node_ != nullptr; }
  // -1 when the tree is dimension-agnostic (constants only)
  int dim() const;

  Jet2 jet(const CPoint& p) const;
  double value(const CPoint& p) const;

  nlohmann::ordered_json to_json() const;
  static FieldExpr from_json(const nlohmann::json& j);

  const detail::Node* node() const { return node_.get(); }

 private:
  std::shared_ptr<const detail::Node> node_;
};

// Exact second-order Wirtinger jet by recursive chain rules.
Jet2 eval_jet(const FieldExpr& expr, const CPoint& p);
double eval_value(const FieldExpr& expr, const CPoint& p);

// Builders.
FieldExpr constant(double c);
FieldExpr mod_sq(HoloPoly h);
FieldExpr log_mod_sq(HoloPoly h);
FieldExpr affine(double a, double b, FieldExpr child);
FieldExpr sum(std::vector<FieldExpr> children);
FieldExpr product(FieldExpr left, FieldExpr right);
FieldExpr real_comp(Smooth1 f, FieldExpr child);
FieldExpr convex_reparam(PiecewiseConvexFn r, FieldExpr child);
FieldExpr bump_field(std::shared_ptr<const BumpCore> core);
FieldExpr bump_field(const Box& inner, const Box& outer);

inline FieldExpr operator+(FieldExpr a, FieldExpr b) { return sum({std::move(a), std::move(b)}); }
inline FieldExpr operator*(FieldExpr a, FieldExpr b) { return product(std::move(a), std::move(b)); }

// The bump core when the root node is a bump, nullptr otherwise.
std::shared_ptr<const BumpCore> bump_core_of(const FieldExpr& e);

// The standard strictly plurisubharmonic exhaustion |z|^2 of C^n.
FieldExpr squared_norm_exhaustion(int dim);

}  // namespace pshglue
