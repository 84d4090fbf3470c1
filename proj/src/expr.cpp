#include "pshglue/expr.hpp"

#include <algorithm>

#include "pshglue/json_util.hpp"

namespace pshglue {

namespace detail {

struct Node {
  virtual ~Node() = default;
  virtual int dim() const = 0;
  virtual Jet2 jet(const CVector& z) const = 0;
  virtual double value(const CVector& z) const = 0;
  // True when a zero value forces the whole second-order jet to vanish
  // (cutoff bumps are flat on their zero set). Products use this to extend
  // cutoff * potential by zero without touching the potential.
  virtual bool flat_where_zero() const { return false; }
  virtual nlohmann::ordered_json to_json() const = 0;
};

namespace {

int merge_dims(int a, int b, const char* what) {
  if (a == -1) return b;
  if (b == -1) return a;
  if (a != b) throw DimensionMismatch(std::string(what) + ": children have different dimensions");
  return a;
}

struct ConstNode final : Node {
  double c;
  explicit ConstNode(double v) : c(v) {}
  int dim() const override { return -1; }
  Jet2 jet(const CVector& z) const override {
    Jet2 j = Jet2::zero(static_cast<int>(z.size()));
    j.value = c;
    return j;
  }
  double value(const CVector&) const override { return c; }
  nlohmann::ordered_json to_json() const override {
    nlohmann::ordered_json j;
    j["op"] = "const";
    j["value"] = c;
    return j;
  }
};

struct ModSqNode final : Node {
  HoloPoly h;
  explicit ModSqNode(HoloPoly atom) : h(std::move(atom)) {}
  int dim() const override { return h.dim(); }
  Jet2 jet(const CVector& z) const override {
    const Complex v = h.eval(z);
    const CVector g = h.grad(z);
    Jet2 j;
    j.value = std::norm(v);
    j.grad = std::conj(v) * g;
    j.levi = outer(g, g);
    return j;
  }
  double value(const CVector& z) const override { return std::norm(h.eval(z)); }
  nlohmann::ordered_json to_json() const override {
    nlohmann::ordered_json j;
    j["op"] = "mod_sq";
    j["holo"] = h.to_json();
    return j;
  }
};

struct LogModSqNode final : Node {
  HoloPoly h;
  explicit LogModSqNode(HoloPoly atom) : h(std::move(atom)) {}
  int dim() const override { return h.dim(); }
  Jet2 jet(const CVector& z) const override {
    const Complex v = h.eval(z);
    const double m = std::norm(v);
    if (m == 0.0) throw SingularPoint("log|h|^2 evaluated on the zero set of h");
    const CVector g = h.grad(z);
    Jet2 j;
    j.value = std::log(m);
    j.grad = g / v;
    j.levi = CMatrix::Zero(h.dim(), h.dim());  // pluriharmonic off the zero set
    return j;
  }
  double value(const CVector& z) const override {
    const double m = std::norm(h.eval(z));
    if (m == 0.0) throw SingularPoint("log|h|^2 evaluated on the zero set of h");
    return std::log(m);
  }
  nlohmann::ordered_json to_json() const override {
    nlohmann::ordered_json j;
    j["op"] = "log_mod_sq";
    j["holo"] = h.to_json();
    return j;
  }
};

struct AffineNode final : Node {
  double a, b;
  FieldExpr child;
  AffineNode(double a_, double b_, FieldExpr c) : a(a_), b(b_), child(std::move(c)) {}
  int dim() const override { return child.node()->dim(); }
  Jet2 jet(const CVector& z) const override {
    Jet2 j = child.node()->jet(z);
    j.value = a * j.value + b;
    j.grad *= a;
    j.levi *= a;
    return j;
  }
  double value(const CVector& z) const override { return a * child.node()->value(z) + b; }
  nlohmann::ordered_json to_json() const override {
    nlohmann::ordered_json j;
    j["op"] = "affine";
    j["a"] = a;
    j["b"] = b;
    j["child"] = child.to_json();
    return j;
  }
};

struct SumNode final : Node {
  std::vector<FieldExpr> children;
  int dim_;
  explicit SumNode(std::vector<FieldExpr> cs) : children(std::move(cs)) {
    if (children.empty()) throw ValidationError("sum: needs at least one child");
    dim_ = -1;
    for (const FieldExpr& c : children) dim_ = merge_dims(dim_, c.node()->dim(), "sum");
  }
  int dim() const override { return dim_; }
  Jet2 jet(const CVector& z) const override {
    Jet2 j = Jet2::zero(static_cast<int>(z.size()));
    for (const FieldExpr& c : children) {
      const Jet2 cj = c.node()->jet(z);
      j.value += cj.value;
      j.grad += cj.grad;
      j.levi += cj.levi;
    }
    return j;
  }
  double value(const CVector& z) const override {
    double v = 0.0;
    for (const FieldExpr& c : children) v += c.node()->value(z);
    return v;
  }
  nlohmann::ordered_json to_json() const override {
    nlohmann::ordered_json j;
    j["op"] = "sum";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const FieldExpr& c : children) arr.push_back(c.to_json());
    j["children"] = std::move(arr);
    return j;
  }
};

struct ProdNode final : Node {
  FieldExpr left, right;
  int dim_;
  ProdNode(FieldExpr l, FieldExpr r) : left(std::move(l)), right(std::move(r)) {
    dim_ = merge_dims(left.node()->dim(), right.node()->dim(), "prod");
  }
  int dim() const override { return dim_; }
  Jet2 jet(const CVector& z) const override {
    const Jet2 u = left.node()->jet(z);
    // extension by zero: a vanishing full jet on the left annihilates the
    // product without evaluating the right factor
    if (u.all_zero()) return Jet2::zero(static_cast<int>(z.size()));
    const Jet2 v = right.node()->jet(z);
    Jet2 j;
    j.value = u.value * v.value;
    j.grad = u.value * v.grad + v.value * u.grad;
    j.levi = u.value * v.levi + v.value * u.levi + outer(u.grad, v.grad) + outer(v.grad, u.grad);
    return j;
  }
  double value(const CVector& z) const override {
    const double u = left.node()->value(z);
    if (u == 0.0 && left.node()->flat_where_zero()) return 0.0;
    return u * right.node()->value(z);
  }
  nlohmann::ordered_json to_json() const override {
    nlohmann::ordered_json j;
    j["op"] = "prod";
    j["left"] = left.to_json();
    j["right"] = right.to_json();
    return j;
  }
};

struct RealCompNode final : Node {
  Smooth1 fn;
  FieldExpr child;
  RealCompNode(Smooth1 f, FieldExpr c) : fn(f), child(std::move(c)) {}
  int dim() const override { return child.node()->dim(); }
  Jet2 jet(const CVector& z) const override {
    const Jet2 u = child.node()->jet(z);
    const D2 d = fn.eval(u.value);
    Jet2 j;
    j.value = d.f;
    j.grad = d.d1 * u.grad;
    j.levi = d.d2 * outer(u.grad, u.grad) + d.d1 * u.levi;
    return j;
  }
  double value(const CVector& z) const override { return fn.eval(child.node()->value(z)).f; }
  nlohmann::ordered_json to_json() const override {
    nlohmann::ordered_json j;
    j["op"] = "real_comp";
    j["fn"] = fn.to_json();
    j["child"] = child.to_json();
    return j;
  }
};

struct ConvexReparamNode final : Node {
  PiecewiseConvexFn fn;
  FieldExpr child;
  ConvexReparamNode(PiecewiseConvexFn f, FieldExpr c) : fn(std::move(f)), child(std::move(c)) {}
  int dim() const override { return child.node()->dim(); }
  Jet2 jet(const CVector& z) const override {
    const Jet2 u = child.node()->jet(z);
    const D2 d = fn.eval(u.value);
    Jet2 j;
    j.value = d.f;
    j.grad = d.d1 * u.grad;
    j.levi = d.d2 * outer(u.grad, u.grad) + d.d1 * u.levi;
    return j;
  }
  double value(const CVector& z) const override { return fn.eval(child.node()->value(z)).f; }
  nlohmann::ordered_json to_json() const override {
    nlohmann::ordered_json j;
    j["op"] = "convex_reparam";
    j["fn"] = fn.to_json();
    j["child"] = child.to_json();
    return j;
  }
};

struct BumpNode final : Node {
  std::shared_ptr<const BumpCore> core;
  explicit BumpNode(std::shared_ptr<const BumpCore> c) : core(std::move(c)) {}
  int dim() const override { return core->dim(); }
  Jet2 jet(const CVector& z) const override { return core->rho_jet(z); }
  double value(const CVector& z) const override { return core->rho_value(z); }
  bool flat_where_zero() const override { return true; }
  nlohmann::ordered_json to_json() const override {
    nlohmann::ordered_json j;
    j["op"] = "bump";
    j["inner"] = core->inner().to_json();
    j["outer"] = core->outer().to_json();
    return j;
  }
};

}  // namespace
}  // namespace detail

int FieldExpr::dim() const {
  if (!node_) throw ValidationError("FieldExpr: empty expression");
  return node_->dim();
}

Jet2 FieldExpr::jet(const CPoint& p) const {
  if (!node_) throw ValidationError("FieldExpr: empty expression");
  if (!p.finite()) throw DomainViolation("eval_jet: point has non-finite coordinates");
  const int d = node_->dim();
  if (d != -1 && d != p.dim())
    throw DomainViolation("eval_jet: point dimension does not match expression");
  return node_->jet(p.z);
}

double FieldExpr::value(const CPoint& p) const {
  if (!node_) throw ValidationError("FieldExpr: empty expression");
  if (!p.finite()) throw DomainViolation("eval_value: point has non-finite coordinates");
  const int d = node_->dim();
  if (d != -1 && d != p.dim())
    throw DomainViolation("eval_value: point dimension does not match expression");
  return node_->value(p.z);
}

nlohmann::ordered_json FieldExpr::to_json() const {
  if (!node_) throw ValidationError("FieldExpr: empty expression");
  return node_->to_json();
}

Jet2 eval_jet(const FieldExpr& expr, const CPoint& p) { return expr.jet(p); }
double eval_value(const FieldExpr& expr, const CPoint& p) { return expr.value(p); }

FieldExpr constant(double c) { return FieldExpr(std::make_shared<detail::ConstNode>(c)); }

FieldExpr mod_sq(HoloPoly h) { return FieldExpr(std::make_shared<detail::ModSqNode>(std::move(h))); }

FieldExpr log_mod_sq(HoloPoly h) {
  return FieldExpr(std::make_shared<detail::LogModSqNode>(std::move(h)));
}

FieldExpr affine(double a, double b, FieldExpr child) {
  return FieldExpr(std::make_shared<detail::AffineNode>(a, b, std::move(child)));
}

FieldExpr sum(std::vector<FieldExpr> children) {
  return FieldExpr(std::make_shared<detail::SumNode>(std::move(children)));
}

FieldExpr product(FieldExpr left, FieldExpr right) {
  return FieldExpr(std::make_shared<detail::ProdNode>(std::move(left), std::move(right)));
}

FieldExpr real_comp(Smooth1 f, FieldExpr child) {
  return FieldExpr(std::make_shared<detail::RealCompNode>(f, std::move(child)));
}

FieldExpr convex_reparam(PiecewiseConvexFn r, FieldExpr child) {
  return FieldExpr(std::make_shared<detail::ConvexReparamNode>(std::move(r), std::move(child)));
}

FieldExpr bump_field(std::shared_ptr<const BumpCore> core) {
  return FieldExpr(std::make_shared<detail::BumpNode>(std::move(core)));
}

FieldExpr bump_field(const Box& inner, const Box& outer) {
  return bump_field(make_bump_core(inner, outer));
}

std::shared_ptr<const BumpCore> bump_core_of(const FieldExpr& e) {
  if (const auto* b = dynamic_cast<const detail::BumpNode*>(e.node())) return b->core;
  return nullptr;
}

FieldExpr squared_norm_exhaustion(int dim) {
  std::vector<FieldExpr> parts;
  parts.reserve(dim);
  for (int i = 0; i < dim; ++i) parts.push_back(mod_sq(HoloPoly::coordinate(i, dim)));
  return sum(std::move(parts));
}

FieldExpr FieldExpr::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("op")) throw ParseError("expression: expected object with 'op'");
  const std::string op = j.at("op").get<std::string>();
  if (op == "const") {
    check_keys(j, "expr(const)", {"op", "value"});
    return constant(j.at("value").get<double>());
  }
  if (op == "mod_sq") {
    check_keys(j, "expr(mod_sq)", {"op", "holo"});
    return mod_sq(HoloPoly::from_json(j.at("holo")));
  }
  if (op == "log_mod_sq") {
    check_keys(j, "expr(log_mod_sq)", {"op", "holo"});
    return log_mod_sq(HoloPoly::from_json(j.at("holo")));
  }
  if (op == "affine") {
    check_keys(j, "expr(affine)", {"op", "a", "b", "child"});
    return affine(j.at("a").get<double>(), j.at("b").get<double>(), from_json(j.at("child")));
  }
  if (op == "sum") {
    check_keys(j, "expr(sum)", {"op", "children"});
    std::vector<FieldExpr> children;
    for (const auto& c : j.at("children")) children.push_back(from_json(c));
    return sum(std::move(children));
  }
  if (op == "prod") {
    check_keys(j, "expr(prod)", {"op", "left", "right"});
    return product(from_json(j.at("left")), from_json(j.at("right")));
  }
  if (op == "real_comp") {
    check_keys(j, "expr(real_comp)", {"op", "fn", "child"});
    return real_comp(Smooth1::from_json(j.at("fn")), from_json(j.at("child")));
  }
  if (op == "convex_reparam") {
    check_keys(j, "expr(convex_reparam)", {"op", "fn", "child"});
    return convex_reparam(PiecewiseConvexFn::from_json(j.at("fn")), from_json(j.at("child")));
  }
  if (op == "bump") {
    check_keys(j, "expr(bump)", {"op", "inner", "outer"});
    return bump_field(Box::from_json(j.at("inner")), Box::from_json(j.at("outer")));
  }
  throw UnknownExprNode("expression: unknown op '" + op + "'");
}

}  // namespace pshglue
