#include "pshglue/holo.hpp"

#include <algorithm>
#include <map>

namespace pshglue {

namespace {

// Integer power by repeated multiplication; ipow(0, 0) == 1 by convention.
Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

HoloPoly::HoloPoly(int dim, std::vector<Term> terms) : dim_(dim), terms_(std::move(terms)) {
  if (dim_ < 1) throw ValidationError("HoloPoly: dimension must be >= 1");
  for (const Term& t : terms_) {
    if (static_cast<int>(t.powers.size()) != dim_)
      throw ValidationError("HoloPoly: term exponent count does not match dimension");
    for (int k : t.powers)
      if (k < 0) throw ValidationError("HoloPoly: negative exponent");
  }
  canonicalize();
}

void HoloPoly::canonicalize() {
  std::map<std::vector<int>, Complex> merged;
  for (const Term& t : terms_) merged[t.powers] += t.coeff;
  terms_.clear();
  for (auto& [powers, coeff] : merged) {
    if (coeff != Complex(0.0, 0.0)) terms_.push_back(Term{coeff, powers});
  }
}

HoloPoly HoloPoly::constant(Complex c, int dim) {
  return HoloPoly(dim, {Term{c, std::vector<int>(dim, 0)}});
}

HoloPoly HoloPoly::coordinate(int i, int dim) {
  if (i < 0 || i >= dim) throw ValidationError("HoloPoly::coordinate: index out of range");
  std::vector<int> p(dim, 0);
  p[i] = 1;
  return HoloPoly(dim, {Term{Complex(1.0, 0.0), p}});
}

Complex HoloPoly::eval(const CVector& z) const {
  Complex v = 0.0;
  for (const Term& t : terms_) {
    Complex m = t.coeff;
    for (int i = 0; i < dim_; ++i) m *= ipow(z[i], t.powers[i]);
    v += m;
  }
  return v;
}

CVector HoloPoly::grad(const CVector& z) const {
  CVector g = CVector::Zero(dim_);
  for (const Term& t : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (t.powers[i] == 0) continue;
      Complex m = t.coeff * static_cast<double>(t.powers[i]) * ipow(z[i], t.powers[i] - 1);
      for (int j = 0; j < dim_; ++j) {
        if (j == i) continue;
        m *= ipow(z[j], t.powers[j]);
      }
      g[i] += m;
    }
  }
  return g;
}

HoloPoly HoloPoly::operator+(const HoloPoly& other) const {
  if (dim_ != other.dim_) throw DimensionMismatch("HoloPoly: adding polynomials of different dimension");
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return HoloPoly(dim_, std::move(all));
}

HoloPoly HoloPoly::operator*(const HoloPoly& other) const {
  if (dim_ != other.dim_) throw DimensionMismatch("HoloPoly: multiplying polynomials of different dimension");
  std::vector<Term> prod;
  for (const Term& a : terms_) {
    for (const Term& b : other.terms_) {
      Term t;
      t.coeff = a.coeff * b.coeff;
      t.powers.resize(dim_);
      for (int i = 0; i < dim_; ++i) t.powers[i] = a.powers[i] + b.powers[i];
      prod.push_back(std::move(t));
    }
  }
  return HoloPoly(dim_, std::move(prod));
}

HoloPoly HoloPoly::scaled(Complex s) const {
  std::vector<Term> t = terms_;
  for (Term& term : t) term.coeff *= s;
  return HoloPoly(dim_, std::move(t));
}

double HoloPoly::grad_bound(const Eigen::ArrayXd& radius) const {
  double bound = 0.0;
  for (const Term& t : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (t.powers[i] == 0) continue;
      double m = std::abs(t.coeff) * t.powers[i] * ipow(radius[i], t.powers[i] - 1);
      for (int j = 0; j < dim_; ++j) {
        if (j == i) continue;
        m *= ipow(radius[j], t.powers[j]);
      }
      bound += m;
    }
  }
  return bound;
}

nlohmann::ordered_json HoloPoly::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim_;
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const Term& t : terms_) {
    nlohmann::ordered_json jt;
    jt["coeff"] = {t.coeff.real(), t.coeff.imag()};
    jt["powers"] = t.powers;
    terms.push_back(jt);
  }
  j["terms"] = std::move(terms);
  return j;
}

HoloPoly HoloPoly::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms"))
    throw ParseError("HoloPoly: expected object with 'dim' and 'terms'");
  int dim = j.at("dim").get<int>();
  std::vector<Term> terms;
  for (const auto& jt : j.at("terms")) {
    Term t;
    const auto& c = jt.at("coeff");
    if (!c.is_array() || c.size() != 2) throw ParseError("HoloPoly: coeff must be [re, im]");
    t.coeff = Complex(c[0].get<double>(), c[1].get<double>());
    t.powers = jt.at("powers").get<std::vector<int>>();
    terms.push_back(std::move(t));
  }
  return HoloPoly(dim, std::move(terms));
}

HoloJet eval_holo_jet(const HoloPoly& h, const CPoint& p) {
  if (p.dim() != h.dim()) throw DomainViolation("eval_holo_jet: point dimension does not match atom");
  if (!p.finite()) throw DomainViolation("eval_holo_jet: point has non-finite coordinates");
  HoloJet jet;
  jet.value = h.eval(p.z);
  jet.grad = h.grad(p.z);
  return jet;
}

}  // namespace pshglue
