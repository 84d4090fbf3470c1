#pragma once

#include <vector>

#include "json.hpp"
#include "pshglue/types.hpp"

namespace pshglue {

// Holomorphic polynomial in z_1..z_n, the only holomorphic atoms the
// constructions need. Terms are kept in a canonical order (exponents
// lexicographic, zero coefficients dropped) so serialization is stable.
class HoloPoly {
 public:
  struct Term {
    Complex coeff;
    std::vector<int> powers;  // one exponent per coordinate
  };

  HoloPoly() = default;
  HoloPoly(int dim, std::vector<Term> terms);

  static HoloPoly constant(Complex c, int dim);
  static HoloPoly coordinate(int i, int dim);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex eval(const CVector& z) const;
  CVector grad(const CVector& z) const;

  HoloPoly operator+(const HoloPoly& other) const;
  HoloPoly operator*(const HoloPoly& other) const;
  HoloPoly scaled(Complex s) const;

  // Upper bound for sum_i |dh/dz_i| over all points with |z_j| <= radius_j.
  double grad_bound(const Eigen::ArrayXd& radius) const;

  nlohmann::ordered_json to_json() const;
  static HoloPoly from_json(const nlohmann::json& j);

 private:
  void canonicalize();

  int dim_ = 0;
  std::vector<Term> terms_;
};

// Value and exact holomorphic gradient of the atom at p.
HoloJet eval_holo_jet(const HoloPoly& h, const CPoint& p);

}  // namespace pshglue
