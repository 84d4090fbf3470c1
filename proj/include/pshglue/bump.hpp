#pragma once

#include <memory>

#include "pshglue/convex.hpp"
#include "pshglue/domain.hpp"
#include "pshglue/types.hpp"

namespace pshglue {

// Tensor-product cutoff rho = eta^2 with eta a product of per-real-coordinate
// smooth transitions: eta == 1 on the inner box, == 0 outside the outer box.
// Squaring keeps |d rho|^2 / rho = 4 |d eta|^2 bounded on {rho > 0}.
class BumpCore {
 public:
  BumpCore(Box inner, Box outer);

  const Box& inner() const { return inner_; }
  const Box& outer() const { return outer_; }
  int dim() const { return outer_.dim(); }

  double rho_value(const CVector& z) const;
  Jet2 rho_jet(const CVector& z) const;
  Jet2 eta_jet(const CVector& z) const;

  // sup over a per-axis closed-form bound of |grad eta| in ambient coordinates,
  // used to bound |d rho|^2 / rho = 4 |d eta|^2.
  double eta_grad_sup_bound() const;

 private:
  struct Window {
    double outer_lo, inner_lo, inner_hi, outer_hi;
    D2 eval(double x) const;  // value and first two derivatives in x
    double rise_width_lo() const { return inner_lo - outer_lo; }
    double rise_width_hi() const { return outer_hi - inner_hi; }
  };

  // windows[2c] acts on Re z_c, windows[2c+1] on Im z_c
  std::vector<Window> windows_;
  Box inner_, outer_;

  void eval_windows(const CVector& z, std::vector<D2>& w) const;
};

std::shared_ptr<const BumpCore> make_bump_core(const Box& inner, const Box& outer);

}  // namespace pshglue
