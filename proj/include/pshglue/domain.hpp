#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pshglue/holo.hpp"
#include "pshglue/types.hpp"

namespace pshglue {

// Axis-aligned box in C^n: one real interval per real/imaginary coordinate.
struct Box {
  Eigen::ArrayXd re_lo, re_hi, im_lo, im_hi;

  static Box square(int dim, double half_width) {
    Box b;
    b.re_lo = Eigen::ArrayXd::Constant(dim, -half_width);
    b.re_hi = Eigen::ArrayXd::Constant(dim, half_width);
    b.im_lo = b.re_lo;
    b.im_hi = b.re_hi;
    return b;
  }

  int dim() const { return static_cast<int>(re_lo.size()); }

  bool contains(const CVector& z, double slack = 0.0) const;
  // Smallest per-axis gap between this box and an enclosing outer box;
  // negative when some face of this box is not strictly inside the outer one.
  double margin_inside(const Box& outer) const;
  // Largest coordinate magnitude over the box, per complex coordinate.
  Eigen::ArrayXd corner_radius() const;
  double max_extent() const;

  nlohmann::ordered_json to_json() const;
  static Box from_json(const nlohmann::json& j);
};

// The closed exceptional set A: empty, a finite point list, or the zero set
// of a holomorphic atom. Supplies a distance lower bound that vanishes only
// on A itself.
class ExceptionalSet {
 public:
  enum class Kind { Empty, Points, ZeroSet };

  static ExceptionalSet empty();
  static ExceptionalSet points(std::vector<CVector> pts);
  static ExceptionalSet zero_set(HoloPoly atom);

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  const std::vector<CVector>& point_list() const { return points_; }
  const HoloPoly& atom() const { return atom_; }

  // Lower bound for dist(z, A). For point lists it is exact; for zero sets it
  // is |h(z)| / B with B a gradient bound over the box inflated by its own
  // extent, clamped by that extent.
  double distance_lb(const CVector& z, const Box& box) const;

  nlohmann::ordered_json to_json() const;
  static ExceptionalSet from_json(const nlohmann::json& j);

 private:
  Kind kind_ = Kind::Empty;
  std::vector<CVector> points_;
  HoloPoly atom_;
};

// Geometric scene for one verification domain: a box minus the set A.
struct DomainSpec {
  Box box;
  ExceptionalSet exceptional;
  std::string label;

  double distance_lb(const CVector& z) const { return exceptional.distance_lb(z, box); }
};

enum class SampleStrategy { Grid, SeededUniform };

struct SampleOptions {
  SampleStrategy strategy = SampleStrategy::SeededUniform;
  // Total sample count for seeded-uniform; points per real axis for grid.
  int count = 1000;
  double delta = 1e-3;          // minimum distance to A
  double near_fraction = 0.3;   // share of samples placed in the shell [delta, 10 delta]
  std::uint64_t seed = 1;
};

// Deterministic point sampler. Grid sampling lays `count` points per real
// axis and drops those within delta of A; seeded-uniform draws `count` points,
// with near_fraction of them concentrated in the shell delta <= dist <= 10 delta
// around A. Identical options always give bit-identical lists.
std::vector<CPoint> sample_domain(const DomainSpec& d, const SampleOptions& opts);

// Deterministic uniform generator on [0,1) built on splitmix64, so sequences
// do not depend on standard-library distribution internals.
class Uniform01 {
 public:
  explicit Uniform01(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_bits() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace pshglue
