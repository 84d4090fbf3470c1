#pragma once

#include <string>

#include "json.hpp"
#include "pshglue/convex.hpp"
#include "pshglue/errors.hpp"

namespace pshglue {

// Named smooth one-variable functions available to RealComp nodes. The set is
// closed under what the constructions need; each entry supplies f, f', f''.
class Smooth1 {
 public:
  enum class Name { Identity, Exp, Square, NegLogNeg };

  static Smooth1 identity() { return Smooth1(Name::Identity); }
  static Smooth1 exponential() { return Smooth1(Name::Exp); }
  static Smooth1 square() { return Smooth1(Name::Square); }
  // -log(-t), defined for t < 0; increasing and convex there.
  static Smooth1 neg_log_neg() { return Smooth1(Name::NegLogNeg); }

  Name name() const { return name_; }

  D2 eval(double t) const {
    switch (name_) {
      case Name::Identity:
        return {t, 1.0, 0.0};
      case Name::Exp: {
        const double e = std::exp(t);
        return {e, e, e};
      }
      case Name::Square:
        return {t * t, 2.0 * t, 2.0};
      case Name::NegLogNeg: {
        if (!(t < 0.0)) throw SingularPoint("-log(-t) evaluated at t >= 0");
        return {-std::log(-t), -1.0 / t, 1.0 / (t * t)};
      }
    }
    return {};
  }

  std::string label() const {
    switch (name_) {
      case Name::Identity:
        return "identity";
      case Name::Exp:
        return "exp";
      case Name::Square:
        return "square";
      case Name::NegLogNeg:
        return "neg_log_neg";
    }
    return "";
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["name"] = label();
    return j;
  }

  static Smooth1 from_json(const nlohmann::json& j) {
    const std::string name = j.at("name").get<std::string>();
    if (name == "identity") return identity();
    if (name == "exp") return exponential();
    if (name == "square") return square();
    if (name == "neg_log_neg") return neg_log_neg();
    throw ParseError("Smooth1: unknown function '" + name + "'");
  }

 private:
  explicit Smooth1(Name n) : name_(n) {}
  Name name_;
};

}  // namespace pshglue
