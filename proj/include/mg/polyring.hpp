#ifndef MG_POLYRING_HPP
#define MG_POLYRING_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vendor_json_fwd.hpp"
#include "weyl.hpp"

namespace mg {

using Rat = mpq_class;

// A primitive integer covector in the simple-root basis: entries coprime,
// first nonzero entry positive.  Represents a line in P(V), or a degree-2
// element of S up to sign.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::vector<long long> v);       // normalizes
  static LinearForm from_rational(const std::vector<Rat>& v);
  static LinearForm simple_root(int s, int rank);

  const std::vector<long long>& vec() const { return v_; }
  int rank() const { return (int)v_.size(); }
  bool is_zero() const { return v_.empty(); }
  int pivot() const;  // first nonzero coordinate index

  bool operator==(const LinearForm& o) const { return v_ == o.v_; }
  bool operator!=(const LinearForm& o) const { return v_ != o.v_; }
  bool operator<(const LinearForm& o) const { return v_ < o.v_; }

  // image under a group element, renormalized to a primitive representative
  // of the line
  LinearForm apply(const WeylGroup& g, int x) const;

  std::string str() const;
  nlohmann::json to_json() const;

 private:
  std::vector<long long> v_;  // empty = invalid/zero
};

bool linearly_independent(const LinearForm& a, const LinearForm& b);

// Multivariate polynomial over Q in the simple-root variables, graded with
// every variable in degree 2.  Invariant: no zero coefficients stored; all
// exponent vectors have the same length.
class GradedPoly {
 public:
  GradedPoly() = default;
  static GradedPoly constant(const Rat& c, int rank);
  static GradedPoly variable(int i, int rank);
  static GradedPoly from_linear(const std::vector<Rat>& coords);
  static GradedPoly from_linear_form(const LinearForm& a);
  static GradedPoly monomial(std::vector<int> exp, const Rat& c);

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }
  void add_term(const std::vector<int>& exp, const Rat& c);

  GradedPoly operator+(const GradedPoly& o) const;
  GradedPoly operator-(const GradedPoly& o) const;
  GradedPoly operator-() const;
  GradedPoly operator*(const GradedPoly& o) const;
  GradedPoly scaled(const Rat& c) const;
  GradedPoly& operator+=(const GradedPoly& o);
  bool operator==(const GradedPoly& o) const { return terms_ == o.terms_; }

  // degree of a monomial is 2 * (sum of exponents)
  bool is_homogeneous() const;
  int degree() const;  // max degree; -1 for zero
  GradedPoly homogeneous_component(int degree) const;

  // substitute variable j by the linear form images[j]
  GradedPoly substitute_linear(const std::vector<GradedPoly>& images) const;

  std::string str() const;  // rendered in a1..an
  nlohmann::json to_json() const;
  static GradedPoly from_json(const nlohmann::json& j);

 private:
  std::map<std::vector<int>, Rat> terms_;
};

// tau_w: the algebra automorphism induced by lambda -> w(lambda)
GradedPoly apply_reflection(const WeylGroup& g, int w, const GradedPoly& p);

// exact division by a linear form; nullopt if indivisible
std::optional<GradedPoly> divide_by_linear(const GradedPoly& p, const LinearForm& a);

// canonical normal form mod (a): eliminate the pivot variable of a
GradedPoly reduce_mod_linear(const GradedPoly& p, const LinearForm& a);

}  // namespace mg

#endif
