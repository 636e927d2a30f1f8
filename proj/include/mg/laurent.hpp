#ifndef MG_LAURENT_HPP
#define MG_LAURENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vendor_json_fwd.hpp"

namespace mg {

// Integer-coefficient Laurent polynomial in the single variable v.
// Invariant: no stored zero coefficients.
class Laurent {
 public:
  Laurent() = default;
  Laurent(long long c) { set(0, c); }  // NOLINT(google-explicit-constructor)
  static Laurent monomial(int exp, long long c = 1);

  bool is_zero() const { return coeffs_.empty(); }
  long long coeff(int exp) const;
  void set(int exp, long long c);
  void add(int exp, long long c);

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  bool operator==(const Laurent& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  // v |-> v^{-1}
  Laurent bar() const;
  // coefficients in degrees <= 0, symmetrized into a bar-invariant polynomial
  // that matches this one in all degrees <= 0 (used by canonical-basis
  // corrections).
  Laurent nonpositive_symmetrization() const;
  bool in_v_Z_of_v() const;  // all exponents >= 1
  bool nonnegative() const;  // all coefficients >= 0
  int min_exp() const;       // requires nonzero
  int max_exp() const;       // requires nonzero

  const std::map<int, long long>& terms() const { return coeffs_; }

  std::string str() const;  // e.g. "v^-1 + 2 + v^3"
  nlohmann::json to_json() const;
  static Laurent from_json(const nlohmann::json& j);

 private:
  std::map<int, long long> coeffs_;
};

inline Laurent v_power(int k) { return Laurent::monomial(k); }

}  // namespace mg

#endif
