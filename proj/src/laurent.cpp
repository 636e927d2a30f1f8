#include "mg/laurent.hpp"

#include <cstdlib>
#include <sstream>

namespace mg {

Laurent Laurent::monomial(int exp, long long c) {
  Laurent p;
  p.set(exp, c);
  return p;
}

long long Laurent::coeff(int exp) const {
  auto it = coeffs_.find(exp);
  return it == coeffs_.end() ? 0 : it->second;
}

void Laurent::set(int exp, long long c) {
  if (c == 0)
    coeffs_.erase(exp);
  else
    coeffs_[exp] = c;
}

void Laurent::add(int exp, long long c) { set(exp, coeff(exp) + c); }

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  r += o;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (auto& [e, c] : o.coeffs_) add(e, c);
  return *this;
}

Laurent Laurent::operator-(const Laurent& o) const {
  Laurent r = *this;
  r -= o;
  return r;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (auto& [e, c] : o.coeffs_) add(e, -c);
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent r;
  for (auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
  return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (auto& [e1, c1] : coeffs_)
    for (auto& [e2, c2] : o.coeffs_) r.add(e1 + e2, c1 * c2);
  return r;
}

Laurent Laurent::bar() const {
  Laurent r;
  for (auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
  return r;
}

Laurent Laurent::nonpositive_symmetrization() const {
  Laurent r;
  for (auto& [e, c] : coeffs_) {
    if (e < 0) {
      r.add(e, c);
      r.add(-e, c);
    } else if (e == 0) {
      r.add(0, c);
    }
  }
  return r;
}

bool Laurent::in_v_Z_of_v() const {
  for (auto& [e, c] : coeffs_)
    if (e < 1) return false;
  return true;
}

bool Laurent::nonnegative() const {
  for (auto& [e, c] : coeffs_)
    if (c < 0) return false;
  return true;
}

int Laurent::min_exp() const { return coeffs_.begin()->first; }
int Laurent::max_exp() const { return coeffs_.rbegin()->first; }

std::string Laurent::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : coeffs_) {
    long long a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      a = std::llabs(a);
    }
    if (e == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "v";
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

nlohmann::json Laurent::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& [e, c] : coeffs_) arr.push_back({e, c});
  return arr;
}

Laurent Laurent::from_json(const nlohmann::json& j) {
  Laurent p;
  for (auto& pair : j) p.set(pair.at(0).get<int>(), pair.at(1).get<long long>());
  return p;
}

}  // namespace mg
