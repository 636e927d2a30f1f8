#include "mg/polyring.hpp"

#include <numeric>
#include <sstream>

#include "mg/errors.hpp"

namespace mg {

LinearForm::LinearForm(std::vector<long long> v) : v_(std::move(v)) {
  long long g = 0;
  for (long long c : v_) g = std::gcd(g, c < 0 ? -c : c);
  if (g == 0) {
    v_.clear();
    return;
  }
  long long sign = 0;
  for (long long c : v_)
    if (c != 0) {
      sign = c > 0 ? 1 : -1;
      break;
    }
  for (auto& c : v_) c = c * sign / g;
}

LinearForm LinearForm::from_rational(const std::vector<Rat>& v) {
  mpz_class lcm = 1;
  for (const auto& c : v) {
    mpz_class den = c.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::vector<long long> out;
  out.reserve(v.size());
  for (const auto& c : v) {
    mpz_class num = c.get_num() * (lcm / c.get_den());
    if (!num.fits_slong_p()) throw std::overflow_error("linear form entry too large");
    out.push_back(num.get_si());
  }
  return LinearForm(std::move(out));
}

LinearForm LinearForm::simple_root(int s, int rank) {
  std::vector<long long> v(rank, 0);
  v[s] = 1;
  return LinearForm(std::move(v));
}

int LinearForm::pivot() const {
  for (int i = 0; i < rank(); ++i)
    if (v_[i] != 0) return i;
  throw std::logic_error("zero linear form has no pivot");
}

LinearForm LinearForm::apply(const WeylGroup& g, int x) const {
  return LinearForm(g.act(x, v_));
}

std::string LinearForm::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < rank(); ++i) {
    if (v_[i] == 0) continue;
    long long c = v_[i];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    long long a = c < 0 ? -c : c;
    if (a != 1) os << a << "*";
    os << "a" << (i + 1);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

nlohmann::json LinearForm::to_json() const { return nlohmann::json(v_); }

bool linearly_independent(const LinearForm& a, const LinearForm& b) {
  // both primitive and sign-normalized, so dependence is equality
  if (a.is_zero() || b.is_zero()) return false;
  return !(a == b);
}

GradedPoly GradedPoly::constant(const Rat& c, int rank) {
  GradedPoly p;
  p.add_term(std::vector<int>(rank, 0), c);
  return p;
}

GradedPoly GradedPoly::variable(int i, int rank) {
  GradedPoly p;
  std::vector<int> e(rank, 0);
  e[i] = 1;
  p.add_term(e, 1);
  return p;
}

GradedPoly GradedPoly::from_linear(const std::vector<Rat>& coords) {
  GradedPoly p;
  int rank = (int)coords.size();
  for (int i = 0; i < rank; ++i) {
    if (coords[i] == 0) continue;
    std::vector<int> e(rank, 0);
    e[i] = 1;
    p.add_term(e, coords[i]);
  }
  return p;
}

GradedPoly GradedPoly::from_linear_form(const LinearForm& a) {
  std::vector<Rat> coords;
  coords.reserve(a.rank());
  for (long long c : a.vec()) coords.emplace_back((long)c);
  return from_linear(coords);
}

GradedPoly GradedPoly::monomial(std::vector<int> exp, const Rat& c) {
  GradedPoly p;
  p.add_term(exp, c);
  return p;
}

void GradedPoly::add_term(const std::vector<int>& exp, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_.emplace(exp, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GradedPoly GradedPoly::operator+(const GradedPoly& o) const {
  GradedPoly r = *this;
  r += o;
  return r;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

GradedPoly GradedPoly::operator-(const GradedPoly& o) const {
  GradedPoly r = *this;
  for (auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r;
  for (auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
  GradedPoly r;
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) {
      std::vector<int> e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

GradedPoly GradedPoly::scaled(const Rat& c) const {
  GradedPoly r;
  if (c == 0) return r;
  for (auto& [e, a] : terms_) r.terms_[e] = a * c;
  return r;
}

namespace {
int monomial_degree(const std::vector<int>& e) {
  int s = 0;
  for (int x : e) s += x;
  return 2 * s;
}
}  // namespace

bool GradedPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = monomial_degree(terms_.begin()->first);
  for (auto& [e, c] : terms_)
    if (monomial_degree(e) != d) return false;
  return true;
}

int GradedPoly::degree() const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, monomial_degree(e));
  return d;
}

GradedPoly GradedPoly::homogeneous_component(int degree) const {
  GradedPoly r;
  for (auto& [e, c] : terms_)
    if (monomial_degree(e) == degree) r.terms_[e] = c;
  return r;
}

GradedPoly GradedPoly::substitute_linear(const std::vector<GradedPoly>& images) const {
  GradedPoly out;
  for (auto& [e, c] : terms_) {
    GradedPoly prod = GradedPoly::constant(c, (int)e.size());
    for (std::size_t j = 0; j < e.size(); ++j)
      for (int k = 0; k < e[j]; ++k) prod = prod * images[j];
    out += prod;
  }
  return out;
}

std::string GradedPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    bool allzero = true;
    for (int x : e) allzero = allzero && x == 0;
    if (allzero) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      bool firstvar = true;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!firstvar) os << "*";
        os << "a" << (i + 1);
        if (e[i] > 1) os << "^" << e[i];
        firstvar = false;
      }
    }
    first = false;
  }
  return os.str();
}

nlohmann::json GradedPoly::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& [e, c] : terms_) {
    nlohmann::json t;
    t["exp"] = e;
    t["num"] = c.get_num().get_str();
    t["den"] = c.get_den().get_str();
    arr.push_back(t);
  }
  return nlohmann::json{{"terms", arr}};
}

GradedPoly GradedPoly::from_json(const nlohmann::json& j) {
  GradedPoly p;
  for (auto& t : j.at("terms")) {
    auto e = t.at("exp").get<std::vector<int>>();
    Rat c(mpz_class(t.at("num").get<std::string>()),
          mpz_class(t.at("den").get<std::string>()));
    c.canonicalize();
    p.add_term(e, c);
  }
  return p;
}

GradedPoly apply_reflection(const WeylGroup& g, int w, const GradedPoly& p) {
  const int r = g.rank();
  std::vector<GradedPoly> images;
  images.reserve(r);
  for (int j = 0; j < r; ++j) {
    std::vector<Rat> col(r);
    for (int i = 0; i < r; ++i) col[i] = g.matrix_entry(w, i, j);
    images.push_back(GradedPoly::from_linear(col));
  }
  return p.substitute_linear(images);
}

std::optional<GradedPoly> divide_by_linear(const GradedPoly& p, const LinearForm& a) {
  if (p.is_zero()) return GradedPoly();
  const int k = a.pivot();
  const int rank = a.rank();
  const Rat c((long)a.vec()[k]);
  // a = c*x_k + rest
  GradedPoly rest = GradedPoly::from_linear_form(a) -
                    GradedPoly::monomial([&] {
                      std::vector<int> e(rank, 0);
                      e[k] = 1;
                      return e;
                    }(), c);
  GradedPoly q, r = p;
  while (!r.is_zero()) {
    // highest x_k-exponent term group
    int dmax = 0;
    for (auto& [e, cc] : r.terms()) dmax = std::max(dmax, e[k]);
    if (dmax == 0) return std::nullopt;  // nonzero remainder without pivot
    GradedPoly top;  // terms with e[k] == dmax, pivot exponent lowered
    for (auto& [e, cc] : r.terms()) {
      if (e[k] != dmax) continue;
      auto e2 = e;
      e2[k] -= 1;
      top.add_term(e2, cc / c);
    }
    q += top;
    r = r - top * GradedPoly::from_linear_form(a);
  }
  return q;
}

GradedPoly reduce_mod_linear(const GradedPoly& p, const LinearForm& a) {
  const int k = a.pivot();
  const int rank = a.rank();
  const Rat c((long)a.vec()[k]);
  // x_k == -(rest)/c mod (a)
  GradedPoly subst;
  for (int i = 0; i < rank; ++i) {
    if (i == k || a.vec()[i] == 0) continue;
    std::vector<int> e(rank, 0);
    e[i] = 1;
    subst.add_term(e, Rat((long)-a.vec()[i]) / c);
  }
  GradedPoly out;
  for (auto& [e, cc] : p.terms()) {
    auto e2 = e;
    int d = e2[k];
    e2[k] = 0;
    GradedPoly term = GradedPoly::monomial(e2, cc);
    for (int i = 0; i < d; ++i) term = term * subst;
    out += term;
  }
  return out;
}

}  // namespace mg
