#include "mg/hecke.hpp"

#include <algorithm>

#include "mg/errors.hpp"

namespace mg {

void elt_add(HeckeElt& a, int x, const Laurent& c) {
  if (c.is_zero()) return;
  auto it = a.find(x);
  if (it == a.end()) {
    a.emplace(x, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) a.erase(it);
  }
}

bool elt_equal(const HeckeElt& a, const HeckeElt& b) { return a == b; }

HeckeContext::HeckeContext(WeylPtr group) : group_(std::move(group)) {
  const auto& g = *group_;
  const int n = g.size();
  std::vector<int> by_length(n);
  for (int i = 0; i < n; ++i) by_length[i] = i;
  std::stable_sort(by_length.begin(), by_length.end(),
                   [&](int a, int b) { return g.length(a) < g.length(b); });

  // bar(H_x) by the descent recursion bar(H_x) = bar(H_s) bar(H_{sx}),
  // bar(H_s) = H_s + (v - v^-1) H_e.
  bar_of_basis_.resize(n);
  for (int x : by_length) {
    if (x == 0) {
      bar_of_basis_[x] = unit(0);
      continue;
    }
    int s = -1;
    for (int k = 0; k < g.rank(); ++k)
      if (g.left_descent(k, x)) {
        s = k;
        break;
      }
    const HeckeElt& rest = bar_of_basis_[g.left_mul_gen(s, x)];
    HeckeElt out = mul_Hs_left(s, rest);
    Laurent vmvinv = v_power(1) - v_power(-1);
    for (auto& [y, c] : rest) elt_add(out, y, vmvinv * c);
    bar_of_basis_[x] = std::move(out);
  }

  // Kazhdan-Lusztig basis by induction with degree correction.
  kl_.resize(n);
  for (int w : by_length) {
    if (w == 0) {
      kl_[w] = unit(0);
      continue;
    }
    int s = -1;
    for (int k = 0; k < g.rank(); ++k)
      if (g.left_descent(k, w)) {
        s = k;
        break;
      }
    HeckeElt c = mul_Hsbar_left(s, kl_[g.left_mul_gen(s, w)]);
    // strip lower terms whose coefficient is not in vZ[v]
    std::vector<int> keys;
    for (auto& [y, coeff] : c) keys.push_back(y);
    std::sort(keys.begin(), keys.end(), [&](int a, int b) {
      if (g.length(a) != g.length(b)) return g.length(a) > g.length(b);
      return a < b;
    });
    for (int y : keys) {
      if (y == w) continue;
      auto it = c.find(y);
      if (it == c.end() || it->second.in_v_Z_of_v()) continue;
      Laurent m = it->second.nonpositive_symmetrization();
      for (auto& [z, cz] : kl_[y]) elt_add(c, z, -(m * cz));
    }
    kl_[w] = std::move(c);
  }
}

HeckeElt HeckeContext::mul_Hs_left(int s, const HeckeElt& h) const {
  const auto& g = *group_;
  HeckeElt out;
  Laurent quad = v_power(-1) - v_power(1);
  for (auto& [x, c] : h) {
    int sx = g.left_mul_gen(s, x);
    if (g.length(sx) > g.length(x)) {
      elt_add(out, sx, c);
    } else {
      elt_add(out, x, quad * c);
      elt_add(out, sx, c);
    }
  }
  return out;
}

HeckeElt HeckeContext::mul_Hsbar_left(int s, const HeckeElt& h) const {
  HeckeElt out = mul_Hs_left(s, h);
  for (auto& [x, c] : h) elt_add(out, x, v_power(1) * c);
  return out;
}

HeckeElt HeckeContext::mul(const HeckeElt& a, const HeckeElt& b) const {
  const auto& g = *group_;
  HeckeElt out;
  for (auto& [x, c] : a) {
    HeckeElt part = b;
    Word w = g.lex_least_word(x);
    for (auto it = w.rbegin(); it != w.rend(); ++it) part = mul_Hs_left(*it, part);
    for (auto& [y, cy] : part) elt_add(out, y, c * cy);
  }
  return out;
}

HeckeElt HeckeContext::bar(const HeckeElt& h) const {
  HeckeElt out;
  for (auto& [x, c] : h) {
    Laurent cb = c.bar();
    for (auto& [y, cy] : bar_of_basis_[x]) elt_add(out, y, cb * cy);
  }
  return out;
}

ParabolicHecke::ParabolicHecke(const HeckeContext& hecke, const ParabolicDatum& pd)
    : hecke_(&hecke), pd_(&pd) {
  const auto& g = *pd.group;
  const int m = pd.num_vertices();
  deodhar_.resize(m);
  // vertices are sorted by length already
  for (int v = 0; v < m; ++v) {
    if (v == 0) {
      deodhar_[v] = unit(0);
      continue;
    }
    int w = pd.reps[v];
    int s = -1;
    for (int k = 0; k < g.rank(); ++k)
      if (g.left_descent(k, w)) {
        s = k;
        break;
      }
    // sw is again a minimal representative when s is a left descent
    int prev = pd.rep_pos[g.left_mul_gen(s, w)];
    ParabolicElt c = act_Hsbar(s, deodhar_[prev]);
    std::vector<int> keys;
    for (auto& [y, coeff] : c) keys.push_back(y);
    std::sort(keys.begin(), keys.end(), std::greater<int>());
    for (int y : keys) {
      if (y == v) continue;
      auto it = c.find(y);
      if (it == c.end() || it->second.in_v_Z_of_v()) continue;
      Laurent corr = it->second.nonpositive_symmetrization();
      for (auto& [z, cz] : deodhar_[y]) elt_add(c, z, -(corr * cz));
    }
    deodhar_[v] = std::move(c);
  }
}

ParabolicElt ParabolicHecke::project(const HeckeElt& h) const {
  const auto& g = *pd_->group;
  ParabolicElt out;
  for (auto& [y, c] : h) {
    auto [yj, yJ] = pd_->factorize(y);
    elt_add(out, pd_->rep_pos[yj], v_power(-g.length(yJ)) * c);
  }
  return out;
}

ParabolicElt ParabolicHecke::bar(const ParabolicElt& m) const {
  HeckeElt lift;
  for (auto& [v, c] : m) elt_add(lift, pd_->reps[v], c);
  return project(hecke_->bar(lift));
}

ParabolicElt ParabolicHecke::act_Hsbar(int s, const ParabolicElt& m) const {
  const auto& g = *pd_->group;
  ParabolicElt out;
  for (auto& [v, c] : m) {
    int x = pd_->reps[v];
    int sx = g.left_mul_gen(s, x);
    if (pd_->in_quotient(sx)) {
      int sv = pd_->rep_pos[sx];
      if (g.length(sx) > g.length(x)) {
        elt_add(out, sv, c);
        elt_add(out, v, v_power(1) * c);
      } else {
        elt_add(out, sv, c);
        elt_add(out, v, v_power(-1) * c);
      }
    } else {
      elt_add(out, v, (v_power(1) + v_power(-1)) * c);
    }
  }
  return out;
}

HeckeElt ParabolicHecke::embed_i(const ParabolicElt& m) const {
  const auto& g = *pd_->group;
  const int lwJ = g.length(pd_->longest);
  HeckeElt out;
  for (auto& [v, c] : m) {
    int x = pd_->reps[v];
    for (int z : pd_->subgroup)
      elt_add(out, g.mul(x, z), v_power(lwJ - g.length(z)) * c);
  }
  return out;
}

}  // namespace mg
