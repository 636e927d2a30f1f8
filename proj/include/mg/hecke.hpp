#ifndef MG_HECKE_HPP
#define MG_HECKE_HPP

#include <map>

#include "laurent.hpp"
#include "weyl.hpp"

namespace mg {

// Element of the Hecke algebra in the standard basis: finite support map
// group element -> Laurent coefficient, no zero terms.
using HeckeElt = std::map<int, Laurent>;
// Element of the parabolic module M^J in the standard basis H_x^{J,v^-1},
// keyed by vertex position in pd.reps.
using ParabolicElt = std::map<int, Laurent>;

void elt_add(HeckeElt& a, int x, const Laurent& c);
bool elt_equal(const HeckeElt& a, const HeckeElt& b);

// Hecke algebra of a Weyl group.  bar and Kazhdan-Lusztig tables are built
// eagerly at construction (single writer), reads are const and thread-safe.
class HeckeContext {
 public:
  explicit HeckeContext(WeylPtr group);

  const WeylGroup& group() const { return *group_; }

  HeckeElt unit(int x) const { return {{x, Laurent(1)}}; }
  // left multiplication by H_s via the quadratic relation
  HeckeElt mul_Hs_left(int s, const HeckeElt& h) const;
  // left multiplication by the KL generator underline-H_s = H_s + v
  HeckeElt mul_Hsbar_left(int s, const HeckeElt& h) const;
  // general product, expanding the left factor along reduced words
  HeckeElt mul(const HeckeElt& a, const HeckeElt& b) const;
  HeckeElt bar(const HeckeElt& h) const;
  const HeckeElt& kl_basis(int w) const { return kl_[w]; }

 private:
  WeylPtr group_;
  std::vector<HeckeElt> bar_of_basis_;
  std::vector<HeckeElt> kl_;
};

// The parabolic module M^J with its bar involution, the Deodhar canonical
// basis, and the embedding i into the Hecke algebra.  Tables eager as above.
class ParabolicHecke {
 public:
  ParabolicHecke(const HeckeContext& hecke, const ParabolicDatum& pd);

  const ParabolicDatum& pd() const { return *pd_; }
  const HeckeContext& hecke() const { return *hecke_; }

  ParabolicElt unit(int vertex) const { return {{vertex, Laurent(1)}}; }
  // projection H -> M^J, H_y -> v^{-l(y_J)} H^{J}_{y^J}
  ParabolicElt project(const HeckeElt& h) const;
  ParabolicElt bar(const ParabolicElt& m) const;
  // Hecke action of underline-H_s by the three-case rule
  ParabolicElt act_Hsbar(int s, const ParabolicElt& m) const;
  const ParabolicElt& deodhar_basis(int vertex) const { return deodhar_[vertex]; }
  // i: H_x^{J,v^-1} -> sum_z v^{l(wJ)-l(z)} H_{xz}
  HeckeElt embed_i(const ParabolicElt& m) const;

 private:
  const HeckeContext* hecke_;
  const ParabolicDatum* pd_;
  std::vector<ParabolicElt> deodhar_;
};

}  // namespace mg

#endif
