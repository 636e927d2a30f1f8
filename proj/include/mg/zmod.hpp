#ifndef MG_ZMOD_HPP
#define MG_ZMOD_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "hecke.hpp"
#include "sheaf.hpp"

namespace mg {

// Shared context for modules over the structure algebra of one parabolic
// Bruhat graph.
struct ZContext {
  WeylPtr group;
  ParabolicDatum pd;
  std::shared_ptr<const MomentGraph> graph;

  int num_vertices() const { return graph->num_vertices(); }
  // vertex-level s-action: position of (s x)^J
  int s_dot(int s, int vx) const { return pd.s_dot_vertex(s, vx); }
  bool s_fixes(int s, int vx) const { return s_dot(s, vx) == vx; }
};
std::shared_ptr<const ZContext> make_zcontext(WeylPtr group, std::vector<int> J);

// ---------------------------------------------------------------------------
// Section tuples over a vertex subset Omega of G^J (explicit elements of
// Z^J(Omega)).

struct VertexTuple {
  std::vector<int> omega;  // sorted vertex ids
  std::vector<GradedPoly> comp;

  const GradedPoly& at(int vertex) const;
  bool operator==(const VertexTuple& o) const {
    return omega == o.omega && comp == o.comp;
  }
};

// z'_x = tau_s(z_{(sx)^J}); Omega must be s-invariant
VertexTuple sigma_involution(const ZContext& ctx, int s, const VertexTuple& z);
// z = z+ + alphabar_s * z-, both parts sigma_s-invariant; exact division
std::pair<VertexTuple, VertexTuple> invariant_split(const ZContext& ctx, int s,
                                                    const VertexTuple& z);
// c(lambda)^J_x = sum_{xJ in W_J} x xJ (lambda), over all of W^J
VertexTuple c_lambda(const ZContext& ctx, const std::vector<Rat>& lambda);
// membership in Z^J(Omega): all edge divisibilities inside Omega
bool in_structure_algebra(const ZContext& ctx, const VertexTuple& z);
bool is_sigma_invariant(const ZContext& ctx, int s, const VertexTuple& z);
// eta_x of Eq.-5 type twisted action: the endomorphism of S induced by
// lambda -> c(lambda)^J_x
GradedPoly eta_twist(const ZContext& ctx, int vertex, const GradedPoly& p);
// the constant tuple with every component alpha_s
VertexTuple alpha_bar(const ZContext& ctx, int s, const std::vector<int>& omega);

// ---------------------------------------------------------------------------
// Structure-algebra modules, presented either by explicit section bases or by
// the translation carrier M + M<-2>.  Support idempotents are realized by
// polynomial, degree-preserving component maps into per-vertex ambient
// stalk tuples; e_y m = 0 iff comp_y m = 0.

class ZModule {
 public:
  explicit ZModule(std::shared_ptr<const ZContext> ctx) : ctx_(std::move(ctx)) {}
  virtual ~ZModule() = default;

  const ZContext& ctx() const { return *ctx_; }
  std::shared_ptr<const ZContext> ctx_ptr() const { return ctx_; }
  virtual int dim(int d) const = 0;
  virtual const std::vector<int>& support() const = 0;
  // ambient stalk descriptor at a vertex: slot degrees of a product of base
  // stalks (tau-twisted copies accumulate along translations)
  virtual std::vector<int> ambient_slots(int y) const = 0;
  // component map M_d -> ambient_y slice at degree d
  const SpMat& comp(int y, int d) const;

 protected:
  virtual SpMat compute_comp(int y, int d) const = 0;

 private:
  std::shared_ptr<const ZContext> ctx_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, SpMat> comp_cache_;
};

using ZModulePtr = std::shared_ptr<const ZModule>;

class SkyscraperModule final : public ZModule {
 public:
  SkyscraperModule(std::shared_ptr<const ZContext> ctx, int vertex);
  int dim(int d) const override;
  const std::vector<int>& support() const override { return supp_; }
  std::vector<int> ambient_slots(int y) const override;

 protected:
  SpMat compute_comp(int y, int d) const override;

 private:
  int vertex_;
  std::vector<int> supp_;
};

class TranslatedModule final : public ZModule {
 public:
  TranslatedModule(int s, ZModulePtr child);
  int dim(int d) const override;
  const std::vector<int>& support() const override { return supp_; }
  std::vector<int> ambient_slots(int y) const override;
  int s() const { return s_; }
  const ZModulePtr& child() const { return child_; }

 protected:
  SpMat compute_comp(int y, int d) const override;

 private:
  int s_;
  ZModulePtr child_;
  std::vector<int> supp_;
};

class SectionZModule final : public ZModule {
 public:
  SectionZModule(std::shared_ptr<const ZContext> ctx, SectionSpace space);
  int dim(int d) const override;
  const std::vector<int>& support() const override { return supp_; }
  std::vector<int> ambient_slots(int y) const override;
  const SectionSpace& space() const { return space_; }

 protected:
  SpMat compute_comp(int y, int d) const override;

 private:
  SectionSpace space_;
  std::vector<int> supp_;
};

class SumModule final : public ZModule {
 public:
  // summands with internal degree shifts: M_i<n_i>
  SumModule(std::shared_ptr<const ZContext> ctx,
            std::vector<std::pair<ZModulePtr, int>> parts);
  int dim(int d) const override;
  const std::vector<int>& support() const override { return supp_; }
  std::vector<int> ambient_slots(int y) const override;
  const std::vector<std::pair<ZModulePtr, int>>& parts() const { return parts_; }

 protected:
  SpMat compute_comp(int y, int d) const override;

 private:
  std::vector<std::pair<ZModulePtr, int>> parts_;
  std::vector<int> supp_;
};

// A module together with a global grading shift <shift> and a hint for the
// top generator degree of its subquotients.
struct EmbeddedModule {
  ZModulePtr node;
  int shift = 0;
  int top_degree = 0;
};

EmbeddedModule module_Be(std::shared_ptr<const ZContext> ctx);
EmbeddedModule translate(int s, const EmbeddedModule& m);
EmbeddedModule shifted(EmbeddedModule m, int n);
EmbeddedModule section_module(std::shared_ptr<const ZContext> ctx, SectionSpace space,
                              int top_degree);

// ---------------------------------------------------------------------------
// Subquotients, graded ranks, characters.

// Hilbert function of the node-level M_[x] = ker(M^{>=x} -> M^{>x}) in even
// degrees 0..bound (module shift NOT applied).
std::map<int, int> verma_subquotient(const ZModule& m, int vertex, int bound);

// All subquotient Hilbert functions at once, sharing kernel computations.
std::map<int, std::map<int, int>> all_subquotients(const ZModule& m, int bound);

// graded rank of a graded free module from its Hilbert function; nvars = rank
// of S.  Throws NotGradedFree on inconsistency.
Laurent graded_rank(const std::map<int, int>& hilbert, int nvars, int bound);

struct CharacterClass {
  ParabolicElt data;
  int shift = 0;  // bookkeeping: data already includes v^{-shift}
};

// h^J([M]) = v^{-shift} sum_x v^{l(x)} rk M_[x] H_x^{J,v^-1}
CharacterClass character(const EmbeddedModule& m, const ParabolicHecke& ph,
                         int bound = -1);

// ---------------------------------------------------------------------------
// The functor I = <l(wJ)> . Gamma . p^{J,*} . L on BMP-presented modules.
// The sign of the shift is the one fixed by the commutativity of the
// embedding diagram on the desk cases (see README).

struct BmpSummand {
  int w_vertex;  // vertex of G^J
  int shift;
};

// provider: w_vertex -> BMP sheaf on ctxJ->graph (cached outside)
EmbeddedModule functor_I(std::shared_ptr<const ZContext> ctxJ,
                         std::shared_ptr<const ZContext> ctx_regular,
                         const std::vector<BmpSummand>& presentation,
                         const std::function<const Sheaf&(int)>& bmp_provider,
                         int bound);

nlohmann::json module_report(const EmbeddedModule& m, const ParabolicHecke& ph,
                             int bound = -1);

}  // namespace mg

#endif
