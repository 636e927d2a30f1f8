#ifndef MG_SHEAF_HPP
#define MG_SHEAF_HPP

#include <functional>
#include <map>
#include <memory>

#include "graph.hpp"
#include "linalg.hpp"
#include "polyring.hpp"

namespace mg {

// Monomial bases of the graded slices of S.  half_degree = (polynomial
// degree)/2 since every variable sits in degree 2.  Lex-sorted, cached.
const std::vector<std::vector<int>>& monomial_basis(int rank, int half_degree);
// basis of (S/l)_d in the pivot-eliminated normal form: monomials with zero
// exponent on pivot
const std::vector<std::vector<int>>& monomial_basis_mod(int rank, int half_degree,
                                                        int pivot);
int slice_dim_free(int rank, int degree);               // dim S_degree
int slice_dim_mod(int rank, int degree);                 // dim (S/l)_degree

// coordinates of a homogeneous polynomial in a monomial list
std::vector<Rat> poly_coords(const GradedPoly& p,
                             const std::vector<std::vector<int>>& monos);
GradedPoly coords_poly(const std::vector<Rat>& coords, std::size_t offset,
                       const std::vector<std::vector<int>>& monos);

// multiplication by a homogeneous polynomial as a slice map, optionally
// reducing mod a linear form on the target side
SpMat mult_matrix(const GradedPoly& p, const std::vector<std::vector<int>>& from,
                  const std::vector<std::vector<int>>& to,
                  const LinearForm* reduce_mod);

// Layout of a graded free module given by generator degrees: slices are
// concatenated monomial blocks, one per generator.
struct SlotLayout {
  int rank = 0;
  std::vector<int> slots;        // generator degrees (even)
  int pivot = -1;                // >= 0: free over S/l with this pivot var

  int slot_dim(int k, int d) const;
  int dim(int d) const;
  int offset(int k, int d) const;
  const std::vector<std::vector<int>>& monos(int k, int d) const;
};

// Sheaf on a moment graph: free graded stalks, edge modules free over
// S/l(E), restriction maps as polynomial matrices over the generators.
struct Sheaf {
  struct EdgeData {
    std::vector<int> gens;  // generator degrees of the edge module
    LinearForm ann;
    // rho[edge_gen][stalk_gen], entries homogeneous of the degree difference
    std::vector<std::vector<GradedPoly>> rho_from, rho_to;
  };

  std::shared_ptr<const MomentGraph> graph;
  int rank = 0;
  std::vector<std::vector<int>> stalk_gens;  // empty vector = zero stalk
  std::vector<EdgeData> edges;

  SlotLayout stalk_layout(int v) const;
  SlotLayout edge_layout(int e) const;
  // slice matrix of the restriction map on one side of edge e
  SpMat rho_slice(int e, bool from_side, int d) const;

  nlohmann::json to_json() const;
};

Sheaf structure_sheaf(std::shared_ptr<const MomentGraph> graph);

// Degreewise space of compatible tuples over a vertex subset.
struct SectionSpace {
  std::shared_ptr<const MomentGraph> graph;
  int rank = 0;
  std::vector<int> verts;                    // sorted vertex ids
  std::vector<std::vector<int>> vert_gens;   // per position in verts
  int bound = 0;
  std::map<int, QMat> basis;                 // degree -> rref'd basis rows

  int vert_dim(int vi, int d) const;
  int vert_offset(int vi, int d) const;
  int total_dim(int d) const;
  int dim(int d) const;
  int vert_pos(int v) const;  // position in verts or -1
};

// exact degreewise solve of the compatibility conditions over I
SectionSpace sections(const Sheaf& f, const std::vector<int>& I, int bound);

// componentwise product of two section vectors (coordinates at degree da/db),
// as a coordinate vector at degree da+db; used for the algebra checks
std::vector<Rat> section_product(const SectionSpace& s, int da, const std::vector<Rat>& a,
                                 int db, const std::vector<Rat>& b);

// Braden-MacPherson sheaf together with its global sections (computed along
// the way, level by level).
struct BmpResult {
  Sheaf sheaf;
  SectionSpace global;  // over the support, in graph vertex order
};

// Degreewise minimal homogeneous generators of a graded submodule given by
// slice bases: generators in degree d span image_d modulo S_2 * image_{d-2}.
// var_mult(v, d) must give the multiplication slice map of variable v from
// degree d to d+2 in the ambient space.
struct MinimalGenerators {
  std::vector<int> degrees;
  std::vector<std::vector<Rat>> reps;  // ambient coordinates at their degree
};
MinimalGenerators minimal_generators(
    const std::map<int, QMat>& image_bases, int bound,
    const std::function<SpMat(int, int)>& var_mult, int rank);

BmpResult bmp_sheaf(std::shared_ptr<const MomentGraph> graph, int w, int bound);
int bmp_default_bound(const MomentGraph& g, int w);

// p^{J,*}: transport a sheaf on the parabolic graph of pd to the regular
// graph (stalks copied along x -> x^J, two-case edge rule).
Sheaf pullback(const Sheaf& f, const ParabolicDatum& pd,
               std::shared_ptr<const MomentGraph> regular_graph);

// Fiebig localisation of an explicitly embedded module: vertex images and
// degreewise pushout presentations of the edge modules.
struct LocalisedData {
  struct EdgeData {
    std::map<int, int> dim;        // pushout slice dimensions
    std::map<int, QMat> rho_from;  // M^x_d -> pushout_d in a fixed basis
    std::map<int, QMat> rho_to;
  };
  std::vector<std::map<int, QMat>> vertex_image;  // bases of M^x per degree
  std::vector<EdgeData> edges;                    // parallel to graph edges
};
LocalisedData localise(const SectionSpace& m, int bound);

}  // namespace mg

#endif
