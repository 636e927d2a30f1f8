#ifndef MG_GRAPH_HPP
#define MG_GRAPH_HPP

#include <memory>
#include <string>
#include <vector>

#include "polyring.hpp"
#include "weyl.hpp"

namespace mg {

// A V-moment graph: ordered vertices, edges labeled by lines in V, and a
// partial order making edge endpoints comparable.  For Bruhat graphs the
// vertices are the minimal coset representatives in pd.reps order.
struct MomentGraph {
  struct Edge {
    int from, to;  // from is the shorter endpoint
    LinearForm label;
  };

  int rank = 0;                    // dim V
  std::vector<int> vertex_elems;   // group element ids (parallel to vertices)
  std::vector<int> vertex_lengths;
  std::vector<char> leq;           // leq(i,j): vertex i <= vertex j
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out_edges, in_edges;  // by edge index

  // provenance, set for Bruhat graphs
  WeylPtr group;
  std::vector<int> J;
  std::string type_label;

  int num_vertices() const { return (int)vertex_elems.size(); }
  bool less_eq(int i, int j) const { return leq[(std::size_t)i * num_vertices() + j]; }
  bool less(int i, int j) const { return i != j && less_eq(i, j); }

  // outgoing edge set E_{delta x} and its target vertices V_{delta x}
  std::pair<std::vector<int>, std::vector<int>> delta_sets(int x) const;
  std::vector<int> upward(int x) const;         // { >= x }
  std::vector<int> strictly_upward(int x) const;  // { > x }

  void validate() const;  // (MG1)-(MG3) plus artifact invariants
  nlohmann::json to_json() const;
  std::string to_dot() const;
  std::string vertex_word(int v) const;

  void finalize();  // builds adjacency, sorts edges canonically
};

// Bruhat moment graph of (W, S, J): vertices W^J; edge x -> y when y = (tx)^J
// for a reflection t, y not in xW_J, l(x) < l(y); label = positive root of t.
MomentGraph build_bruhat_graph(const ParabolicDatum& pd);

// canonical quotient map on vertices, x -> x^J
int quotient_vertex_map(const ParabolicDatum& pd, int element);

// single vertex, no edges (test helper and degenerate case)
MomentGraph single_vertex_graph(int rank);

}  // namespace mg

#endif
