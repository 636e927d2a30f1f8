#include "mg/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mg/errors.hpp"

namespace mg {

std::pair<std::vector<int>, std::vector<int>> MomentGraph::delta_sets(int x) const {
  if (x < 0 || x >= num_vertices()) throw UsageError("unknown vertex");
  std::vector<int> es = out_edges[x], vs;
  for (int e : es) vs.push_back(edges[e].to);
  return {es, vs};
}

std::vector<int> MomentGraph::upward(int x) const {
  std::vector<int> out;
  for (int y = 0; y < num_vertices(); ++y)
    if (less_eq(x, y)) out.push_back(y);
  return out;
}

std::vector<int> MomentGraph::strictly_upward(int x) const {
  std::vector<int> out;
  for (int y = 0; y < num_vertices(); ++y)
    if (less(x, y)) out.push_back(y);
  return out;
}

void MomentGraph::finalize() {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.label < b.label;
  });
  out_edges.assign(num_vertices(), {});
  in_edges.assign(num_vertices(), {});
  for (int e = 0; e < (int)edges.size(); ++e) {
    out_edges[edges[e].from].push_back(e);
    in_edges[edges[e].to].push_back(e);
  }
}

void MomentGraph::validate() const {
  const int n = num_vertices();
  // partial order sanity
  for (int i = 0; i < n; ++i)
    if (!less_eq(i, i)) throw std::logic_error("order not reflexive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && less_eq(i, j) && less_eq(j, i))
        throw std::logic_error("order not antisymmetric");
      for (int k = 0; k < n; ++k)
        if (less_eq(i, j) && less_eq(j, k) && !less_eq(i, k))
          throw std::logic_error("order not transitive");
    }
  std::map<std::pair<int, int>, int> seen;
  for (auto& e : edges) {
    if (e.from == e.to) throw std::logic_error("loop edge");
    if (e.label.is_zero()) throw std::logic_error("zero edge label");
    // primitivity is a LinearForm invariant; order closure is (MG2)
    if (!less(e.from, e.to)) throw std::logic_error("edge endpoints not ordered");
    if (seen.count({e.from, e.to}) || seen.count({e.to, e.from}))
      throw std::logic_error("duplicate or anti-parallel edge");
    seen[{e.from, e.to}] = 1;
  }
}

std::string MomentGraph::vertex_word(int v) const {
  if (!group) return std::to_string(v);
  return group->word_string(vertex_elems[v]);
}

nlohmann::json MomentGraph::to_json() const {
  nlohmann::json j;
  j["type"] = type_label;
  nlohmann::json jj = nlohmann::json::array();
  for (int s : J) jj.push_back(s + 1);
  j["parabolic"] = jj;
  nlohmann::json vs = nlohmann::json::array();
  for (int v = 0; v < num_vertices(); ++v) vs.push_back(vertex_word(v));
  j["vertices"] = vs;
  nlohmann::json ord = nlohmann::json::array();
  for (int i = 0; i < num_vertices(); ++i)
    for (int k = 0; k < num_vertices(); ++k)
      if (less(i, k)) ord.push_back({i, k});
  j["order"] = ord;
  nlohmann::json es = nlohmann::json::array();
  for (auto& e : edges) {
    nlohmann::json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["label"] = e.label.to_json();
    es.push_back(je);
  }
  j["edges"] = es;
  return j;
}

std::string MomentGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph G {\n  rankdir=BT;\n";
  for (int v = 0; v < num_vertices(); ++v) {
    std::string w = vertex_word(v);
    os << "  n" << v << " [label=\"" << (w.empty() ? "e" : w) << "\"];\n";
  }
  for (auto& e : edges)
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.label.str()
       << "\"];\n";
  os << "}\n";
  return os.str();
}

MomentGraph build_bruhat_graph(const ParabolicDatum& pd) {
  const auto& g = *pd.group;
  MomentGraph mg;
  mg.rank = g.rank();
  mg.group = pd.group;
  mg.J = pd.J;
  mg.type_label = g.cartan().label;
  const int n = pd.num_vertices();
  mg.vertex_elems = pd.reps;
  mg.vertex_lengths.resize(n);
  for (int v = 0; v < n; ++v) mg.vertex_lengths[v] = g.length(pd.reps[v]);
  mg.leq.assign((std::size_t)n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mg.leq[(std::size_t)i * n + j] = g.bruhat_leq(pd.reps[i], pd.reps[j]);

  for (int v = 0; v < n; ++v) {
    int x = pd.reps[v];
    for (int t = 0; t < g.num_positive_roots(); ++t) {
      int tx = g.mul(g.reflection(t), x);
      int y = pd.factorize(tx).first;
      if (y == x) continue;  // tx in xW_J
      int u = pd.rep_pos[y];
      if (g.length(y) == g.length(x))
        throw std::logic_error("incomparable quotient pair linked by a reflection");
      if (g.length(y) < g.length(x)) continue;  // recorded from the other side
      mg.edges.push_back({v, u, LinearForm(
          std::vector<long long>(g.positive_root(t).begin(), g.positive_root(t).end()))});
    }
  }
  mg.finalize();
  return mg;
}

int quotient_vertex_map(const ParabolicDatum& pd, int element) {
  return pd.factorize(element).first;
}

MomentGraph single_vertex_graph(int rank) {
  MomentGraph mg;
  mg.rank = rank;
  mg.vertex_elems = {0};
  mg.vertex_lengths = {0};
  mg.leq = {1};
  mg.finalize();
  return mg;
}

}  // namespace mg
