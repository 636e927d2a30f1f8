#include "mg/sheaf.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "mg/errors.hpp"

namespace mg {

namespace {

void gen_monomials(int rank, int h, int skip_var, std::vector<int>& cur, int pos,
                   int left, std::vector<std::vector<int>>& out) {
  if (pos == rank) {
    if (left == 0) out.push_back(cur);
    return;
  }
  int maxe = (pos == skip_var) ? 0 : left;
  for (int e = 0; e <= maxe; ++e) {
    cur[pos] = e;
    gen_monomials(rank, h, skip_var, cur, pos + 1, left - e, out);
  }
  cur[pos] = 0;
}

std::mutex mono_mutex;

const std::vector<std::vector<int>>& monomial_table(int rank, int h, int skip) {
  static std::map<std::tuple<int, int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mono_mutex);
  auto key = std::make_tuple(rank, h, skip);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  if (h >= 0) {
    std::vector<int> cur(rank, 0);
    gen_monomials(rank, h, skip, cur, 0, h, out);
    std::sort(out.begin(), out.end());
  }
  return cache.emplace(key, std::move(out)).first->second;
}

int mono_index(const std::vector<std::vector<int>>& monos, const std::vector<int>& e) {
  auto it = std::lower_bound(monos.begin(), monos.end(), e);
  if (it == monos.end() || *it != e) return -1;
  return (int)(it - monos.begin());
}

}  // namespace

const std::vector<std::vector<int>>& monomial_basis(int rank, int half_degree) {
  return monomial_table(rank, half_degree, -1);
}

const std::vector<std::vector<int>>& monomial_basis_mod(int rank, int half_degree,
                                                        int pivot) {
  return monomial_table(rank, half_degree, pivot);
}

int slice_dim_free(int rank, int degree) {
  if (degree < 0 || degree % 2) return 0;
  return (int)monomial_basis(rank, degree / 2).size();
}

int slice_dim_mod(int rank, int degree) {
  if (degree < 0 || degree % 2) return 0;
  return (int)monomial_basis_mod(rank, degree / 2, 0).size();
}

std::vector<Rat> poly_coords(const GradedPoly& p,
                             const std::vector<std::vector<int>>& monos) {
  std::vector<Rat> out(monos.size());
  for (auto& [e, c] : p.terms()) {
    int i = mono_index(monos, e);
    if (i < 0) throw std::logic_error("monomial outside slice basis");
    out[i] = c;
  }
  return out;
}

GradedPoly coords_poly(const std::vector<Rat>& coords, std::size_t offset,
                       const std::vector<std::vector<int>>& monos) {
  GradedPoly p;
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (coords[offset + i] != 0) p.add_term(monos[i], coords[offset + i]);
  return p;
}

SpMat mult_matrix(const GradedPoly& p, const std::vector<std::vector<int>>& from,
                  const std::vector<std::vector<int>>& to,
                  const LinearForm* reduce_mod) {
  SpMat m((int)to.size(), (int)from.size());
  for (int j = 0; j < (int)from.size(); ++j) {
    GradedPoly prod = p * GradedPoly::monomial(from[j], 1);
    if (reduce_mod) prod = reduce_mod_linear(prod, *reduce_mod);
    for (auto& [e, c] : prod.terms()) {
      int i = mono_index(to, e);
      if (i < 0) throw std::logic_error("product monomial outside target slice");
      m.add(i, j, c);
    }
  }
  return m;
}

int SlotLayout::slot_dim(int k, int d) const {
  int rem = d - slots[k];
  if (rem < 0 || rem % 2) return 0;
  return pivot < 0 ? slice_dim_free(rank, rem)
                   : (int)monomial_basis_mod(rank, rem / 2, pivot).size();
}

int SlotLayout::dim(int d) const {
  int s = 0;
  for (int k = 0; k < (int)slots.size(); ++k) s += slot_dim(k, d);
  return s;
}

int SlotLayout::offset(int k, int d) const {
  int s = 0;
  for (int i = 0; i < k; ++i) s += slot_dim(i, d);
  return s;
}

const std::vector<std::vector<int>>& SlotLayout::monos(int k, int d) const {
  int rem = d - slots[k];
  if (rem < 0) rem = -2;  // yields the empty table
  return pivot < 0 ? monomial_basis(rank, rem / 2)
                   : monomial_basis_mod(rank, rem / 2, pivot);
}

SlotLayout Sheaf::stalk_layout(int v) const {
  return SlotLayout{rank, stalk_gens[v], -1};
}

SlotLayout Sheaf::edge_layout(int e) const {
  const auto& ed = edges[e];
  return SlotLayout{rank, ed.gens, ed.gens.empty() ? -1 : ed.ann.pivot()};
}

SpMat Sheaf::rho_slice(int e, bool from_side, int d) const {
  const auto& ed = edges[e];
  int v = from_side ? graph->edges[e].from : graph->edges[e].to;
  SlotLayout sl = stalk_layout(v);
  SlotLayout el = edge_layout(e);
  SpMat out(el.dim(d), sl.dim(d));
  const auto& rho = from_side ? ed.rho_from : ed.rho_to;
  for (int i = 0; i < (int)sl.slots.size(); ++i) {
    const auto& from_monos = sl.monos(i, d);
    if (from_monos.empty()) continue;
    for (int j = 0; j < (int)ed.gens.size(); ++j) {
      const GradedPoly& entry = rho[j][i];
      if (entry.is_zero()) continue;
      const auto& to_monos = el.monos(j, d);
      SpMat block = mult_matrix(entry, from_monos, to_monos, &ed.ann);
      int roff = el.offset(j, d), coff = sl.offset(i, d);
      for (int r = 0; r < block.rows; ++r)
        for (auto& [c, val] : block.r[r]) out.add(roff + r, coff + c, val);
    }
  }
  return out;
}

nlohmann::json Sheaf::to_json() const {
  nlohmann::json j;
  nlohmann::json vs = nlohmann::json::array();
  for (int v = 0; v < graph->num_vertices(); ++v) {
    nlohmann::json jv;
    jv["vertex"] = graph->vertex_word(v);
    jv["gens"] = stalk_gens[v];
    vs.push_back(jv);
  }
  j["stalks"] = vs;
  nlohmann::json es = nlohmann::json::array();
  for (int e = 0; e < (int)edges.size(); ++e) {
    nlohmann::json je;
    je["from"] = graph->edges[e].from;
    je["to"] = graph->edges[e].to;
    je["annihilator"] = edges[e].ann.to_json();
    je["gens"] = edges[e].gens;
    auto dump_rho = [](const std::vector<std::vector<GradedPoly>>& rho) {
      nlohmann::json rows = nlohmann::json::array();
      for (auto& row : rho) {
        nlohmann::json r = nlohmann::json::array();
        for (auto& p : row) r.push_back(p.to_json());
        rows.push_back(r);
      }
      return rows;
    };
    je["rho_from"] = dump_rho(edges[e].rho_from);
    je["rho_to"] = dump_rho(edges[e].rho_to);
    es.push_back(je);
  }
  j["edges"] = es;
  return j;
}

Sheaf structure_sheaf(std::shared_ptr<const MomentGraph> graph) {
  Sheaf f;
  f.graph = graph;
  f.rank = graph->rank;
  f.stalk_gens.assign(graph->num_vertices(), {0});
  f.edges.resize(graph->edges.size());
  for (std::size_t e = 0; e < graph->edges.size(); ++e) {
    auto& ed = f.edges[e];
    ed.gens = {0};
    ed.ann = graph->edges[e].label;
    ed.rho_from = {{GradedPoly::constant(1, f.rank)}};
    ed.rho_to = {{GradedPoly::constant(1, f.rank)}};
  }
  return f;
}

int SectionSpace::vert_pos(int v) const {
  auto it = std::lower_bound(verts.begin(), verts.end(), v);
  if (it == verts.end() || *it != v) return -1;
  return (int)(it - verts.begin());
}

int SectionSpace::vert_dim(int vi, int d) const {
  SlotLayout l{rank, vert_gens[vi], -1};
  return l.dim(d);
}

int SectionSpace::vert_offset(int vi, int d) const {
  int s = 0;
  for (int i = 0; i < vi; ++i) s += vert_dim(i, d);
  return s;
}

int SectionSpace::total_dim(int d) const {
  int s = 0;
  for (int i = 0; i < (int)verts.size(); ++i) s += vert_dim(i, d);
  return s;
}

int SectionSpace::dim(int d) const {
  auto it = basis.find(d);
  return it == basis.end() ? 0 : it->second.rows;
}

SectionSpace sections(const Sheaf& f, const std::vector<int>& I, int bound) {
  SectionSpace s;
  s.graph = f.graph;
  s.rank = f.rank;
  s.verts = I;
  std::sort(s.verts.begin(), s.verts.end());
  s.verts.erase(std::unique(s.verts.begin(), s.verts.end()), s.verts.end());
  for (int v : s.verts) s.vert_gens.push_back(f.stalk_gens[v]);
  s.bound = bound;

  std::vector<int> inner_edges;
  for (int e = 0; e < (int)f.graph->edges.size(); ++e) {
    if (f.edges[e].gens.empty()) continue;
    if (s.vert_pos(f.graph->edges[e].from) >= 0 && s.vert_pos(f.graph->edges[e].to) >= 0)
      inner_edges.push_back(e);
  }

  for (int d = 0; d <= bound; d += 2) {
    int cols = s.total_dim(d);
    std::vector<SpMat> rows_blocks;
    int total_rows = 0;
    for (int e : inner_edges) {
      SlotLayout el = f.edge_layout(e);
      int edim = el.dim(d);
      if (edim == 0) continue;
      SpMat block(edim, cols);
      SpMat rfrom = f.rho_slice(e, true, d);
      SpMat rto = f.rho_slice(e, false, d);
      int ofrom = s.vert_offset(s.vert_pos(f.graph->edges[e].from), d);
      int oto = s.vert_offset(s.vert_pos(f.graph->edges[e].to), d);
      for (int r = 0; r < edim; ++r) {
        for (auto& [c, val] : rfrom.r[r]) block.add(r, ofrom + c, val);
        for (auto& [c, val] : rto.r[r]) block.add(r, oto + c, -val);
      }
      total_rows += edim;
      rows_blocks.push_back(std::move(block));
    }
    SpMat all(0, cols);
    {
      std::vector<const SpMat*> ptrs;
      for (auto& b : rows_blocks) ptrs.push_back(&b);
      if (!ptrs.empty()) all = sp_vstack(ptrs);
      all.cols = cols;
    }
    QMat dense = all.dense();
    if (dense.cols == 0) dense = QMat(0, cols);
    s.basis[d] = row_space(kernel_basis(dense.rows ? dense : QMat(0, cols)));
  }
  return s;
}

std::vector<Rat> section_product(const SectionSpace& s, int da, const std::vector<Rat>& a,
                                 int db, const std::vector<Rat>& b) {
  // componentwise product; requires every stalk free of rank one in degree 0
  for (auto& g : s.vert_gens)
    if (g != std::vector<int>{0})
      throw std::logic_error("section_product requires structure-sheaf stalks");
  int dc = da + db;
  std::vector<Rat> out;
  for (std::size_t vi = 0; vi < s.verts.size(); ++vi) {
    const auto& ma = monomial_basis(s.rank, da / 2);
    const auto& mb = monomial_basis(s.rank, db / 2);
    const auto& mc = monomial_basis(s.rank, dc / 2);
    GradedPoly pa = coords_poly(a, s.vert_offset(vi, da), ma);
    GradedPoly pb = coords_poly(b, s.vert_offset(vi, db), mb);
    auto pc = poly_coords(pa * pb, mc);
    out.insert(out.end(), pc.begin(), pc.end());
  }
  return out;
}

MinimalGenerators minimal_generators(
    const std::map<int, QMat>& image_bases, int bound,
    const std::function<SpMat(int, int)>& var_mult, int rank) {
  MinimalGenerators out;
  for (int d = 0; d <= bound; d += 2) {
    auto it = image_bases.find(d);
    if (it == image_bases.end() || it->second.rows == 0) continue;
    const QMat& img = it->second;
    // span of S_2 * image_{d-2}
    QMat sub(0, img.cols);
    auto pit = image_bases.find(d - 2);
    if (pit != image_bases.end() && pit->second.rows > 0) {
      std::vector<QMat> pieces;
      for (int v = 0; v < rank; ++v) {
        SpMat mv = var_mult(v, d - 2);
        pieces.push_back(sp_mul_basis_transposed(mv, pit->second));
      }
      // rows of pieces are columns: transpose into row vectors
      QMat stacked((int)pieces.size() * pit->second.rows, img.cols);
      int r = 0;
      for (auto& pc : pieces) {
        for (int j = 0; j < pc.cols; ++j, ++r)
          for (int i = 0; i < pc.rows; ++i) stacked.at(r, i) = pc.at(i, j);
      }
      sub = std::move(stacked);
    }
    QMat work = sub;
    auto pivots = rref_in_place(work);
    int rank_sub = (int)pivots.size();
    QMat reduced((int)pivots.size(), img.cols);
    for (int i = 0; i < (int)pivots.size(); ++i)
      for (int j = 0; j < img.cols; ++j) reduced.at(i, j) = work.at(i, j);
    // add image rows one by one; rank growth = new generator
    QMat cur = reduced;
    int cur_rank = rank_sub;
    for (int i = 0; i < img.rows; ++i) {
      QMat trial = cur;
      QMat row(1, img.cols);
      for (int j = 0; j < img.cols; ++j) row.at(0, j) = img.at(i, j);
      trial = vstack(trial, row);
      int r2 = rank_of(trial);
      if (r2 > cur_rank) {
        out.degrees.push_back(d);
        std::vector<Rat> rep(img.cols);
        for (int j = 0; j < img.cols; ++j) rep[j] = img.at(i, j);
        out.reps.push_back(std::move(rep));
        cur = row_space(std::move(trial));
        cur_rank = r2;
      }
    }
  }
  return out;
}

int bmp_default_bound(const MomentGraph& g, int w) {
  int minlen = g.vertex_lengths[w];
  for (int x = 0; x < g.num_vertices(); ++x)
    if (g.less_eq(x, w)) minlen = std::min(minlen, g.vertex_lengths[x]);
  return 2 * (g.vertex_lengths[w] - minlen) + 4;
}

BmpResult bmp_sheaf(std::shared_ptr<const MomentGraph> graph, int w, int bound) {
  if (bound < 4 || bound % 2) throw UsageError("BMP degree bound must be even and >= 4");
  const int n = graph->num_vertices();
  const int rank = graph->rank;
  Sheaf f;
  f.graph = graph;
  f.rank = rank;
  f.stalk_gens.assign(n, {});
  f.edges.resize(graph->edges.size());
  for (std::size_t e = 0; e < graph->edges.size(); ++e)
    f.edges[e].ann = graph->edges[e].label;

  std::vector<int> supp;
  for (int x = 0; x < n; ++x)
    if (graph->less_eq(x, w)) supp.push_back(x);

  // current section space over the processed part of the support
  SectionSpace cur;
  cur.graph = graph;
  cur.rank = rank;
  cur.bound = bound;

  f.stalk_gens[w] = {0};
  cur.verts = {w};
  cur.vert_gens = {{0}};
  for (int d = 0; d <= bound; d += 2)
    cur.basis[d] = QMat::identity(slice_dim_free(rank, d));

  int wlen = graph->vertex_lengths[w];
  int max_gen_degree = 0;
  for (int level = wlen - 1;; --level) {
    std::vector<int> level_verts;
    int minlen = wlen;
    for (int x : supp) {
      minlen = std::min(minlen, graph->vertex_lengths[x]);
      if (graph->vertex_lengths[x] == level) level_verts.push_back(x);
    }
    if (level < minlen) break;
    if (level_verts.empty()) continue;

    struct NewVert {
      int x;
      std::vector<int> up_edges;  // edges into the processed region
    };
    std::vector<NewVert> added;

    for (int x : level_verts) {
      NewVert nv{x, {}};
      for (int e : graph->out_edges[x]) {
        int y = graph->edges[e].to;
        if (f.stalk_gens[y].empty()) continue;  // outside the support: zero module
        auto& ed = f.edges[e];
        ed.gens = f.stalk_gens[y];
        ed.rho_to.assign(ed.gens.size(),
                         std::vector<GradedPoly>(ed.gens.size(), GradedPoly()));
        for (std::size_t k = 0; k < ed.gens.size(); ++k)
          ed.rho_to[k][k] = GradedPoly::constant(1, rank);
        nv.up_edges.push_back(e);
      }
      // u_x image of the sections over { > x } (= restriction of the current
      // space, by flabbiness of the partial sheaf)
      std::map<int, QMat> image;
      for (int d = 0; d <= bound; d += 2) {
        int target = 0;
        for (int e : nv.up_edges) target += f.edge_layout(e).dim(d);
        const QMat& B = cur.basis.at(d);
        QMat img(B.rows, target);
        int off = 0;
        for (int e : nv.up_edges) {
          SlotLayout el = f.edge_layout(e);
          int edim = el.dim(d);
          if (edim) {
            SpMat rto = f.rho_slice(e, false, d);
            int ypos = cur.vert_pos(graph->edges[e].to);
            int yoff = cur.vert_offset(ypos, d);
            for (int i = 0; i < B.rows; ++i)
              for (int r = 0; r < edim; ++r) {
                Rat sum = 0;
                for (auto& [c, val] : rto.r[r]) sum += val * B.at(i, yoff + c);
                img.at(i, off + r) = sum;
              }
          }
          off += edim;
        }
        image[d] = row_space(std::move(img));
      }
      // multiplication by a variable inside the concatenated edge modules
      auto var_mult = [&](int v, int d) {
        GradedPoly pv = GradedPoly::variable(v, rank);
        int fromdim = 0, todim = 0;
        for (int e : nv.up_edges) {
          fromdim += f.edge_layout(e).dim(d);
          todim += f.edge_layout(e).dim(d + 2);
        }
        SpMat m(todim, fromdim);
        int foff = 0, toff = 0;
        for (int e : nv.up_edges) {
          SlotLayout el = f.edge_layout(e);
          for (std::size_t k = 0; k < el.slots.size(); ++k) {
            const auto& fm = el.monos((int)k, d);
            const auto& tm = el.monos((int)k, d + 2);
            if (!fm.empty() && !tm.empty()) {
              SpMat block = mult_matrix(pv, fm, tm, &f.edges[e].ann);
              int ro = toff + el.offset((int)k, d + 2), co = foff + el.offset((int)k, d);
              for (int r = 0; r < block.rows; ++r)
                for (auto& [c, val] : block.r[r]) m.add(ro + r, co + c, val);
            }
          }
          foff += el.dim(d);
          toff += el.dim(d + 2);
        }
        return m;
      };
      MinimalGenerators gens = minimal_generators(image, bound, var_mult, rank);
      f.stalk_gens[x] = gens.degrees;
      for (int dg : gens.degrees) max_gen_degree = std::max(max_gen_degree, dg);
      // restriction maps out of x: polynomial entries of the representatives
      for (int e : nv.up_edges) {
        auto& ed = f.edges[e];
        ed.rho_from.assign(ed.gens.size(),
                           std::vector<GradedPoly>(gens.degrees.size(), GradedPoly()));
      }
      for (std::size_t k = 0; k < gens.degrees.size(); ++k) {
        int d = gens.degrees[k];
        int off = 0;
        for (int e : nv.up_edges) {
          SlotLayout el = f.edge_layout(e);
          for (std::size_t j = 0; j < el.slots.size(); ++j) {
            const auto& monos = el.monos((int)j, d);
            GradedPoly p;
            for (std::size_t mi = 0; mi < monos.size(); ++mi) {
              const Rat& c = gens.reps[k][off + el.offset((int)j, d) + mi];
              if (c != 0) p.add_term(monos[mi], c);
            }
            f.edges[e].rho_from[j][k] = p;
          }
          off += el.dim(d);
        }
      }
      added.push_back(std::move(nv));
    }

    // extend the section space by the new level
    SectionSpace next;
    next.graph = graph;
    next.rank = rank;
    next.bound = bound;
    next.verts = cur.verts;
    for (auto& nv : added) next.verts.push_back(nv.x);
    std::sort(next.verts.begin(), next.verts.end());
    for (int v : next.verts) next.vert_gens.push_back(f.stalk_gens[v]);

    for (int d = 0; d <= bound; d += 2) {
      const QMat& B = cur.basis.at(d);
      int pcols = B.rows;
      // unknowns: prev coefficients + new stalk slices
      std::vector<int> xoff;
      int extra = 0;
      for (auto& nv : added) {
        xoff.push_back(pcols + extra);
        extra += SlotLayout{rank, f.stalk_gens[nv.x], -1}.dim(d);
      }
      int cols = pcols + extra;
      // constraints per new upward edge
      int rows = 0;
      for (auto& nv : added)
        for (int e : nv.up_edges) rows += f.edge_layout(e).dim(d);
      QMat sys(rows, cols);
      int roff = 0;
      for (std::size_t ai = 0; ai < added.size(); ++ai) {
        for (int e : added[ai].up_edges) {
          SlotLayout el = f.edge_layout(e);
          int edim = el.dim(d);
          if (edim) {
            SpMat rfrom = f.rho_slice(e, true, d);
            SpMat rto = f.rho_slice(e, false, d);
            int ypos = cur.vert_pos(graph->edges[e].to);
            int yoff = cur.vert_offset(ypos, d);
            for (int r = 0; r < edim; ++r) {
              for (auto& [c, val] : rfrom.r[r]) sys.at(roff + r, xoff[ai] + c) += val;
              for (auto& [c, val] : rto.r[r])
                for (int i = 0; i < B.rows; ++i)
                  if (B.at(i, yoff + c) != 0)
                    sys.at(roff + r, i) -= val * B.at(i, yoff + c);
            }
          }
          roff += edim;
        }
      }
      QMat ker = kernel_basis(sys);
      // expand to full coordinates over next.verts
      QMat full(ker.rows, next.total_dim(d));
      for (int i = 0; i < ker.rows; ++i) {
        // previous part
        for (std::size_t vi = 0; vi < cur.verts.size(); ++vi) {
          int src = cur.vert_offset((int)vi, d);
          int dst = next.vert_offset(next.vert_pos(cur.verts[vi]), d);
          int dimv = cur.vert_dim((int)vi, d);
          for (int c = 0; c < dimv; ++c) {
            Rat sum = 0;
            for (int p = 0; p < pcols; ++p)
              if (ker.at(i, p) != 0 && B.at(p, src + c) != 0)
                sum += ker.at(i, p) * B.at(p, src + c);
            full.at(i, dst + c) = sum;
          }
        }
        // new blocks
        for (std::size_t ai = 0; ai < added.size(); ++ai) {
          int dst = next.vert_offset(next.vert_pos(added[ai].x), d);
          int dimx = SlotLayout{rank, f.stalk_gens[added[ai].x], -1}.dim(d);
          for (int c = 0; c < dimx; ++c) full.at(i, dst + c) = ker.at(i, xoff[ai] + c);
        }
      }
      next.basis[d] = row_space(std::move(full));
    }
    cur = std::move(next);
  }

  if (max_gen_degree > bound - 4)
    throw DegreeBoundError("degree bound too small");
  return BmpResult{std::move(f), std::move(cur)};
}

Sheaf pullback(const Sheaf& f, const ParabolicDatum& pd,
               std::shared_ptr<const MomentGraph> regular_graph) {
  const auto& gj = *f.graph;
  Sheaf out;
  out.graph = regular_graph;
  out.rank = f.rank;
  const int n = regular_graph->num_vertices();
  out.stalk_gens.resize(n);
  // vertex of G^J under x -> x^J, via element ids
  auto down = [&](int v) {
    int elem = regular_graph->vertex_elems[v];
    int xj = pd.factorize(elem).first;
    for (int u = 0; u < gj.num_vertices(); ++u)
      if (gj.vertex_elems[u] == xj) return u;
    throw std::logic_error("quotient vertex not found");
  };
  std::vector<int> down_of(n);
  for (int v = 0; v < n; ++v) {
    down_of[v] = down(v);
    out.stalk_gens[v] = f.stalk_gens[down_of[v]];
  }
  out.edges.resize(regular_graph->edges.size());
  for (std::size_t e = 0; e < regular_graph->edges.size(); ++e) {
    const auto& ge = regular_graph->edges[e];
    auto& ed = out.edges[e];
    ed.ann = ge.label;
    int a = down_of[ge.from], b = down_of[ge.to];
    if (a == b) {
      // collapsed edge: F^{x^J} / l(E) with canonical quotients
      ed.gens = f.stalk_gens[a];
      ed.rho_from.assign(ed.gens.size(),
                         std::vector<GradedPoly>(ed.gens.size(), GradedPoly()));
      for (std::size_t k = 0; k < ed.gens.size(); ++k)
        ed.rho_from[k][k] = GradedPoly::constant(1, f.rank);
      ed.rho_to = ed.rho_from;
    } else {
      // image edge a -- b in G^J
      int found = -1;
      for (int u = 0; u < (int)gj.edges.size(); ++u) {
        if ((gj.edges[u].from == a && gj.edges[u].to == b) ||
            (gj.edges[u].from == b && gj.edges[u].to == a))
          found = u;
      }
      if (found < 0) throw std::logic_error("pullback: image edge missing");
      const auto& src = f.edges[found];
      ed.gens = src.gens;
      ed.ann = src.ann;
      bool flip = gj.edges[found].from != a;
      ed.rho_from = flip ? src.rho_to : src.rho_from;
      ed.rho_to = flip ? src.rho_from : src.rho_to;
    }
  }
  return out;
}

LocalisedData localise(const SectionSpace& m, int bound) {
  const auto& graph = *m.graph;
  LocalisedData out;
  out.vertex_image.resize(graph.num_vertices());
  out.edges.resize(graph.edges.size());
  const int rank = m.rank;

  auto vert_block = [&](int v, int d, const QMat& B) {
    int vi = m.vert_pos(v);
    if (vi < 0) return QMat(0, 0);
    int off = m.vert_offset(vi, d), dim = m.vert_dim(vi, d);
    QMat blk(B.rows, dim);
    for (int i = 0; i < B.rows; ++i)
      for (int c = 0; c < dim; ++c) blk.at(i, c) = B.at(i, off + c);
    return blk;
  };

  for (int v = 0; v < graph.num_vertices(); ++v)
    for (int d = 0; d <= bound; d += 2) {
      auto it = m.basis.find(d);
      if (it == m.basis.end()) continue;
      out.vertex_image[v][d] = row_space(vert_block(v, d, it->second));
    }

  for (int e = 0; e < (int)graph.edges.size(); ++e) {
    int x = graph.edges[e].from, y = graph.edges[e].to;
    const LinearForm& l = graph.edges[e].label;
    if (m.vert_pos(x) < 0 || m.vert_pos(y) < 0) continue;
    auto& ed = out.edges[e];
    std::vector<int> xg = m.vert_gens[m.vert_pos(x)], yg = m.vert_gens[m.vert_pos(y)];
    SlotLayout lx{rank, xg, -1}, ly{rank, yg, -1};
    for (int d = 0; d <= bound; d += 2) {
      // M^{x,y}: image of M on the two blocks
      const QMat& B = m.basis.at(d);
      QMat bx = vert_block(x, d, B), by = vert_block(y, d, B);
      QMat mxy(B.rows, bx.cols + by.cols);
      for (int i = 0; i < B.rows; ++i) {
        for (int c = 0; c < bx.cols; ++c) mxy.at(i, c) = bx.at(i, c);
        for (int c = 0; c < by.cols; ++c) mxy.at(i, bx.cols + c) = by.at(i, c);
      }
      std::map<int, QMat> mxy_deg;
      mxy_deg[d] = row_space(std::move(mxy));
      // build M(E)_d = sum over a: Z(E)_a * M^{x,y}_{d-a} needs lower slices
      // of M^{x,y} as well; gather them
      for (int dd = 0; dd < d; dd += 2) {
        const QMat& Bl = m.basis.at(dd);
        QMat bx2 = vert_block(x, dd, Bl), by2 = vert_block(y, dd, Bl);
        QMat m2(Bl.rows, bx2.cols + by2.cols);
        for (int i = 0; i < Bl.rows; ++i) {
          for (int c = 0; c < bx2.cols; ++c) m2.at(i, c) = bx2.at(i, c);
          for (int c = 0; c < by2.cols; ++c) m2.at(i, bx2.cols + c) = by2.at(i, c);
        }
        mxy_deg[dd] = row_space(std::move(m2));
      }
      // pair multiplication (p,q).(a,b) = (pa, qb)
      QMat me(0, lx.dim(d) + ly.dim(d));
      std::vector<QMat> rows_acc;
      for (int a = 0; a <= d; a += 2) {
        int dd = d - a;
        auto mit = mxy_deg.find(dd);
        if (mit == mxy_deg.end() || mit->second.rows == 0) continue;
        // Z(E)_a basis: (p, p) for monomials p of degree a, and (l*q, 0) for
        // monomials q of degree a-2
        std::vector<std::pair<GradedPoly, GradedPoly>> zbasis;
        for (auto& mono : monomial_basis(rank, a / 2)) {
          GradedPoly p = GradedPoly::monomial(mono, 1);
          zbasis.emplace_back(p, p);
        }
        if (a >= 2)
          for (auto& mono : monomial_basis(rank, a / 2 - 1)) {
            GradedPoly q =
                GradedPoly::monomial(mono, 1) * GradedPoly::from_linear_form(l);
            zbasis.emplace_back(q, GradedPoly());
          }
        for (auto& [p, q] : zbasis) {
          SpMat mpx, mpy;
          QMat prod(mit->second.rows, lx.dim(d) + ly.dim(d));
          // multiply x-part by p, y-part by q
          for (int i = 0; i < mit->second.rows; ++i) {
            // x blocks
            for (std::size_t k = 0; k < xg.size(); ++k) {
              const auto& fm = lx.monos((int)k, dd);
              const auto& tm = lx.monos((int)k, d);
              if (fm.empty() || tm.empty() || p.is_zero()) continue;
              GradedPoly src = coords_poly(
                  std::vector<Rat>(mit->second.a.begin() + (std::size_t)i * mit->second.cols,
                                   mit->second.a.begin() + (std::size_t)(i + 1) * mit->second.cols),
                  lx.offset((int)k, dd), fm);
              GradedPoly dst = p * src;
              auto coords = poly_coords(dst, tm);
              for (std::size_t c = 0; c < coords.size(); ++c)
                prod.at(i, lx.offset((int)k, d) + (int)c) = coords[c];
            }
            // y blocks
            int xoff_dd = lx.dim(dd);
            for (std::size_t k = 0; k < yg.size(); ++k) {
              const auto& fm = ly.monos((int)k, dd);
              const auto& tm = ly.monos((int)k, d);
              if (fm.empty() || tm.empty() || q.is_zero()) continue;
              GradedPoly src = coords_poly(
                  std::vector<Rat>(mit->second.a.begin() + (std::size_t)i * mit->second.cols,
                                   mit->second.a.begin() + (std::size_t)(i + 1) * mit->second.cols),
                  xoff_dd + ly.offset((int)k, dd), fm);
              GradedPoly dst = q * src;
              auto coords = poly_coords(dst, tm);
              for (std::size_t c = 0; c < coords.size(); ++c)
                prod.at(i, lx.dim(d) + ly.offset((int)k, d) + (int)c) = coords[c];
            }
          }
          rows_acc.push_back(std::move(prod));
        }
      }
      for (auto& r : rows_acc) me = vstack(me, r);
      QMat me_basis = row_space(std::move(me));
      // pushout of M^x <- M(E) -> M^y in sub-basis coordinates
      const QMat mx = out.vertex_image[x][d], my = out.vertex_image[y][d];
      auto mx_piv = [&] { QMat t = mx; return rref_in_place(t); }();
      auto my_piv = [&] { QMat t = my; return rref_in_place(t); }();
      QMat rel(me_basis.rows, mx.rows + my.rows);
      for (int i = 0; i < me_basis.rows; ++i) {
        std::vector<Rat> xpart(lx.dim(d)), ypart(ly.dim(d));
        for (int c = 0; c < lx.dim(d); ++c) xpart[c] = me_basis.at(i, c);
        for (int c = 0; c < ly.dim(d); ++c) ypart[c] = me_basis.at(i, lx.dim(d) + c);
        std::vector<Rat> cx, cy;
        if (!express_in_rows(mx, mx_piv, xpart, &cx) ||
            !express_in_rows(my, my_piv, ypart, &cy))
          throw std::logic_error("localise: M(E) not inside the images");
        for (int c = 0; c < (int)cx.size(); ++c) rel.at(i, c) = cx[c];
        for (int c = 0; c < (int)cy.size(); ++c) rel.at(i, mx.rows + c) = -cy[c];
      }
      QMat relr = rel;
      auto rel_piv = rref_in_place(relr);
      std::vector<char> is_piv(mx.rows + my.rows, 0);
      for (int c : rel_piv) is_piv[c] = 1;
      std::vector<int> free_cols;
      for (int c = 0; c < mx.rows + my.rows; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
      ed.dim[d] = (int)free_cols.size();
      // quotient coordinates: reduce e_i by relations, read free columns
      auto quotient_row = [&](int idx) {
        std::vector<Rat> v(mx.rows + my.rows);
        v[idx] = 1;
        for (int i = 0; i < (int)rel_piv.size(); ++i) {
          const Rat c = v[rel_piv[i]];
          if (c == 0) continue;
          for (int j = 0; j < relr.cols; ++j)
            if (relr.at(i, j) != 0) v[j] -= c * relr.at(i, j);
        }
        std::vector<Rat> q(free_cols.size());
        for (std::size_t j = 0; j < free_cols.size(); ++j) q[j] = v[free_cols[j]];
        return q;
      };
      QMat qfrom(mx.rows, (int)free_cols.size()), qto(my.rows, (int)free_cols.size());
      for (int i = 0; i < mx.rows; ++i) {
        auto q = quotient_row(i);
        for (std::size_t j = 0; j < q.size(); ++j) qfrom.at(i, (int)j) = q[j];
      }
      for (int i = 0; i < my.rows; ++i) {
        auto q = quotient_row(mx.rows + i);
        for (std::size_t j = 0; j < q.size(); ++j) qto.at(i, (int)j) = q[j];
      }
      ed.rho_from[d] = std::move(qfrom);
      ed.rho_to[d] = std::move(qto);
    }
  }
  return out;
}

}  // namespace mg
