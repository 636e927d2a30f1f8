#include "mg/zmod.hpp"

#include <algorithm>

#include "mg/errors.hpp"

namespace mg {

std::shared_ptr<const ZContext> make_zcontext(WeylPtr group, std::vector<int> J) {
  auto ctx = std::make_shared<ZContext>();
  ctx->group = group;
  ctx->pd = build_parabolic(group, std::move(J));
  ctx->graph = std::make_shared<MomentGraph>(build_bruhat_graph(ctx->pd));
  return ctx;
}

const GradedPoly& VertexTuple::at(int vertex) const {
  auto it = std::lower_bound(omega.begin(), omega.end(), vertex);
  if (it == omega.end() || *it != vertex)
    throw UsageError("vertex outside the tuple's domain");
  return comp[it - omega.begin()];
}

VertexTuple sigma_involution(const ZContext& ctx, int s, const VertexTuple& z) {
  VertexTuple out;
  out.omega = z.omega;
  out.comp.resize(z.comp.size());
  for (std::size_t i = 0; i < z.omega.size(); ++i) {
    int partner = ctx.s_dot(s, z.omega[i]);
    auto it = std::lower_bound(z.omega.begin(), z.omega.end(), partner);
    if (it == z.omega.end() || *it != partner)
      throw UsageError("Omega is not s-invariant");
    out.comp[i] = apply_reflection(*ctx.group, ctx.group->generator(s),
                                   z.comp[it - z.omega.begin()]);
  }
  return out;
}

std::pair<VertexTuple, VertexTuple> invariant_split(const ZContext& ctx, int s,
                                                    const VertexTuple& z) {
  VertexTuple sz = sigma_involution(ctx, s, z);
  VertexTuple plus, minus;
  plus.omega = minus.omega = z.omega;
  plus.comp.resize(z.comp.size());
  minus.comp.resize(z.comp.size());
  LinearForm alpha = LinearForm::simple_root(s, ctx.group->rank());
  for (std::size_t i = 0; i < z.comp.size(); ++i) {
    plus.comp[i] = (z.comp[i] + sz.comp[i]).scaled(Rat(1, 2));
    GradedPoly anti = (z.comp[i] - sz.comp[i]).scaled(Rat(1, 2));
    auto q = divide_by_linear(anti, alpha);
    if (!q)
      throw std::runtime_error(
          "invariant split: anti-invariant part not divisible by alpha_s");
    minus.comp[i] = *q;
  }
  return {plus, minus};
}

VertexTuple c_lambda(const ZContext& ctx, const std::vector<Rat>& lambda) {
  const auto& g = *ctx.group;
  VertexTuple out;
  const int n = ctx.num_vertices();
  out.omega.resize(n);
  out.comp.resize(n);
  for (int v = 0; v < n; ++v) {
    out.omega[v] = v;
    std::vector<Rat> sum(g.rank(), 0);
    for (int xj : ctx.pd.subgroup) {
      int xxj = g.mul(ctx.pd.reps[v], xj);
      for (int i = 0; i < g.rank(); ++i)
        for (int j = 0; j < g.rank(); ++j)
          sum[i] += Rat(g.matrix_entry(xxj, i, j)) * lambda[j];
    }
    out.comp[v] = GradedPoly::from_linear(sum);
  }
  return out;
}

bool in_structure_algebra(const ZContext& ctx, const VertexTuple& z) {
  for (auto& e : ctx.graph->edges) {
    auto fi = std::lower_bound(z.omega.begin(), z.omega.end(), e.from);
    auto ti = std::lower_bound(z.omega.begin(), z.omega.end(), e.to);
    if (fi == z.omega.end() || *fi != e.from) continue;
    if (ti == z.omega.end() || *ti != e.to) continue;
    GradedPoly diff = z.comp[fi - z.omega.begin()] - z.comp[ti - z.omega.begin()];
    if (!divide_by_linear(diff, e.label)) return false;
  }
  return true;
}

bool is_sigma_invariant(const ZContext& ctx, int s, const VertexTuple& z) {
  return sigma_involution(ctx, s, z) == z;
}

GradedPoly eta_twist(const ZContext& ctx, int vertex, const GradedPoly& p) {
  const int r = ctx.group->rank();
  std::vector<GradedPoly> images;
  images.reserve(r);
  for (int j = 0; j < r; ++j) {
    std::vector<Rat> unit(r, 0);
    unit[j] = 1;
    VertexTuple c = c_lambda(ctx, unit);
    images.push_back(c.comp[vertex]);
  }
  return p.substitute_linear(images);
}

VertexTuple alpha_bar(const ZContext& ctx, int s, const std::vector<int>& omega) {
  VertexTuple out;
  out.omega = omega;
  out.comp.assign(omega.size(), GradedPoly::variable(s, ctx.group->rank()));
  return out;
}

// ---------------------------------------------------------------------------

const SpMat& ZModule::comp(int y, int d) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(y, d);
  auto it = comp_cache_.find(key);
  if (it != comp_cache_.end()) return it->second;
  return comp_cache_.emplace(key, compute_comp(y, d)).first->second;
}

SkyscraperModule::SkyscraperModule(std::shared_ptr<const ZContext> ctx, int vertex)
    : ZModule(std::move(ctx)), vertex_(vertex), supp_{vertex} {}

int SkyscraperModule::dim(int d) const {
  return slice_dim_free(ctx().group->rank(), d);
}

std::vector<int> SkyscraperModule::ambient_slots(int y) const {
  return y == vertex_ ? std::vector<int>{0} : std::vector<int>{};
}

SpMat SkyscraperModule::compute_comp(int y, int d) const {
  int n = dim(d);
  if (y != vertex_) return SpMat(0, n);
  SpMat m(n, n);
  for (int i = 0; i < n; ++i) m.add(i, i, 1);
  return m;
}

TranslatedModule::TranslatedModule(int s, ZModulePtr child)
    : ZModule(child->ctx_ptr()), s_(s), child_(std::move(child)) {
  std::vector<char> in(ctx().num_vertices(), 0);
  for (int y : child_->support()) {
    in[y] = 1;
    in[ctx().s_dot(s_, y)] = 1;
  }
  for (int y = 0; y < ctx().num_vertices(); ++y)
    if (in[y]) supp_.push_back(y);
}

int TranslatedModule::dim(int d) const {
  return child_->dim(d) + child_->dim(d - 2);
}

std::vector<int> TranslatedModule::ambient_slots(int y) const {
  // pair of (possibly tau_s-twisted) copies of the child's stalk tuples at y
  // and at (sy)^J; for a fixed vertex both copies sit at y
  int z = ctx().s_dot(s_, y);
  std::vector<int> slots = child_->ambient_slots(y);
  for (int dg : child_->ambient_slots(z)) slots.push_back(dg);
  return slots;
}

SpMat TranslatedModule::compute_comp(int y, int d) const {
  // Carrier (m, m') = 1 (x) m + alphabar_s (x) m'.  The canonical component
  // at y vanishes iff comp_y(m) + alpha_s comp_y(m') = 0 and
  // comp_z(m) - alpha_s comp_z(m') = 0 with z = (sy)^J (z = y at a fixed
  // vertex).  The second slot carries the tau_s substitution so that the
  // diagonal S-action stays plain multiplication on the ambient; this is
  // what makes the recursion across further translations valid.
  const int rank = ctx().group->rank();
  const int dim_m = child_->dim(d), dim_mp = child_->dim(d - 2);
  const int z = ctx().s_dot(s_, y);
  GradedPoly alpha = GradedPoly::variable(s_, rank);

  auto alpha_lift = [&](int vert) {
    // alpha_s * comp_vert at degree d-2, landing in the degree-d slice
    const SpMat& c = child_->comp(vert, d - 2);
    SlotLayout from{rank, child_->ambient_slots(vert), -1};
    SpMat lift(from.dim(d), from.dim(d - 2));
    for (std::size_t k = 0; k < from.slots.size(); ++k) {
      const auto& fm = from.monos((int)k, d - 2);
      const auto& tm = from.monos((int)k, d);
      if (fm.empty() || tm.empty()) continue;
      SpMat mult = mult_matrix(alpha, fm, tm, nullptr);
      int fo = from.offset((int)k, d - 2), to = from.offset((int)k, d);
      for (int r = 0; r < mult.rows; ++r)
        for (auto& [cc, val] : mult.r[r]) lift.add(to + r, fo + cc, val);
    }
    return sp_compose(lift, c);
  };
  auto tau_slice = [&](int vert) {
    // slotwise substitution by tau_s on the ambient slice at degree d
    SlotLayout lay{rank, child_->ambient_slots(vert), -1};
    SpMat out(lay.dim(d), lay.dim(d));
    int se = ctx().group->generator(s_);
    for (std::size_t k = 0; k < lay.slots.size(); ++k) {
      const auto& monos = lay.monos((int)k, d);
      int off = lay.offset((int)k, d);
      for (std::size_t j = 0; j < monos.size(); ++j) {
        GradedPoly img =
            apply_reflection(*ctx().group, se, GradedPoly::monomial(monos[j], 1));
        auto coords = poly_coords(img, monos);
        for (std::size_t i = 0; i < coords.size(); ++i)
          if (coords[i] != 0) out.add(off + (int)i, off + (int)j, coords[i]);
      }
    }
    return out;
  };

  const SpMat& ay0 = child_->comp(y, d);
  SpMat ay1 = alpha_lift(y);
  SpMat tau = tau_slice(z);
  SpMat bz0 = sp_compose(tau, child_->comp(z, d));
  SpMat bz1 = sp_compose(tau, alpha_lift(z));
  SpMat out(ay0.rows + bz0.rows, dim_m + dim_mp);
  for (int r = 0; r < ay0.rows; ++r)
    for (auto& [c, v] : ay0.r[r]) out.add(r, c, v);
  for (int r = 0; r < ay1.rows; ++r)
    for (auto& [c, v] : ay1.r[r]) out.add(r, dim_m + c, v);
  for (int r = 0; r < bz0.rows; ++r)
    for (auto& [c, v] : bz0.r[r]) out.add(ay0.rows + r, c, v);
  for (int r = 0; r < bz1.rows; ++r)
    for (auto& [c, v] : bz1.r[r]) out.add(ay0.rows + r, dim_m + c, -v);
  return out;
}

SectionZModule::SectionZModule(std::shared_ptr<const ZContext> ctx, SectionSpace space)
    : ZModule(std::move(ctx)), space_(std::move(space)) {
  supp_ = space_.verts;
}

int SectionZModule::dim(int d) const {
  auto it = space_.basis.find(d);
  return it == space_.basis.end() ? 0 : it->second.rows;
}

std::vector<int> SectionZModule::ambient_slots(int y) const {
  int vi = space_.vert_pos(y);
  if (vi < 0) return {};
  return space_.vert_gens[vi];
}

SpMat SectionZModule::compute_comp(int y, int d) const {
  int vi = space_.vert_pos(y);
  int n = dim(d);
  if (vi < 0) return SpMat(0, n);
  int off = space_.vert_offset(vi, d), vdim = space_.vert_dim(vi, d);
  const QMat& B = space_.basis.at(d);
  SpMat out(vdim, n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < vdim; ++r)
      if (B.at(i, off + r) != 0) out.add(r, i, B.at(i, off + r));
  return out;
}

SumModule::SumModule(std::shared_ptr<const ZContext> ctx,
                     std::vector<std::pair<ZModulePtr, int>> parts)
    : ZModule(std::move(ctx)), parts_(std::move(parts)) {
  std::vector<char> in(this->ctx().num_vertices(), 0);
  for (auto& [p, sh] : parts_)
    for (int y : p->support()) in[y] = 1;
  for (int y = 0; y < this->ctx().num_vertices(); ++y)
    if (in[y]) supp_.push_back(y);
}

int SumModule::dim(int d) const {
  int s = 0;
  for (auto& [p, sh] : parts_) s += p->dim(d + sh);
  return s;
}

std::vector<int> SumModule::ambient_slots(int y) const {
  std::vector<int> slots;
  for (auto& [p, sh] : parts_)
    for (int dg : p->ambient_slots(y)) slots.push_back(dg - sh);
  return slots;
}

SpMat SumModule::compute_comp(int y, int d) const {
  SpMat out(0, dim(d));
  int coff = 0, roff = 0;
  std::vector<SpMat> blocks;
  for (auto& [p, sh] : parts_) {
    blocks.push_back(p->comp(y, d + sh));
    roff += blocks.back().rows;
  }
  out.rows = roff;
  out.r.resize(roff);
  roff = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const SpMat& b = blocks[i];
    for (int r = 0; r < b.rows; ++r)
      for (auto& [c, v] : b.r[r]) out.add(roff + r, coff + c, v);
    roff += b.rows;
    coff += parts_[i].first->dim(d + parts_[i].second);
  }
  return out;
}

EmbeddedModule module_Be(std::shared_ptr<const ZContext> ctx) {
  // e is the first representative in the canonical order
  return EmbeddedModule{std::make_shared<SkyscraperModule>(ctx, 0), 0, 0};
}

EmbeddedModule translate(int s, const EmbeddedModule& m) {
  return EmbeddedModule{std::make_shared<TranslatedModule>(s, m.node), m.shift,
                        m.top_degree + 2};
}

EmbeddedModule shifted(EmbeddedModule m, int n) {
  m.shift += n;
  return m;
}

EmbeddedModule section_module(std::shared_ptr<const ZContext> ctx, SectionSpace space,
                              int top_degree) {
  return EmbeddedModule{std::make_shared<SectionZModule>(ctx, std::move(space)), 0,
                        top_degree};
}

// ---------------------------------------------------------------------------

namespace {

// Joint kernels of component maps over up-sets, memoized by bitmask over the
// support.  Bases shrink along the recursion; masks are peeled at the
// smallest support position.
class SupportKernels {
 public:
  SupportKernels(const ZModule& m, int bound) : m_(m) {
    const auto& supp = m.support();
    if (supp.size() > 63) throw UsageError("support too large for kernel masks");
    for (int d = 0; d <= bound; d += 2)
      full_[d] = QMat::identity(m.dim(d));
  }

  const QMat& kernel(std::uint64_t mask, int d) {
    auto key = std::make_pair(mask, d);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (mask == 0) return full_.at(d);
    int bit = 0;
    while (!(mask & (1ull << bit))) ++bit;
    const QMat& prev = kernel(mask & ~(1ull << bit), d);
    const SpMat& c = m_.comp(m_.support()[bit], d);
    // map matrix in prev-coordinates: column i = comp applied to basis row i
    QMat t = sp_mul_basis_transposed(c, prev);
    QMat coeff = kernel_basis(t);  // rows: coefficient vectors
    QMat result = mat_mul(coeff, prev);
    return memo_.emplace(key, std::move(result)).first->second;
  }

  int kernel_dim(std::uint64_t mask, int d) { return kernel(mask, d).rows; }

 private:
  const ZModule& m_;
  std::map<int, QMat> full_;
  std::map<std::pair<std::uint64_t, int>, QMat> memo_;
};

std::uint64_t upset_mask(const ZModule& m, int vertex, bool strict) {
  const auto& g = *m.ctx().graph;
  std::uint64_t mask = 0;
  const auto& supp = m.support();
  for (std::size_t i = 0; i < supp.size(); ++i) {
    if (g.less(vertex, supp[i])) mask |= 1ull << i;
    if (!strict && supp[i] == vertex) mask |= 1ull << i;
  }
  return mask;
}

}  // namespace

std::map<int, int> verma_subquotient(const ZModule& m, int vertex, int bound) {
  SupportKernels ker(m, bound);
  std::map<int, int> h;
  std::uint64_t strict = upset_mask(m, vertex, true);
  std::uint64_t closed = upset_mask(m, vertex, false);
  for (int d = 0; d <= bound; d += 2) {
    int v = ker.kernel_dim(strict, d) - ker.kernel_dim(closed, d);
    if (v) h[d] = v;
  }
  return h;
}

std::map<int, std::map<int, int>> all_subquotients(const ZModule& m, int bound) {
  SupportKernels ker(m, bound);
  std::map<int, std::map<int, int>> out;
  for (int vertex : m.support()) {
    std::uint64_t strict = upset_mask(m, vertex, true);
    std::uint64_t closed = upset_mask(m, vertex, false);
    std::map<int, int> h;
    for (int d = 0; d <= bound; d += 2) {
      int v = ker.kernel_dim(strict, d) - ker.kernel_dim(closed, d);
      if (v) h[d] = v;
    }
    out[vertex] = std::move(h);
  }
  return out;
}

Laurent graded_rank(const std::map<int, int>& hilbert, int nvars, int bound) {
  for (auto& [d, v] : hilbert)
    if (d % 2 && v != 0) throw NotGradedFree("not graded free at this bound");
  Laurent rk;
  std::map<int, long long> gens;
  for (int d = 0; d <= bound; d += 2) {
    long long expected = 0;
    for (auto& [j, a] : gens) expected += a * slice_dim_free(nvars, d - j);
    auto it = hilbert.find(d);
    long long have = it == hilbert.end() ? 0 : it->second;
    long long fresh = have - expected;
    if (fresh < 0) throw NotGradedFree("not graded free at this bound");
    if (fresh > 0) {
      gens[d] = fresh;
      rk.add(d, fresh);
    }
  }
  return rk;
}

CharacterClass character(const EmbeddedModule& m, const ParabolicHecke& ph,
                         int bound) {
  if (bound < 0) bound = m.top_degree + 2;
  if (ph.pd().J != m.node->ctx().pd.J)
    throw UsageError("character: parabolic context mismatch");
  const auto& g = *m.node->ctx().group;
  auto subs = all_subquotients(*m.node, bound);
  ParabolicElt out;
  for (auto& [vertex, h] : subs) {
    if (h.empty()) continue;
    Laurent rk = graded_rank(h, g.rank(), bound);
    int len = m.node->ctx().graph->vertex_lengths[vertex];
    elt_add(out, vertex, v_power(len - m.shift) * rk);
  }
  return CharacterClass{std::move(out), m.shift};
}

EmbeddedModule functor_I(std::shared_ptr<const ZContext> ctxJ,
                         std::shared_ptr<const ZContext> ctx_regular,
                         const std::vector<BmpSummand>& presentation,
                         const std::function<const Sheaf&(int)>& bmp_provider,
                         int bound) {
  if (!ctx_regular->pd.J.empty())
    throw UsageError("functor_I target context must be regular (J empty)");
  const int lwJ = ctxJ->group->length(ctxJ->pd.longest);
  std::vector<std::pair<ZModulePtr, int>> parts;
  int top = 0;
  for (auto& summand : presentation) {
    if (summand.shift % 2)
      throw UsageError("functor_I: presentation shifts must be even");
    const Sheaf& bj = bmp_provider(summand.w_vertex);
    Sheaf pulled = pullback(bj, ctxJ->pd, ctx_regular->graph);
    std::vector<int> all;
    for (int v = 0; v < ctx_regular->graph->num_vertices(); ++v)
      if (!pulled.stalk_gens[v].empty()) all.push_back(v);
    SectionSpace secs = sections(pulled, all, bound);
    parts.emplace_back(std::make_shared<SectionZModule>(ctx_regular, std::move(secs)),
                       summand.shift);
    int lw = ctxJ->graph->vertex_lengths[summand.w_vertex];
    top = std::max(top, 2 * (lw + lwJ) + std::abs(summand.shift));
  }
  // even per-summand shifts live in the sum node; the overall <l(wJ)> is the
  // global shift of the result (any parity is handled at character level)
  auto node = std::make_shared<SumModule>(ctx_regular, std::move(parts));
  return EmbeddedModule{node, lwJ, top};
}

nlohmann::json module_report(const EmbeddedModule& m, const ParabolicHecke& ph,
                             int bound) {
  if (bound < 0) bound = m.top_degree + 2;
  const auto& ctx = m.node->ctx();
  nlohmann::json j;
  nlohmann::json supp = nlohmann::json::array();
  for (int v : m.node->support()) supp.push_back(ctx.graph->vertex_word(v));
  j["support"] = supp;
  j["shift"] = m.shift;
  auto subs = all_subquotients(*m.node, bound);
  nlohmann::json rows = nlohmann::json::array();
  ParabolicElt chr;
  for (auto& [vertex, h] : subs) {
    nlohmann::json r;
    r["vertex"] = ctx.graph->vertex_word(vertex);
    nlohmann::json hj = nlohmann::json::array();
    for (auto& [d, v] : h) hj.push_back({d, v});
    r["hilbert"] = hj;
    Laurent rk = graded_rank(h, ctx.group->rank(), bound);
    r["rank"] = rk.to_json();
    rows.push_back(r);
    if (!rk.is_zero())
      elt_add(chr, vertex, v_power(ctx.graph->vertex_lengths[vertex] - m.shift) * rk);
  }
  j["subquotients"] = rows;
  nlohmann::json cj = nlohmann::json::array();
  for (auto& [v, c] : chr) {
    nlohmann::json t;
    t["element"] = ctx.graph->vertex_word(v);
    t["coeff"] = c.to_json();
    cj.push_back(t);
  }
  j["character"] = cj;
  return j;
}

}  // namespace mg
