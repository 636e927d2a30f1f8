#include "mg/weyl.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "mg/errors.hpp"

namespace mg {

namespace {

std::string matrix_key(const std::vector<int>& m) {
  std::string k;
  k.reserve(m.size() * 3);
  for (int v : m) {
    k += std::to_string(v);
    k += ',';
  }
  return k;
}

std::vector<int> identity_matrix(int r) {
  std::vector<int> m(r * r, 0);
  for (int i = 0; i < r; ++i) m[i * r + i] = 1;
  return m;
}

}  // namespace

std::shared_ptr<const WeylGroup> WeylGroup::build(CartanDatum cd, std::size_t cap) {
  cd.validate();
  auto g = std::shared_ptr<WeylGroup>(new WeylGroup());
  g->cartan_ = std::move(cd);
  g->enumerate(cap);
  g->compute_roots();
  g->compute_bruhat();
  return g;
}

int WeylGroup::generator(int s) const {
  if (s < 0 || s >= rank()) throw UsageError("generator index out of range");
  return gen_elem_[s];
}

int WeylGroup::lookup(const std::vector<int>& m) const {
  auto it = index_.find(matrix_key(m));
  if (it == index_.end()) throw UsageError("matrix is not a group element");
  return it->second;
}

int WeylGroup::mul(int x, int y) const {
  const int r = rank();
  std::vector<int> m(r * r, 0);
  const auto& a = matrices_[x];
  const auto& b = matrices_[y];
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      int aik = a[i * r + k];
      if (aik == 0) continue;
      for (int j = 0; j < r; ++j) m[i * r + j] += aik * b[k * r + j];
    }
  return lookup(m);
}

std::vector<long long> WeylGroup::act(int x, const std::vector<long long>& v) const {
  const int r = rank();
  std::vector<long long> out(r, 0);
  const auto& m = matrices_[x];
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i] += (long long)m[i * r + j] * v[j];
  return out;
}

void WeylGroup::enumerate(std::size_t cap) {
  const int r = rank();
  // generator matrices: s_i(alpha_j) = alpha_j - a[i][j] alpha_i
  std::vector<std::vector<int>> gens(r);
  for (int s = 0; s < r; ++s) {
    auto m = identity_matrix(r);
    for (int j = 0; j < r; ++j) m[s * r + j] -= cartan_.a[s][j];
    gens[s] = std::move(m);
  }

  matrices_.push_back(identity_matrix(r));
  index_[matrix_key(matrices_[0])] = 0;
  lengths_.push_back(0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int s = 0; s < r; ++s) {
      // right multiply: (x * s) columns j -> x(s(alpha_j))
      std::vector<int> m(r * r, 0);
      const auto& a = matrices_[x];
      const auto& b = gens[s];
      for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
          int aik = a[i * r + k];
          if (aik == 0) continue;
          for (int j = 0; j < r; ++j) m[i * r + j] += aik * b[k * r + j];
        }
      auto key = matrix_key(m);
      if (index_.find(key) == index_.end()) {
        if (matrices_.size() >= cap)
          throw CapExceeded("group too large or infinite");
        int id = (int)matrices_.size();
        matrices_.push_back(std::move(m));
        index_[key] = id;
        lengths_.push_back(lengths_[x] + 1);
        queue.push_back(id);
      }
    }
  }

  const int n = size();
  gen_elem_.resize(r);
  for (int s = 0; s < r; ++s) gen_elem_[s] = index_.at(matrix_key(gens[s]));
  right_table_.assign((std::size_t)n * r, -1);
  left_table_.assign((std::size_t)n * r, -1);
  inverse_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int s = 0; s < r; ++s) {
      right_table_[x * r + s] = mul(x, gen_elem_[s]);
      left_table_[x * r + s] = mul(gen_elem_[s], x);
    }
  }
  // inverses: transpose does not work for non-orthogonal realizations, peel
  // right descents instead: inv(x) = s * inv(x s).
  for (int x = 0; x < n; ++x) {
    int y = 0, cur = x;
    while (cur != 0) {
      for (int s = 0; s < r; ++s) {
        int next = right_table_[cur * rank() + s];
        if (lengths_[next] < lengths_[cur]) {
          cur = next;
          y = right_table_[y * rank() + s];
          break;
        }
      }
    }
    inverse_[x] = y;
  }
}

void WeylGroup::compute_roots() {
  const int r = rank();
  // orbit of the simple roots
  std::vector<std::vector<int>> roots;
  std::unordered_map<std::string, int> seen;
  auto add = [&](const std::vector<int>& v) {
    auto key = matrix_key(v);
    if (seen.emplace(key, (int)roots.size()).second) roots.push_back(v);
  };
  for (int s = 0; s < r; ++s) {
    std::vector<int> a(r, 0);
    a[s] = 1;
    add(a);
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (int s = 0; s < r; ++s) {
      std::vector<int> img(r, 0);
      const auto& m = matrices_[gen_elem_[s]];
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) img[a] += m[a * r + b] * roots[i][b];
      add(img);
    }
  }
  for (auto& root : roots) {
    bool pos = true;
    for (int c : root)
      if (c < 0) pos = false;
    if (pos) pos_roots_.push_back(root);
  }
  std::sort(pos_roots_.begin(), pos_roots_.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              int sa = 0, sb = 0;
              for (int v : a) sa += v;
              for (int v : b) sb += v;
              if (sa != sb) return sa < sb;
              return a < b;
            });
  // the reflection with root beta: find it as the unique element fixing the
  // hyperplane; walk the orbit instead: w s w^-1 where w(alpha_s) = beta.
  reflection_elem_.assign(pos_roots_.size(), -1);
  std::unordered_map<std::string, int> root_pos;
  for (int i = 0; i < (int)pos_roots_.size(); ++i)
    root_pos[matrix_key(pos_roots_[i])] = i;
  for (int x = 0; x < size(); ++x) {
    for (int s = 0; s < r; ++s) {
      std::vector<int> img(r, 0);
      const auto& m = matrices_[x];
      for (int a = 0; a < r; ++a) img[a] = m[a * r + s];
      auto it = root_pos.find(matrix_key(img));
      if (it != root_pos.end() && reflection_elem_[it->second] < 0) {
        int t = mul(mul(x, gen_elem_[s]), inverse_[x]);
        reflection_elem_[it->second] = t;
        reflection_root_of_elem_[t] = it->second;
      }
    }
  }
  for (int i = 0; i < (int)pos_roots_.size(); ++i)
    if (reflection_elem_[i] < 0) throw std::logic_error("unreached positive root");
}

std::optional<int> WeylGroup::reflection_root(int x) const {
  auto it = reflection_root_of_elem_.find(x);
  if (it == reflection_root_of_elem_.end()) return std::nullopt;
  return it->second;
}

void WeylGroup::compute_bruhat() {
  const int n = size();
  leq_.assign((std::size_t)n * n, 0);
  // elements in length order: enumerate() pushes by BFS so ids are sorted by
  // length already; rely on that.
  std::vector<int> by_length(n);
  for (int i = 0; i < n; ++i) by_length[i] = i;
  std::stable_sort(by_length.begin(), by_length.end(),
                   [&](int a, int b) { return lengths_[a] < lengths_[b]; });
  for (int y : by_length) {
    if (y == 0) {
      leq_[0] = 1;
      continue;
    }
    int s = -1;
    for (int k = 0; k < rank(); ++k)
      if (right_descent(y, k)) {
        s = k;
        break;
      }
    int ys = right_mul_gen(y, s);
    for (int x = 0; x < n; ++x) {
      if (lengths_[x] > lengths_[y]) continue;
      int xs = right_mul_gen(x, s);
      bool ok;
      if (lengths_[xs] < lengths_[x])
        ok = leq_[xs * n + ys];
      else
        ok = leq_[x * n + ys];
      leq_[x * n + y] = ok;
    }
  }
}

Word WeylGroup::lex_least_word(int x) const {
  Word w;
  while (x != 0) {
    for (int s = 0; s < rank(); ++s) {
      if (left_descent(s, x)) {
        w.push_back(s);
        x = left_mul_gen(s, x);
        break;
      }
    }
  }
  return w;
}

std::string WeylGroup::word_string(int x) const {
  auto w = lex_least_word(x);
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << (w[i] + 1);
  }
  return os.str();
}

int WeylGroup::element_from_word(const Word& w) const {
  int x = 0;
  for (int s : w) {
    if (s < 0 || s >= rank()) throw UsageError("unknown generator in word");
    x = right_mul_gen(x, s);
  }
  return x;
}

int WeylGroup::element_from_word_string(const std::string& str) const {
  Word w;
  std::istringstream is(str);
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t pos = 0;
      int g = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      w.push_back(g - 1);
    } catch (const std::exception&) {
      throw UsageError("unknown generator in word: '" + tok + "'");
    }
  }
  return element_from_word(w);
}

bool WeylGroup::word_is_reduced(const Word& w) const {
  return (int)w.size() == length(element_from_word(w));
}

std::pair<int, int> ParabolicDatum::factorize(int x) const {
  const auto& g = *group;
  int u = x, v = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int s : J) {
      if (g.right_descent(u, s)) {
        u = g.right_mul_gen(u, s);
        v = g.left_mul_gen(s, v);
        progress = true;
        break;
      }
    }
  }
  return {u, v};
}

int ParabolicDatum::vertex_of(int elem) const {
  int p = rep_pos[elem];
  if (p < 0) throw UsageError("element is not a minimal coset representative");
  return p;
}

int ParabolicDatum::s_dot_vertex(int s, int vx) const {
  int sx = group->left_mul_gen(s, reps[vx]);
  return rep_pos[factorize(sx).first];
}

bool ParabolicDatum::s_keeps_quotient(int s, int vx) const {
  return in_quotient(group->left_mul_gen(s, reps[vx]));
}

ParabolicDatum build_parabolic(WeylPtr group, std::vector<int> J) {
  ParabolicDatum pd;
  pd.group = group;
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  for (int s : J)
    if (s < 0 || s >= group->rank()) throw UsageError("parabolic index out of range");
  pd.J = std::move(J);

  const int n = group->size();
  // W_J: closure of J under multiplication
  std::vector<char> in_sub(n, 0);
  in_sub[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int s : pd.J) {
      int y = group->right_mul_gen(x, s);
      if (!in_sub[y]) {
        in_sub[y] = 1;
        queue.push_back(y);
      }
    }
  }
  for (int x = 0; x < n; ++x)
    if (in_sub[x]) pd.subgroup.push_back(x);
  pd.longest = *std::max_element(
      pd.subgroup.begin(), pd.subgroup.end(),
      [&](int a, int b) { return group->length(a) < group->length(b); });

  pd.rep_pos.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    bool minimal = true;
    for (int s : pd.J)
      if (group->right_descent(x, s)) minimal = false;
    if (minimal) pd.reps.push_back(x);
  }
  std::sort(pd.reps.begin(), pd.reps.end(), [&](int a, int b) {
    if (group->length(a) != group->length(b))
      return group->length(a) < group->length(b);
    return group->matrix(a) < group->matrix(b);
  });
  for (int i = 0; i < (int)pd.reps.size(); ++i) pd.rep_pos[pd.reps[i]] = i;
  return pd;
}

}  // namespace mg
