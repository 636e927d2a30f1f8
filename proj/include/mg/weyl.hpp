#ifndef MG_WEYL_HPP
#define MG_WEYL_HPP

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cartan.hpp"

namespace mg {

using Word = std::vector<int>;  // 0-based generator indices

// A finite Weyl group realized by integer matrices acting on the root
// lattice in the simple-root basis.  Immutable after build(); safe to share
// across threads.  Elements are handles (indices) into the enumeration.
class WeylGroup {
 public:
  static constexpr std::size_t kDefaultCap = 200000;

  static std::shared_ptr<const WeylGroup> build(CartanDatum cd,
                                                std::size_t cap = kDefaultCap);

  int rank() const { return cartan_.rank; }
  const CartanDatum& cartan() const { return cartan_; }
  int size() const { return (int)matrices_.size(); }

  int identity() const { return 0; }
  int generator(int s) const;
  int length(int x) const { return lengths_[x]; }
  // matrix entry: coefficient of alpha_i in x(alpha_j)
  int matrix_entry(int x, int i, int j) const { return matrices_[x][i * rank() + j]; }
  const std::vector<int>& matrix(int x) const { return matrices_[x]; }

  int mul(int x, int y) const;  // matrix product lookup
  int right_mul_gen(int x, int s) const { return right_table_[x * rank() + s]; }
  int left_mul_gen(int s, int x) const { return left_table_[x * rank() + s]; }
  int inverse(int x) const { return inverse_[x]; }
  std::vector<long long> act(int x, const std::vector<long long>& v) const;

  bool right_descent(int x, int s) const {
    return length(right_mul_gen(x, s)) < length(x);
  }
  bool left_descent(int s, int x) const {
    return length(left_mul_gen(s, x)) < length(x);
  }

  bool bruhat_leq(int x, int y) const { return leq_[x * size() + y]; }

  // Roots and reflections.  Positive roots are indexed 0..num_positive-1 in a
  // fixed order; reflection t_i is the group element inverting root i.
  int num_positive_roots() const { return (int)pos_roots_.size(); }
  const std::vector<int>& positive_root(int i) const { return pos_roots_[i]; }
  int reflection(int i) const { return reflection_elem_[i]; }
  // index of the positive root of x if x is a reflection
  std::optional<int> reflection_root(int x) const;

  // Words.  word_string uses 1-based generator numbers, "" for the identity.
  Word lex_least_word(int x) const;
  std::string word_string(int x) const;
  int element_from_word(const Word& w) const;         // any word
  int element_from_word_string(const std::string& s) const;  // throws UsageError
  // ["1 2 1" is reduced iff its length equals l(element)]
  bool word_is_reduced(const Word& w) const;

 private:
  WeylGroup() = default;
  void enumerate(std::size_t cap);
  void compute_roots();
  void compute_bruhat();
  int lookup(const std::vector<int>& m) const;

  CartanDatum cartan_;
  std::vector<std::vector<int>> matrices_;
  std::vector<int> lengths_;
  std::vector<int> right_table_, left_table_, inverse_;
  std::vector<int> gen_elem_;
  std::unordered_map<std::string, int> index_;
  std::vector<char> leq_;
  std::vector<std::vector<int>> pos_roots_;
  std::vector<int> reflection_elem_;
  std::unordered_map<int, int> reflection_root_of_elem_;
};

using WeylPtr = std::shared_ptr<const WeylGroup>;

// Parabolic data for a subset J of simple reflections: the subgroup W_J, its
// longest element, and the minimal coset representatives W^J in a canonical
// order (by length, then matrix-lexicographic).
struct ParabolicDatum {
  WeylPtr group;
  std::vector<int> J;         // sorted 0-based generator indices
  std::vector<int> subgroup;  // elements of W_J
  int longest = 0;            // w_J
  std::vector<int> reps;      // W^J element ids, canonical order
  std::vector<int> rep_pos;   // element id -> position in reps, or -1

  int num_vertices() const { return (int)reps.size(); }
  bool in_quotient(int x) const { return rep_pos[x] >= 0; }
  // unique factorization x = x^J * x_J with additive lengths
  std::pair<int, int> factorize(int x) const;
  int quotient(int x) const { return factorize(x).first; }
  int vertex_of(int elem) const;  // position in reps; requires membership
  // vertex-level action: position of (s x)^J for vertex position vx
  int s_dot_vertex(int s, int vx) const;
  // whether s * rep(vx) stays in W^J
  bool s_keeps_quotient(int s, int vx) const;
};

ParabolicDatum build_parabolic(WeylPtr group, std::vector<int> J);

}  // namespace mg

#endif
