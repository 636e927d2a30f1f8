#ifndef MG_LINALG_HPP
#define MG_LINALG_HPP

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace mg {

using Rat = mpq_class;

// Dense row-major matrix over Q.  Row vectors double as coordinate vectors;
// bases of subspaces are stored as rows.
struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a((std::size_t)r * c) {}
  Rat& at(int i, int j) { return a[(std::size_t)i * cols + j]; }
  const Rat& at(int i, int j) const { return a[(std::size_t)i * cols + j]; }
  static QMat identity(int n);
  bool operator==(const QMat& o) const;
};

// Reduced row echelon form in place; returns pivot column list (rank =
// list size).  Deterministic: first nonzero entry scanning columns in order.
std::vector<int> rref_in_place(QMat& m);

int rank_of(QMat m);
// nonzero rows of the rref: canonical basis of the row space
QMat row_space(QMat m);
// canonical basis of {x : m x^T = 0}, one row per free column
QMat kernel_basis(const QMat& m);

QMat mat_mul(const QMat& a, const QMat& b);
// a * transpose(k): used to restrict an operator to a row-basis
QMat mul_by_basis_transposed(const QMat& a, const QMat& k);
QMat vstack(const QMat& a, const QMat& b);

// Reduce vec against an rref basis; returns true and fills coeffs (length =
// basis rows) iff vec lies in the row space.
bool express_in_rows(const QMat& rref_basis, const std::vector<int>& pivots,
                     const std::vector<Rat>& vec, std::vector<Rat>* coeffs);

// Sparse matrix as sorted (col, value) rows; used for support operators and
// restriction assembly where rows have very few entries.
using SpVec = std::vector<std::pair<int, Rat>>;
struct SpMat {
  int rows = 0, cols = 0;
  std::vector<SpVec> r;

  SpMat() = default;
  SpMat(int rr, int cc) : rows(rr), cols(cc), r(rr) {}
  void add(int i, int j, const Rat& v);
  QMat dense() const;
};

// a * transpose(k) for sparse a and dense k (rows of k = basis vectors)
QMat sp_mul_basis_transposed(const SpMat& a, const QMat& k);
// sparse composition a * b
SpMat sp_compose(const SpMat& a, const SpMat& b);
// vertical stack of sparse blocks
SpMat sp_vstack(const std::vector<const SpMat*>& blocks);

}  // namespace mg

#endif
