#include "mg/linalg.hpp"

#include <map>
#include <stdexcept>

namespace mg {

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool QMat::operator==(const QMat& o) const {
  return rows == o.rows && cols == o.cols && a == o.a;
}

std::vector<int> rref_in_place(QMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int p = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = col; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
    Rat inv = 1 / m.at(row, col);
    for (int j = col; j < m.cols; ++j)
      if (m.at(row, j) != 0) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      Rat f = m.at(i, col);
      if (f == 0) continue;
      for (int j = col; j < m.cols; ++j) {
        if (m.at(row, j) != 0) m.at(i, j) -= f * m.at(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank_of(QMat m) { return (int)rref_in_place(m).size(); }

QMat row_space(QMat m) {
  auto pivots = rref_in_place(m);
  QMat out((int)pivots.size(), m.cols);
  for (int i = 0; i < out.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

QMat kernel_basis(const QMat& m) {
  QMat r = m;
  auto pivots = rref_in_place(r);
  std::vector<char> is_pivot(m.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMat k((int)free_cols.size(), m.cols);
  for (int i = 0; i < k.rows; ++i) {
    int f = free_cols[i];
    k.at(i, f) = 1;
    for (int pr = 0; pr < (int)pivots.size(); ++pr)
      if (r.at(pr, f) != 0) k.at(i, pivots[pr]) = -r.at(pr, f);
  }
  return k;
}

QMat mat_mul(const QMat& a, const QMat& b) {
  if (a.cols != b.rows) throw std::logic_error("mat_mul shape mismatch");
  QMat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Rat& v = a.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < b.cols; ++j)
        if (b.at(k, j) != 0) c.at(i, j) += v * b.at(k, j);
    }
  return c;
}

QMat mul_by_basis_transposed(const QMat& a, const QMat& k) {
  if (a.cols != k.cols) throw std::logic_error("shape mismatch");
  QMat c(a.rows, k.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < k.rows; ++j) {
      Rat s = 0;
      for (int l = 0; l < a.cols; ++l)
        if (a.at(i, l) != 0 && k.at(j, l) != 0) s += a.at(i, l) * k.at(j, l);
      c.at(i, j) = s;
    }
  return c;
}

QMat vstack(const QMat& a, const QMat& b) {
  if (a.rows == 0) return b;
  if (b.rows == 0) return a;
  if (a.cols != b.cols) throw std::logic_error("vstack shape mismatch");
  QMat c(a.rows + b.rows, a.cols);
  std::copy(a.a.begin(), a.a.end(), c.a.begin());
  std::copy(b.a.begin(), b.a.end(), c.a.begin() + a.a.size());
  return c;
}

bool express_in_rows(const QMat& rref_basis, const std::vector<int>& pivots,
                     const std::vector<Rat>& vec, std::vector<Rat>* coeffs) {
  std::vector<Rat> v = vec;
  std::vector<Rat> cs(rref_basis.rows);
  for (int i = 0; i < rref_basis.rows; ++i) {
    const Rat& c = v[pivots[i]];
    if (c == 0) continue;
    cs[i] = c;
    for (int j = 0; j < rref_basis.cols; ++j)
      if (rref_basis.at(i, j) != 0) v[j] -= c * rref_basis.at(i, j);
  }
  for (auto& x : v)
    if (x != 0) return false;
  if (coeffs) *coeffs = std::move(cs);
  return true;
}

void SpMat::add(int i, int j, const Rat& v) {
  if (v == 0) return;
  r[i].emplace_back(j, v);
}

QMat SpMat::dense() const {
  QMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (auto& [j, v] : r[i]) m.at(i, j) += v;
  return m;
}

QMat sp_mul_basis_transposed(const SpMat& a, const QMat& k) {
  if (a.cols != k.cols) throw std::logic_error("shape mismatch");
  QMat c(a.rows, k.rows);
  for (int i = 0; i < a.rows; ++i)
    for (auto& [l, v] : a.r[i])
      for (int j = 0; j < k.rows; ++j)
        if (k.at(j, l) != 0) c.at(i, j) += v * k.at(j, l);
  return c;
}

SpMat sp_compose(const SpMat& a, const SpMat& b) {
  if (a.cols != b.rows) throw std::logic_error("sp_compose shape mismatch");
  SpMat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    std::map<int, Rat> acc;
    for (auto& [k, v] : a.r[i])
      for (auto& [j, w] : b.r[k]) acc[j] += v * w;
    for (auto& [j, v] : acc)
      if (v != 0) c.r[i].emplace_back(j, v);
  }
  return c;
}

SpMat sp_vstack(const std::vector<const SpMat*>& blocks) {
  SpMat out;
  for (auto* b : blocks) {
    out.cols = b->cols;
    break;
  }
  for (auto* b : blocks) {
    if (b->cols != out.cols) throw std::logic_error("sp_vstack shape mismatch");
    out.rows += b->rows;
  }
  out.r.reserve(out.rows);
  for (auto* b : blocks)
    for (auto& row : b->r) out.r.push_back(row);
  return out;
}

}  // namespace mg
