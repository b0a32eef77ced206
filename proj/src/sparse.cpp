#include "swe/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "swe/errors.hpp"

namespace swe {

namespace {

SparseSymMatrix build(int n, std::vector<std::tuple<int, int, double>>& entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                            : std::get<1>(a) < std::get<1>(b);
  });
  return SparseSymMatrix::from_triplets(n, entries);
}

} // namespace

SparseSymMatrix SparseSymMatrix::from_triplets(
    int n, const std::vector<std::tuple<int, int, double>>& entries) {
  std::vector<std::tuple<int, int, double>> sorted = entries;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                            : std::get<1>(a) < std::get<1>(b);
  });

  SparseSymMatrix m;
  m.n_ = n;
  m.row_ptr_.assign(n + 1, 0);
  m.col_.reserve(sorted.size());
  m.val_.reserve(sorted.size());

  int prev_i = -1, prev_j = -1;
  for (const auto& [i, j, v] : sorted) {
    if (i < 0 || i >= n || j < 0 || j >= n) throw InputError("sparse triplet index out of range");
    if (i == prev_i && j == prev_j) {
      m.val_.back() += v;
      continue;
    }
    m.col_.push_back(j);
    m.val_.push_back(v);
    ++m.row_ptr_[i + 1];
    prev_i = i;
    prev_j = j;
  }
  for (int i = 0; i < n; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  return m;
}

SparseSymMatrix SparseSymMatrix::pattern(int n,
                                         const std::vector<std::pair<int, int>>& entries) {
  std::vector<std::tuple<int, int, double>> trip;
  trip.reserve(entries.size() * 2);
  for (const auto& [i, j] : entries) {
    trip.emplace_back(i, j, 0.0);
    if (i != j) trip.emplace_back(j, i, 0.0);
  }
  return build(n, trip);
}

int SparseSymMatrix::find(int i, int j) const {
  const int lo = row_ptr_[i], hi = row_ptr_[i + 1];
  auto it = std::lower_bound(col_.begin() + lo, col_.begin() + hi, j);
  if (it != col_.begin() + hi && *it == j) return static_cast<int>(it - col_.begin());
  return -1;
}

double SparseSymMatrix::coeff(int i, int j) const {
  const int k = find(i, j);
  return k < 0 ? 0.0 : val_[k];
}

void SparseSymMatrix::set_zero() { std::fill(val_.begin(), val_.end(), 0.0); }

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += val_[k] * x[col_[k]];
    y[i] = s;
  }
}

std::vector<double> SparseSymMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    const int k = find(i, i);
    if (k >= 0) d[i] = val_[k];
  }
  return d;
}

void SparseSymMatrix::add_scaled(const SparseSymMatrix& other, double s) {
  if (other.n_ != n_ || other.col_ != col_ || other.row_ptr_ != row_ptr_)
    throw InputError("add_scaled: sparsity patterns differ");
  for (std::size_t k = 0; k < val_.size(); ++k) val_[k] += s * other.val_[k];
}

void SparseSymMatrix::scale(double s) {
  for (double& v : val_) v *= s;
}

double SparseSymMatrix::symmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const int j = col_[k];
      if (j < i) continue;
      const int kt = find(j, i);
      const double vt = kt < 0 ? 0.0 : val_[kt];
      worst = std::max(worst, std::abs(val_[k] - vt));
    }
  return worst;
}

double SparseSymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : val_) m = std::max(m, std::abs(v));
  return m;
}

void SparseSymMatrix::eliminate_symmetric(int k) {
  for (int p = row_ptr_[k]; p < row_ptr_[k + 1]; ++p) {
    const int j = col_[p];
    val_[p] = (j == k) ? 1.0 : 0.0;
    if (j != k) {
      const int q = find(j, k);
      if (q >= 0) val_[q] = 0.0;
    }
  }
}

} // namespace swe
