#ifndef SWE_SPARSE_HPP
#define SWE_SPARSE_HPP

#include <span>
#include <tuple>
#include <vector>

namespace swe {

/// Symmetric sparse matrix in CSR form. Both triangles are stored so that
/// matrix-vector products and symmetric constraint elimination stay simple;
/// symmetry is a checked invariant, not a storage trick.
class SparseSymMatrix {
public:
  SparseSymMatrix() = default;

  /// Builds from (i, j, value) triplets; duplicate entries are summed.
  static SparseSymMatrix from_triplets(int n,
                                       const std::vector<std::tuple<int, int, double>>& entries);

  /// Builds the sparsity pattern only (all values zero). `entries` lists
  /// (i, j) index pairs; both (i,j) and (j,i) are inserted.
  static SparseSymMatrix pattern(int n, const std::vector<std::pair<int, int>>& entries);

  int dimension() const { return n_; }
  std::span<const int> row_ptr() const { return row_ptr_; }
  std::span<const int> col_index() const { return col_; }
  std::span<const double> values() const { return val_; }

  /// Index into values() of entry (i, j); -1 if outside the pattern.
  int find(int i, int j) const;

  double coeff(int i, int j) const; // 0 outside the pattern
  double& value_at(int k) { return val_[k]; }
  void set_zero();

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;

  std::vector<double> diagonal() const;

  /// this += s * other; requires identical patterns.
  void add_scaled(const SparseSymMatrix& other, double s);
  void scale(double s);

  /// max |A_ij - A_ji| over the pattern.
  double symmetry_defect() const;
  /// max |A_ij| over the pattern.
  double max_abs() const;

  /// Used by constraint elimination: zero row/column k, unit diagonal.
  void eliminate_symmetric(int k);

private:
  int n_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_;
  std::vector<double> val_;
};

} // namespace swe

#endif
