#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <vector>

namespace tsylv {

// All matrices are column-major, so vec(M) is the raw storage order:
// entry (i, j) of an r x c matrix sits at position i + j*r (0-based).
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

Vector vec(const Matrix& m);

/// Inverse of vec for square matrices; throws DimensionError unless
/// v.size() == n*n.
Matrix unvec(const Vector& v, Index n);

/// Kronecker product, block (i, j) = a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// The permutation Pi with Pi * vec(M) = vec(M^T) for n x n M.
///
/// Stored as a source map: (Pi v)[k] = v[source(k)]. The map is an
/// involution, so Pi is symmetric and Pi = Pi^{-1} = Pi^T.
class VecTransposePermutation {
 public:
  explicit VecTransposePermutation(Index n);

  Index n() const noexcept { return n_; }
  Index size() const noexcept { return n_ * n_; }
  Index source(Index k) const { return source_[static_cast<std::size_t>(k)]; }

  Vector apply(const Vector& v) const;
  /// M * Pi, computed as a column permutation.
  Matrix right_multiply(const Matrix& m) const;
  Matrix dense() const;

 private:
  Index n_;
  std::vector<Index> source_;
};

VecTransposePermutation vec_transpose_perm(Index n);

struct Norms {
  double fro = 0.0;
  double max = 0.0;
  double inf = 0.0;  // max absolute row sum; equals the vector inf-norm for a column
};

Norms norms(const Matrix& m);
inline double norm_fro(const Matrix& m) { return m.norm(); }
inline double norm_max(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Entrywise N / D with the componentwise-analysis convention: 0/0 is 0,
/// x/0 for x != 0 is +-inf and flagged.
struct Quotient {
  Matrix values;
  BoolMatrix infinite;

  bool any_infinite() const { return infinite.any(); }
};

Quotient comp_quotient(const Matrix& numer, const Matrix& denom);

// Text format: a "rows cols" header line followed by one line per row of
// whitespace-separated values, written with 17 significant digits.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& m);
Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& m);

}  // namespace tsylv
