#include "tsylv/matrix.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tsylv/errors.hpp"

namespace tsylv {

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index n) {
  if (n < 0 || v.size() != n * n) {
    throw DimensionError("unvec: vector of length " + std::to_string(v.size()) +
                         " cannot be reshaped to " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Index p = b.rows();
  const Index q = b.cols();
  Matrix out(a.rows() * p, a.cols() * q);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * p, j * q, p, q) = a(i, j) * b;
    }
  }
  return out;
}

VecTransposePermutation::VecTransposePermutation(Index n) : n_(n) {
  if (n < 1) throw DomainError("vec_transpose_perm: n must be >= 1");
  source_.resize(static_cast<std::size_t>(n * n));
  // vec(M^T)[i + j n] = M^T(i, j) = M(j, i) = vec(M)[j + i n]
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      source_[static_cast<std::size_t>(i + j * n)] = j + i * n;
    }
  }
}

Vector VecTransposePermutation::apply(const Vector& v) const {
  if (v.size() != size()) throw DimensionError("Pi: vector length mismatch");
  Vector out(v.size());
  for (Index k = 0; k < size(); ++k) out[k] = v[source(k)];
  return out;
}

Matrix VecTransposePermutation::right_multiply(const Matrix& m) const {
  if (m.cols() != size()) throw DimensionError("Pi: column count mismatch");
  // (M Pi) e_k = M (Pi e_k) and Pi e_k = e_{source(k)} since Pi is symmetric.
  Matrix out(m.rows(), m.cols());
  for (Index k = 0; k < size(); ++k) out.col(k) = m.col(source(k));
  return out;
}

Matrix VecTransposePermutation::dense() const {
  Matrix out = Matrix::Zero(size(), size());
  for (Index k = 0; k < size(); ++k) out(k, source(k)) = 1.0;
  return out;
}

VecTransposePermutation vec_transpose_perm(Index n) { return VecTransposePermutation(n); }

Norms norms(const Matrix& m) {
  Norms out;
  if (m.size() == 0) return out;
  out.fro = m.norm();
  out.max = m.cwiseAbs().maxCoeff();
  out.inf = m.cwiseAbs().rowwise().sum().maxCoeff();
  return out;
}

Quotient comp_quotient(const Matrix& numer, const Matrix& denom) {
  if (numer.rows() != denom.rows() || numer.cols() != denom.cols()) {
    throw DimensionError("comp_quotient: shape mismatch");
  }
  Quotient q{Matrix(numer.rows(), numer.cols()),
             BoolMatrix::Constant(numer.rows(), numer.cols(), false)};
  for (Index j = 0; j < numer.cols(); ++j) {
    for (Index i = 0; i < numer.rows(); ++i) {
      const double n = numer(i, j);
      const double d = denom(i, j);
      if (d != 0.0) {
        q.values(i, j) = n / d;
      } else if (n == 0.0) {
        q.values(i, j) = 0.0;
      } else {
        q.values(i, j) = std::copysign(std::numeric_limits<double>::infinity(), n);
        q.infinite(i, j) = true;
      }
    }
  }
  return q;
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  long long rows = -1;
  long long cols = -1;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream header(line);
    if (!(header >> rows >> cols) || rows < 0 || cols < 0) {
      throw FormatError("matrix header must be 'rows cols', got: " + line);
    }
    break;
  }
  if (rows < 0) throw FormatError("matrix input is empty");

  Matrix m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    do {
      if (!std::getline(in, line)) {
        throw FormatError("matrix input ended after " + std::to_string(i) + " of " +
                          std::to_string(rows) + " rows");
      }
    } while (line.find_first_not_of(" \t\r") == std::string::npos);
    std::istringstream row(line);
    for (long long j = 0; j < cols; ++j) {
      std::string token;
      if (!(row >> token)) {
        throw FormatError("row " + std::to_string(i + 1) + " has fewer than " +
                          std::to_string(cols) + " values");
      }
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(token, &used);
      } catch (const std::exception&) {
        throw FormatError("not a number: '" + token + "'");
      }
      if (used != token.size()) throw FormatError("not a number: '" + token + "'");
      if (!std::isfinite(value)) throw FormatError("non-finite matrix entry: '" + token + "'");
      m(i, j) = value;
    }
    std::string extra;
    if (row >> extra) {
      throw FormatError("row " + std::to_string(i + 1) + " has more than " +
                        std::to_string(cols) + " values");
    }
  }
  return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << m.rows() << ' ' << m.cols() << '\n';
  out << std::setprecision(17);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return read_matrix(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_matrix(out, m);
  if (!out) throw FormatError("failed writing " + path.string());
}

}  // namespace tsylv
