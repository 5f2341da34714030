#include "tsylv/random.hpp"

#include "tsylv/errors.hpp"
#include "tsylv/linalg.hpp"

namespace tsylv {

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::gaussian() { return normal_(engine_); }

double RngStream::uniform_pm1() {
  double x = uniform_(engine_);
  while (x == -1.0) x = uniform_(engine_);
  return x;
}

RngStream RngStream::derive(std::uint64_t key) const { return RngStream(mix_seed(seed_, key)); }

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix gauss_matrix(Index rows, Index cols, RngStream& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  }
  return m;
}

Matrix uniform_pm1_matrix(Index rows, Index cols, RngStream& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.uniform_pm1();
  }
  return m;
}

Matrix random_orthogonal(Index n, RngStream& rng) {
  if (n < 1) throw DomainError("random_orthogonal: n must be >= 1");
  const QrFactors f = qr(gauss_matrix(n, rng));
  Matrix q = f.q;
  for (Index j = 0; j < n; ++j) {
    if (f.r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace tsylv
