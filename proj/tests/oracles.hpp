#pragma once

// Independent reference computations used only by tests. None of these call
// the library's embed or eigensolver-based exponential.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Digits of `index` in a mixed-radix register, most significant site first.
inline std::vector<int> digits(std::size_t index, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (std::size_t s = dims.size(); s-- > 0;) {
    d[s] = static_cast<int>(index % static_cast<std::size_t>(dims[s]));
    index /= static_cast<std::size_t>(dims[s]);
  }
  return d;
}

/// <i| local_on(sites) |j> by enumerating every pair of basis states.
inline CMatrix embed_by_enumeration(const CMatrix& local, const std::vector<int>& ldims,
                                    const std::vector<std::size_t>& sites,
                                    const std::vector<int>& dims) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = digits(i, dims);
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = digits(j, dims);
      bool spectators_match = true;
      for (std::size_t s = 0; s < dims.size(); ++s) {
        bool is_local = false;
        for (auto t : sites) is_local |= (t == s);
        if (!is_local && di[s] != dj[s]) spectators_match = false;
      }
      if (!spectators_match) continue;
      long li = 0, lj = 0;
      for (std::size_t a = 0; a < sites.size(); ++a) {
        li = li * ldims[a] + di[sites[a]];
        lj = lj * ldims[a] + dj[sites[a]];
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = local(li, lj);
    }
  }
  return out;
}

/// exp(a) by scaling and squaring with a truncated Taylor series.
inline CMatrix expm_taylor(const CMatrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.1) {
    scale *= 0.5;
    ++squarings;
  }
  const CMatrix x = a * scale;
  const auto n = a.rows();
  CMatrix term = CMatrix::Identity(n, n);
  CMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// exp(-i theta h)
inline CMatrix unitary_taylor(const CMatrix& h, double theta) {
  return expm_taylor(cplx(0.0, -theta) * h);
}

}  // namespace oracle
