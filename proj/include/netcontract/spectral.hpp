#pragma once

#include <complex>
#include <vector>

#include "netcontract/matrix_core.hpp"

namespace netcontract {

inline constexpr double kDefaultPerronDelta = 1e-8;

// Dominant eigen-triple of the Metzler matrix M + delta * 1 1^T.
struct PerronPair {
  double alpha = 0.0;
  WeightVector right_v;  // unit sum
  WeightVector left_w;   // unit sum
  double delta_used = 0.0;
  // Irreducibility of the unperturbed input.
  bool irreducible = false;
  double right_residual = 0.0;  // ||M' v - alpha v||_inf
  double left_residual = 0.0;   // ||M'^T w - alpha w||_inf
};

// All eigenvalues with multiplicity, sorted by decreasing real part, then
// decreasing imaginary part. Throws NumericalError when the solver does not
// converge or an eigenpair residual exceeds 1e-10 * ||A||.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

// max Re(lambda). Metzler inputs go through the shifted power iteration
// (Perron route) with a fallback to the dense eigensolver.
double spectral_abscissa(const Matrix& a);
double spectral_abscissa_general(const Matrix& a);

// Strong connectivity of the digraph with an edge j -> i whenever i != j
// and A(i, j) != 0. A 1x1 matrix is irreducible.
bool is_irreducible(const Matrix& a);

// Requires a Metzler input. delta == 0 requires an irreducible input.
PerronPair perron_pair(const Matrix& m, double delta = 0.0);

// Optimal diagonal weight for a Metzler matrix:
//   L1   -> the left Perron vector w; mu1(M, w) = alpha(M) when irreducible.
//   Linf -> the norm weight 1/v, i.e. the diagonal of the matrix R in
//           ||x|| = ||R x||_inf. The weight to pass to muinf() is its
//           reciprocal v.
WeightVector lemma1_weights(const Matrix& m, NormFamily family, double delta = 0.0);

// alpha(M + delta 1 1^T) - alpha(M); how much a perturbation costs.
double perturbation_gap(const Matrix& m, double delta);

}  // namespace netcontract
