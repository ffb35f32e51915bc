#pragma once

// GCD-power matrices: Smith determinants, the Gram matrices
// M_{s,N} = (gcd(m,n)^{2s} / (mn)^s), their spectra, inner products of the
// dilated polylogarithms, and the biorthogonal system psi_n.

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "arith_harmonics/report.hpp"
#include "arith_harmonics/series.hpp"
#include "arith_harmonics/types.hpp"

namespace ah {

/// prod_{k <= N} J_r(k).
BigInt smith_det(unsigned r, std::size_t N);
/// Fraction-free (Bareiss) determinant of the integer matrix (gcd(m,n)^r).
BigInt smith_det_bareiss(unsigned r, std::size_t N);
IdentityReport smith_det_report(unsigned r, std::size_t N);

struct GramSpec {
  ComplexParam s;
  std::size_t N = 0;
  Eigen::MatrixXcd matrix;
};

GramSpec gram_matrix(ComplexParam s, std::size_t N);

/// Determinant by partial-pivot LU.
Complex gram_det(const GramSpec& spec);
/// (N!)^{-2s} prod_k J_{2s}(k) = prod_{k <= N} prod_{p|k} (1 - p^{-2s}).
Complex gram_det_closed_form(ComplexParam s, std::size_t N);
/// Exact closed form for integer two_s = 2s >= 1.
Rational gram_det_exact(unsigned two_s, std::size_t N);
/// LU determinant against the closed form, relative tolerance.
IdentityReport gram_det_report(ComplexParam s, std::size_t N, double rel_tol = 1e-8);

/// Bounds zeta(2s)/zeta(s)^2 and zeta(s)^2/zeta(2s) for real s > 1.
std::pair<double, double> gram_eig_bounds(double s);

/// (lambda_min, lambda_max) of M_{s,N}, real s > 1. Dense symmetric solver
/// up to N = 1000, Lanczos with full reorthogonalization beyond.
std::pair<double, double> gram_extreme_eigs(const GramSpec& spec);
/// Lanczos extreme pair of a symmetric matrix; exposed for testing.
std::pair<double, double> lanczos_extreme_eigs(const Eigen::MatrixXd& a, double tol = 1e-11);

/// Pass iff the extreme eigenvalues lie in the bounds with slack.
IdentityReport gram_eigs_report(double s, std::size_t N, double slack = 1e-9);

/// a^* M a.
Complex gram_quadratic_form(const GramSpec& spec, const Eigen::VectorXcd& a);

// Inner products use the coefficient pairing (f|g) = sum a_n conj(b_n).

struct InnerProduct {
  Complex value;
  double tail_bound = 0.0;  // 0 for closed forms
};

/// (L_s(z^m) | L_s(z^n)) = (lcm/m)^{-s} (lcm/n)^{-conj s} zeta(2 Re s); Re s > 1.
Complex polylog_inner_product(std::uint64_t m, std::uint64_t n, ComplexParam s);
/// Same by summing the pairs k m = l n with k, l <= n_terms.
InnerProduct polylog_inner_product_direct(std::uint64_t m, std::uint64_t n, ComplexParam s, std::size_t n_terms);

/// (M_s(z^m) | L_s(z^n)) with delta = lcm/m:
/// mu(delta) delta^{-s} (lcm/n)^{-conj s} / (zeta(2 Re s) prod_{p|delta} (1 - p^{-2 Re s})).
Complex mobius_polylog_inner_product(std::uint64_t m, std::uint64_t n, ComplexParam s);
InnerProduct mobius_polylog_inner_product_direct(std::uint64_t m, std::uint64_t n, ComplexParam s,
                                                 std::size_t n_terms);

struct BiorthCoeffs {
  std::uint64_t n = 1;
  ComplexParam s;
  std::map<std::uint64_t, Complex> coeffs;  // d -> mu(n/d) (d/n)^s, d | n
};

struct BiorthCoeffsExact {
  std::uint64_t n = 1;
  long s = 0;
  std::map<std::uint64_t, Rational> coeffs;
};

BiorthCoeffs biorth_psi(std::uint64_t n, ComplexParam s);
BiorthCoeffsExact biorth_psi(std::uint64_t n, long s);
/// psi_n as a truncated series of the given order (order >= n).
TruncatedSeries<Rational> biorth_series(std::uint64_t n, long s, std::size_t order);
TruncatedSeries<Complex> biorth_series(std::uint64_t n, ComplexParam s, std::size_t order);

/// alpha = g (x) M_s, the coefficients of g in the system L_s(z^n).
TruncatedSeries<Rational> riesz_expand(const TruncatedSeries<Rational>& g, long s);
TruncatedSeries<Complex> riesz_expand(const TruncatedSeries<Complex>& g, ComplexParam s);
/// sum_n alpha_n L_s(z^n) = alpha (x) L_s.
TruncatedSeries<Rational> riesz_reconstruct(const TruncatedSeries<Rational>& alpha, long s);
TruncatedSeries<Complex> riesz_reconstruct(const TruncatedSeries<Complex>& alpha, ComplexParam s);

}  // namespace ah
