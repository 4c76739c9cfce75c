#pragma once

#include <vector>

#include "bifib/poly.hpp"

namespace bifib {

// all monomials of the given total degree, lexicographically descending
std::vector<Mono> monomials_of_degree(int arity, int deg);

// Macaulay-style square matrix for n forms in n variables: rows are the
// multiples x^(mu - d_i e_i) * g_i where i is the first variable with
// mu_i >= d_i; the determinant D factors as Res * D' with D' the minor below,
// so a nonzero D certifies an empty common projective zero locus
std::vector<std::vector<BigInt>> macaulay_matrix(const std::vector<MultiPoly>& g,
                                                 const std::vector<int>& degs, int arity);

// the Macaulay minor: the submatrix indexed by monomials divisible by
// x_i^(d_i) for at least two i; Res = det(M) / det(M') whenever the minor is
// nonzero
std::vector<std::vector<BigInt>> macaulay_minor(const std::vector<MultiPoly>& g,
                                                const std::vector<int>& degs, int arity);

// fraction-free integer determinant
BigInt det_bareiss_int(std::vector<std::vector<BigInt>> m);

// nonzero determinant modulo one of two fixed word-size primes; a nonzero
// residue certifies a nonzero integer determinant
bool det_nonzero_mod(const std::vector<std::vector<BigInt>>& M);

}  // namespace bifib
