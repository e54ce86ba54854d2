#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sepvar/combinatorics.hpp"

namespace sepvar {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kDefaultRankTol = 1e-8;
/// Resamples allowed for generic constructions before giving up.
inline constexpr int kRetryBudget = 32;

int numerical_rank(const Matrix& m, double rel_tol = kDefaultRankTol);

/// n square matrices of a common size p.
class MatrixTuple {
public:
    static MatrixTuple make(std::vector<Matrix> matrices);

    int n() const noexcept { return static_cast<int>(matrices_.size()); }
    int p() const noexcept { return static_cast<int>(matrices_.front().rows()); }
    const Matrix& operator[](int i) const { return matrices_.at(static_cast<std::size_t>(i)); }
    std::span<const Matrix> matrices() const noexcept { return matrices_; }

    /// (g A_1 g^-1, ..., g A_n g^-1).
    MatrixTuple conjugated(const Matrix& g) const;
    /// Square root of the summed squared Frobenius norms.
    double norm() const;

private:
    explicit MatrixTuple(std::vector<Matrix> m) : matrices_(std::move(m)) {}
    std::vector<Matrix> matrices_;
};

/// Entries with independent standard-normal real and imaginary parts.
Matrix random_matrix(int rows, int cols, std::mt19937_64& rng);
MatrixTuple random_tuple(int n, int p, std::uint64_t seed);
MatrixTuple random_tuple(int n, int p, std::mt19937_64& rng);

/**
 * Burnside test: the tuple has no common invariant proper subspace iff the
 * words in A_1..A_n (with the identity) span all p x p matrices.
 * Words are grown breadth-first up to length p^2, keeping only new directions.
 */
bool is_simple(const MatrixTuple& a, double tol = kDefaultRankTol);

/// Matrix of X -> (X B_i - B'_i X)_i for X of size p' x p, column-major vectorisation.
struct DMapMatrix {
    Matrix matrix;  // (n p p') x (p p')
    int rank = 0;
    int hom_dim = 0;  // nullity
    int ext_dim = 0;  // cokernel dimension
};

DMapMatrix d_matrix(const MatrixTuple& b, const MatrixTuple& bp, double tol = kDefaultRankTol);

/// Stacked column-major vectorisation of a list of equally sized blocks.
Vector stack(std::span<const Matrix> blocks);

/**
 * Is some nontrivial combination w C + z C' of the p1 x p2 block lists
 * a coboundary X B22 - B11 X? Decided by comparing the rank of [D | vec C | vec C']
 * with rank(D) + 2, after normalising every column group.
 */
bool rank_condition(const MatrixTuple& b11, const MatrixTuple& b22, std::span<const Matrix> c,
                    std::span<const Matrix> cp, double tol = kDefaultRankTol);

/// True iff vec(C) lies outside the image of X -> X B22 - B11 X (the extension does not split).
bool is_nonsplit_extension(const MatrixTuple& b11, const MatrixTuple& b22, std::span<const Matrix> c,
                           double tol = kDefaultRankTol);

/// Traces of all words of length <= 2, used to tell equal-size simple blocks apart.
std::vector<std::complex<double>> trace_fingerprint(const MatrixTuple& a);
bool fingerprints_differ(const MatrixTuple& a, const MatrixTuple& b, double tol = kDefaultRankTol);

/// A tuple together with the block shape it is read in.
class BlockTuple {
public:
    BlockTuple(MatrixTuple tuple, Composition pi);

    const MatrixTuple& tuple() const noexcept { return tuple_; }
    const Composition& pi() const noexcept { return pi_; }

    /// Block (i, j), 1-based, for every matrix of the tuple.
    std::vector<Matrix> block(int i, int j) const;
    MatrixTuple diagonal_block(int i) const;
    /// Every block below the diagonal is below zero_tol in magnitude.
    bool is_upper_triangular(double zero_tol = 1e-12) const;

private:
    MatrixTuple tuple_;
    Composition pi_;
};

/// Assemble a block tuple from per-(i,j) block lists; missing lower blocks are zero.
BlockTuple assemble(const Composition& pi, int n, const std::vector<std::vector<std::vector<Matrix>>>& blocks);

/// Simple, pairwise non-isomorphic diagonal blocks and nonsplit consecutive extensions.
bool is_maximally_general(const BlockTuple& a, double tol = kDefaultRankTol);

BlockTuple construct_max_general(const Composition& pi, int n, std::uint64_t seed, double tol = kDefaultRankTol);

/**
 * Block shape of the second tuple of a pair: block sigma(i) carries the
 * i-th diagonal block of the first, so part j is p_{sigma^-1(j)}.
 */
Composition paired_composition(const Composition& pi, const Permutation& sigma);

/// Positions l where the extra rank test applies: sigma(l+1) = sigma(l)+1, minus n = 2 unit pairs.
std::vector<int> supermaximal_positions(const Composition& pi, const Permutation& sigma, int n);

/**
 * A pair (A, A') with A upper triangular for pi, A' upper triangular for
 * paired_composition(pi, sigma), and diagonal blocks B_i = B'_{sigma(i)}.
 * With supermaximal set both are maximally general and every position from
 * supermaximal_positions fails rank_condition.
 */
std::pair<BlockTuple, BlockTuple> construct_pair(const Composition& pi, const Permutation& sigma, int n,
                                                 std::uint64_t seed, bool supermaximal,
                                                 double tol = kDefaultRankTol);

bool is_supermaximally_general(const BlockTuple& a, const BlockTuple& ap, const Permutation& sigma,
                               double tol = kDefaultRankTol);

/// 0/1 matrix with an identity block at block row i, block column sigma(i).
Matrix scramble_matrix(const Composition& pi, const Permutation& sigma);

/**
 * Residuals ||g(t) A(t) g(t)^-1 - s A' s^-1|| for a two-block pair with
 * swapped diagonal blocks, where A(t) adds t times the superdiagonal block
 * of A' below the diagonal of A and g(t) = t I + I.
 */
std::vector<double> degeneration_check(const BlockTuple& a, const BlockTuple& ap, std::span<const double> t_values,
                                       double tol = kDefaultRankTol);

/// Tr(A_{w_1} ... A_{w_r}); word letters are 1-based.
std::complex<double> trace_word(const MatrixTuple& a, std::span<const int> word);

/// Guard on max_len * n^max_len for the word enumeration.
inline constexpr double kTraceWordBudget = 2.0e7;

/// One word per cyclic class (its lexicographically least rotation), lengths 1..max_len.
std::vector<std::vector<int>> necklace_words(int n, int max_len);

/// Largest |trace difference| over necklace words of length <= max_len.
double trace_discrepancy(const MatrixTuple& a, const MatrixTuple& ap, int max_len);
/// Largest |trace| over the same words in either tuple; at least 1.
double trace_scale(const MatrixTuple& a, const MatrixTuple& ap, int max_len);

}  // namespace sepvar
