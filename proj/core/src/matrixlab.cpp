#include "sepvar/matrixlab.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "sepvar/error.hpp"

namespace sepvar {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::mt19937_64 attempt_rng(std::uint64_t seed, int attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    return std::mt19937_64(seq);
}

// Columns normalised to unit length so the rank test ignores their scale.
Vector unit(const Vector& v) {
    const double n = v.norm();
    return n > 0 ? Vector(v / n) : v;
}

Matrix scaled_dmap(const DMapMatrix& d) {
    if (d.matrix.size() == 0) return d.matrix;
    const double top = Eigen::BDCSVD<Matrix>(d.matrix).singularValues()(0);
    return top > 0 ? Matrix(d.matrix / top) : d.matrix;
}

// (max |trace difference|, max |trace|) over necklace words.
std::pair<double, double> trace_extremes(const MatrixTuple& a, const MatrixTuple& ap, int max_len) {
    require(a.n() == ap.n() && a.p() == ap.p(), "tuples must have the same n and p");
    require(max_len >= 1, "word length must be positive");
    require(static_cast<double>(max_len) * std::pow(static_cast<double>(a.n()), max_len) <= kTraceWordBudget,
            "trace word enumeration exceeds the budget");
    double diff = 0.0, scale = 1.0;
    std::vector<int> word;
    const auto is_necklace = [&word] {
        const std::size_t len = word.size();
        for (std::size_t r = 1; r < len; ++r)
            for (std::size_t i = 0; i < len; ++i) {
                const int x = word[(i + r) % len], y = word[i];
                if (x < y) return false;
                if (x > y) break;
            }
        return true;
    };
    auto walk = [&](auto&& self, const Matrix& left, const Matrix& right) -> void {
        if (!word.empty() && is_necklace()) {
            const auto ta = left.trace(), tb = right.trace();
            diff = std::max(diff, std::abs(ta - tb));
            scale = std::max({scale, std::abs(ta), std::abs(tb)});
        }
        if (static_cast<int>(word.size()) == max_len) return;
        for (int i = 1; i <= a.n(); ++i) {
            word.push_back(i);
            self(self, Matrix(left * a[i - 1]), Matrix(right * ap[i - 1]));
            word.pop_back();
        }
    };
    walk(walk, Matrix::Identity(a.p(), a.p()), Matrix::Identity(a.p(), a.p()));
    return {diff, scale};
}

}  // namespace

int numerical_rank(const Matrix& m, double rel_tol) {
    if (m.size() == 0) return 0;
    const auto sv = Eigen::BDCSVD<Matrix>(m).singularValues();
    if (sv.size() == 0 || !(sv(0) > 0)) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++rank;
    return rank;
}

// ---------------------------------------------------------------------------

MatrixTuple MatrixTuple::make(std::vector<Matrix> matrices) {
    require(!matrices.empty(), "tuple needs at least one matrix");
    const auto p = matrices.front().rows();
    require(p >= 1, "matrices must be nonempty");
    for (const auto& m : matrices) require(m.rows() == p && m.cols() == p, "tuple matrices must be square of one size");
    return MatrixTuple(std::move(matrices));
}

MatrixTuple MatrixTuple::conjugated(const Matrix& g) const {
    require(g.rows() == p() && g.cols() == p(), "conjugating matrix has the wrong size");
    const Matrix g_inv = g.partialPivLu().inverse();
    std::vector<Matrix> out;
    for (const auto& m : matrices_) out.push_back(g * m * g_inv);
    return MatrixTuple(std::move(out));
}

double MatrixTuple::norm() const {
    double s = 0;
    for (const auto& m : matrices_) s += m.squaredNorm();
    return std::sqrt(s);
}

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = {re, im};
        }
    return m;
}

MatrixTuple random_tuple(int n, int p, std::mt19937_64& rng) {
    require(n >= 1 && p >= 1, "need n, p >= 1");
    std::vector<Matrix> ms;
    for (int i = 0; i < n; ++i) ms.push_back(random_matrix(p, p, rng));
    return MatrixTuple::make(std::move(ms));
}

MatrixTuple random_tuple(int n, int p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_tuple(n, p, rng);
}

// ---------------------------------------------------------------------------

bool is_simple(const MatrixTuple& a, double tol) {
    const int p = a.p();
    if (p == 1) return true;
    const int full = p * p;
    const auto as_vec = [p](const Matrix& m) { return Vector(m.reshaped(p * p, 1)); };

    std::vector<Vector> basis;   // orthonormal, for the acceptance gate
    std::vector<Vector> words;   // accepted words, normalised
    const auto accept = [&](const Matrix& w) {
        Vector v = as_vec(w);
        const double len = v.norm();
        if (!(len > 0)) return false;
        v /= len;
        Vector r = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) r -= b * b.dot(r);
        if (r.norm() <= std::sqrt(tol)) return false;
        basis.push_back(r / r.norm());
        words.push_back(v);
        return true;
    };

    std::vector<Matrix> frontier{Matrix::Identity(p, p)};
    accept(frontier.front());
    for (int len = 1; len <= full && !frontier.empty() && static_cast<int>(words.size()) < full; ++len) {
        std::vector<Matrix> next;
        for (const auto& w : frontier)
            for (const auto& m : a.matrices()) {
                Matrix prod = m * w;
                const double norm = prod.norm();
                if (norm > 0) prod /= norm;
                if (accept(prod)) next.push_back(std::move(prod));
            }
        frontier = std::move(next);
    }
    Matrix span(full, static_cast<Eigen::Index>(words.size()));
    for (std::size_t j = 0; j < words.size(); ++j) span.col(static_cast<Eigen::Index>(j)) = words[j];
    return numerical_rank(span, tol) == full;
}

DMapMatrix d_matrix(const MatrixTuple& b, const MatrixTuple& bp, double tol) {
    require(b.n() == bp.n(), "d-map needs tuples with the same n");
    const int p1 = b.p(), p2 = bp.p(), n = b.n();
    const int block_rows = p1 * p2;
    DMapMatrix d;
    d.matrix.resize(n * block_rows, block_rows);
    const Matrix i1 = Matrix::Identity(p1, p1), i2 = Matrix::Identity(p2, p2);
    for (int i = 0; i < n; ++i)
        d.matrix.middleRows(i * block_rows, block_rows) = kron(b[i].transpose(), i2) - kron(i1, bp[i]);
    d.rank = numerical_rank(d.matrix, tol);
    d.hom_dim = block_rows - d.rank;
    d.ext_dim = n * block_rows - d.rank;
    return d;
}

Vector stack(std::span<const Matrix> blocks) {
    Eigen::Index total = 0;
    for (const auto& m : blocks) total += m.size();
    Vector v(total);
    Eigen::Index at = 0;
    for (const auto& m : blocks) {
        v.segment(at, m.size()) = m.reshaped();
        at += m.size();
    }
    return v;
}

namespace {

void check_blocks(const MatrixTuple& b11, const MatrixTuple& b22, std::span<const Matrix> c) {
    require(static_cast<int>(c.size()) == b11.n(), "block list length differs from n");
    for (const auto& m : c)
        require(m.rows() == b11.p() && m.cols() == b22.p(), "off-diagonal block has the wrong shape");
}

}  // namespace

bool rank_condition(const MatrixTuple& b11, const MatrixTuple& b22, std::span<const Matrix> c,
                    std::span<const Matrix> cp, double tol) {
    require(b11.n() == b22.n(), "diagonal blocks need the same n");
    check_blocks(b11, b22, c);
    check_blocks(b11, b22, cp);
    const DMapMatrix d = d_matrix(b22, b11, tol);
    Matrix aug(d.matrix.rows(), d.matrix.cols() + 2);
    aug << scaled_dmap(d), unit(stack(c)), unit(stack(cp));
    return numerical_rank(aug, tol) < d.rank + 2;
}

bool is_nonsplit_extension(const MatrixTuple& b11, const MatrixTuple& b22, std::span<const Matrix> c, double tol) {
    require(b11.n() == b22.n(), "diagonal blocks need the same n");
    check_blocks(b11, b22, c);
    const DMapMatrix d = d_matrix(b22, b11, tol);
    Matrix aug(d.matrix.rows(), d.matrix.cols() + 1);
    aug << scaled_dmap(d), unit(stack(c));
    return numerical_rank(aug, tol) == d.rank + 1;
}

std::vector<std::complex<double>> trace_fingerprint(const MatrixTuple& a) {
    std::vector<std::complex<double>> out;
    for (int i = 0; i < a.n(); ++i) out.push_back(a[i].trace());
    for (int i = 0; i < a.n(); ++i)
        for (int j = i; j < a.n(); ++j) out.push_back((a[i] * a[j]).trace());
    return out;
}

bool fingerprints_differ(const MatrixTuple& a, const MatrixTuple& b, double tol) {
    if (a.p() != b.p() || a.n() != b.n()) return true;
    const auto fa = trace_fingerprint(a), fb = trace_fingerprint(b);
    double diff = 0, scale = 1;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        diff = std::max(diff, std::abs(fa[i] - fb[i]));
        scale = std::max({scale, std::abs(fa[i]), std::abs(fb[i])});
    }
    return diff > tol * scale;
}

// ---------------------------------------------------------------------------

BlockTuple::BlockTuple(MatrixTuple tuple, Composition pi) : tuple_(std::move(tuple)), pi_(std::move(pi)) {
    require(pi_.total() == tuple_.p(), "composition total differs from matrix size");
}

std::vector<Matrix> BlockTuple::block(int i, int j) const {
    require(i >= 1 && i <= pi_.rank() && j >= 1 && j <= pi_.rank(), "block index out of range");
    std::vector<Matrix> out;
    for (const auto& m : tuple_.matrices())
        out.emplace_back(m.block(pi_.offset(i), pi_.offset(j), pi_.part(i), pi_.part(j)));
    return out;
}

MatrixTuple BlockTuple::diagonal_block(int i) const { return MatrixTuple::make(block(i, i)); }

bool BlockTuple::is_upper_triangular(double zero_tol) const {
    for (int i = 2; i <= pi_.rank(); ++i)
        for (int j = 1; j < i; ++j)
            for (const auto& m : block(i, j))
                if (m.cwiseAbs().maxCoeff() >= zero_tol) return false;
    return true;
}

BlockTuple assemble(const Composition& pi, int n, const std::vector<std::vector<std::vector<Matrix>>>& blocks) {
    const int p = pi.total(), k = pi.rank();
    std::vector<Matrix> ms(static_cast<std::size_t>(n), Matrix::Zero(p, p));
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            const auto& list = blocks.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1));
            if (list.empty()) continue;
            for (int t = 0; t < n; ++t)
                ms[static_cast<std::size_t>(t)].block(pi.offset(i), pi.offset(j), pi.part(i), pi.part(j)) =
                    list.at(static_cast<std::size_t>(t));
        }
    return BlockTuple(MatrixTuple::make(std::move(ms)), pi);
}

bool is_maximally_general(const BlockTuple& a, double tol) {
    const int k = a.pi().rank();
    if (!a.is_upper_triangular()) return false;
    std::vector<MatrixTuple> diag;
    for (int i = 1; i <= k; ++i) {
        diag.push_back(a.diagonal_block(i));
        if (!is_simple(diag.back(), tol)) return false;
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (!fingerprints_differ(diag[static_cast<std::size_t>(i)], diag[static_cast<std::size_t>(j)], tol))
                return false;
    for (int i = 1; i < k; ++i)
        if (!is_nonsplit_extension(diag[static_cast<std::size_t>(i - 1)], diag[static_cast<std::size_t>(i)],
                                   a.block(i, i + 1), tol))
            return false;
    return true;
}

namespace {

using BlockGrid = std::vector<std::vector<std::vector<Matrix>>>;

BlockGrid empty_grid(int k) {
    return BlockGrid(static_cast<std::size_t>(k), std::vector<std::vector<Matrix>>(static_cast<std::size_t>(k)));
}

std::vector<Matrix> random_blocks(int n, int rows, int cols, std::mt19937_64& rng) {
    std::vector<Matrix> out;
    for (int t = 0; t < n; ++t) out.push_back(random_matrix(rows, cols, rng));
    return out;
}

// Simple, pairwise distinguishable diagonal blocks, or nothing.
std::optional<std::vector<MatrixTuple>> generic_diagonal(const Composition& pi, int n, std::mt19937_64& rng,
                                                         double tol) {
    std::vector<MatrixTuple> diag;
    for (int i = 1; i <= pi.rank(); ++i) {
        diag.push_back(random_tuple(n, pi.part(i), rng));
        if (!is_simple(diag.back(), tol)) return std::nullopt;
        for (std::size_t j = 0; j + 1 < diag.size(); ++j)
            if (!fingerprints_differ(diag[j], diag.back(), tol)) return std::nullopt;
    }
    return diag;
}

// Fill the upper part of a grid with random blocks; superdiagonal blocks must not split.
bool fill_upper(BlockGrid& grid, const std::vector<MatrixTuple>& diag, int n, std::mt19937_64& rng, double tol,
                bool check_nonsplit) {
    const int k = static_cast<int>(diag.size());
    for (int i = 0; i < k; ++i) {
        grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            std::vector<Matrix>(diag[static_cast<std::size_t>(i)].matrices().begin(),
                                diag[static_cast<std::size_t>(i)].matrices().end());
        for (int j = i + 1; j < k; ++j)
            grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                random_blocks(n, diag[static_cast<std::size_t>(i)].p(), diag[static_cast<std::size_t>(j)].p(), rng);
    }
    if (!check_nonsplit) return true;
    for (int i = 0; i + 1 < k; ++i)
        if (!is_nonsplit_extension(diag[static_cast<std::size_t>(i)], diag[static_cast<std::size_t>(i) + 1],
                                   grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i) + 1], tol))
            return false;
    return true;
}

}  // namespace

BlockTuple construct_max_general(const Composition& pi, int n, std::uint64_t seed, double tol) {
    require(n >= 2, "maximally general tuples need n >= 2");
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        auto rng = attempt_rng(seed, attempt);
        const auto diag = generic_diagonal(pi, n, rng, tol);
        if (!diag) continue;
        auto grid = empty_grid(pi.rank());
        if (!fill_upper(grid, *diag, n, rng, tol, true)) continue;
        return assemble(pi, n, grid);
    }
    throw ResamplingError("could not construct a maximally general tuple for " + pi.label(), seed);
}

Composition paired_composition(const Composition& pi, const Permutation& sigma) {
    require(sigma.size() == pi.rank(), "permutation size differs from composition rank");
    std::vector<int> parts(static_cast<std::size_t>(pi.rank()));
    for (int i = 1; i <= pi.rank(); ++i) parts[static_cast<std::size_t>(sigma(i) - 1)] = pi.part(i);
    return Composition::make(std::move(parts));
}

std::vector<int> supermaximal_positions(const Composition& pi, const Permutation& sigma, int n) {
    require(sigma.size() == pi.rank(), "permutation size differs from composition rank");
    std::vector<int> out;
    for (int l = 1; l < sigma.size(); ++l) {
        if (sigma(l + 1) != sigma(l) + 1) continue;
        if (n == 2 && pi.part(l) == 1 && pi.part(l + 1) == 1) continue;
        out.push_back(l);
    }
    return out;
}

namespace {

bool supermaximal_positions_fail(const BlockTuple& a, const BlockTuple& ap, const Permutation& sigma, int n,
                                 double tol) {
    for (int l : supermaximal_positions(a.pi(), sigma, n)) {
        const auto c = a.block(l, l + 1);
        const auto cp = ap.block(sigma(l), sigma(l) + 1);
        if (rank_condition(a.diagonal_block(l), a.diagonal_block(l + 1), c, cp, tol)) return false;
    }
    return true;
}

}  // namespace

std::pair<BlockTuple, BlockTuple> construct_pair(const Composition& pi, const Permutation& sigma, int n,
                                                 std::uint64_t seed, bool supermaximal, double tol) {
    require(n >= 1, "n must be positive");
    require(sigma.size() == pi.rank(), "permutation size differs from composition rank");
    if (supermaximal) require(n >= 2, "supermaximal pairs need n >= 2");
    const int k = pi.rank();
    const Composition target = paired_composition(pi, sigma);
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        auto rng = attempt_rng(seed, attempt);
        std::vector<MatrixTuple> diag;
        if (supermaximal) {
            auto generic = generic_diagonal(pi, n, rng, tol);
            if (!generic) continue;
            diag = std::move(*generic);
        } else {
            for (int i = 1; i <= k; ++i) diag.push_back(random_tuple(n, pi.part(i), rng));
        }
        std::vector<MatrixTuple> moved(diag.size(), diag.front());
        for (int i = 1; i <= k; ++i) moved[static_cast<std::size_t>(sigma(i) - 1)] = diag[static_cast<std::size_t>(i - 1)];

        auto grid = empty_grid(k), grid_p = empty_grid(k);
        if (!fill_upper(grid, diag, n, rng, tol, supermaximal)) continue;
        if (!fill_upper(grid_p, moved, n, rng, tol, supermaximal)) continue;
        BlockTuple a = assemble(pi, n, grid);
        BlockTuple ap = assemble(target, n, grid_p);
        if (supermaximal && !supermaximal_positions_fail(a, ap, sigma, n, tol)) continue;
        return {std::move(a), std::move(ap)};
    }
    throw ResamplingError("could not construct a pair for " + pi.label() + " " + sigma.one_line(), seed);
}

bool is_supermaximally_general(const BlockTuple& a, const BlockTuple& ap, const Permutation& sigma, double tol) {
    if (sigma.size() != a.pi().rank() || ap.pi() != paired_composition(a.pi(), sigma)) return false;
    if (!is_maximally_general(a, tol) || !is_maximally_general(ap, tol)) return false;
    for (int i = 1; i <= a.pi().rank(); ++i) {
        const auto& x = a.diagonal_block(i);
        const auto& y = ap.diagonal_block(sigma(i));
        double diff = 0;
        for (int t = 0; t < x.n(); ++t) diff = std::max(diff, (x[t] - y[t]).cwiseAbs().maxCoeff());
        if (diff > tol * std::max(1.0, x.norm())) return false;
    }
    return supermaximal_positions_fail(a, ap, sigma, a.tuple().n(), tol);
}

Matrix scramble_matrix(const Composition& pi, const Permutation& sigma) {
    require(sigma.size() == pi.rank(), "permutation size differs from composition rank");
    const Composition cols = paired_composition(pi, sigma);
    Matrix s = Matrix::Zero(pi.total(), pi.total());
    for (int i = 1; i <= pi.rank(); ++i)
        s.block(pi.offset(i), cols.offset(sigma(i)), pi.part(i), pi.part(i)).setIdentity();
    return s;
}

std::vector<double> degeneration_check(const BlockTuple& a, const BlockTuple& ap, std::span<const double> t_values,
                                       double tol) {
    require(a.pi().rank() == 2, "degeneration check needs a two-block composition");
    const Permutation swap = Permutation::make({2, 1});
    require(ap.pi() == paired_composition(a.pi(), swap), "second tuple must use the swapped block sizes");
    require(a.tuple().n() == ap.tuple().n(), "tuples need the same n");
    require(a.is_upper_triangular() && ap.is_upper_triangular(), "both tuples must be block upper triangular");
    for (int i = 1; i <= 2; ++i) {
        const auto x = a.diagonal_block(i), y = ap.diagonal_block(3 - i);
        double diff = 0;
        for (int t = 0; t < x.n(); ++t) diff = std::max(diff, (x[t] - y[t]).cwiseAbs().maxCoeff());
        require(diff <= tol * std::max(1.0, x.norm()), "diagonal blocks are not swapped copies");
    }

    const int p1 = a.pi().part(1), p2 = a.pi().part(2), p = p1 + p2;
    const Matrix s = scramble_matrix(a.pi(), swap);
    const auto lower = ap.block(1, 2);  // p2 x p1
    std::vector<double> out;
    for (double t : t_values) {
        require(t > 0, "t values must be positive");
        Matrix g = Matrix::Identity(p, p), g_inv = Matrix::Identity(p, p);
        g.topLeftCorner(p1, p1) *= t;
        g_inv.topLeftCorner(p1, p1) /= t;
        double sq = 0;
        for (int i = 0; i < a.tuple().n(); ++i) {
            Matrix at = a.tuple()[i];
            at.bottomLeftCorner(p2, p1) += t * lower[static_cast<std::size_t>(i)];
            const Matrix moved = g * at * g_inv;
            const Matrix target = s * ap.tuple()[i] * s.transpose();
            sq += (moved - target).squaredNorm();
        }
        out.push_back(std::sqrt(sq));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::complex<double> trace_word(const MatrixTuple& a, std::span<const int> word) {
    require(!word.empty(), "word must be nonempty");
    Matrix m = Matrix::Identity(a.p(), a.p());
    for (int i : word) {
        require(i >= 1 && i <= a.n(), "word letter out of range");
        m = m * a[i - 1];
    }
    return m.trace();
}

std::vector<std::vector<int>> necklace_words(int n, int max_len) {
    require(n >= 1 && max_len >= 1, "need n, max_len >= 1");
    require(static_cast<double>(max_len) * std::pow(static_cast<double>(n), max_len) <= kTraceWordBudget,
            "trace word enumeration exceeds the budget");
    std::vector<std::vector<int>> out;
    std::vector<int> word;
    auto walk = [&](auto&& self) -> void {
        if (!word.empty()) {
            bool least = true;
            const std::size_t len = word.size();
            for (std::size_t r = 1; r < len && least; ++r)
                for (std::size_t i = 0; i < len; ++i) {
                    const int x = word[(i + r) % len], y = word[i];
                    if (x < y) least = false;
                    if (x != y) break;
                }
            if (least) out.push_back(word);
        }
        if (static_cast<int>(word.size()) == max_len) return;
        for (int i = 1; i <= n; ++i) {
            word.push_back(i);
            self(self);
            word.pop_back();
        }
    };
    walk(walk);
    return out;
}

double trace_discrepancy(const MatrixTuple& a, const MatrixTuple& ap, int max_len) {
    return trace_extremes(a, ap, max_len).first;
}

double trace_scale(const MatrixTuple& a, const MatrixTuple& ap, int max_len) {
    return trace_extremes(a, ap, max_len).second;
}

}  // namespace sepvar
