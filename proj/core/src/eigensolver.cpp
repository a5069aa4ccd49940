#include "lll/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "lll/errors.hpp"

namespace lll {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Largest-magnitude component positive; makes eigenvector output reproducible.
void fix_sign(Eigen::Ref<Vector> v) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0) v = -v;
}

EigenPair make_pair(const SparseSymmetricOperator& op, double value, const Vector& v) {
    EigenPair p;
    p.value = value;
    p.vector.tag = op.tag();
    p.vector.coeffs.assign(v.data(), v.data() + v.size());
    return p;
}

std::vector<EigenPair> dense_lowest(const SparseSymmetricOperator& op, std::size_t count) {
    const auto n = static_cast<Eigen::Index>(op.dim());
    const auto dense = op.to_dense();
    const Matrix a = Eigen::Map<const Matrix>(dense.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", NAN);
    std::vector<EigenPair> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Vector v = solver.eigenvectors().col(static_cast<Eigen::Index>(i));
        fix_sign(v);
        out.push_back(make_pair(op, solver.eigenvalues()[static_cast<Eigen::Index>(i)], v));
    }
    return out;
}

class BlockLanczos {
public:
    BlockLanczos(const SparseSymmetricOperator& op, std::size_t count, const EigenOptions& options)
        : op_(op),
          csr_(op.csr()),
          n_(static_cast<Eigen::Index>(op.dim())),
          count_(static_cast<Eigen::Index>(count)),
          options_(options),
          rng_(options.seed) {
        block_ = static_cast<Eigen::Index>(std::min(std::max(options.block_size, count), op.dim()));
        const auto wanted = std::max<std::size_t>(options.max_basis, 3 * static_cast<std::size_t>(block_) + count);
        kmax_ = static_cast<Eigen::Index>(std::min(wanted, op.dim()));
        basis_.resize(n_, kmax_);
        image_.resize(n_, kmax_);
        projected_ = Matrix::Zero(kmax_, kmax_);
        norm_ = std::max(op.norm_bound(), 1e-300);
    }

    std::vector<EigenPair> run() {
        Matrix pending = random_block(block_);
        double worst = INFINITY;
        for (std::size_t restart = 0; restart <= options_.max_restarts; ++restart) {
            while (size_ < kmax_) {
                const Eigen::Index first = size_;
                append(pending);
                if (size_ == first) {
                    // Invariant subspace reached; continue with fresh directions.
                    pending = random_block(block_);
                    append(pending);
                    if (size_ == first) break;
                }
                pending = image_.middleCols(first, size_ - first);
                if (size_ >= count_ && rayleigh_ritz(worst)) return collect();
            }
            if (size_ >= count_ && rayleigh_ritz(worst)) return collect();
            if (size_ == n_) break;  // full space, nothing more to gain
            pending = thick_restart();
        }
        throw ConvergenceError("block Lanczos did not converge for sector (N=" + std::to_string(op_.tag().particles) +
                                   ", L=" + std::to_string(op_.tag().angular_momentum) + ")",
                               worst);
    }

private:
    Vector apply(const Eigen::Ref<const Vector>& x) const {
        Vector y(n_);
        csr_.multiply(std::span<const double>(x.data(), static_cast<std::size_t>(n_)),
                      std::span<double>(y.data(), static_cast<std::size_t>(n_)));
        return y;
    }

    Matrix random_block(Eigen::Index width) {
        std::normal_distribution<double> normal;
        Matrix m(n_, width);
        for (Eigen::Index j = 0; j < width; ++j)
            for (Eigen::Index i = 0; i < n_; ++i) m(i, j) = normal(rng_);
        return m;
    }

    // Orthogonalizes columns against the basis (two Gram-Schmidt passes) and appends survivors.
    void append(Matrix block) {
        for (Eigen::Index j = 0; j < block.cols() && size_ < kmax_; ++j) {
            Vector x = block.col(j);
            const double original = x.norm();
            if (original == 0.0) continue;
            for (int pass = 0; pass < 2; ++pass) {
                if (size_ > 0) x -= basis_.leftCols(size_) * (basis_.leftCols(size_).transpose() * x);
            }
            const double remaining = x.norm();
            if (remaining < 1e-10 * original) continue;
            x /= remaining;
            basis_.col(size_) = x;
            image_.col(size_) = apply(x);
            const Vector column = basis_.leftCols(size_ + 1).transpose() * image_.col(size_);
            projected_.col(size_).head(size_ + 1) = column;
            projected_.row(size_).head(size_ + 1) = column.transpose();
            ++size_;
        }
    }

    bool rayleigh_ritz(double& worst) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(projected_.topLeftCorner(size_, size_));
        ritz_values_ = solver.eigenvalues();
        ritz_vectors_ = solver.eigenvectors();
        worst = 0.0;
        for (Eigen::Index i = 0; i < count_; ++i) {
            const Vector s = ritz_vectors_.col(i);
            const Vector r = image_.leftCols(size_) * s - ritz_values_[i] * (basis_.leftCols(size_) * s);
            worst = std::max(worst, r.norm() / norm_);
        }
        return worst <= options_.tolerance;
    }

    Matrix thick_restart() {
        const Eigen::Index keep = std::min(size_, std::max(count_ + block_, 2 * count_));
        const Matrix s = ritz_vectors_.leftCols(keep);
        const Matrix v = basis_.leftCols(size_) * s;
        const Matrix av = image_.leftCols(size_) * s;
        Matrix residuals(n_, block_);
        for (Eigen::Index i = 0; i < block_; ++i) residuals.col(i) = av.col(i) - ritz_values_[i] * v.col(i);
        basis_.leftCols(keep) = v;
        image_.leftCols(keep) = av;
        projected_.setZero();
        for (Eigen::Index i = 0; i < keep; ++i) projected_(i, i) = ritz_values_[i];
        size_ = keep;
        return residuals;
    }

    std::vector<EigenPair> collect() const {
        std::vector<EigenPair> out;
        out.reserve(static_cast<std::size_t>(count_));
        for (Eigen::Index i = 0; i < count_; ++i) {
            Vector v = basis_.leftCols(size_) * ritz_vectors_.col(i);
            v.normalize();
            fix_sign(v);
            out.push_back(make_pair(op_, ritz_values_[i], v));
        }
        return out;
    }

    const SparseSymmetricOperator& op_;
    const CsrMatrix& csr_;
    Eigen::Index n_;
    Eigen::Index count_;
    EigenOptions options_;
    std::mt19937_64 rng_;
    Eigen::Index block_ = 1;
    Eigen::Index kmax_ = 1;
    Eigen::Index size_ = 0;
    double norm_ = 1.0;
    Matrix basis_;
    Matrix image_;
    Matrix projected_;  // basis^T A basis
    Vector ritz_values_;
    Matrix ritz_vectors_;
};

}  // namespace

std::vector<EigenPair> lowest_eigenpairs(const SparseSymmetricOperator& op, std::size_t count,
                                         const EigenOptions& options) {
    if (count < 1 || count > op.dim())
        throw InputError("lowest_eigenpairs: count must be in [1, dim], got " + std::to_string(count) +
                         " for dim " + std::to_string(op.dim()));
    const bool dense = options.method == EigenMethod::dense ||
                       (options.method == EigenMethod::automatic && op.dim() <= options.dense_threshold);
    if (dense) return dense_lowest(op, count);
    return BlockLanczos(op, count, options).run();
}

double eigen_residual(const SparseSymmetricOperator& op, const EigenPair& pair) {
    const auto& x = pair.vector.coeffs;
    std::vector<double> y(x.size());
    op.csr().multiply(x, y);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - pair.value * x[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

}  // namespace lll
