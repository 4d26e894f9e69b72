#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qjl {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// sqrt(sum |v_i|^2). Empty input gives 0.
double l2_norm(std::span<const cplx> v);
double l2_norm(std::span<const double> v);

/// Dense row-major complex matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    std::span<const cplx> flat() const { return a_; }
    std::span<cplx> flat() { return a_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    CVector a_;
};

/// Square unitary matrices are plain Matrix values; callers that require
/// unitarity check it with unitarity_defect / is_unitary.
using UnitaryMatrix = Matrix;

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix dagger(const Matrix& m);
Matrix conjugate(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
CVector apply(const Matrix& m, std::span<const cplx> v);

double frobenius_norm(const Matrix& m);

/// ||M M^dag - I||_F.
double unitarity_defect(const Matrix& m);

/// unitarity_defect(m) <= 1e-9 * dim, the tolerance every downstream op assumes.
bool is_unitary(const Matrix& m);

/// Complex amplitude vector of a pure state (unit l2-norm when normalized).
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::size_t dim) : amp_(dim) {}
    explicit StateVector(CVector amplitudes) : amp_(std::move(amplitudes)) {}

    /// |index> with 0-based index.
    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amp_.size(); }
    double norm() const { return l2_norm(amp_); }
    bool is_normalized(double tol = 1e-10) const;
    StateVector& normalize();  // throws std::domain_error on the zero vector

    cplx& operator[](std::size_t i) { return amp_[i]; }
    const cplx& operator[](std::size_t i) const { return amp_[i]; }
    CVector& amplitudes() { return amp_; }
    const CVector& amplitudes() const { return amp_; }
    operator std::span<const cplx>() const { return amp_; }

private:
    CVector amp_;
};

/// d1 coordinates split into d1/d2 contiguous blocks of d2 each.
/// Block indices are 1-based in every public interface.
struct BlockStructure {
    std::size_t d1 = 0, d2 = 0, num_blocks = 0;
    BlockStructure(std::size_t d1_, std::size_t d2_);  // requires d2 | d1, d2 < d1
};

/// Sesquilinear inner product, conjugate-linear in the FIRST argument
/// (bra-ket convention). <u|w> = sum conj(u_i) w_i.
cplx inner_product(std::span<const cplx> u, std::span<const cplx> w);

/// Coordinates [(block-1)*d2, block*d2) of v. block is 1-based.
CVector block_project(std::span<const cplx> v, std::size_t block, const BlockStructure& bs);

/// sum |p_i - q_i| for two probability vectors (entries >= 0, sum = 1 +- 1e-9).
double l1_distance(std::span<const double> p, std::span<const double> q);

}  // namespace qjl
