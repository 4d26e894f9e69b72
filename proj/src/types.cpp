#include "qjl/types.hpp"

#include <cmath>
#include <stdexcept>

#include "lapack_decl.hpp"

namespace qjl {

double l2_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Matrix Matrix::identity(std::size_t d) {
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return c;
    // Row-major product via column-major zgemm: C^T = B^T A^T.
    const int m = static_cast<int>(b.cols());
    const int n = static_cast<int>(a.rows());
    const int k = static_cast<int>(a.cols());
    const cplx one = 1.0, zero = 0.0;
    zgemm_("N", "N", &m, &n, &k, &one, b.data(), &m, a.data(), &k, &zero, c.data(), &m);
    return c;
}

Matrix dagger(const Matrix& m) {
    Matrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

Matrix conjugate(const Matrix& m) {
    Matrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = std::conj(m(i, j));
    return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

CVector apply(const Matrix& m, std::span<const cplx> v) {
    if (m.cols() != v.size()) throw std::invalid_argument("matrix apply: dimension mismatch");
    CVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx acc = 0.0;
        const cplx* row = m.data() + i * m.cols();
        for (std::size_t j = 0; j < m.cols(); ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

double frobenius_norm(const Matrix& m) { return l2_norm(m.flat()); }

double unitarity_defect(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("unitarity_defect: matrix not square");
    const std::size_t d = m.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += m(i, k) * std::conj(m(j, k));
            if (i == j) acc -= 1.0;
            s += std::norm(acc);
        }
    }
    return std::sqrt(s);
}

bool is_unitary(const Matrix& m) {
    return m.square() && unitarity_defect(m) <= 1e-9 * static_cast<double>(m.rows());
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("StateVector::basis: index out of range");
    StateVector v(dim);
    v[index] = 1.0;
    return v;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

StateVector& StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw std::domain_error("StateVector::normalize: zero vector");
    for (cplx& x : amp_) x /= n;
    return *this;
}

BlockStructure::BlockStructure(std::size_t d1_, std::size_t d2_) : d1(d1_), d2(d2_) {
    if (d2 == 0 || d1 == 0 || d2 >= d1 || d1 % d2 != 0)
        throw std::invalid_argument("BlockStructure: need d2 | d1 and d2 < d1");
    num_blocks = d1 / d2;
}

cplx inner_product(std::span<const cplx> u, std::span<const cplx> w) {
    if (u.size() != w.size()) throw std::invalid_argument("inner_product: dimension mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * w[i];
    return acc;
}

CVector block_project(std::span<const cplx> v, std::size_t block, const BlockStructure& bs) {
    if (v.size() != bs.d1) throw std::invalid_argument("block_project: vector has wrong dimension");
    if (block < 1 || block > bs.num_blocks) throw std::out_of_range("block_project: block index out of range");
    const std::size_t off = (block - 1) * bs.d2;
    return CVector(v.begin() + off, v.begin() + off + bs.d2);
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("l1_distance: length mismatch");
    auto check = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) {
            if (v < 0.0) throw std::invalid_argument("l1_distance: negative entry");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-9) throw std::invalid_argument("l1_distance: entries do not sum to 1");
    };
    check(p);
    check(q);
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return s;
}

}  // namespace qjl
