#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qjl/rng.hpp"
#include "qjl/types.hpp"

namespace qjl {

/// n iid standard normals, n >= 1.
std::vector<double> sample_gaussians(std::size_t n, RngStream& rng);

/// Complex standard Gaussian: independent N(0,1) real and imaginary parts.
cplx sample_complex_gaussian(RngStream& rng);

/// Haar-random unit vector: 2d real Gaussians forming a complex d-tuple,
/// divided by its l2-norm.
StateVector sample_haar_unit_vector(std::size_t d, RngStream& rng);

/// Haar-random unitary via a complex Ginibre matrix, QR decomposition and a
/// phase correction that makes R's diagonal real positive (plain QR without
/// the correction is not Haar).
Matrix sample_haar_unitary(std::size_t d, RngStream& rng);

/// Sum of squares of n fresh standard normals (one chi-square draw).
double sample_chi_square_sum(std::size_t n, RngStream& rng);

/// Haar-random unitary held in factored form: a chain of Householder
/// reflections, one per dimension, each built from a fresh Haar unit vector
/// (the subgroup decomposition U_d = R(w) diag(1, U_{d-1}) with w the Haar
/// first column). Exactly Haar distributed, O(d^2) to construct and O(d^2)
/// per application; the d x d matrix is never materialized. This is the
/// sampler of choice when an experiment needs thousands of fresh Haar
/// unitaries applied to a handful of states.
class HaarAction {
public:
    HaarAction(std::size_t d, RngStream& rng);

    std::size_t dim() const { return d_; }

    void apply_in_place(std::span<cplx> v) const;
    StateVector apply(const StateVector& v) const;

    /// Dense form, O(d^3); for validation at small d.
    Matrix to_matrix() const;

private:
    std::size_t d_ = 0;
    CVector reflectors_;  // level-k unit vector u_k packed back to back, k = 2..d
    CVector alphas_;      // alphas_[0] = level-1 phase, alphas_[k-1] = alpha_k
};

}  // namespace qjl
