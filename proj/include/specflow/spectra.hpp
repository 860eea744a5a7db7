#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "specflow/multiset.hpp"

namespace specflow {

enum class OperatorKind { Unitary, Hermitian };

// A finite-dimensional stand-in for the perturbation classes around a fixed
// reference operator. The reference's whole spectrum is declared essential
// via essential_set; spectra of perturbed operators are taken in the quotient
// by it, so the reference itself has trivial multiset spectrum.
struct OperatorModel {
    int dimension = 0;
    OperatorKind kind = OperatorKind::Unitary;
    Eigen::MatrixXcd reference;
    CompactSet essential_set;

    static OperatorModel unitary(Eigen::MatrixXcd reference, CompactSet K);
    static OperatorModel hermitian(Eigen::MatrixXcd reference, CompactSet K);
    // Reference I with K = {1}: the common spectral-flow setting.
    static OperatorModel identity_unitary(int dim);

    // Circle(angle)/Line(point) when K is a single point, the quotient space
    // otherwise.
    BasedSpace spectral_space() const;
};

struct SampledOperatorPath {
    OperatorModel model;
    std::vector<double> params;
    std::vector<Eigen::MatrixXcd> matrices;
};

// Eigenvalues of A as a multiset over the model's (quotient) spectral space.
// Unitary matrices go through a dense complex eigensolver followed by radial
// projection onto the circle; Hermitian matrices through the self-adjoint
// solver. Eigenvalues landing in the essential set join the basepoint tail.
Multiset operator_spectrum(const Eigen::MatrixXcd& A, const OperatorModel& model);

// Phi_p of the singular values.
double schatten_norm(const Eigen::MatrixXcd& A, double p);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// d_p(sigma(U), sigma(V)) <= (pi/2) * ||U - V||_p
BoundCheck verify_bhatia_sinha(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V, double p,
                               const OperatorModel& model);

// Optimal eigenvalue matching in l2 against ||N - M||_S2 for normal matrices.
BoundCheck verify_hoffman_wielandt(const Eigen::MatrixXcd& N, const Eigen::MatrixXcd& M);

// d_p(sigma(H), sigma(G)) <= ||H - G||_p for Hermitian pairs (constant 1).
BoundCheck verify_kato_selfadjoint(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& G, double p,
                                   const OperatorModel& model);

struct PathRecipe {
    enum class Kind { ExpLoop, RandomLoop, Segment };
    Kind kind = Kind::ExpLoop;
    Eigen::MatrixXcd generator;        // ExpLoop: Hermitian A in U0 * exp(2*pi*i*t*A)
    std::uint64_t seed = 0;            // RandomLoop
    double amplitude = 0.1;            // RandomLoop perturbation size
    Eigen::MatrixXcd u_start, u_end;   // Segment endpoints

    static PathRecipe exp_loop(Eigen::MatrixXcd generator);
    static PathRecipe random_loop(std::uint64_t seed, double amplitude);
    static PathRecipe segment(Eigen::MatrixXcd u_start, Eigen::MatrixXcd u_end);
};

SampledOperatorPath generate_path(const PathRecipe& recipe, const OperatorModel& model, int steps);

// Seeded sampling helpers for verification campaigns.
Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int dim);
Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int dim, double scale = 1.0);
// V diag(z) V* with Haar V and complex diagonal entries.
Eigen::MatrixXcd random_normal_matrix(std::mt19937_64& rng, int dim, double scale = 1.0);
// Random Hermitian with integer spectrum in [-max_winding, max_winding].
Eigen::MatrixXcd random_integer_spectrum_hermitian(std::mt19937_64& rng, int dim, int max_winding);

}  // namespace specflow
