#include "specflow/spectra.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "specflow/assignment.hpp"
#include "specflow/errors.hpp"

namespace specflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using Complex = std::complex<double>;

void check_dimension(const Eigen::MatrixXcd& A, int dim, const char* who) {
    if (A.rows() != dim || A.cols() != dim)
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

double unitarity_defect(const Eigen::MatrixXcd& U) {
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(U.rows(), U.cols());
    return (U.adjoint() * U - I).norm();
}

double hermiticity_defect(const Eigen::MatrixXcd& H) { return (H - H.adjoint()).norm(); }

void require_unitary(const Eigen::MatrixXcd& U, double tol, const char* who) {
    if (U.rows() != U.cols()) throw std::invalid_argument(std::string(who) + ": not square");
    if (unitarity_defect(U) > tol)
        throw std::invalid_argument(std::string(who) + ": matrix is not unitary");
}

void require_hermitian(const Eigen::MatrixXcd& H, double tol, const char* who) {
    if (H.rows() != H.cols()) throw std::invalid_argument(std::string(who) + ": not square");
    if (hermiticity_defect(H) > tol)
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
}

void require_normal(const Eigen::MatrixXcd& A, const char* who) {
    if (A.rows() != A.cols()) throw std::invalid_argument(std::string(who) + ": not square");
    if ((A.adjoint() * A - A * A.adjoint()).norm() > 1e-8)
        throw NormalityError(std::string(who) + ": matrix is not normal");
}

std::vector<Complex> complex_eigenvalues(const Eigen::MatrixXcd& A, const char* who) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericError(std::string(who) + ": eigensolver failed");
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + A.rows());
    return out;
}

std::vector<double> real_eigenvalues(const Eigen::MatrixXcd& H, const char* who) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success)
        throw NumericError(std::string(who) + ": eigensolver failed");
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + H.rows());
    return out;
}

// exp(i*theta*H) for Hermitian H, through the spectral decomposition.
Eigen::MatrixXcd hermitian_phase_exp(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& es,
                                     double theta) {
    const auto& V = es.eigenvectors();
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
        phases[k] = std::polar(1.0, theta * es.eigenvalues()[k]);
    return V * phases.asDiagonal() * V.adjoint();
}

}  // namespace

OperatorModel OperatorModel::unitary(Eigen::MatrixXcd reference, CompactSet K) {
    require_unitary(reference, 1e-10, "OperatorModel::unitary");
    if (!K.circular())
        throw std::invalid_argument("OperatorModel::unitary: essential set must be circular");
    OperatorModel m{static_cast<int>(reference.rows()), OperatorKind::Unitary,
                    std::move(reference), std::move(K)};
    for (const Complex& z : complex_eigenvalues(m.reference, "OperatorModel::unitary"))
        if (m.essential_set.distance_to(wrap_angle(std::arg(z))) > kTolBase)
            throw std::invalid_argument(
                "OperatorModel::unitary: reference spectrum leaves the essential set");
    return m;
}

OperatorModel OperatorModel::hermitian(Eigen::MatrixXcd reference, CompactSet K) {
    require_hermitian(reference, 1e-10, "OperatorModel::hermitian");
    if (K.circular())
        throw std::invalid_argument("OperatorModel::hermitian: essential set must be on the line");
    OperatorModel m{static_cast<int>(reference.rows()), OperatorKind::Hermitian,
                    std::move(reference), std::move(K)};
    for (double x : real_eigenvalues(m.reference, "OperatorModel::hermitian"))
        if (m.essential_set.distance_to(x) > kTolBase)
            throw std::invalid_argument(
                "OperatorModel::hermitian: reference spectrum leaves the essential set");
    return m;
}

OperatorModel OperatorModel::identity_unitary(int dim) {
    return unitary(Eigen::MatrixXcd::Identity(dim, dim), CompactSet::point_on_circle(0.0));
}

BasedSpace OperatorModel::spectral_space() const {
    if (kind == OperatorKind::Unitary) {
        if (essential_set.is_single_point())
            return BasedSpace::circle(essential_set.pieces()[0].first);
        return BasedSpace::quotient_circle(essential_set);
    }
    if (essential_set.is_single_point())
        return BasedSpace::line(essential_set.pieces()[0].first);
    return BasedSpace::quotient_line(essential_set);
}

Multiset operator_spectrum(const Eigen::MatrixXcd& A, const OperatorModel& model) {
    check_dimension(A, model.dimension, "operator_spectrum");
    std::vector<std::pair<double, int>> pts;
    if (model.kind == OperatorKind::Unitary) {
        require_normal(A, "operator_spectrum");
        for (const Complex& z : complex_eigenvalues(A, "operator_spectrum")) {
            const double r = std::abs(z);
            if (std::abs(r - 1.0) > 1e-8)
                throw NumericError("operator_spectrum: eigenvalue off the unit circle");
            pts.emplace_back(wrap_angle(std::arg(z)), 1);
        }
    } else {
        require_hermitian(A, 1e-10, "operator_spectrum");
        for (double x : real_eigenvalues(A, "operator_spectrum")) pts.emplace_back(x, 1);
    }
    return Multiset(model.spectral_space(), std::move(pts));
}

double schatten_norm(const Eigen::MatrixXcd& A, double p) {
    const NormSpec spec = NormSpec::schatten(p);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    const Eigen::VectorXd& sv = svd.singularValues();
    std::vector<double> s(sv.data(), sv.data() + sv.size());
    return eval_norm(spec, s);
}

BoundCheck verify_bhatia_sinha(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V, double p,
                               const OperatorModel& model) {
    require_unitary(U, 1e-8, "verify_bhatia_sinha");
    require_unitary(V, 1e-8, "verify_bhatia_sinha");
    BoundCheck out;
    out.lhs = distance_phi(operator_spectrum(U, model), operator_spectrum(V, model),
                           NormSpec::schatten(p));
    out.rhs = 0.5 * std::numbers::pi * schatten_norm(U - V, p);
    out.holds = out.lhs <= out.rhs + 1e-9;
    return out;
}

BoundCheck verify_hoffman_wielandt(const Eigen::MatrixXcd& N, const Eigen::MatrixXcd& M) {
    require_normal(N, "verify_hoffman_wielandt");
    require_normal(M, "verify_hoffman_wielandt");
    if (N.rows() != M.rows())
        throw std::invalid_argument("verify_hoffman_wielandt: dimension mismatch");
    const std::vector<Complex> lam = complex_eigenvalues(N, "verify_hoffman_wielandt");
    const std::vector<Complex> mu = complex_eigenvalues(M, "verify_hoffman_wielandt");
    const std::size_t d = lam.size();
    CostMatrix costs(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) costs.at(i, j) = std::norm(lam[i] - mu[j]);
    BoundCheck out;
    out.lhs = std::sqrt(solve_assignment(costs).total_cost);
    out.rhs = schatten_norm(N - M, 2.0);
    out.holds = out.lhs <= out.rhs + 1e-9;
    return out;
}

BoundCheck verify_kato_selfadjoint(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& G, double p,
                                   const OperatorModel& model) {
    require_hermitian(H, 1e-10, "verify_kato_selfadjoint");
    require_hermitian(G, 1e-10, "verify_kato_selfadjoint");
    BoundCheck out;
    out.lhs = distance_phi(operator_spectrum(H, model), operator_spectrum(G, model),
                           NormSpec::schatten(p));
    out.rhs = schatten_norm(H - G, p);
    out.holds = out.lhs <= out.rhs + 1e-9;
    return out;
}

PathRecipe PathRecipe::exp_loop(Eigen::MatrixXcd generator) {
    PathRecipe r;
    r.kind = Kind::ExpLoop;
    r.generator = std::move(generator);
    return r;
}

PathRecipe PathRecipe::random_loop(std::uint64_t seed, double amplitude) {
    PathRecipe r;
    r.kind = Kind::RandomLoop;
    r.seed = seed;
    r.amplitude = amplitude;
    return r;
}

PathRecipe PathRecipe::segment(Eigen::MatrixXcd u_start, Eigen::MatrixXcd u_end) {
    PathRecipe r;
    r.kind = Kind::Segment;
    r.u_start = std::move(u_start);
    r.u_end = std::move(u_end);
    return r;
}

SampledOperatorPath generate_path(const PathRecipe& recipe, const OperatorModel& model,
                                  int steps) {
    if (steps < 2) throw std::invalid_argument("generate_path: need at least 2 steps");
    SampledOperatorPath path;
    path.model = model;
    path.params.resize(steps);
    for (int j = 0; j < steps; ++j) path.params[j] = static_cast<double>(j) / (steps - 1);
    path.matrices.reserve(steps);

    switch (recipe.kind) {
        case PathRecipe::Kind::ExpLoop: {
            if (model.kind != OperatorKind::Unitary)
                throw std::invalid_argument("generate_path: exp_loop needs a unitary model");
            require_hermitian(recipe.generator, 1e-10, "generate_path(exp_loop)");
            check_dimension(recipe.generator, model.dimension, "generate_path(exp_loop)");
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(recipe.generator);
            for (double t : path.params)
                path.matrices.push_back(model.reference * hermitian_phase_exp(es, kTwoPi * t));
            break;
        }
        case PathRecipe::Kind::RandomLoop: {
            if (model.kind != OperatorKind::Unitary)
                throw std::invalid_argument("generate_path: random_loop needs a unitary model");
            std::mt19937_64 rng(recipe.seed);
            const Eigen::MatrixXcd A =
                random_integer_spectrum_hermitian(rng, model.dimension, 2);
            const Eigen::MatrixXcd B = random_hermitian(rng, model.dimension, recipe.amplitude);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esA(A), esB(B);
            for (double t : path.params) {
                const Eigen::MatrixXcd wobble = hermitian_phase_exp(esB, std::sin(kTwoPi * t));
                path.matrices.push_back(wobble * model.reference * hermitian_phase_exp(esA, kTwoPi * t));
            }
            break;
        }
        case PathRecipe::Kind::Segment: {
            check_dimension(recipe.u_start, model.dimension, "generate_path(segment)");
            check_dimension(recipe.u_end, model.dimension, "generate_path(segment)");
            if (model.kind == OperatorKind::Hermitian) {
                require_hermitian(recipe.u_start, 1e-10, "generate_path(segment)");
                require_hermitian(recipe.u_end, 1e-10, "generate_path(segment)");
                for (double t : path.params)
                    path.matrices.push_back((1.0 - t) * recipe.u_start + t * recipe.u_end);
                break;
            }
            require_unitary(recipe.u_start, 1e-10, "generate_path(segment)");
            require_unitary(recipe.u_end, 1e-10, "generate_path(segment)");
            // principal logarithm of U_start^* U_end through the Schur form
            const Eigen::MatrixXcd W = recipe.u_start.adjoint() * recipe.u_end;
            Eigen::ComplexSchur<Eigen::MatrixXcd> schur(W);
            if (schur.info() != Eigen::Success)
                throw NumericError("generate_path(segment): Schur decomposition failed");
            const Eigen::MatrixXcd& Q = schur.matrixU();
            Eigen::VectorXd angles(model.dimension);
            for (int k = 0; k < model.dimension; ++k)
                angles[k] = std::arg(schur.matrixT()(k, k));
            for (double t : path.params) {
                Eigen::VectorXcd phases(model.dimension);
                for (int k = 0; k < model.dimension; ++k)
                    phases[k] = std::polar(1.0, t * angles[k]);
                path.matrices.push_back(recipe.u_start * (Q * phases.asDiagonal() * Q.adjoint()));
            }
            break;
        }
    }
    return path;
}

Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd G(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ();
    const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix the phase ambiguity so the distribution is Haar
    for (int k = 0; k < dim; ++k) {
        const Complex r = R(k, k);
        Q.col(k) *= (std::abs(r) > 0.0) ? r / std::abs(r) : Complex(1.0, 0.0);
    }
    return Q;
}

Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int dim, double scale) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd G(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
    return scale * 0.5 * (G + G.adjoint());
}

Eigen::MatrixXcd random_normal_matrix(std::mt19937_64& rng, int dim, double scale) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::MatrixXcd V = random_unitary(rng, dim);
    Eigen::VectorXcd z(dim);
    for (int k = 0; k < dim; ++k) z[k] = scale * Complex(gauss(rng), gauss(rng));
    return V * z.asDiagonal() * V.adjoint();
}

Eigen::MatrixXcd random_integer_spectrum_hermitian(std::mt19937_64& rng, int dim,
                                                   int max_winding) {
    std::uniform_int_distribution<int> winding(-max_winding, max_winding);
    const Eigen::MatrixXcd V = random_unitary(rng, dim);
    Eigen::VectorXcd d(dim);
    for (int k = 0; k < dim; ++k) d[k] = Complex(static_cast<double>(winding(rng)), 0.0);
    return V * d.asDiagonal() * V.adjoint();
}

}  // namespace specflow
