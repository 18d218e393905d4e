#include "specvar/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "specvar/error.hpp"

namespace specvar {

namespace {

void require_eps(double eps, const char* op) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw DomainError(std::string(op) + ": eps must lie in (0, 1], got " + std::to_string(eps));
    }
}

// Position of each row/column inside its Jordan block.
std::vector<int> in_block_positions(const JordanSpec& spec) {
    std::vector<int> pos;
    pos.reserve(static_cast<std::size_t>(spec.n()));
    for (const auto& b : spec.blocks()) {
        for (int k = 0; k < b.size; ++k) {
            pos.push_back(k);
        }
    }
    return pos;
}

} // namespace

JordanSpec::JordanSpec(std::vector<JordanBlock> blocks, ComplexMatrix q) : blocks_(std::move(blocks)), q_(std::move(q)) {
    if (blocks_.empty()) {
        throw ConfigError("JordanSpec: at least one block is required");
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto& b = blocks_[i];
        if (b.size < 1) {
            throw ConfigError("JordanSpec: block " + std::to_string(i) + " has non-positive size");
        }
        if (!std::isfinite(b.lambda.real()) || !std::isfinite(b.lambda.imag())) {
            throw NonFiniteError("JordanSpec: block " + std::to_string(i) + " has a non-finite eigenvalue");
        }
        n_ += b.size;
        m_ = std::max(m_, b.size);
    }
    require_square(q_, "JordanSpec q");
    if (q_.rows() != n_) {
        throw DimensionError("JordanSpec: block sizes sum to " + std::to_string(n_) + " but q is " +
                             std::to_string(q_.rows()) + "x" + std::to_string(q_.cols()));
    }
    kappa_q_ = kappa2(q_);
}

Spectrum JordanSpec::spectrum() const {
    std::vector<Complex> values;
    values.reserve(static_cast<std::size_t>(n_));
    for (const auto& b : blocks_) {
        values.insert(values.end(), static_cast<std::size_t>(b.size), b.lambda);
    }
    return Spectrum(std::move(values));
}

bool JordanSpec::has_real_eigenvalues() const {
    for (const auto& b : blocks_) {
        if (std::abs(b.lambda.imag()) > 1e-12 * (1.0 + std::abs(b.lambda))) {
            return false;
        }
    }
    return true;
}

bool JordanSpec::is_unitarily_diagonalizable() const {
    return p() == n_ && kappa_q_ <= 1.0 + 1e-10;
}

PerturbationInstance::PerturbationInstance(JordanSpec spec, ComplexMatrix e) : spec_(std::move(spec)), e_(std::move(e)) {
    require_square(e_, "perturbation");
    require_finite(e_, "perturbation");
    if (e_.rows() != spec_.n()) {
        throw DimensionError("PerturbationInstance: E is " + std::to_string(e_.rows()) + "x" +
                             std::to_string(e_.cols()) + " but the spec has n = " + std::to_string(spec_.n()));
    }
    a_ = assemble(spec_);
    e_q_ = solve(spec_.q(), e_ * spec_.q());
    norm_eq_ = e_q_.norm();
    delta_eq_ = delta(e_q_);
    trace_e_ = e_.trace();
    norm_e_ = e_.norm();
}

double PerturbationInstance::trace_term() const noexcept {
    return std::norm(trace_e_) / static_cast<double>(spec_.n());
}

double PerturbationInstance::kappa_majorant() const noexcept {
    return spec_.kappa_q() * norm_e_;
}

double PerturbationInstance::rank_majorant() const {
    Eigen::JacobiSVD<ComplexMatrix> svd(e_);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = static_cast<double>(e_.rows()) * kUnitRoundoff * sv(0);
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > cutoff) {
            ++rank;
        }
    }
    return std::sqrt(static_cast<double>(rank)) * spectral_norm(e_q_);
}

ComplexMatrix jordan_matrix(const JordanSpec& spec) {
    const int n = spec.n();
    ComplexMatrix j = ComplexMatrix::Zero(n, n);
    int start = 0;
    for (const auto& b : spec.blocks()) {
        for (int k = 0; k < b.size; ++k) {
            j(start + k, start + k) = b.lambda;
            if (k + 1 < b.size) {
                j(start + k, start + k + 1) = 1.0;
            }
        }
        start += b.size;
    }
    return j;
}

ComplexMatrix assemble(const JordanSpec& spec) {
    return solve_right(spec.q() * jordan_matrix(spec), spec.q());
}

ComplexMatrix scaling_matrix(const JordanSpec& spec, double eps) {
    require_eps(eps, "scaling_matrix");
    const std::vector<int> pos = in_block_positions(spec);
    ComplexMatrix t = ComplexMatrix::Zero(spec.n(), spec.n());
    for (int k = 0; k < spec.n(); ++k) {
        t(k, k) = std::pow(eps, pos[static_cast<std::size_t>(k)]);
    }
    return t;
}

ComplexMatrix lambda_matrix(const JordanSpec& spec) {
    ComplexMatrix j = jordan_matrix(spec);
    return j.diagonal().asDiagonal();
}

ComplexMatrix omega_matrix(const JordanSpec& spec, double eps) {
    require_eps(eps, "omega_matrix");
    ComplexMatrix omega = ComplexMatrix::Zero(spec.n(), spec.n());
    int start = 0;
    for (const auto& b : spec.blocks()) {
        for (int k = 0; k + 1 < b.size; ++k) {
            omega(start + k, start + k + 1) = eps;
        }
        start += b.size;
    }
    return omega;
}

ComplexMatrix scale_similarity(const JordanSpec& spec, const ComplexMatrix& x, double eps) {
    require_eps(eps, "scale_similarity");
    if (x.rows() != spec.n() || x.cols() != spec.n()) {
        throw DimensionError("scale_similarity: matrix does not match the spec dimension");
    }
    const std::vector<int> pos = in_block_positions(spec);
    ComplexMatrix out(x.rows(), x.cols());
    // (T^{-1} X T)_{ij} = eps^{pos_j - pos_i} X_{ij}
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const int power = pos[static_cast<std::size_t>(j)] - pos[static_cast<std::size_t>(i)];
            out(i, j) = x(i, j) * std::pow(eps, power);
        }
    }
    return out;
}

double phi(const PerturbationInstance& inst, double eps) {
    require_eps(eps, "phi");
    const auto& spec = inst.spec();
    const double r = static_cast<double>(spec.n() - spec.p());
    const double d = inst.delta_eq();
    const double lead = std::pow(eps, 2 * (1 - spec.m())) * d * d;
    return lead + 2.0 * eps * eps * std::sqrt(r) * d + r * eps * eps + inst.trace_term();
}

double optimal_epsilon(const PerturbationInstance& inst) {
    const auto& spec = inst.spec();
    if (spec.m() == 1) {
        throw NotApplicableError("optimal_epsilon: A is diagonalizable (m = 1); Phi is minimised at eps = 1");
    }
    const double d = inst.delta_eq();
    if (!(d > 0.0)) {
        throw DomainError("optimal_epsilon: delta(E_Q) = 0 puts the stationary point at eps = 0");
    }
    const double r = static_cast<double>(spec.n() - spec.p());
    const double lhs = r + 2.0 * std::sqrt(r) * d;
    const double rhs = static_cast<double>(spec.m() - 1) * d * d;
    if (lhs > rhs) {
        return std::pow(rhs / lhs, 1.0 / (2.0 * spec.m()));
    }
    return 1.0;
}

Lemma24Parts lemma24_parts(const PerturbationInstance& inst, double eps) {
    require_eps(eps, "lemma24_parts");
    const auto& spec = inst.spec();
    const double r = static_cast<double>(spec.n() - spec.p());
    const double d = inst.delta_eq();
    const ComplexMatrix scaled = scale_similarity(spec, inst.e_q(), eps);
    const ComplexMatrix omega = omega_matrix(spec, eps);

    Lemma24Parts parts;
    parts.scaled_eq_norm_sq = scaled.squaredNorm();
    parts.scaled_eq_bound = std::pow(eps, 2 * (1 - spec.m())) * d * d + inst.trace_term();
    parts.cross_term = (omega.adjoint() * scaled).trace().real();
    parts.cross_bound = eps * eps * std::sqrt(r) * d;
    parts.omega_norm_sq = omega.squaredNorm();
    parts.omega_expected = r * eps * eps;
    return parts;
}

double lemma24_margin(const PerturbationInstance& inst, double eps) {
    require_eps(eps, "lemma24_margin");
    const auto& spec = inst.spec();
    const ComplexMatrix transformed = solve(spec.q(), inst.a_tilde() * spec.q());
    const ComplexMatrix residual = scale_similarity(spec, transformed, eps) - lambda_matrix(spec);
    return phi(inst, eps) - residual.squaredNorm();
}

JordanSpec diagonalizable_spec(const ComplexMatrix& a) {
    require_square(a, "diagonalizable_spec");
    require_finite(a, "diagonalizable_spec");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("diagonalizable_spec: eigensolver failed");
    }
    const auto& ev = solver.eigenvalues();
    const double min_gap = 1e-6 * a.norm();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        for (Eigen::Index j = i + 1; j < ev.size(); ++j) {
            if (!(std::abs(ev(i) - ev(j)) > min_gap)) {
                throw DomainError("diagonalizable_spec: eigenvalues " + std::to_string(i) + " and " +
                                  std::to_string(j) +
                                  " are not well separated; supply the Jordan structure explicitly");
            }
        }
    }
    std::vector<JordanBlock> blocks;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        blocks.push_back({ev(i), 1});
    }
    return JordanSpec(std::move(blocks), solver.eigenvectors());
}

} // namespace specvar
