// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include <nhzm/dynamics.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace nhzm {

namespace {

CMatrix expm(const CMatrix& h, double t) {
    const CMatrix a = (-kI * t) * h;
    return a.exp();
}

void require_finite(const CVector& psi, const char* what) {
    if (!psi.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
}

// Divides m by its largest entry modulus; returns the log of that modulus.
double normalise_matrix(CMatrix& m) {
    const double s = m.cwiseAbs().maxCoeff();
    if (!(s > 0.0) || !std::isfinite(s)) throw OverflowError("propagator became singular or overflowed");
    m /= s;
    return std::log(s);
}

}  // namespace

Propagation propagate(const Hamiltonian& h, const CVector& psi0, double duration,
                      bool renormalize_each_period) {
    if (psi0.size() != h.dim()) throw DomainError("state and Hamiltonian differ in dimension");
    require_finite(psi0, "initial state");
    if (!std::isfinite(duration)) throw DomainError("duration must be finite");

    Propagation out;
    if (!renormalize_each_period) {
        out.state = expm(h.matrix(), duration) * psi0;
        if (!out.state.allFinite() || out.state.cwiseAbs().maxCoeff() > 1e300) {
            std::ostringstream os;
            os << "state overflowed after t = " << duration
               << "; enable per-period renormalisation for long runs";
            throw OverflowError(os.str());
        }
        return out;
    }

    if (duration < 0.0) throw DomainError("renormalised propagation needs duration >= 0");
    const auto full = static_cast<std::size_t>(std::floor(duration / kPeriod));
    const double rest = duration - static_cast<double>(full) * kPeriod;
    CVector psi = psi0;
    auto rescale = [&] {
        const double s = psi.cwiseAbs().maxCoeff();
        if (!(s > 0.0) || !std::isfinite(s)) throw OverflowError("state vanished or overflowed");
        psi /= s;
        out.log_scale += std::log(s);
    };
    if (full > 0) {
        const CMatrix step = expm(h.matrix(), kPeriod);
        for (std::size_t i = 0; i < full; ++i) {
            psi = step * psi;
            rescale();
        }
    }
    if (rest > 0.0) {
        psi = expm(h.matrix(), rest) * psi;
        rescale();
    }
    out.state = std::move(psi);
    return out;
}

CVector propagate_eigen(const ModeSet& ms, const CVector& psi0, double duration) {
    for (std::size_t mu = 0; mu < ms.size(); ++mu) {
        if (ms.near_defective(mu)) {
            throw DomainError("eigen-propagation needs a diagonalisable H; mode " +
                              std::to_string(mu) + " is near-defective");
        }
    }
    const CVector coeff = ms.left().adjoint() * psi0;
    CVector phase(coeff.size());
    for (Eigen::Index i = 0; i < coeff.size(); ++i) {
        phase(i) = std::exp(-kI * ms.eigenvalues()(i) * duration) * coeff(i);
    }
    return ms.right() * phase;
}

ScaledPropagator scaled_propagator(const Hamiltonian& h, double duration) {
    if (!std::isfinite(duration) || duration < 0.0) {
        throw DomainError("propagator duration must be finite and >= 0");
    }
    const auto full = static_cast<std::uint64_t>(std::floor(duration / kPeriod));
    const double rest = duration - static_cast<double>(full) * kPeriod;

    ScaledPropagator out;
    out.matrix = expm(h.matrix(), rest);
    out.log_scale = normalise_matrix(out.matrix);
    if (full == 0) return out;

    CMatrix base = expm(h.matrix(), kPeriod);
    double base_log = normalise_matrix(base);
    for (std::uint64_t e = full; e > 0; e >>= 1) {
        if (e & 1U) {
            out.matrix = base * out.matrix;
            out.log_scale += base_log + normalise_matrix(out.matrix);
        }
        if (e > 1) {
            base = base * base;
            base_log = 2.0 * base_log + normalise_matrix(base);
        }
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<double> standard_normals(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 gen(seed);
    auto uniform = [&gen] {
        // (0, 1]: never zero, so the log below is finite.
        return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
    };
    std::vector<double> out;
    out.reserve(n + 1);
    while (out.size() < n) {
        const double rho = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        out.push_back(rho * std::cos(theta));
        out.push_back(rho * std::sin(theta));
    }
    out.resize(n);
    return out;
}

double periods_for_amplification(const ModeSet& ms, const ZeroMode& zm, double factor) {
    if (!(factor > 1.0)) throw DomainError("amplification factor must exceed 1");
    const double top = ms.eigenvalues().imag().maxCoeff();
    const double rate = top - zm.omega.imag();
    if (!(rate > 0.0)) throw DomainError("no mode outgrows the zero mode");
    return std::log(factor) / rate / kPeriod;
}

EnsembleResult ensemble_experiment(const LatticeSpec& spec, const ZeroMode& zm,
                                   const EnsembleOptions& opts) {
    if (!spec.partition()) throw DomainError("ensemble experiment needs a partitioned spec");
    if (static_cast<std::size_t>(zm.wavefunction.size()) != spec.size()) {
        throw DomainError("zero mode does not belong to this spec");
    }
    if (opts.n == 0) throw DomainError("ensemble needs at least one realisation");
    if (!(opts.sigma >= 0.0) || !(opts.periods >= 0.0)) {
        throw DomainError("sigma and periods must be >= 0");
    }

    const Hamiltonian h = assemble_hamiltonian(spec);
    const SiteRange res = spec.reservoir_range();
    const std::size_t nr = res.size();
    const double duration = opts.periods * kPeriod;
    const CMatrix u = scaled_propagator(h, duration).matrix;

    std::vector<std::vector<double>> profiles(opts.n);
    std::vector<std::exception_ptr> errors(opts.n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < opts.n; i = next++) {
            try {
                const std::vector<double> s = standard_normals(derive_seed(opts.seed, i), nr);
                CVector psi = zm.wavefunction;
                for (std::size_t j = 0; j < nr; ++j) {
                    psi(static_cast<Eigen::Index>(res.begin + j)) *= std::exp(opts.sigma * s[j]);
                }
                CVector out = u * psi;
                const double scale = opts.normalization == FinalNorm::MaxAmplitude
                                         ? out.cwiseAbs().maxCoeff()
                                         : out.norm();
                if (!(scale > 0.0) || !std::isfinite(scale)) {
                    throw OverflowError("realisation " + std::to_string(i) + " lost its norm");
                }
                std::vector<double> prof(nr);
                for (std::size_t j = 0; j < nr; ++j) {
                    prof[j] = std::abs(out(static_cast<Eigen::Index>(res.begin + j))) / scale;
                }
                profiles[i] = std::move(prof);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, opts.n));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    // Sequential reduction in realisation order keeps the result bit-stable.
    EnsembleResult r;
    r.mean_abs_profile.assign(nr, 0.0);
    r.std_profile.assign(nr, 0.0);
    for (const auto& p : profiles) {
        for (std::size_t j = 0; j < nr; ++j) r.mean_abs_profile[j] += p[j];
    }
    const auto n = static_cast<double>(opts.n);
    for (double& m : r.mean_abs_profile) m /= n;
    for (const auto& p : profiles) {
        for (std::size_t j = 0; j < nr; ++j) {
            const double d = p[j] - r.mean_abs_profile[j];
            r.std_profile[j] += d * d;
        }
    }
    for (double& s : r.std_profile) s = std::sqrt(s / n);

    std::vector<double> x(nr);
    for (std::size_t j = 0; j < nr; ++j) x[j] = static_cast<double>(j);
    r.r_squared = nr >= 2 ? fit_line(x, r.mean_abs_profile).r_squared : 0.0;
    r.n_realizations = opts.n;
    r.duration = opts.periods;
    r.seed = opts.seed;
    r.sigma = opts.sigma;

    const ModeSet ms = eigendecompose(h);
    const double top = ms.eigenvalues().imag().maxCoeff();
    r.amplification = std::exp((top - zm.omega.imag()) * duration);
    return r;
}

EpEvolution make_ep_evolution(const Hamiltonian& h, Complex lambda, const CVector& psi0,
                              double tol) {
    if (psi0.size() != h.dim()) throw SetupError("psi0 and H differ in dimension");
    const double scale = std::max(h.norm(), 1.0) * std::max(psi0.norm(), 1e-300);
    const CMatrix a = h.matrix() - lambda * CMatrix::Identity(h.dim(), h.dim());
    if ((a * psi0).norm() > tol * scale) {
        throw SetupError("psi0 is not an eigenvector of H at lambda");
    }
    EpEvolution ep;
    ep.lambda = lambda;
    ep.psi0 = psi0;
    ep.psi1 = a.completeOrthogonalDecomposition().solve(psi0);
    if ((a * ep.psi1 - psi0).norm() > tol * scale) {
        throw SetupError("no generalised eigenvector: H is not defective at lambda");
    }
    Eigen::JacobiSVD<CMatrix> svd(a.adjoint(), Eigen::ComputeFullV);
    const CVector phi0 = svd.matrixV().col(svd.matrixV().cols() - 1);
    ep.left_overlap = phi0.dot(ep.psi1);
    return ep;
}

EpCoefficients ep_coefficients(const EpEvolution& ep, const CVector& psi_init, double tol) {
    if (psi_init.size() != ep.psi0.size()) throw DomainError("state has the wrong dimension");
    CMatrix basis(ep.psi0.size(), 2);
    basis.col(0) = ep.psi0;
    basis.col(1) = ep.psi1;
    const Eigen::Vector2cd c = basis.completeOrthogonalDecomposition().solve(psi_init);
    if ((basis * c - psi_init).norm() > tol * std::max(psi_init.norm(), 1.0)) {
        throw DomainError("initial state has a component outside span{psi0, psi1}");
    }
    return {c(0), c(1)};
}

CVector ep_evolution(const Hamiltonian& h, const EpEvolution& ep, const CVector& psi_init,
                     double t, double tol) {
    if (ep.psi0.size() != h.dim() || ep.psi1.size() != h.dim()) {
        throw SetupError("EP data and H differ in dimension");
    }
    const CMatrix a = h.matrix() - ep.lambda * CMatrix::Identity(h.dim(), h.dim());
    const double scale = std::max(h.norm(), 1.0) * std::max(ep.psi0.norm(), 1e-300);
    if ((a * ep.psi0).norm() > tol * scale || (a * ep.psi1 - ep.psi0).norm() > tol * scale) {
        throw SetupError("EP data is not a Jordan chain of H");
    }
    const EpCoefficients c = ep_coefficients(ep, psi_init, tol);
    return std::exp(-kI * ep.lambda * t) * (c.c0 * ep.psi0 + c.c1 * (ep.psi1 - kI * t * ep.psi0));
}

double critical_damping(double x0, double v0, double omega0_mech, double t) {
    if (!(omega0_mech >= 0.0)) throw DomainError("oscillator frequency must be >= 0");
    const double beta = omega0_mech * x0 + v0;
    return std::exp(-omega0_mech * t) * (x0 + beta * t);
}

}  // namespace nhzm
