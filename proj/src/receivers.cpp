// Copyright 2026 The sicsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "sicsched/receivers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace sicsched {

namespace {

template <typename Matrix>
SpectralDecomposition<typename Matrix::Scalar> decompose_impl(const Matrix& psd) {
    if (psd.rows() != psd.cols()) throw ConfigError("decompose: matrix is not square");
    Eigen::SelfAdjointEigenSolver<Matrix> es(psd);
    if (es.info() != Eigen::Success) throw SolverError("decompose: eigen solver failed");
    const Eigen::Index n = psd.rows();
    SpectralDecomposition<typename Matrix::Scalar> out;
    out.values.resize(n);
    out.U.resize(n, n);
    const double largest = n > 0 ? es.eigenvalues()(n - 1) : 0.0;
    const double clamp = kEigenClamp * std::max(1.0, std::abs(largest));
    for (Eigen::Index p = 0; p < n; ++p) {
        // Descending order: p-th largest is ascending index n-1-p.
        double v = es.eigenvalues()(n - 1 - p);
        if (v < 0.0) {
            if (v < -clamp)
                throw SolverError("decompose: eigenvalue " + std::to_string(v) +
                                  " is negative beyond the clamp bound");
            v = 0.0;
        }
        out.values(p) = v;
        out.U.row(p) = es.eigenvectors().col(n - 1 - p).adjoint();
    }
    return out;
}

template <typename Spectrum>
void check_spectrum(const Spectrum& sp, Eigen::Index dim) {
    const auto n = sp.values.size();
    if (n != dim || sp.U.rows() != n || sp.U.cols() != n)
        throw ConfigError("eigen-form: spectrum and vector dimensions differ");
    for (Eigen::Index p = 0; p < n; ++p) {
        if (sp.values(p) < 0.0) throw ConfigError("eigen-form: negative eigenvalue");
        if (p > 0 && sp.values(p) > sp.values(p - 1))
            throw ConfigError("eigen-form: eigenvalues not sorted in descending order");
    }
    const double dev =
        (sp.U * sp.U.adjoint() - Spectrum::Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (dev > 1e-10) throw ConfigError("eigen-form: basis is not unitary");
}

template <typename Vector, typename Spectrum>
double eigenform_sum(const Vector& h, const Spectrum& sp, double S, double noise, bool lb_only) {
    check_spectrum(sp, h.size());
    if (!(noise > 0.0)) throw ConfigError("eigen-form: noise must be > 0");
    const auto omega = (sp.U * h).eval();
    const Eigen::Index n = sp.values.size();
    double g = 0.0;
    for (Eigen::Index p = lb_only ? n - 1 : 0; p < n; ++p)
        g += std::norm(omega(p)) / (sp.values(p) + noise);
    return S * g;
}

template <typename Vector, typename Matrix>
double quadratic_solve(const Vector& h, const Matrix& R, double S) {
    if (R.rows() != h.size() || R.cols() != h.size())
        throw ConfigError("post-SINR: covariance and vector dimensions differ");
    Eigen::LLT<Matrix> llt(R);
    if (llt.info() != Eigen::Success)
        throw SolverError("post-SINR: covariance is not positive definite");
    if (llt.rcond() < kMinRcond)
        throw SolverError("post-SINR: covariance is numerically singular (rcond " +
                          std::to_string(llt.rcond()) + "); N0 too small?");
    const auto x = llt.solve(h).eval();
    return S * std::real(h.dot(x));
}

std::complex<double> component_factor(StreamComponent c) {
    return c == StreamComponent::quadrature ? std::complex<double>(0.0, 1.0) : 1.0;
}

}  // namespace

ComplexSpectrum decompose(const Eigen::MatrixXcd& psd) { return decompose_impl(psd); }
RealSpectrum decompose(const Eigen::MatrixXd& psd) { return decompose_impl(psd); }

int numerical_rank(const Eigen::VectorXd& values) {
    if (values.size() == 0) return 0;
    const double largest = values.maxCoeff();
    if (!(largest > 0.0)) return 0;
    int r = 0;
    for (Eigen::Index p = 0; p < values.size(); ++p)
        if (values(p) > kRankTolerance * largest) ++r;
    return r;
}

Eigen::MatrixXcd icm(const ChannelSample& sample, const SystemConfig& cfg) {
    const auto nr = sample.H.rows();
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(nr, nr);
    const double p = cfg.I0 / cfg.Nt;
    for (const auto& g : sample.G) R.noalias() += p * (g * g.adjoint());
    return R;
}

Eigen::MatrixXcd nicm(const ChannelSample& sample, const SystemConfig& cfg) {
    Eigen::MatrixXcd R = icm(sample, cfg);
    R.diagonal().array() += cfg.N0;
    return R;
}

double post_sinr_mmse(const Eigen::VectorXcd& h, const Eigen::MatrixXcd& nicm, double S) {
    return quadratic_solve(h, nicm, S);
}

double post_sinr_eigenform(const Eigen::VectorXcd& h, const ComplexSpectrum& spectrum, double S,
                           double N0) {
    return eigenform_sum(h, spectrum, S, N0, false);
}

double sinr_lower_bound(const Eigen::VectorXcd& h, const ComplexSpectrum& spectrum, double S,
                        double N0) {
    return eigenform_sum(h, spectrum, S, N0, true);
}

Eigen::MatrixXd wl_icm(const WLChannelSample& sample, const SystemConfig& cfg) {
    const Eigen::Index dim = sample.h.empty() ? 2 * cfg.Nr : sample.h.front().size();
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(dim, dim);
    const double p = cfg.I0 / cfg.Nt;
    for (const auto& g : sample.g) R.noalias() += p * (g * g.transpose());
    return R;
}

Eigen::MatrixXd wl_nicm(const WLChannelSample& sample, const SystemConfig& cfg) {
    Eigen::MatrixXd R = wl_icm(sample, cfg);
    R.diagonal().array() += 0.5 * cfg.N0;
    return R;
}

double post_sinr_wl(const Eigen::VectorXd& h, const Eigen::MatrixXd& nicm, double S) {
    return quadratic_solve(h, nicm, S);
}

double post_sinr_wl_eigenform(const Eigen::VectorXd& h, const RealSpectrum& spectrum, double S,
                              double N0) {
    return eigenform_sum(h, spectrum, S, 0.5 * N0, false);
}

double sinr_lower_bound_wl(const Eigen::VectorXd& h, const RealSpectrum& spectrum, double S,
                           double N0) {
    return eigenform_sum(h, spectrum, S, 0.5 * N0, true);
}

double stream_sinr_mu(const ChannelSample& sample, int stream, const SystemConfig& cfg) {
    const auto layout = build_streams(cfg);
    if (stream < 0 || stream >= layout.count())
        throw ConfigError("stream_sinr_mu: stream index " + std::to_string(stream) +
                          " outside [0, " + std::to_string(layout.count()) + ")");
    const auto& own = layout.streams[static_cast<std::size_t>(stream)];
    if (layout.receiver == ReceiverKind::mmse) {
        Eigen::MatrixXcd R = nicm(sample, cfg);
        for (int j = 0; j < layout.count(); ++j) {
            if (j == stream) continue;
            const auto& d = layout.streams[static_cast<std::size_t>(j)];
            const auto hj = sample.H.col(d.antenna);
            R.noalias() += (cfg.S * d.power_fraction) * (hj * hj.adjoint());
        }
        return post_sinr_mmse(sample.H.col(own.antenna), R, cfg.S * own.power_fraction);
    }
    const Eigen::MatrixXcd desired = stream_vectors(sample.H, layout, cfg.S);
    const Eigen::Index dim = desired.rows();
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& g : sample.G) {
        const Eigen::MatrixXd w = stream_vectors(g, layout, cfg.I0).real();
        R.noalias() += w * w.transpose();
    }
    for (int j = 0; j < layout.count(); ++j) {
        if (j == stream) continue;
        const Eigen::VectorXd v = desired.col(j).real();
        R.noalias() += v * v.transpose();
    }
    R.diagonal().array() += 0.5 * cfg.N0;
    const Eigen::VectorXd v = desired.col(stream).real();
    return post_sinr_wl(v, R, 1.0);
}

Eigen::MatrixXcd stream_vectors(const Eigen::MatrixXcd& channel, const StreamLayout& layout,
                                double power) {
    const Eigen::Index nr = channel.rows();
    const bool wl = layout.receiver == ReceiverKind::wl_mmse;
    Eigen::MatrixXcd V(wl ? 2 * nr : nr, layout.count());
    for (int s = 0; s < layout.count(); ++s) {
        const auto& d = layout.streams[static_cast<std::size_t>(s)];
        const double amp = std::sqrt(power * d.power_fraction);
        if (wl) {
            const Eigen::VectorXcd rotated = component_factor(d.component) * channel.col(d.antenna);
            V.col(s) = (amp * stack_real(rotated)).cast<std::complex<double>>();
        } else {
            V.col(s) = amp * channel.col(d.antenna);
        }
    }
    return V;
}

SstSinrModel::SstSinrModel(const ChannelSample& sample, const SystemConfig& cfg) : S_(cfg.S) {
    const auto layout = build_streams(cfg);
    if (layout.count() != 1)
        throw ConfigError("SstSinrModel: single-stream transmission required");
    if (layout.receiver == ReceiverKind::mmse) {
        noise_scale_ = 1.0;
        const auto sp = decompose(icm(sample, cfg));
        lambda_ = sp.values;
        omega_sq_ = (sp.U * sample.H.col(0)).cwiseAbs2();
    } else {
        noise_scale_ = 0.5;
        const auto sp = decompose(wl_icm(to_wl(sample), cfg));
        lambda_ = sp.values;
        omega_sq_ = (sp.U * stack_real(sample.H.col(0))).cwiseAbs2();
    }
}

double SstSinrModel::gamma(double N0) const {
    const double noise = noise_scale_ * N0;
    double g = 0.0;
    for (Eigen::Index p = 0; p < lambda_.size(); ++p) g += omega_sq_(p) / (lambda_(p) + noise);
    return S_ * g;
}

double SstSinrModel::gamma_lower_bound(double N0) const {
    const Eigen::Index p = lambda_.size() - 1;
    return S_ * omega_sq_(p) / (lambda_(p) + noise_scale_ * N0);
}

StreamSinrModel::StreamSinrModel(const ChannelSample& sample, const SystemConfig& cfg,
                                 const StreamLayout& layout) {
    const Eigen::MatrixXcd desired = stream_vectors(sample.H, layout, cfg.S);
    if (layout.receiver == ReceiverKind::mmse) {
        noise_scale_ = 1.0;
        Eigen::MatrixXcd T = desired * desired.adjoint();
        for (const auto& g : sample.G) {
            const Eigen::MatrixXcd w = stream_vectors(g, layout, cfg.I0);
            T.noalias() += w * w.adjoint();
        }
        const auto sp = decompose(T);
        mu_ = sp.values;
        proj_sq_ = (sp.U * desired).cwiseAbs2();
    } else {
        noise_scale_ = 0.5;
        const Eigen::MatrixXd Dr = desired.real();
        Eigen::MatrixXd T = Dr * Dr.transpose();
        for (const auto& g : sample.G) {
            const Eigen::MatrixXd w = stream_vectors(g, layout, cfg.I0).real();
            T.noalias() += w * w.transpose();
        }
        const auto sp = decompose(T);
        mu_ = sp.values;
        proj_sq_ = (sp.U * Dr).cwiseAbs2();
    }
}

void StreamSinrModel::gammas(double N0, std::span<double> out) const {
    if (static_cast<Eigen::Index>(out.size()) != proj_sq_.cols())
        throw ConfigError("StreamSinrModel::gammas: output size mismatch");
    const double noise = noise_scale_ * N0;
    const Eigen::VectorXd inv = (mu_.array() + noise).inverse();
    for (Eigen::Index s = 0; s < proj_sq_.cols(); ++s) {
        const double q = proj_sq_.col(s).dot(inv);
        // q < 1 for noise > 0; guard the rounding edge.
        const double slack = std::max(1.0 - q, std::numeric_limits<double>::min());
        out[static_cast<std::size_t>(s)] = q / slack;
    }
}

}  // namespace sicsched
