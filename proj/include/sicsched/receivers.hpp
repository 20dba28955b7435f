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

// Post-processing SINR of the linear MMSE receiver (complex symbols) and of
// the widely linear MMSE receiver (real symbols on the stacked real/imaginary
// observation).
//
// Powers follow the per-stream convention: a transmitter with Nt antennas puts
// S/Nt (desired) or I0/Nt (interferer) on each antenna, so for S = I0 = 1 the
// multi-stream SINR reduces to h^H (sum_{j!=i} h_j h_j^H + sum G G^H +
// Nt N0 I)^{-1} h.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sicsched/channel.hpp"
#include "sicsched/config.hpp"
#include "sicsched/scheduler.hpp"

namespace sicsched {

/// Eigenvalues below this multiple of the largest are treated as zero.
inline constexpr double kRankTolerance = 1e-10;
/// Negative eigenvalues of a PSD matrix within this bound are clamped to 0.
inline constexpr double kEigenClamp = 1e-12;
/// Reciprocal condition number below which an NICM is rejected.
inline constexpr double kMinRcond = 1e-14;

/// Eigen-decomposition of a Hermitian PSD matrix R = U^H diag(values) U with
/// `values` sorted in descending order, so that omega = U h.
template <typename Scalar>
struct SpectralDecomposition {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::VectorXd values;
    Matrix U;
};

using ComplexSpectrum = SpectralDecomposition<std::complex<double>>;
using RealSpectrum = SpectralDecomposition<double>;

/// Throws SolverError for eigenvalues more negative than the clamp bound.
ComplexSpectrum decompose(const Eigen::MatrixXcd& psd);
RealSpectrum decompose(const Eigen::MatrixXd& psd);

/// Count of eigenvalues above kRankTolerance times the largest.
int numerical_rank(const Eigen::VectorXd& values);

/// sum_i (I0/Nt) G_i G_i^H.
Eigen::MatrixXcd icm(const ChannelSample& sample, const SystemConfig& cfg);
/// icm + N0 I.
Eigen::MatrixXcd nicm(const ChannelSample& sample, const SystemConfig& cfg);

/// S h^H R^{-1} h through a Cholesky solve.
double post_sinr_mmse(const Eigen::VectorXcd& h, const Eigen::MatrixXcd& nicm, double S);

/// S sum_p |omega_p|^2 / (lambda_p + N0), omega = U h. `spectrum` holds the
/// ICM (noise excluded). Rejects unsorted or negative eigenvalues and a
/// non-unitary U.
double post_sinr_eigenform(const Eigen::VectorXcd& h, const ComplexSpectrum& spectrum, double S,
                           double N0);

/// The minimum-eigenvalue term of post_sinr_eigenform.
double sinr_lower_bound(const Eigen::VectorXcd& h, const ComplexSpectrum& spectrum, double S,
                        double N0);

/// sum_i I0 g~_i g~_i^T over the stacked interferer vectors.
Eigen::MatrixXd wl_icm(const WLChannelSample& sample, const SystemConfig& cfg);
/// wl_icm + (N0/2) I.
Eigen::MatrixXd wl_nicm(const WLChannelSample& sample, const SystemConfig& cfg);

double post_sinr_wl(const Eigen::VectorXd& h, const Eigen::MatrixXd& nicm, double S);

/// Real-space counterparts of the eigen form and the lower bound; the noise
/// floor is N0/2 per real dimension.
double post_sinr_wl_eigenform(const Eigen::VectorXd& h, const RealSpectrum& spectrum, double S,
                              double N0);
double sinr_lower_bound_wl(const Eigen::VectorXd& h, const RealSpectrum& spectrum, double S,
                           double N0);

/// Complex MU SM: SINR of stream `stream` (0-based) with the other desired
/// columns as self-interference. Builds and solves the covariance directly.
double stream_sinr_mu(const ChannelSample& sample, int stream, const SystemConfig& cfg);

/// Single-stream SINRs of one user for many noise levels from one
/// eigen-decomposition of the interference covariance.
///
/// Covers complex encoding with the MMSE receiver and real encoding with the
/// WL-MMSE receiver (Nt = 1 in both cases).
class SstSinrModel {
public:
    SstSinrModel(const ChannelSample& sample, const SystemConfig& cfg);

    double gamma(double N0) const;
    double gamma_lower_bound(double N0) const;
    /// Minimum eigenvalue of the (WL) interference covariance.
    double lambda_min() const { return lambda_.tail(1)(0); }

private:
    double S_;
    double noise_scale_;         // 1 for MMSE, 1/2 for WL
    Eigen::VectorXd lambda_;     // descending
    Eigen::VectorXd omega_sq_;   // |omega_p|^2
};

/// Post-SINRs of every stream of one user, for any noise level, from a single
/// eigen-decomposition of the noise-free total covariance T (desired streams
/// plus interferers). With q_s = v_s^H (T + sigma^2 I)^{-1} v_s for the
/// power-scaled stream vector v_s, the SINR is q_s / (1 - q_s).
class StreamSinrModel {
public:
    StreamSinrModel(const ChannelSample& sample, const SystemConfig& cfg,
                    const StreamLayout& layout);

    int streams() const { return static_cast<int>(proj_sq_.cols()); }
    /// Writes one SINR per stream.
    void gammas(double N0, std::span<double> out) const;

private:
    double noise_scale_;
    Eigen::VectorXd mu_;       // eigenvalues of T
    Eigen::MatrixXd proj_sq_;  // |V^H v_s|^2, rows = eigen index, cols = stream
};

/// Power-scaled stream vectors of one transmitter in the receiver's signal
/// space: complex columns for MMSE, stacked real vectors (as complex with zero
/// imaginary part) for WL-MMSE.
Eigen::MatrixXcd stream_vectors(const Eigen::MatrixXcd& channel, const StreamLayout& layout,
                                double power);

}  // namespace sicsched
