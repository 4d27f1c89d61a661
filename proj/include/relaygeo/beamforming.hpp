#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "relaygeo/random.hpp"
#include "relaygeo/spd.hpp"

namespace relaygeo {

using Complex = std::complex<double>;
using ComplexMatrix = DenseMatrix<Complex>;

/// Exponential transmit correlation: Q(i, j) = t^(j - i) for j >= i and the
/// conjugate below the diagonal, with t = magnitude * exp(j * phase).
/// Throws std::invalid_argument unless 0 <= magnitude < 1.
SpdMatrix<Complex> exp_correlation(int antennas, double magnitude, double phase);

struct ChannelSample {
  Eigen::VectorXcd h;
  int user = 0;  // 1 or 2 for training data
};

/// Draws h ~ CN(0, Q) as Q^{1/2} w with w white.
class ChannelSampler {
 public:
  explicit ChannelSampler(const SpdMatrix<Complex>& q);
  Eigen::VectorXcd operator()(Rng& rng) const;
  Eigen::Index antennas() const { return root_.rows(); }

 private:
  ComplexMatrix root_;
};

Eigen::VectorXcd sample_channel(const SpdMatrix<Complex>& q, Rng& rng);

/// h h^H + epsilon I. Throws std::invalid_argument for epsilon <= 0.
SpdMatrix<Complex> channel_spd(const Eigen::VectorXcd& h, double epsilon);

/// Default ridge: scale * mean ||h||^2 over the given channels.
double channel_ridge(std::span<const Eigen::VectorXcd> channels, double scale = 1e-3);

struct LabeledSpd {
  SpdMatrix<Complex> matrix;
  int label;  // 1 or 2
};

struct SvmOptions {
  double regularization = 1.0;
  double tolerance = 1e-6;
  int max_epochs = 200000;
};

/// Linear max-margin classifier on log-vectorized (tangent-space) features.
/// Group 1 is the non-negative side of the decision function.
class GeometricClassifier {
 public:
  GeometricClassifier(Eigen::VectorXd weights, double bias, Eigen::Index matrix_dim);

  double decision(const SpdMatrix<Complex>& s) const;
  double decision(const Eigen::VectorXd& features) const;
  int classify(const SpdMatrix<Complex>& s) const;

  const Eigen::VectorXd& weights() const { return weights_; }
  double bias() const { return bias_; }
  Eigen::Index matrix_dim() const { return matrix_dim_; }

 private:
  Eigen::VectorXd weights_;
  double bias_;
  Eigen::Index matrix_dim_;
};

/// Tangent-space feature map: log_vectorize(matrix_log(s)).
Eigen::VectorXd tangent_features(const SpdMatrix<Complex>& s);

/// Soft-margin linear SVM, minimising
///   1/2 ||w||^2 + 1/2 b^2 + C/N * sum_i max(0, 1 - y_i (w.x_i + b)),
/// solved by cyclic dual coordinate descent until the projected-gradient
/// spread drops below `tolerance`. Mean loss makes the solution invariant to
/// duplicating the training set.
GeometricClassifier train_classifier(std::span<const LabeledSpd> samples, const SvmOptions& options = {});

/// Half-wavelength array response (1/sqrt(M)) exp(j pi k cos(theta)).
Eigen::VectorXcd steering_vector(int antennas, double theta);

struct Codebook {
  std::vector<Eigen::VectorXcd> codewords;  // codewords[g] serves group g + 1
  std::vector<double> angles;
};

/// Per group, the steering vector on an `angle_grid_size`-point grid over
/// [0, pi] with the best mean link rate over the group (first maximum kept).
Codebook build_codebook(std::span<const std::vector<Eigen::VectorXcd>> groups, int antennas, double snr,
                        int angle_grid_size = 5);

/// log2(1 + snr |h^H c|^2) with snr linear.
double link_rate(const Eigen::VectorXcd& h, const Eigen::VectorXcd& c, double snr);

struct GenieRate {
  double best = 0.0;
  std::size_t best_index = 0;
  double mrt = 0.0;  // log2(1 + snr ||h||^2)
};

GenieRate genie_rate(const Eigen::VectorXcd& h, const Codebook& codebook, double snr);

}  // namespace relaygeo
