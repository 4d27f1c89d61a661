#include "relaygeo/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace relaygeo {

SpdMatrix<Complex> exp_correlation(int antennas, double magnitude, double phase) {
  if (antennas < 1) throw std::invalid_argument("exp_correlation: need at least one antenna");
  if (!(magnitude >= 0.0 && magnitude < 1.0)) {
    std::ostringstream msg;
    msg << "exp_correlation: |t| must lie in [0, 1), got " << magnitude;
    throw std::invalid_argument(msg.str());
  }
  const Complex t = std::polar(magnitude, phase);
  ComplexMatrix q(antennas, antennas);
  for (int i = 0; i < antennas; ++i) {
    q(i, i) = 1.0;
    Complex power = 1.0;
    for (int j = i + 1; j < antennas; ++j) {
      power *= t;
      q(i, j) = power;
      q(j, i) = std::conj(power);
    }
  }
  return SpdMatrix<Complex>(std::move(q));
}

ChannelSampler::ChannelSampler(const SpdMatrix<Complex>& q) : root_(matrix_sqrt(q)) {}

Eigen::VectorXcd ChannelSampler::operator()(Rng& rng) const {
  Eigen::VectorXcd w(root_.rows());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = rng.complex_normal();
  return root_ * w;
}

Eigen::VectorXcd sample_channel(const SpdMatrix<Complex>& q, Rng& rng) { return ChannelSampler(q)(rng); }

SpdMatrix<Complex> channel_spd(const Eigen::VectorXcd& h, double epsilon) {
  if (!(epsilon > 0.0)) {
    std::ostringstream msg;
    msg << "channel_spd: ridge must be positive, got " << epsilon;
    throw std::invalid_argument(msg.str());
  }
  ComplexMatrix m = h * h.adjoint();
  m.diagonal().array() += epsilon;
  return SpdMatrix<Complex>(std::move(m));
}

double channel_ridge(std::span<const Eigen::VectorXcd> channels, double scale) {
  if (channels.empty()) throw std::invalid_argument("channel_ridge: no channels");
  double total = 0.0;
  for (const auto& h : channels) total += h.squaredNorm();
  return scale * total / static_cast<double>(channels.size());
}

GeometricClassifier::GeometricClassifier(Eigen::VectorXd weights, double bias, Eigen::Index matrix_dim)
    : weights_(std::move(weights)), bias_(bias), matrix_dim_(matrix_dim) {}

double GeometricClassifier::decision(const Eigen::VectorXd& features) const {
  if (features.size() != weights_.size()) {
    std::ostringstream msg;
    msg << "classifier: feature length " << features.size() << " does not match trained length "
        << weights_.size();
    throw std::invalid_argument(msg.str());
  }
  return weights_.dot(features) + bias_;
}

double GeometricClassifier::decision(const SpdMatrix<Complex>& s) const {
  if (s.dim() != matrix_dim_) {
    std::ostringstream msg;
    msg << "classifier: trained on " << matrix_dim_ << "x" << matrix_dim_ << " matrices, got " << s.dim();
    throw std::invalid_argument(msg.str());
  }
  return decision(tangent_features(s));
}

int GeometricClassifier::classify(const SpdMatrix<Complex>& s) const { return decision(s) >= 0.0 ? 1 : 2; }

Eigen::VectorXd tangent_features(const SpdMatrix<Complex>& s) { return log_vectorize(matrix_log(s)); }

GeometricClassifier train_classifier(std::span<const LabeledSpd> samples, const SvmOptions& options) {
  if (samples.size() < 2) throw std::invalid_argument("train_classifier: need at least two samples");
  const Eigen::Index dim = samples.front().matrix.dim();
  bool has1 = false;
  bool has2 = false;
  for (const auto& s : samples) {
    if (s.label != 1 && s.label != 2) throw std::invalid_argument("train_classifier: labels must be 1 or 2");
    if (s.matrix.dim() != dim) throw std::invalid_argument("train_classifier: matrix dimension mismatch");
    (s.label == 1 ? has1 : has2) = true;
  }
  if (!(has1 && has2)) throw std::invalid_argument("train_classifier: both classes must be present");

  // Features augmented with a constant 1 so the bias is the last weight.
  const auto n = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index f = tangent_features(samples.front().matrix).size();
  Eigen::MatrixXd x(f + 1, n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.col(i).head(f) = tangent_features(samples[static_cast<std::size_t>(i)].matrix);
    x(f, i) = 1.0;
    y[i] = samples[static_cast<std::size_t>(i)].label == 1 ? 1.0 : -1.0;
  }
  const Eigen::VectorXd q_diag = x.colwise().squaredNorm().transpose();
  const double upper = options.regularization / static_cast<double>(n);

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(f + 1);
  for (int epoch = 0; epoch < options.max_epochs; ++epoch) {
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = y[i] * w.dot(x.col(i)) - 1.0;
      double pg = g;
      if (alpha[i] <= 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] >= upper) {
        pg = std::max(g, 0.0);
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (pg != 0.0) {
        const double old = alpha[i];
        alpha[i] = std::clamp(old - g / q_diag[i], 0.0, upper);
        w += (alpha[i] - old) * y[i] * x.col(i);
      }
    }
    if (pg_max - pg_min < options.tolerance) break;
  }
  return GeometricClassifier(w.head(f), w[f], dim);
}

Eigen::VectorXcd steering_vector(int antennas, double theta) {
  Eigen::VectorXcd c(antennas);
  const double u = std::cos(theta);
  const double scale = 1.0 / std::sqrt(static_cast<double>(antennas));
  for (int k = 0; k < antennas; ++k) c[k] = std::polar(scale, std::numbers::pi * k * u);
  return c;
}

double link_rate(const Eigen::VectorXcd& h, const Eigen::VectorXcd& c, double snr) {
  return std::log2(1.0 + snr * std::norm(h.dot(c)));
}

Codebook build_codebook(std::span<const std::vector<Eigen::VectorXcd>> groups, int antennas, double snr,
                        int angle_grid_size) {
  if (angle_grid_size < 1) throw std::invalid_argument("build_codebook: empty angle grid");
  std::vector<double> grid(static_cast<std::size_t>(angle_grid_size), 0.0);
  std::vector<Eigen::VectorXcd> candidates;
  for (int k = 0; k < angle_grid_size; ++k) {
    grid[static_cast<std::size_t>(k)] = angle_grid_size == 1 ? 0.0 : std::numbers::pi * k / (angle_grid_size - 1);
    candidates.push_back(steering_vector(antennas, grid[static_cast<std::size_t>(k)]));
  }

  Codebook book;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) {
      std::ostringstream msg;
      msg << "build_codebook: group " << g + 1 << " is empty";
      throw std::invalid_argument(msg.str());
    }
    std::size_t best = 0;
    double best_rate = -1.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      double total = 0.0;
      for (const auto& h : groups[g]) {
        if (h.size() != antennas) throw std::invalid_argument("build_codebook: channel length mismatch");
        total += link_rate(h, candidates[k], snr);
      }
      const double mean = total / static_cast<double>(groups[g].size());
      if (mean > best_rate) {
        best_rate = mean;
        best = k;
      }
    }
    book.codewords.push_back(candidates[best]);
    book.angles.push_back(grid[best]);
  }
  return book;
}

GenieRate genie_rate(const Eigen::VectorXcd& h, const Codebook& codebook, double snr) {
  if (codebook.codewords.empty()) throw std::invalid_argument("genie_rate: empty codebook");
  GenieRate out;
  out.best = -1.0;
  for (std::size_t k = 0; k < codebook.codewords.size(); ++k) {
    const double r = link_rate(h, codebook.codewords[k], snr);
    if (r > out.best) {
      out.best = r;
      out.best_index = k;
    }
  }
  out.mrt = std::log2(1.0 + snr * h.squaredNorm());
  return out;
}

}  // namespace relaygeo
