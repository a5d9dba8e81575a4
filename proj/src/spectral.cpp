#include "floqspread/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace floqspread {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegeneracyTol = 1e-12;

// raw circular spacings of sorted phases, including the wrap-around, so they
// sum to 2 pi
RealVector raw_spacings(const RealVector& phases) {
  const Index d = phases.size();
  RealVector s(d);
  for (Index i = 0; i + 1 < d; ++i) s(i) = phases(i + 1) - phases(i);
  s(d - 1) = kTwoPi - (phases(d - 1) - phases(0));
  return s;
}

double ratio_mean(const RealVector& spacings, bool circular) {
  const Index d = spacings.size();
  double acc = 0.0;
  Index count = 0;
  const Index first = circular ? 0 : 1;
  for (Index i = first; i < d; ++i) {
    const double s1 = spacings(i);
    const double s0 = spacings(i == 0 ? d - 1 : i - 1);
    const double lo = std::min(s0, s1);
    const double hi = std::max(s0, s1);
    acc += hi > 0 ? lo / hi : 0.0;  // degenerate pairs contribute 0
    ++count;
  }
  return acc / static_cast<double>(count);
}

}  // namespace

RealVector quasienergies(const Matrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("quasienergies: matrix not square");
  if (!is_unitary(u, 1e-8))
    throw std::invalid_argument("quasienergies: operator is not unitary");
  Eigen::ComplexEigenSolver<Matrix> es(u, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("quasienergies: eigendecomposition failed");
  RealVector phases(u.rows());
  for (Index i = 0; i < u.rows(); ++i) {
    const cplx lambda = es.eigenvalues()(i);
    if (std::abs(std::abs(lambda) - 1.0) > 1e-8)
      throw std::runtime_error("quasienergies: eigenvalue off the unit circle");
    double phi = std::arg(lambda);
    if (phi < 0) phi += kTwoPi;
    if (phi >= kTwoPi) phi -= kTwoPi;
    phases(i) = phi;
  }
  std::sort(phases.data(), phases.data() + phases.size());
  return phases;
}

double r_statistic(const RealVector& sorted_phases) {
  if (sorted_phases.size() < 3)
    throw std::invalid_argument("r_statistic: need at least three phases");
  return ratio_mean(raw_spacings(sorted_phases), /*circular=*/true);
}

double eta(double r_mean) {
  return (r_mean - kPoissonRMean) / (kGoeRMean - kPoissonRMean);
}

SpectralStats spectral_stats(const Matrix& u) {
  SpectralStats stats;
  stats.phases = quasienergies(u);
  const RealVector raw = raw_spacings(stats.phases);
  stats.degeneracies = (raw.array() < kDegeneracyTol).count();
  stats.spacings = raw / raw.mean();
  stats.r_mean = ratio_mean(raw, /*circular=*/true);
  stats.eta = eta(stats.r_mean);
  return stats;
}

SpacingHistogram spacing_histogram(const RealVector& sorted_phases, int bins) {
  if (bins < 2) throw std::invalid_argument("spacing_histogram: bins must be >= 2");
  if (sorted_phases.size() < 3)
    throw std::invalid_argument("spacing_histogram: need at least three phases");
  const RealVector raw = raw_spacings(sorted_phases);
  const RealVector s = raw / raw.mean();
  const double top = s.maxCoeff();
  SpacingHistogram h;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i)
    h.edges(i) = top * static_cast<double>(i) / bins;
  h.density = RealVector::Zero(bins);
  const double width = top / bins;
  for (Index i = 0; i < s.size(); ++i) {
    int bin = std::min(bins - 1, static_cast<int>(s(i) / width));
    h.density(bin) += 1.0;
  }
  h.density /= static_cast<double>(s.size()) * width;  // area 1
  h.poisson_ref.resize(bins);
  h.wigner_ref.resize(bins);
  for (int i = 0; i < bins; ++i) {
    const double c = 0.5 * (h.edges(i) + h.edges(i + 1));
    h.poisson_ref(i) = std::exp(-c);
    h.wigner_ref(i) = (std::numbers::pi * c / 2.0) * std::exp(-std::numbers::pi * c * c / 4.0);
  }
  return h;
}

double histogram_l1_poisson(const SpacingHistogram& h) {
  double acc = 0.0;
  for (Index i = 0; i < h.density.size(); ++i)
    acc += std::abs(h.density(i) - h.poisson_ref(i)) * (h.edges(i + 1) - h.edges(i));
  return acc;
}

double histogram_l1_wigner(const SpacingHistogram& h) {
  double acc = 0.0;
  for (Index i = 0; i < h.density.size(); ++i)
    acc += std::abs(h.density(i) - h.wigner_ref(i)) * (h.edges(i + 1) - h.edges(i));
  return acc;
}

double sample_poisson_r(std::size_t num_phases, std::uint64_t seed) {
  if (num_phases < 3)
    throw std::invalid_argument("sample_poisson_r: need at least three phases");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  RealVector phases(static_cast<Index>(num_phases));
  for (Index i = 0; i < phases.size(); ++i) phases(i) = uniform(rng);
  std::sort(phases.data(), phases.data() + phases.size());
  return r_statistic(phases);
}

double sample_goe_r(int num_matrices, int dim, std::uint64_t seed) {
  if (num_matrices < 1 || dim < 8)
    throw std::invalid_argument("sample_goe_r: need num_matrices >= 1 and dim >= 8");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double acc = 0.0;
  for (int m = 0; m < num_matrices; ++m) {
    RealMatrix a(dim, dim);
    for (Index j = 0; j < dim; ++j)
      for (Index i = 0; i < dim; ++i) a(i, j) = gauss(rng);
    RealMatrix sym = (a + a.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("sample_goe_r: eigendecomposition failed");
    // middle 50% of the sorted spectrum avoids edge effects
    const Index lo = dim / 4;
    const Index hi = 3 * dim / 4;
    const RealVector bulk = es.eigenvalues().segment(lo, hi - lo);
    RealVector spacings(bulk.size() - 1);
    for (Index i = 0; i + 1 < bulk.size(); ++i) spacings(i) = bulk(i + 1) - bulk(i);
    acc += ratio_mean(spacings, /*circular=*/false);
  }
  return acc / num_matrices;
}

}  // namespace floqspread
