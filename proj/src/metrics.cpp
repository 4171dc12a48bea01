#include "dualfit/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <nlohmann/json.hpp>

namespace dualfit {

namespace {

void require_comparable(const Image& a, const Image& b, const char* what) {
  require(a.same_shape(b), std::string(what) + ": image shapes differ");
}

// Rows are accumulated in parallel, then combined in fixed row order, so
// the result does not depend on the thread count.
template <typename PerSample>
double mean_over_samples(const Image& a, const Image& b, PerSample&& term) {
  const int h = a.height;
  const std::size_t row_samples =
      static_cast<std::size_t>(a.width) * a.channels;
  std::vector<double> row_sums(h, 0.0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    const std::size_t base = row_samples * y;
    double sum = 0.0;
    for (std::size_t i = 0; i < row_samples; ++i)
      sum += term(a.data[base + i], b.data[base + i]);
    row_sums[y] = sum;
  }
  double total = 0.0;
  for (double s : row_sums) total += s;
  return total / (row_samples * static_cast<double>(h));
}

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;

const std::array<double, kSsimWindow * kSsimWindow>& ssim_weights() {
  static const auto weights = [] {
    std::array<double, kSsimWindow * kSsimWindow> w{};
    const int r = kSsimWindow / 2;
    double total = 0.0;
    for (int j = -r; j <= r; ++j)
      for (int i = -r; i <= r; ++i) {
        const double g =
            std::exp(-(i * i + j * j) / (2.0 * kSsimSigma * kSsimSigma));
        w[(j + r) * kSsimWindow + (i + r)] = g;
        total += g;
      }
    for (double& v : w) v /= total;
    return w;
  }();
  return weights;
}

double ssim_window(const Image& a, const Image& b, int x0, int y0, int c) {
  const auto& w = ssim_weights();
  double mu_a = 0.0, mu_b = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
  for (int j = 0; j < kSsimWindow; ++j) {
    for (int i = 0; i < kSsimWindow; ++i) {
      const double weight = w[j * kSsimWindow + i];
      const double va = a.at(x0 + i, y0 + j, c);
      const double vb = b.at(x0 + i, y0 + j, c);
      const double wa = weight * va;
      const double wb = weight * vb;
      mu_a += wa;
      mu_b += wb;
      saa += wa * va;
      sbb += wb * vb;
      sab += wa * vb;
    }
  }
  const double var_a = saa - mu_a * mu_a;
  const double var_b = sbb - mu_b * mu_b;
  const double cov = sab - mu_a * mu_b;
  const double num = (2.0 * mu_a * mu_b + kSsimC1) * (2.0 * cov + kSsimC2);
  const double den =
      (mu_a * mu_a + mu_b * mu_b + kSsimC1) * (var_a + var_b + kSsimC2);
  return num / den;
}

}  // namespace

double mse(const Image& a, const Image& b) {
  require_comparable(a, b, "mse");
  return mean_over_samples(a, b, [](float x, float y) {
    const double d = static_cast<double>(x) - y;
    return d * d;
  });
}

double l1(const Image& a, const Image& b) {
  require_comparable(a, b, "l1");
  return mean_over_samples(a, b, [](float x, float y) {
    return std::abs(static_cast<double>(x) - y);
  });
}

PsnrValue psnr(const Image& a, const Image& b) {
  const double err = mse(a, b);
  if (err == 0.0) return {true, 0.0};
  return {false, 10.0 * std::log10(1.0 / err)};
}

double ssim(const Image& a, const Image& b) {
  require_comparable(a, b, "ssim");
  require(a.width >= kSsimWindow && a.height >= kSsimWindow,
          "ssim: image smaller than the 11x11 window");

  const int rows = a.height - kSsimWindow + 1;
  const int cols = a.width - kSsimWindow + 1;
  double channel_sum = 0.0;
  for (int c = 0; c < a.channels; ++c) {
    std::vector<double> row_sums(rows, 0.0);
#pragma omp parallel for schedule(static)
    for (int y0 = 0; y0 < rows; ++y0) {
      double sum = 0.0;
      for (int x0 = 0; x0 < cols; ++x0) sum += ssim_window(a, b, x0, y0, c);
      row_sums[y0] = sum;
    }
    double total = 0.0;
    for (double s : row_sums) total += s;
    channel_sum += total / (static_cast<double>(rows) * cols);
  }
  return channel_sum / a.channels;
}

MetricReport evaluate_pairs(const std::vector<MetricPairInput>& pairs,
                            const BandSpec& band, const SolverSpec& solver) {
  MetricReport report;
  report.band = band;
  report.solver = solver;

  std::vector<MetricPairInput> ordered = pairs;
  std::sort(ordered.begin(), ordered.end(),
            [](const MetricPairInput& a, const MetricPairInput& b) {
              return a.id < b.id;
            });

  for (const auto& pair : ordered) {
    require(pair.ground_truth != nullptr && pair.output != nullptr,
            "evaluate_pairs: missing image for id '" + pair.id + "'");
    if (!pair.ground_truth->same_shape(*pair.output))
      throw ValidationError("evaluate_pairs: dimension mismatch for id '" +
                            pair.id + "'");
    PairMetrics m;
    m.id = pair.id;
    m.mse = mse(*pair.ground_truth, *pair.output);
    m.psnr = psnr(*pair.ground_truth, *pair.output);
    m.ssim = ssim(*pair.ground_truth, *pair.output);
    m.l1 = l1(*pair.ground_truth, *pair.output);
    report.per_pair.push_back(std::move(m));
  }

  if (!report.per_pair.empty()) {
    MetricAggregate agg;
    int finite_psnr = 0;
    for (const auto& m : report.per_pair) {
      agg.mse += m.mse;
      agg.ssim += m.ssim;
      agg.l1 += m.l1;
      if (!m.psnr.infinite) {
        agg.psnr.db += m.psnr.db;
        finite_psnr++;
      }
    }
    const double n = static_cast<double>(report.per_pair.size());
    agg.mse /= n;
    agg.ssim /= n;
    agg.l1 /= n;
    if (finite_psnr > 0)
      agg.psnr.db /= finite_psnr;
    else
      agg.psnr.infinite = true;
    report.aggregate = agg;
  }
  return report;
}

namespace {

nlohmann::json psnr_to_json(const PsnrValue& v) {
  if (v.infinite) return nullptr;
  return v.db;
}

}  // namespace

nlohmann::json report_to_json(const MetricReport& report) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& m : report.per_pair) {
    pairs.push_back({{"id", m.id},
                     {"mse", m.mse},
                     {"psnr_db", psnr_to_json(m.psnr)},
                     {"psnr_infinite", m.psnr.infinite},
                     {"ssim", m.ssim},
                     {"l1", m.l1}});
  }

  nlohmann::json aggregate = nullptr;
  if (report.aggregate) {
    const auto& a = *report.aggregate;
    aggregate = {{"mse", a.mse},
                 {"psnr_db", psnr_to_json(a.psnr)},
                 {"psnr_infinite", a.psnr.infinite},
                 {"ssim", a.ssim},
                 {"l1", a.l1},
                 {"fid", nullptr},
                 {"lpips", nullptr},
                 {"dists", nullptr}};
  }

  return {{"pairs", pairs},
          {"aggregate", aggregate},
          {"config",
           {{"band_n", report.band.iterations},
            {"kernel", report.band.kernel_size},
            {"tol", report.solver.tolerance},
            {"max_iters", report.solver.max_iterations}}}};
}

}  // namespace dualfit
