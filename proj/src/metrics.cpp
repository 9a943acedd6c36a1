#include "holo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holo/fft.hpp"
#include "holo/propagation.hpp"

namespace holo {

double weighted_total(const LossWeights& w, double amp, double phase, double complex_l1,
                      double freq) {
  return w.w_amp * amp + w.w_phase * phase + w.w_complex * complex_l1 + w.w_freq * freq;
}

SupervisedLoss supervised_loss(const ComplexField& pred, const ComplexField& gt,
                               const LossWeights& weights) {
  ensure_same_shape(pred.height, pred.width, gt.height, gt.width, "supervised_loss");
  const std::size_t n = pred.data.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  SupervisedLoss loss;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = pred.data[i];
    const Complex g = gt.data[i];
    loss.amp += std::abs(std::abs(p) - std::abs(g));
    loss.phase += std::abs(wrap_phase(std::arg(p) - std::arg(g)));
    loss.complex += std::abs(p - g);
  }
  loss.amp *= inv_n;
  loss.phase *= inv_n;
  loss.complex *= inv_n;

  const ComplexField fp = fft2(pred);
  const ComplexField fg = fft2(gt);
  for (std::size_t i = 0; i < n; ++i)
    loss.freq += std::abs(std::log1p(std::abs(fp.data[i])) - std::log1p(std::abs(fg.data[i])));
  loss.freq *= inv_n;

  loss.total = weighted_total(weights, loss.amp, loss.phase, loss.complex, loss.freq);
  return loss;
}

double total_loss(const ComplexField& pred, const ComplexField& gt, const Hologram& measured,
                  const OpticalConfig& config, const LossWeights& weights) {
  return supervised_loss(pred, gt, weights).total +
         weights.lambda_phy * physics_loss(pred, measured, config);
}

double psnr_from_mse(double mse, double data_range) {
  if (!(data_range > 0.0)) throw ValidationError("psnr data_range must be > 0");
  if (mse <= 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(data_range * data_range / mse));
}

double psnr(const RealImage& a, const RealImage& b, double data_range) {
  ensure_same_shape(a.height, a.width, b.height, b.width, "psnr");
  double mse = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    mse += d * d;
  }
  mse /= static_cast<double>(a.data.size());
  return psnr_from_mse(mse, data_range);
}

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;

const std::vector<double>& ssim_kernel() {
  static const std::vector<double> kernel = [] {
    std::vector<double> k(kSsimWindow);
    double sum = 0.0;
    for (int i = 0; i < kSsimWindow; ++i) {
      const double d = i - kSsimWindow / 2;
      k[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
      sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
  }();
  return kernel;
}

// Separable Gaussian filtering restricted to positions where the full window
// fits; output is (h-10) x (w-10).
std::vector<double> filter_valid(const std::vector<double>& img, int h, int w) {
  const auto& k = ssim_kernel();
  const int half = kSsimWindow / 2;
  std::vector<double> rows(static_cast<std::size_t>(h) * (w - 2 * half));
  const int wv = w - 2 * half;
  for (int r = 0; r < h; ++r) {
    for (int c = half; c < w - half; ++c) {
      double acc = 0.0;
      for (int t = -half; t <= half; ++t)
        acc += k[t + half] * img[static_cast<std::size_t>(r) * w + c + t];
      rows[static_cast<std::size_t>(r) * wv + (c - half)] = acc;
    }
  }
  const int hv = h - 2 * half;
  std::vector<double> out(static_cast<std::size_t>(hv) * wv);
  for (int r = half; r < h - half; ++r) {
    for (int c = 0; c < wv; ++c) {
      double acc = 0.0;
      for (int t = -half; t <= half; ++t)
        acc += k[t + half] * rows[static_cast<std::size_t>(r + t) * wv + c];
      out[static_cast<std::size_t>(r - half) * wv + c] = acc;
    }
  }
  return out;
}

std::vector<double> elementwise_product(const std::vector<double>& a,
                                        const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

} // namespace

double ssim(const RealImage& a, const RealImage& b, double data_range) {
  ensure_same_shape(a.height, a.width, b.height, b.width, "ssim");
  if (a.height < kSsimWindow || a.width < kSsimWindow)
    throw ValidationError("ssim requires images of at least 11x11");
  if (!(data_range > 0.0)) throw ValidationError("ssim data_range must be > 0");

  const double c1 = (0.01 * data_range) * (0.01 * data_range);
  const double c2 = (0.03 * data_range) * (0.03 * data_range);

  const auto mu_a = filter_valid(a.data, a.height, a.width);
  const auto mu_b = filter_valid(b.data, a.height, a.width);
  const auto m_aa = filter_valid(elementwise_product(a.data, a.data), a.height, a.width);
  const auto m_bb = filter_valid(elementwise_product(b.data, b.data), a.height, a.width);
  const auto m_ab = filter_valid(elementwise_product(a.data, b.data), a.height, a.width);

  double acc = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double va = m_aa[i] - mu_a[i] * mu_a[i];
    const double vb = m_bb[i] - mu_b[i] * mu_b[i];
    const double cov = m_ab[i] - mu_a[i] * mu_b[i];
    acc += ((2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2)) /
           ((mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (va + vb + c2));
  }
  return acc / static_cast<double>(mu_a.size());
}

RealImage log_spectrum_image(const ComplexField& field) {
  const ComplexField spectrum = fft2(field);
  RealImage img{field.height, field.width, {}};
  img.data.reserve(spectrum.data.size());
  for (const Complex& v : spectrum.data) img.data.push_back(std::log1p(std::abs(v)));
  return img;
}

namespace {

double image_span(const RealImage& img) {
  const auto [lo, hi] = std::minmax_element(img.data.begin(), img.data.end());
  return *hi - *lo;
}

double span_or_unit(const RealImage& img) {
  const double s = image_span(img);
  return s > 0.0 ? s : 1.0;
}

} // namespace

double freq_ssim(const ComplexField& pred, const ComplexField& gt) {
  ensure_same_shape(pred.height, pred.width, gt.height, gt.width, "freq_ssim");
  const RealImage lp = log_spectrum_image(pred);
  const RealImage lg = log_spectrum_image(gt);
  return ssim(lp, lg, span_or_unit(lg));
}

double bs_ratio(const ComplexField& pred, const BinaryMask& gt_mask) {
  ensure_same_shape(pred.height, pred.width, gt_mask.height, gt_mask.width, "bs_ratio");
  const std::size_t signal = gt_mask.count_set();
  const std::size_t background = pred.data.size() - signal;
  if (signal == 0 || background == 0)
    throw ValidationError("bs_ratio requires a mask with both signal and background pixels");

  double bg_dev = 0.0;
  double sig_amp = 0.0;
  for (std::size_t i = 0; i < pred.data.size(); ++i) {
    const double a = std::abs(pred.data[i]);
    if (gt_mask.data[i])
      sig_amp += a;
    else
      bg_dev += std::abs(a - 1.0);
  }
  bg_dev /= static_cast<double>(background);
  sig_amp /= static_cast<double>(signal);
  return sig_amp > 0.0 ? bg_dev / sig_amp : 0.0;
}

double background_signal_ratio(const ComplexField& pred, const BinaryMask& gt_mask) {
  ensure_same_shape(pred.height, pred.width, gt_mask.height, gt_mask.width,
                    "background_signal_ratio");
  const std::size_t signal = gt_mask.count_set();
  const std::size_t background = pred.data.size() - signal;
  if (signal == 0 || background == 0)
    throw ValidationError(
        "background_signal_ratio requires a mask with both signal and background pixels");

  double bg = 0.0;
  double sig = 0.0;
  for (std::size_t i = 0; i < pred.data.size(); ++i) {
    const double a = std::abs(pred.data[i]);
    if (gt_mask.data[i])
      sig += a;
    else
      bg += a;
  }
  bg /= static_cast<double>(background);
  sig /= static_cast<double>(signal);
  return sig > 0.0 ? bg / sig : 0.0;
}

Metrics compute_metrics(const ComplexField& pred, const ComplexField& gt,
                        const BinaryMask& support) {
  ensure_same_shape(pred.height, pred.width, gt.height, gt.width, "compute_metrics");
  const std::size_t n = pred.data.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  Metrics m;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = pred.data[i];
    const Complex g = gt.data[i];
    const double da = std::abs(p) - std::abs(g);
    const double dp = wrap_phase(std::arg(p) - std::arg(g));
    m.mse_amp += da * da;
    m.mse_phase += dp * dp;
    m.mse_complex += std::norm(p - g);
  }
  m.mse_amp *= inv_n;
  m.mse_phase *= inv_n;
  m.mse_complex *= inv_n;

  m.psnr_amp = psnr_from_mse(m.mse_amp, 1.0);
  m.psnr_phase = psnr_from_mse(m.mse_phase, std::numbers::pi);

  const RealImage pa = amplitude_image(pred);
  const RealImage ga = amplitude_image(gt);
  const RealImage pp = phase_image(pred);
  const RealImage gp = phase_image(gt);
  m.ssim_amp = ssim(pa, ga, span_or_unit(ga));
  m.ssim_phase = ssim(pp, gp, span_or_unit(gp));
  m.freq_ssim = holo::freq_ssim(pred, gt);
  m.bs_ratio = holo::bs_ratio(pred, support);
  return m;
}

} // namespace holo
