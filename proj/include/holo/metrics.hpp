#pragma once

#include "holo/types.hpp"

namespace holo {

struct LossWeights {
  double w_amp = 0.4;
  double w_phase = 0.2;
  double w_complex = 0.2;
  double w_freq = 0.2;
  double lambda_phy = 0.1;
};

struct SupervisedLoss {
  double total = 0.0;
  double amp = 0.0;     // mean | |pred| - |gt| |
  double phase = 0.0;   // mean | wrap(arg pred - arg gt) |
  double complex = 0.0; // mean | pred - gt |
  double freq = 0.0;    // mean | log(1+|F pred|) - log(1+|F gt|) |
};

/// Weighted combination used by supervised_loss; exposed so the exact
/// arithmetic is testable on its own.
double weighted_total(const LossWeights& weights, double amp, double phase, double complex_l1,
                      double freq);

SupervisedLoss supervised_loss(const ComplexField& pred, const ComplexField& gt,
                               const LossWeights& weights = {});

/// supervised total + lambda_phy * physics_loss(pred, measured).
double total_loss(const ComplexField& pred, const ComplexField& gt, const Hologram& measured,
                  const OpticalConfig& config, const LossWeights& weights = {});

/// 10*log10(data_range^2 / MSE), capped at 100 dB (also the identical-input
/// sentinel).
inline constexpr double kPsnrCap = 100.0;
double psnr(const RealImage& a, const RealImage& b, double data_range);
double psnr_from_mse(double mse, double data_range);

/// Mean local SSIM, 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03,
/// evaluated where the full window fits. Requires dims >= 11.
double ssim(const RealImage& a, const RealImage& b, double data_range);

/// SSIM of log(1+|F{.}|) magnitude images; data_range is the span of the
/// ground-truth log spectrum.
double freq_ssim(const ComplexField& pred, const ComplexField& gt);

RealImage log_spectrum_image(const ComplexField& field);

/// Background deviation relative to signal strength:
///   mean_bg | |pred| - 1 | / mean_sig | |pred| |.
/// The reference level 1 is the ground-truth median background amplitude
/// (object backgrounds are exactly 1 by construction). Lower is cleaner.
double bs_ratio(const ComplexField& pred, const BinaryMask& gt_mask);

/// Plain background-to-signal mean amplitude ratio
/// (mean_bg |pred| / mean_sig |pred|); ~1 for dirty reconstructions and for
/// the ground truth itself. Used by the baseline-ordering checks.
double background_signal_ratio(const ComplexField& pred, const BinaryMask& gt_mask);

struct Metrics {
  double mse_amp = 0.0;
  double mse_phase = 0.0;   // wrapped difference
  double mse_complex = 0.0; // |pred - gt|^2
  double psnr_amp = 0.0;    // data_range 1.0
  double psnr_phase = 0.0;  // data_range pi, wrapped difference
  double ssim_amp = 0.0;    // data_range = gt amplitude span
  double ssim_phase = 0.0;  // data_range = gt phase span
  double freq_ssim = 0.0;
  double bs_ratio = 0.0;
};

/// Field comparison without any global phase alignment: reconstructions keep
/// whatever carrier phase their method produces.
Metrics compute_metrics(const ComplexField& pred, const ComplexField& gt,
                        const BinaryMask& support);

} // namespace holo
