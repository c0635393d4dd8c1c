#pragma once

/// \file image.hpp
/// \brief Grayscale image I/O (PGM P2/P5, PNG), synthetic phantoms, seeded
/// Gaussian noise and reconstruction metrics.

#include "bvms/field.hpp"

#include <cstdint>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvms {

class ImageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field with samples in [0, 1] on a domain of width 1, so h = 1 / cols.
struct ImageRecord {
  ScalarField field;
  std::string source;  ///< file path or synthetic descriptor
  double h = 1.0;

  static ImageRecord from_field(ScalarField f, std::string source);
};

enum class ImageFormat { PGM, PNG };

/// Format by extension: .pgm/.pnm -> PGM, .png -> PNG.
ImageFormat format_from_path(const std::filesystem::path& path);

/// Decodes 8/16-bit PGM (P2 or P5) or grayscale PNG, chosen by file signature, and divides
/// by the format maximum.
/// Multi-channel inputs raise ImageError("unsupported: multi-channel ...").
ImageRecord load_gray(const std::filesystem::path& path);

/// Writes 8-bit PGM (P5) or PNG with byte = round(255 * sample).
/// Samples outside [0, 1] raise ImageError before anything is written.
void save_gray(const ScalarField& field, const std::filesystem::path& path, ImageFormat format);
void save_gray(const ScalarField& field, const std::filesystem::path& path);

// --- synthetic data -------------------------------------------------------------

/// n x n image, `inside` within radius_frac * width of the centre, `outside` elsewhere.
ImageRecord synth_disk(std::size_t n, double radius_frac, double inside, double outside);

ImageRecord synth_constant(std::size_t n, double value);

/// One-dimensional samples on [0, 1] with spacing h = 1/n (sample k at (k + 1/2) h).
struct Signal1D {
  std::vector<double> samples;
  double h = 1.0;
  std::vector<double> true_jumps;  ///< jump locations in [0, 1]

  /// N x 1 field (rows = samples) for the 2D machinery.
  ScalarField as_column() const;
  static Signal1D from_column(const ScalarField& f, double h);
};

/// Unit step: 0 left of `position`, 1 right of it.
Signal1D synth_step_1d(std::size_t n, double position);
Signal1D synth_ramp_1d(std::size_t n, double slope, double offset = 0.0);
Signal1D synth_constant_1d(std::size_t n, double value);

// --- noise ------------------------------------------------------------------------

/// Adds i.i.d. N(0, sigma^2) and clamps to [0, 1]. Samples come from Box-Muller over a
/// counter-based SplitMix64 stream keyed by `seed`; output depends only on (image, sigma, seed).
ImageRecord add_gaussian_noise(const ImageRecord& img, double sigma, std::uint64_t seed);

/// Standard normal sample number `index` of stream `seed`.
double gaussian_sample(std::uint64_t seed, std::uint64_t index);

// --- metrics ----------------------------------------------------------------------

inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

/// 10 log10(1/mse); kInfinitePsnr when mse == 0.
double psnr(const ScalarField& x, const ScalarField& reference);

/// Fraction of samples with band < v < 1 - band.
double intermediate_fraction(const ScalarField& v, double band);

struct Metrics {
  double psnr_in = 0;   ///< noisy input vs clean
  double psnr_out = 0;  ///< reconstruction vs clean
  double intermediate_fraction = 0;
  double tv_v = 0;      ///< || |grad_1 v| ||_1

  static constexpr const char* kCsvHeader = "psnr_in,psnr_out,intermediate_fraction,tv_v";
  std::string csv_row() const;
};

Metrics metrics(const ScalarField& u, const ScalarField& v, const ScalarField& g_clean,
                const ScalarField& g_noisy, double band);

}  // namespace bvms
