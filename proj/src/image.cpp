#include "bvms/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <sstream>

namespace bvms {

ImageRecord ImageRecord::from_field(ScalarField f, std::string source) {
  ImageRecord rec;
  rec.h = 1.0 / static_cast<double>(f.cols());
  rec.field = std::move(f);
  rec.source = std::move(source);
  return rec;
}

ImageFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".pgm" || ext == ".pnm") return ImageFormat::PGM;
  if (ext == ".png") return ImageFormat::PNG;
  throw ImageError("unsupported image extension '" + ext + "' for " + path.string());
}

namespace {

// --- PGM -------------------------------------------------------------------------

// Reads the next whitespace-separated token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

long parse_positive(const std::string& tok, const std::string& what, const std::string& path) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ImageError("malformed PGM " + what + " in " + path);
  }
}

ImageRecord load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError("cannot open " + path.string());
  const std::string magic = next_token(in);
  if (magic == "P3" || magic == "P6") throw ImageError("unsupported: multi-channel image " + path.string());
  if (magic != "P2" && magic != "P5") throw ImageError("not a PGM file: " + path.string());
  const long width = parse_positive(next_token(in), "width", path.string());
  const long height = parse_positive(next_token(in), "height", path.string());
  const long maxval = parse_positive(next_token(in), "maxval", path.string());
  if (maxval > 65535) throw ImageError("PGM maxval above 65535 in " + path.string());

  const auto w = static_cast<std::size_t>(width), hgt = static_cast<std::size_t>(height);
  std::vector<double> data(w * hgt);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (magic == "P2") {
    for (auto& x : data) {
      const std::string tok = next_token(in);
      if (tok.empty()) throw ImageError("truncated PGM data in " + path.string());
      long raw = 0;
      try {
        raw = std::stol(tok);
      } catch (const std::exception&) {
        throw ImageError("malformed PGM sample in " + path.string());
      }
      if (raw < 0 || raw > maxval) throw ImageError("PGM sample out of range in " + path.string());
      x = raw * scale;
    }
  } else {
    // next_token consumed the single whitespace byte after maxval
    const std::size_t bytes_per = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(data.size() * bytes_per);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw ImageError("truncated PGM data in " + path.string());
    for (std::size_t k = 0; k < data.size(); ++k) {
      const unsigned value = bytes_per == 1 ? raw[k] : (unsigned(raw[2 * k]) << 8) | raw[2 * k + 1];
      if (value > static_cast<unsigned>(maxval)) throw ImageError("PGM sample out of range in " + path.string());
      data[k] = value * scale;
    }
  }
  return ImageRecord::from_field(ScalarField(hgt, w, std::move(data)), path.string());
}

std::vector<unsigned char> to_bytes(const ScalarField& f) {
  std::vector<unsigned char> bytes(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) bytes[k] = static_cast<unsigned char>(std::lround(255.0 * f[k]));
  return bytes;
}

void save_pgm(const ScalarField& f, const std::filesystem::path& path) {
  const auto bytes = to_bytes(f);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageError("cannot write " + path.string());
  out << "P5\n" << f.cols() << ' ' << f.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageError("write failed for " + path.string());
}

// --- PNG -------------------------------------------------------------------------

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

ImageRecord load_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw ImageError("cannot open " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw ImageError("libpng: cannot create read struct");
  png_infop info = png_create_info_struct(png);
  std::vector<unsigned char> pixels;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;
  int bit_depth = 0, color_type = 0;
  volatile bool multi_channel = false;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageError("malformed PNG " + path.string());
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);
  png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);
  if (color_type != PNG_COLOR_TYPE_GRAY) {
    multi_channel = true;
  } else {
    if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    pixels.resize(stride * height);
    rows.resize(height);
    for (png_uint_32 r = 0; r < height; ++r) rows[r] = pixels.data() + r * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (multi_channel) throw ImageError("unsupported: multi-channel image " + path.string());

  const std::size_t w = width, hgt = height;
  std::vector<double> data(w * hgt);
  if (bit_depth == 16) {
    for (std::size_t k = 0; k < data.size(); ++k)
      data[k] = ((unsigned(pixels[2 * k]) << 8) | pixels[2 * k + 1]) / 65535.0;
  } else {
    for (std::size_t k = 0; k < data.size(); ++k) data[k] = pixels[k] / 255.0;
  }
  return ImageRecord::from_field(ScalarField(hgt, w, std::move(data)), path.string());
}

void save_png(const ScalarField& f, const std::filesystem::path& path) {
  auto bytes = to_bytes(f);
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw ImageError("cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw ImageError("libpng: cannot create write struct");
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows(f.rows());
  for (std::size_t r = 0; r < f.rows(); ++r) rows[r] = bytes.data() + r * f.cols();
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw ImageError("PNG write failed for " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(f.cols()), static_cast<png_uint_32>(f.rows()), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

ImageRecord load_gray(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ImageError("no such file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError("cannot open " + path.string());
  char magic[8] = {};
  in.read(magic, sizeof magic);
  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (in.gcount() == 8 && std::equal(png_sig, png_sig + 8, reinterpret_cast<const unsigned char*>(magic)))
    return load_png(path);
  if (in.gcount() >= 2 && magic[0] == 'P') return load_pgm(path);
  throw ImageError("unrecognised image format (expected PGM or PNG): " + path.string());
}

void save_gray(const ScalarField& field, const std::filesystem::path& path, ImageFormat format) {
  for (double x : field.values())
    if (!(x >= 0.0 && x <= 1.0)) throw ImageError("save_gray: sample outside [0,1] for " + path.string());
  if (format == ImageFormat::PNG)
    save_png(field, path);
  else
    save_pgm(field, path);
}

void save_gray(const ScalarField& field, const std::filesystem::path& path) {
  save_gray(field, path, format_from_path(path));
}

// --- synthetic -----------------------------------------------------------------------

ImageRecord synth_disk(std::size_t n, double radius_frac, double inside, double outside) {
  if (!(radius_frac > 0.0 && radius_frac < 0.5)) throw std::invalid_argument("synth_disk: radius_frac must lie in (0, 0.5)");
  if (!(inside >= 0.0 && inside <= 1.0 && outside >= 0.0 && outside <= 1.0))
    throw std::invalid_argument("synth_disk: values must lie in [0,1]");
  ScalarField f(n, n, outside);
  const double h = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = (i + 0.5) * h - 0.5, y = (j + 0.5) * h - 0.5;
      if (x * x + y * y <= radius_frac * radius_frac) f(i, j) = inside;
    }
  }
  std::ostringstream desc;
  desc << "synth:disk:" << n << ':' << radius_frac << ':' << inside << ':' << outside;
  return ImageRecord::from_field(std::move(f), desc.str());
}

ImageRecord synth_constant(std::size_t n, double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("synth_constant: value must lie in [0,1]");
  std::ostringstream desc;
  desc << "synth:const:" << n << ':' << value;
  return ImageRecord::from_field(ScalarField(n, n, value), desc.str());
}

ScalarField Signal1D::as_column() const { return ScalarField(samples.size(), 1, samples); }

Signal1D Signal1D::from_column(const ScalarField& f, double h) {
  if (f.cols() != 1) throw ShapeError("Signal1D::from_column: expected an N x 1 field");
  Signal1D s;
  s.samples.assign(f.values().begin(), f.values().end());
  s.h = h;
  return s;
}

Signal1D synth_step_1d(std::size_t n, double position) {
  if (n < 2) throw std::invalid_argument("synth_step_1d: need n >= 2");
  Signal1D s;
  s.h = 1.0 / static_cast<double>(n);
  s.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) s.samples[k] = (k + 0.5) * s.h < position ? 0.0 : 1.0;
  if (position > 0.0 && position < 1.0) s.true_jumps.push_back(position);
  return s;
}

Signal1D synth_ramp_1d(std::size_t n, double slope, double offset) {
  if (n < 2) throw std::invalid_argument("synth_ramp_1d: need n >= 2");
  Signal1D s;
  s.h = 1.0 / static_cast<double>(n);
  s.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) s.samples[k] = offset + slope * (k + 0.5) * s.h;
  return s;
}

Signal1D synth_constant_1d(std::size_t n, double value) {
  if (n < 2) throw std::invalid_argument("synth_constant_1d: need n >= 2");
  Signal1D s;
  s.h = 1.0 / static_cast<double>(n);
  s.samples.assign(n, value);
  return s;
}

// --- noise -----------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1] from counter `index` of stream `seed`.
double uniform_open0(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits = splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL));
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

double gaussian_sample(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t pair = index / 2;
  const double u1 = uniform_open0(seed, 2 * pair);
  const double u2 = uniform_open0(seed, 2 * pair + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return index % 2 == 0 ? r * std::cos(angle) : r * std::sin(angle);
}

ImageRecord add_gaussian_noise(const ImageRecord& img, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("add_gaussian_noise: sigma must be >= 0");
  ImageRecord out = img;
  if (sigma == 0.0) return out;
  for (std::size_t k = 0; k < out.field.size(); ++k)
    out.field[k] = std::clamp(img.field[k] + sigma * gaussian_sample(seed, k), 0.0, 1.0);
  std::ostringstream desc;
  desc << img.source << "+noise(" << sigma << ',' << seed << ')';
  out.source = desc.str();
  return out;
}

// --- metrics ----------------------------------------------------------------------------

double psnr(const ScalarField& x, const ScalarField& reference) {
  require_same_shape(x, reference, "psnr");
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += (x[k] - reference[k]) * (x[k] - reference[k]);
  const double mse = acc / static_cast<double>(x.size());
  if (mse == 0.0) return kInfinitePsnr;
  return 10.0 * std::log10(1.0 / mse);
}

double intermediate_fraction(const ScalarField& v, double band) {
  if (!(band > 0.0 && band < 0.5)) throw std::invalid_argument("intermediate_fraction: band must lie in (0, 0.5)");
  std::size_t count = 0;
  for (double x : v.values())
    if (x > band && x < 1.0 - band) ++count;
  return static_cast<double>(count) / static_cast<double>(v.size());
}

std::string Metrics::csv_row() const {
  std::ostringstream os;
  os << std::setprecision(17) << psnr_in << ',' << psnr_out << ',' << intermediate_fraction << ',' << tv_v;
  return os.str();
}

Metrics metrics(const ScalarField& u, const ScalarField& v, const ScalarField& g_clean, const ScalarField& g_noisy,
                double band) {
  require_same_shape(u, v, "metrics");
  Metrics m;
  m.psnr_in = psnr(g_noisy, g_clean);
  m.psnr_out = psnr(u, g_clean);
  m.intermediate_fraction = intermediate_fraction(v, band);
  m.tv_v = norm1_of_pointwise(grad(v, 1.0));
  return m;
}

}  // namespace bvms
