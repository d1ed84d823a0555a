#include "ogs/imaging.hpp"

#include <png.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

namespace ogs {

namespace {

// Even kernels get a leading zero row/column, so the center tap stays where
// a (K+1)/2-th (1-based) center would put it.
Grid pad_to_odd(const Grid& taps) {
  const std::size_t rpad = taps.rows() % 2 == 0 ? 1 : 0;
  const std::size_t cpad = taps.cols() % 2 == 0 ? 1 : 0;
  if (rpad == 0 && cpad == 0) return taps;
  Grid out(taps.rows() + rpad, taps.cols() + cpad, 0.0);
  for (std::size_t r = 0; r < taps.rows(); ++r) {
    for (std::size_t c = 0; c < taps.cols(); ++c) out(r + rpad, c + cpad) = taps(r, c);
  }
  return out;
}

void require_fits(const Image& img, const BlurKernel& kernel, const char* what) {
  if (img.empty()) throw std::invalid_argument(std::string(what) + ": empty image");
  if (kernel.taps.rows() > img.rows() || kernel.taps.cols() > img.cols()) {
    throw std::invalid_argument(std::string(what) + ": kernel larger than image");
  }
}

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % sn) + sn) % sn);
}

// out(i,j) = sum_ab k(a,b) img(i + sign*(a-cr), j + sign*(b-cc)), circularly.
// sign = -1 is convolution, +1 correlation.
Image circular_filter(const Image& img, const BlurKernel& kernel, int sign) {
  const Grid& k = kernel.taps;
  const auto cr = static_cast<std::ptrdiff_t>((k.rows() - 1) / 2);
  const auto cc = static_cast<std::ptrdiff_t>((k.cols() - 1) / 2);
  Image out(img.rows(), img.cols(), 0.0);
  for (std::size_t a = 0; a < k.rows(); ++a) {
    for (std::size_t b = 0; b < k.cols(); ++b) {
      const double tap = k(a, b);
      if (tap == 0.0) continue;
      const std::ptrdiff_t dr = sign * (static_cast<std::ptrdiff_t>(a) - cr);
      const std::ptrdiff_t dc = sign * (static_cast<std::ptrdiff_t>(b) - cc);
      for (std::size_t i = 0; i < img.rows(); ++i) {
        const std::size_t si = wrap(static_cast<std::ptrdiff_t>(i) + dr, img.rows());
        for (std::size_t j = 0; j < img.cols(); ++j) {
          out(i, j) += tap * img(si, wrap(static_cast<std::ptrdiff_t>(j) + dc, img.cols()));
        }
      }
    }
  }
  return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view whole) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad kernel spec '" + std::string(whole) + "'");
  }
  return value;
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

unsigned char quantize(double v) {
  const double clamped = std::clamp(std::isfinite(v) ? v : 0.0, 0.0, 1.0);
  return static_cast<unsigned char>(std::lround(clamped * 255.0));
}

// Skips whitespace and '#' comments between PGM header fields.
void skip_pgm_space(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

std::size_t read_pgm_field(std::istream& in, const std::string& name) {
  skip_pgm_space(in);
  long long v = -1;
  if (!(in >> v) || v <= 0) throw ImageIoError(name + ": malformed PGM header");
  return static_cast<std::size_t>(v);
}

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError(path.string() + ": cannot open");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') {
    throw ImageIoError(path.string() + ": not a binary PGM (P5)");
  }
  const std::size_t width = read_pgm_field(in, path.string());
  const std::size_t height = read_pgm_field(in, path.string());
  const std::size_t maxval = read_pgm_field(in, path.string());
  if (maxval > 255) throw ImageIoError(path.string() + ": only 8-bit PGM is supported");
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep)) throw ImageIoError(path.string() + ": malformed PGM header");
  std::vector<unsigned char> bytes(width * height);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw ImageIoError(path.string() + ": truncated PGM data");
  }
  Image img(height, width);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    img[i] = static_cast<double>(bytes[i]) / static_cast<double>(maxval);
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError(path.string() + ": cannot open for writing");
  out << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  std::vector<unsigned char> bytes(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) bytes[i] = quantize(img[i]);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageIoError(path.string() + ": write failed");
}

Image read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw ImageIoError(path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<unsigned char> bytes(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, bytes.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError(path.string() + ": " + msg);
  }
  Image img(image.height, image.width);
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<double>(bytes[i]) / 255.0;
  return img;
}

void write_png(const std::filesystem::path& path, const Image& img) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.cols());
  image.height = static_cast<png_uint_32>(img.rows());
  image.format = PNG_FORMAT_GRAY;
  std::vector<unsigned char> bytes(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) bytes[i] = quantize(img[i]);
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, bytes.data(), 0, nullptr)) {
    throw ImageIoError(path.string() + ": " + image.message);
  }
}

}  // namespace

BlurKernel make_average_kernel(std::size_t m) {
  if (m == 0) throw std::invalid_argument("average kernel: size must be >= 1");
  BlurKernel k;
  k.kind = KernelKind::Average;
  k.size = m;
  const double tap = 1.0 / static_cast<double>(m * m);
  k.taps = pad_to_odd(Grid(m, m, tap));
  return k;
}

BlurKernel make_gaussian_kernel(std::size_t size, double sigma) {
  if (size == 0) throw std::invalid_argument("gaussian kernel: size must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian kernel: sigma must be positive");
  }
  Grid taps(size, size);
  const double center = (static_cast<double>(size) - 1.0) / 2.0;
  double total = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const double di = static_cast<double>(i) - center;
      const double dj = static_cast<double>(j) - center;
      taps(i, j) = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
      total += taps(i, j);
    }
  }
  for (double& t : taps) t /= total;
  BlurKernel k;
  k.kind = KernelKind::Gaussian;
  k.size = size;
  k.sigma = sigma;
  k.taps = pad_to_odd(taps);
  return k;
}

BlurKernel make_delta_kernel() {
  BlurKernel k;
  k.kind = KernelKind::Delta;
  k.size = 1;
  k.taps = Grid(1, 1, 1.0);
  return k;
}

BlurKernel parse_kernel(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts[0] == "delta" && parts.size() == 1) return make_delta_kernel();
  if (parts[0] == "average" && parts.size() == 2) {
    return make_average_kernel(parse_number<std::size_t>(parts[1], text));
  }
  if (parts[0] == "gaussian" && parts.size() == 3) {
    return make_gaussian_kernel(parse_number<std::size_t>(parts[1], text),
                                parse_number<double>(parts[2], text));
  }
  throw std::invalid_argument("bad kernel spec '" + std::string(text) +
                              "' (expected average:m, gaussian:size:sigma or delta)");
}

std::string to_string(const BlurKernel& kernel) {
  switch (kernel.kind) {
    case KernelKind::Average:
      return "average:" + std::to_string(kernel.size);
    case KernelKind::Gaussian: {
      std::ostringstream s;
      s << "gaussian:" << kernel.size << ':' << kernel.sigma;
      return s.str();
    }
    case KernelKind::Delta:
      return "delta";
  }
  return "delta";
}

Image blur_periodic(const Image& img, const BlurKernel& kernel) {
  require_fits(img, kernel, "blur_periodic");
  return circular_filter(img, kernel, -1);
}

Image blur_adjoint(const Image& img, const BlurKernel& kernel) {
  require_fits(img, kernel, "blur_adjoint");
  return circular_filter(img, kernel, +1);
}

Spectrum kernel_eigenvalues(const BlurKernel& kernel, std::size_t rows, std::size_t cols) {
  const Grid& k = kernel.taps;
  if (k.rows() > rows || k.cols() > cols) {
    throw std::invalid_argument("kernel_eigenvalues: kernel larger than image");
  }
  const auto cr = static_cast<std::ptrdiff_t>((k.rows() - 1) / 2);
  const auto cc = static_cast<std::ptrdiff_t>((k.cols() - 1) / 2);
  Grid psf(rows, cols, 0.0);
  for (std::size_t a = 0; a < k.rows(); ++a) {
    for (std::size_t b = 0; b < k.cols(); ++b) {
      psf(wrap(static_cast<std::ptrdiff_t>(a) - cr, rows),
          wrap(static_cast<std::ptrdiff_t>(b) - cc, cols)) += k(a, b);
    }
  }
  RealFft2d fft(rows, cols);
  return fft.forward(psf);
}

Image add_gaussian_noise(const Image& img, double bsnr_db, std::uint64_t seed) {
  const double signal = norm2(img);
  if (!(signal > 0.0)) throw std::invalid_argument("add_gaussian_noise: zero image");
  if (std::isnan(bsnr_db)) throw std::invalid_argument("add_gaussian_noise: bsnr is NaN");
  if (bsnr_db == std::numeric_limits<double>::infinity()) return img;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Image noise(img.rows(), img.cols());
  for (double& v : noise) v = normal(rng);
  const double target = signal / std::pow(10.0, bsnr_db / 20.0);
  const double scale = target / norm2(noise);
  Image out = img;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * noise[i];
  return out;
}

Image add_salt_pepper(const Image& img, double level, std::uint64_t seed) {
  if (!(level >= 0.0 && level <= 1.0)) {
    throw std::invalid_argument("add_salt_pepper: level must be in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Image out = img;
  for (double& v : out) {
    const double r = uniform(rng);
    if (r < level / 2.0) {
      v = 0.0;
    } else if (r < level) {
      v = 1.0;
    }
  }
  return out;
}

double psnr(const Image& f, const Image& ref) {
  require_same_shape(f, ref, "psnr");
  const Image diff = f - ref;
  const double err = dot(diff, diff);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(static_cast<double>(f.size()) / err);
}

double rel_err(const Image& f, const Image& ref) {
  require_same_shape(f, ref, "rel_err");
  return norm2(f - ref) / norm2(ref);
}

double mae(const Image& f, const Image& ref) {
  require_same_shape(f, ref, "mae");
  if (f.empty()) throw std::invalid_argument("mae: empty images");
  return norm1(f - ref) / static_cast<double>(f.size());
}

double bsnr(const Image& signal, const Image& noise) {
  return 20.0 * std::log10(norm2(signal) / norm2(noise));
}

Image read_image(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".png") return read_png(path);
  throw ImageIoError(path.string() + ": unsupported format (use .pgm or .png)");
}

void write_image(const std::filesystem::path& path, const Image& img) {
  if (img.empty()) throw ImageIoError(path.string() + ": empty image");
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") return write_pgm(path, img);
  if (ext == ".png") return write_png(path, img);
  throw ImageIoError(path.string() + ": unsupported format (use .pgm or .png)");
}

Image synthetic_phantom(std::size_t rows, std::size_t cols) {
  Image img(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const double y = (static_cast<double>(i) + 0.5) / static_cast<double>(rows);
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = (static_cast<double>(j) + 0.5) / static_cast<double>(cols);
      double v = 0.2;
      if (y > 0.08 && y < 0.42 && x > 0.08 && x < 0.38) v = 0.8;
      if (y > 0.18 && y < 0.32 && x > 0.18 && x < 0.28) v = 0.45;
      const double dy = y - 0.72;
      const double dx = x - 0.27;
      if (dx * dx + dy * dy < 0.17 * 0.17) v = 0.55;
      const double ry = y - 0.28;
      const double rx = x - 0.7;
      const double rr = std::sqrt(rx * rx + ry * ry);
      if (rr > 0.1 && rr < 0.18) v = 0.9;
      if (rr <= 0.1) v = 0.1;
      // Triangle with vertices (0.55,0.55), (0.92,0.55), (0.92,0.92) in (y,x).
      if (y > 0.55 && y < 0.92 && x > 0.55 && x < y) v = 0.85;
      // Thin bars.
      if (y > 0.6 && y < 0.9 && x > 0.47 && x < 0.52) v = 0.1;
      if (y > 0.94 && y < 0.97 && x > 0.1 && x < 0.9) v = 0.7;
      img(i, j) = v;
    }
  }
  return img;
}

}  // namespace ogs
