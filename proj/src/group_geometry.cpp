#include "ogs/group_geometry.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "ogs/fft.hpp"

namespace ogs {

std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Periodic:
      return "periodic";
    case BoundaryCondition::Zero:
      return "zero";
    case BoundaryCondition::Reflective:
      return "reflective";
  }
  return "unknown";
}

BoundaryCondition parse_boundary_condition(std::string_view text) {
  if (text == "periodic" || text == "pbc") return BoundaryCondition::Periodic;
  if (text == "zero" || text == "0bc") return BoundaryCondition::Zero;
  if (text == "reflective" || text == "symmetric") return BoundaryCondition::Reflective;
  throw std::invalid_argument("unknown boundary condition '" + std::string(text) + "'");
}

GroupShape::GroupShape(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("GroupShape: sizes must be positive");
}

GroupWeights::GroupWeights(Grid values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("GroupWeights: empty weight array");
  for (double& w : values_) {
    if (!std::isfinite(w)) throw std::invalid_argument("GroupWeights: non-finite weight");
    w = std::abs(w);
  }
  squared_ = square(values_);
  squared_norm_ = sum(squared_);
  if (!(squared_norm_ > 0.0)) {
    throw std::invalid_argument("GroupWeights: at least one weight must be nonzero");
  }
}

GroupWeights GroupWeights::ones(const GroupShape& shape) {
  return GroupWeights(Grid(shape.rows(), shape.cols(), 1.0));
}

GroupWeights GroupWeights::line(std::vector<double> values) {
  return GroupWeights(Grid::row(std::move(values)));
}

double GroupWeights::norm() const { return std::sqrt(squared_norm_); }

GroupWeights GroupWeights::to_odd() const {
  const std::size_t pr = values_.rows() % 2 == 0 ? 1 : 0;
  const std::size_t pc = values_.cols() % 2 == 0 ? 1 : 0;
  if (pr == 0 && pc == 0) return *this;
  Grid out(values_.rows() + pr, values_.cols() + pc, 0.0);
  for (std::size_t r = 0; r < values_.rows(); ++r) {
    for (std::size_t c = 0; c < values_.cols(); ++c) out(r + pr, c + pc) = values_(r, c);
  }
  return GroupWeights(std::move(out));
}

std::optional<std::size_t> boundary_index(std::ptrdiff_t i, std::size_t n,
                                          BoundaryCondition bc) {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  if (i >= 0 && i < sn) return static_cast<std::size_t>(i);
  switch (bc) {
    case BoundaryCondition::Zero:
      return std::nullopt;
    case BoundaryCondition::Periodic: {
      std::ptrdiff_t m = i % sn;
      if (m < 0) m += sn;
      return static_cast<std::size_t>(m);
    }
    case BoundaryCondition::Reflective: {
      const std::ptrdiff_t period = 2 * sn;
      std::ptrdiff_t m = i % period;
      if (m < 0) m += period;
      return static_cast<std::size_t>(m < sn ? m : period - 1 - m);
    }
  }
  return std::nullopt;
}

Grid extend(const Grid& signal, BoundaryCondition bc, const Padding& pad) {
  if (signal.empty()) throw std::invalid_argument("extend: empty signal");
  const std::size_t rows = signal.rows() + pad.top + pad.bottom;
  const std::size_t cols = signal.cols() + pad.left + pad.right;
  Grid out(rows, cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto sr = boundary_index(static_cast<std::ptrdiff_t>(r) -
                                       static_cast<std::ptrdiff_t>(pad.top),
                                   signal.rows(), bc);
    if (!sr) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto sc = boundary_index(static_cast<std::ptrdiff_t>(c) -
                                         static_cast<std::ptrdiff_t>(pad.left),
                                     signal.cols(), bc);
      if (sc) out(r, c) = signal(*sr, *sc);
    }
  }
  return out;
}

namespace {

constexpr std::ptrdiff_t kOutside = -1;

void check_window(const Grid& signal, const Grid& weights_sq, const char* what) {
  if (signal.empty()) throw std::invalid_argument(std::string(what) + ": empty signal");
  if (weights_sq.empty()) throw std::invalid_argument(std::string(what) + ": empty weights");
  if (weights_sq.rows() > signal.rows() || weights_sq.cols() > signal.cols()) {
    throw std::invalid_argument(std::string(what) + ": group " +
                                std::to_string(weights_sq.rows()) + "x" +
                                std::to_string(weights_sq.cols()) + " larger than signal " +
                                std::to_string(signal.rows()) + "x" +
                                std::to_string(signal.cols()));
  }
}

// index_map[i * taps + k] = source index covered by tap k of the window
// anchored at i, or kOutside.
std::vector<std::ptrdiff_t> window_index_map(std::size_t n, std::size_t taps,
                                             BoundaryCondition bc) {
  const auto before = static_cast<std::ptrdiff_t>((taps - 1) / 2);
  std::vector<std::ptrdiff_t> map(n * taps, kOutside);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < taps; ++k) {
      const auto src = boundary_index(static_cast<std::ptrdiff_t>(i + k) - before, n, bc);
      if (src) map[i * taps + k] = static_cast<std::ptrdiff_t>(*src);
    }
  }
  return map;
}

bool use_fft(WindowStrategy strategy, const Grid& weights_sq) {
  switch (strategy) {
    case WindowStrategy::Direct:
      return false;
    case WindowStrategy::Fft:
      return true;
    case WindowStrategy::Auto:
      break;
  }
  return weights_sq.size() >= kFftWindowThreshold;
}

Grid energy_direct(const Grid& x, const Grid& w, BoundaryCondition bc) {
  const std::size_t kr = w.rows(), kc = w.cols();
  const auto rmap = window_index_map(x.rows(), kr, bc);
  const auto cmap = window_index_map(x.cols(), kc, bc);
  Grid out(x.rows(), x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t a = 0; a < kr; ++a) {
        const std::ptrdiff_t r = rmap[i * kr + a];
        if (r == kOutside) continue;
        for (std::size_t b = 0; b < kc; ++b) {
          const std::ptrdiff_t c = cmap[j * kc + b];
          if (c == kOutside) continue;
          acc += w(a, b) * x(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Grid spread_direct(const Grid& v, const Grid& w, BoundaryCondition bc) {
  const std::size_t kr = w.rows(), kc = w.cols();
  const auto rmap = window_index_map(v.rows(), kr, bc);
  const auto cmap = window_index_map(v.cols(), kc, bc);
  Grid out(v.rows(), v.cols(), 0.0);
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = 0; j < v.cols(); ++j) {
      const double value = v(i, j);
      if (value == 0.0) continue;
      for (std::size_t a = 0; a < kr; ++a) {
        const std::ptrdiff_t r = rmap[i * kr + a];
        if (r == kOutside) continue;
        for (std::size_t b = 0; b < kc; ++b) {
          const std::ptrdiff_t c = cmap[j * kc + b];
          if (c == kOutside) continue;
          out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) += w(a, b) * value;
        }
      }
    }
  }
  return out;
}

// Both FFT paths work on the extended grid of size (m + K1 - 1) x (n + K2 - 1),
// which is exactly large enough that circular correlation/convolution there
// never wraps for the entries we keep.
Grid embed_top_left(const Grid& g, std::size_t rows, std::size_t cols) {
  Grid out(rows, cols, 0.0);
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) out(r, c) = g(r, c);
  }
  return out;
}

Grid energy_fft(const Grid& x, const Grid& w, BoundaryCondition bc) {
  const GroupShape shape(w.rows(), w.cols());
  const Grid ext = extend(x, bc,
                          {shape.row_before(), shape.row_after(), shape.col_before(),
                           shape.col_after()});
  RealFft2d fft(ext.rows(), ext.cols());
  Spectrum xs = fft.forward(ext);
  const Spectrum ws = fft.forward(embed_top_left(w, ext.rows(), ext.cols()));
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] *= std::conj(ws[k]);
  const Grid corr = fft.inverse(xs);
  Grid out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = corr(r, c);
  }
  return out;
}

Grid spread_fft(const Grid& v, const Grid& w, BoundaryCondition bc) {
  const GroupShape shape(w.rows(), w.cols());
  const std::size_t er = v.rows() + w.rows() - 1;
  const std::size_t ec = v.cols() + w.cols() - 1;
  RealFft2d fft(er, ec);
  Spectrum vs = fft.forward(embed_top_left(v, er, ec));
  const Spectrum ws = fft.forward(embed_top_left(w, er, ec));
  for (std::size_t k = 0; k < vs.size(); ++k) vs[k] *= ws[k];
  const Grid full = fft.inverse(vs);
  // full(p, q) lives at signal position (p - row_before, q - col_before).
  Grid out(v.rows(), v.cols(), 0.0);
  const auto rb = static_cast<std::ptrdiff_t>(shape.row_before());
  const auto cb = static_cast<std::ptrdiff_t>(shape.col_before());
  for (std::size_t p = 0; p < er; ++p) {
    const auto r = boundary_index(static_cast<std::ptrdiff_t>(p) - rb, v.rows(), bc);
    if (!r) continue;
    for (std::size_t q = 0; q < ec; ++q) {
      const auto c = boundary_index(static_cast<std::ptrdiff_t>(q) - cb, v.cols(), bc);
      if (c) out(*r, *c) += full(p, q);
    }
  }
  return out;
}

}  // namespace

Grid group_energy(const Grid& signal_sq, const Grid& weights_sq, BoundaryCondition bc,
                  WindowStrategy strategy) {
  check_window(signal_sq, weights_sq, "group_energy");
  return use_fft(strategy, weights_sq) ? energy_fft(signal_sq, weights_sq, bc)
                                       : energy_direct(signal_sq, weights_sq, bc);
}

Grid spread(const Grid& values, const Grid& weights_sq, BoundaryCondition bc,
            WindowStrategy strategy) {
  check_window(values, weights_sq, "spread");
  return use_fft(strategy, weights_sq) ? spread_fft(values, weights_sq, bc)
                                       : spread_direct(values, weights_sq, bc);
}

ProblemDomain::ProblemDomain(std::size_t rows, std::size_t cols, const GroupShape& shape,
                             BoundaryCondition bc)
    : rows_(rows), cols_(cols), bc_(bc) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("ProblemDomain: empty signal");
  if (shape.rows() > rows || shape.cols() > cols) {
    throw std::invalid_argument("ProblemDomain: group larger than signal");
  }
  switch (bc) {
    case BoundaryCondition::Periodic:
      break;
    case BoundaryCondition::Zero:
      pad_ = {shape.row_after(), shape.row_before(), shape.col_after(), shape.col_before()};
      break;
    case BoundaryCondition::Reflective:
      if (shape.rows() > 1) {
        pad_.bottom = rows;
        scale_ *= 0.5;
      }
      if (shape.cols() > 1) {
        pad_.right = cols;
        scale_ *= 0.5;
      }
      break;
  }
  lifted_rows_ = rows + pad_.top + pad_.bottom;
  lifted_cols_ = cols + pad_.left + pad_.right;
}

Grid ProblemDomain::lift(const Grid& x) const {
  if (x.rows() != rows_ || x.cols() != cols_) {
    throw std::invalid_argument("ProblemDomain::lift: shape mismatch");
  }
  if (bc_ == BoundaryCondition::Periodic) return x;
  return extend(x, bc_, pad_);
}

Grid ProblemDomain::restrict(const Grid& lifted) const {
  if (lifted.rows() != lifted_rows_ || lifted.cols() != lifted_cols_) {
    throw std::invalid_argument("ProblemDomain::restrict: shape mismatch");
  }
  Grid out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = lifted(r + pad_.top, c + pad_.left);
  }
  return out;
}

Grid ProblemDomain::fold(const Grid& lifted) const {
  if (lifted.rows() != lifted_rows_ || lifted.cols() != lifted_cols_) {
    throw std::invalid_argument("ProblemDomain::fold: shape mismatch");
  }
  Grid out(rows_, cols_, 0.0);
  for (std::size_t p = 0; p < lifted_rows_; ++p) {
    const auto r = boundary_index(static_cast<std::ptrdiff_t>(p) -
                                      static_cast<std::ptrdiff_t>(pad_.top),
                                  rows_, bc_);
    if (!r) continue;
    for (std::size_t q = 0; q < lifted_cols_; ++q) {
      const auto c = boundary_index(static_cast<std::ptrdiff_t>(q) -
                                        static_cast<std::ptrdiff_t>(pad_.left),
                                    cols_, bc_);
      if (c) out(*r, *c) += lifted(p, q);
    }
  }
  return out;
}

Grid ProblemDomain::average(const Grid& lifted) const {
  Grid out = fold(lifted);
  if (scale_ != 1.0) {
    for (double& v : out) v *= scale_;
  }
  return out;
}

}  // namespace ogs
