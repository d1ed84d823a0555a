#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "ogs/imaging.hpp"
#include "ogs/tv_admm.hpp"

namespace ogs::testing {

// Plain (single-pixel group) TV deblurring by ADMM with every operator stored
// as a dense matrix and the f-step done by a Cholesky solve. Returns
// f^1, ..., f^iterations. Meant for tiny images only.
class PlainTvAdmm {
 public:
  PlainTvAdmm(const Image& g, const BlurKernel& kernel, const AdmmConfig& cfg)
      : m_(g.rows()), n_(g.cols()), cfg_(cfg), g_(to_vector(g)) {
    const Eigen::Index size = static_cast<Eigen::Index>(m_ * n_);
    dx_ = Eigen::MatrixXd::Zero(size, size);
    dy_ = Eigen::MatrixXd::Zero(size, size);
    h_ = Eigen::MatrixXd::Zero(size, size);
    const long cr = static_cast<long>(kernel.taps.rows() - 1) / 2;
    const long cc = static_cast<long>(kernel.taps.cols() - 1) / 2;
    for (long i = 0; i < static_cast<long>(m_); ++i) {
      for (long j = 0; j < static_cast<long>(n_); ++j) {
        const auto row = index(i, j);
        dx_(row, index(i + 1, j)) += 1.0;
        dx_(row, row) -= 1.0;
        dy_(row, index(i, j + 1)) += 1.0;
        dy_(row, row) -= 1.0;
        for (long a = 0; a < static_cast<long>(kernel.taps.rows()); ++a) {
          for (long b = 0; b < static_cast<long>(kernel.taps.cols()); ++b) {
            h_(row, index(i - (a - cr), j - (b - cc))) += kernel.taps(a, b);
          }
        }
      }
    }
    const double c_data = is_l1(cfg.model) ? cfg.beta2 : cfg.mu;
    const double c_box = is_l1(cfg.model) ? cfg.beta3 : cfg.beta2;
    const Eigen::MatrixXd a = cfg.beta1 * (dx_.transpose() * dx_ + dy_.transpose() * dy_) +
                              c_data * h_.transpose() * h_ +
                              c_box * Eigen::MatrixXd::Identity(size, size);
    llt_.compute(a);
  }

  std::vector<Image> run(std::size_t iterations) const {
    const Eigen::Index size = g_.size();
    Eigen::VectorXd f = g_;
    Eigen::VectorXd lx = Eigen::VectorXd::Zero(size);
    Eigen::VectorXd ly = lx, l3 = lx, l4 = lx;
    const double b1 = cfg_.beta1;
    const double b2 = cfg_.beta2;
    const double b3 = cfg_.beta3;
    const double gm = cfg_.gamma;
    std::vector<Image> iterates;
    for (std::size_t k = 0; k < iterations; ++k) {
      const Eigen::VectorXd tx = dx_ * f + lx / b1;
      const Eigen::VectorXd ty = dy_ * f + ly / b1;
      Eigen::VectorXd vx(size), vy(size);
      for (Eigen::Index p = 0; p < size; ++p) {
        if (is_isotropic(cfg_.model)) {
          const double r = std::hypot(tx[p], ty[p]);
          const double s = r > 0.0 ? std::max(1.0 - 1.0 / (b1 * r), 0.0) : 0.0;
          vx[p] = s * tx[p];
          vy[p] = s * ty[p];
        } else {
          vx[p] = shrink(tx[p], 1.0 / b1);
          vy[p] = shrink(ty[p], 1.0 / b1);
        }
      }
      Eigen::VectorXd rhs = dx_.transpose() * (b1 * vx - lx) + dy_.transpose() * (b1 * vy - ly);
      Eigen::VectorXd z, u;
      if (is_l1(cfg_.model)) {
        const Eigen::VectorXd t = h_ * f - g_ + l3 / b2;
        z = t.unaryExpr([&](double v) { return shrink(v, cfg_.mu / b2); });
        u = (f + l4 / b3).cwiseMax(0.0).cwiseMin(1.0);
        rhs += h_.transpose() * (b2 * z - l3) + b2 * h_.transpose() * g_ + b3 * u - l4;
      } else {
        u = (f + l3 / b2).cwiseMax(0.0).cwiseMin(1.0);
        rhs += cfg_.mu * h_.transpose() * g_ + b2 * u - l3;
      }
      f = llt_.solve(rhs);
      lx -= gm * b1 * (vx - dx_ * f);
      ly -= gm * b1 * (vy - dy_ * f);
      if (is_l1(cfg_.model)) {
        l3 -= gm * b2 * (z - (h_ * f - g_));
        l4 -= gm * b3 * (u - f);
      } else {
        l3 -= gm * b2 * (u - f);
      }
      iterates.emplace_back(m_, n_, std::vector<double>(f.data(), f.data() + size));
    }
    return iterates;
  }

 private:
  static double shrink(double v, double t) {
    return std::copysign(std::max(std::abs(v) - t, 0.0), v);
  }

  static Eigen::VectorXd to_vector(const Image& img) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(img.size()));
    for (std::size_t i = 0; i < img.size(); ++i) v[static_cast<Eigen::Index>(i)] = img[i];
    return v;
  }

  Eigen::Index index(long i, long j) const {
    const long m = static_cast<long>(m_);
    const long n = static_cast<long>(n_);
    return static_cast<Eigen::Index>(((i % m + m) % m) * n + (j % n + n) % n);
  }

  std::size_t m_;
  std::size_t n_;
  AdmmConfig cfg_;
  Eigen::VectorXd g_;
  Eigen::MatrixXd dx_, dy_, h_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace ogs::testing
