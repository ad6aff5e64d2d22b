#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with PI step-size control.
//
// The error of every accepted step is measured against a per-channel scale
// atol + rtol * M, where M is the largest modulus the channel has reached so
// far. A channel is a group of components (for example the real and imaginary
// parts of one complex accumulator) that share one scale. Using the running
// maximum keeps the control meaningful for states that grow like exp(x^2) and
// for components that pass through zero.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "pertlab/error.hpp"
#include "pertlab/real.hpp"

namespace pertlab::ode {

struct Options {
  real rtol = 1e-10;
  real atol = 1e-14;
  std::size_t max_steps = 1'000'000;
  real initial_step = 1e-3;
};

template <std::size_t N>
struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  // Sum of the absolute local error estimates of accepted steps.
  std::array<real, N> error_sum{};
  // Largest scaled error norm of an accepted step (<= 1 by construction).
  real max_scaled_error = 0;
};

template <std::size_t N>
constexpr std::array<unsigned, N> separate_channels() {
  std::array<unsigned, N> g{};
  for (std::size_t i = 0; i < N; ++i) g[i] = static_cast<unsigned>(i);
  return g;
}

template <std::size_t N, class Rhs>
class Dopri5 {
 public:
  using State = std::array<real, N>;
  using Channels = std::array<unsigned, N>;

  Dopri5(Rhs rhs, real t0, const State& y0, const Options& opts,
         const Channels& channels = separate_channels<N>())
      : rhs_(std::move(rhs)),
        opts_(opts),
        channels_(channels),
        t_(t0),
        y_(y0),
        h_(opts.initial_step) {
    rhs_(t_, y_, k1_);
    check_finite(y_, k1_);
    running_max_.fill(0);
    update_running_max(y_);
  }

  real t() const { return t_; }
  const State& state() const { return y_; }
  const Stats<N>& stats() const { return stats_; }

  // Integrates up to t_end (t_end >= t()). Returns false when the step budget
  // is exhausted or the step size underflows; the state then holds the last
  // accepted point.
  bool advance_to(real t_end) {
    if (t_end <= t_) return t_end == t_;
    while (t_ < t_end) {
      if (stats_.accepted + stats_.rejected >= opts_.max_steps) return false;
      const real remaining = t_end - t_;
      const real resolution =
          16 * std::numeric_limits<real>::epsilon() * std::max<real>(1, std::abs(t_end));
      if (remaining <= resolution) {
        t_ = t_end;
        break;
      }
      bool last = false;
      real h = h_;
      if (h >= remaining) {
        h = remaining;
        last = true;
      }
      if (h <= resolution) return false;

      State y_new, err;
      attempt(h, y_new, err);
      const real err_norm = scaled_norm(err, y_new);

      // Overflowing trial steps are retried with a smaller step.
      if (!std::isfinite(err_norm)) {
        h_ = h * 0.1;
        ++stats_.rejected;
        continue;
      }
      const real fac11 = std::pow(err_norm, kExpo1);
      if (err_norm <= 1) {
        real fac = fac11 / std::pow(err_old_, kBeta);
        fac = std::clamp(fac / kSafety, kMaxGrowth, kMaxShrink);
        ++stats_.accepted;
        stats_.max_scaled_error = std::max(stats_.max_scaled_error, err_norm);
        for (std::size_t i = 0; i < N; ++i) stats_.error_sum[i] += std::abs(err[i]);
        err_old_ = std::max(err_norm, real(1e-4));
        t_ = last ? t_end : t_ + h;
        y_ = y_new;
        k1_ = k7_;
        update_running_max(y_);
        const real h_next = h / fac;
        // Do not let a clipped final step shrink the step used afterwards.
        h_ = last ? std::max(h_, h_next) : h_next;
        if (reject_streak_) {
          h_ = std::min(h_, h);
          reject_streak_ = false;
        }
      } else {
        h_ = h / std::min(kMaxShrink, fac11 / kSafety);
        ++stats_.rejected;
        reject_streak_ = true;
      }
    }
    return true;
  }

 private:
  static constexpr real kBeta = 0.04;
  static constexpr real kExpo1 = 0.2 - kBeta * 0.75;
  static constexpr real kSafety = 0.9;
  // Step ratios h/h_new are kept within [kMaxGrowth, kMaxShrink].
  static constexpr real kMaxShrink = 5.0;
  static constexpr real kMaxGrowth = 0.1;

  void attempt(real h, State& y_new, State& err) {
    constexpr real c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr real a21 = 1.0 / 5;
    constexpr real a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr real a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr real a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
    constexpr real a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr real a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr real e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    State tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * a21 * k1_[i];
    rhs_(t_ + c2 * h, tmp, k2_);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
    rhs_(t_ + c3 * h, tmp, k3_);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
    rhs_(t_ + c4 * h, tmp, k4_);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
    rhs_(t_ + c5 * h, tmp, k5_);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] +
                            a65 * k5_[i]);
    rhs_(t_ + h, tmp, k6_);
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] +
                              a76 * k6_[i]);
    rhs_(t_ + h, y_new, k7_);
    for (std::size_t i = 0; i < N; ++i)
      err[i] = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] +
                    e7 * k7_[i]);
  }

  // Euclidean modulus per channel, scaled by the channel's largest component
  // so that states beyond 1e154 do not overflow when squared.
  State channel_modulus(const State& y) const {
    State peak{};
    for (std::size_t i = 0; i < N; ++i)
      peak[channels_[i]] = std::max(peak[channels_[i]], std::abs(y[i]));
    State m{};
    for (std::size_t i = 0; i < N; ++i) {
      const real p = peak[channels_[i]];
      if (p > 0) m[channels_[i]] += (y[i] / p) * (y[i] / p);
    }
    for (std::size_t c = 0; c < N; ++c) m[c] = peak[c] * std::sqrt(m[c]);
    return m;
  }

  void update_running_max(const State& y) {
    const State m = channel_modulus(y);
    for (std::size_t c = 0; c < N; ++c) running_max_[c] = std::max(running_max_[c], m[c]);
  }

  real scaled_norm(const State& err, const State& y_new) const {
    const State m = channel_modulus(y_new);
    real worst = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const unsigned c = channels_[i];
      const real scale = opts_.atol + opts_.rtol * std::max(running_max_[c], m[c]);
      worst = std::max(worst, std::abs(err[i]) / scale);
    }
    return worst;
  }

  static void check_finite(const State& y, const State& dy) {
    for (std::size_t i = 0; i < N; ++i) {
      if (!std::isfinite(y[i]) || !std::isfinite(dy[i]))
        throw NumericalError("non-finite value in ODE state (overflow)");
    }
  }

  Rhs rhs_;
  Options opts_;
  Channels channels_;
  real t_;
  State y_;
  real h_;
  real err_old_ = 1e-4;
  bool reject_streak_ = false;
  State k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{};
  State running_max_{};
  Stats<N> stats_;
};

template <std::size_t N, class Rhs>
Dopri5<N, Rhs> make_dopri5(Rhs rhs, real t0, const std::array<real, N>& y0,
                           const Options& opts,
                           const std::array<unsigned, N>& channels = separate_channels<N>()) {
  return Dopri5<N, Rhs>(std::move(rhs), t0, y0, opts, channels);
}

}  // namespace pertlab::ode
