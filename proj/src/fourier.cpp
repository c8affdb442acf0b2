#include "biphoton/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace biphoton {
namespace {

// FFTW's planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(int n, Complex* data, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw std::runtime_error("fftw failed to create a plan");
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

}  // namespace

TransverseMode fourier_2d(const TransverseMode& mode, FourierDirection direction) {
  const bool forward = direction == FourierDirection::kForward;
  const Representation expected = forward ? Representation::kMomentum : Representation::kPosition;
  if (mode.representation() != expected) {
    throw std::invalid_argument(std::string(forward ? "forward" : "inverse") +
                                " transform expects a " + std::string(to_string(expected)) +
                                "-representation mode");
  }
  const Grid& in_grid = mode.grid();
  const Grid out_grid = in_grid.conjugate();
  const int n = in_grid.size();

  // x_k q_j = (2pi/n)(k - c)(j - c) with c = (n - 1)/2, so the kernel splits
  // into an FFT between two chirps and a constant phase.
  const double c = 0.5 * (n - 1);
  const double sign = forward ? 1.0 : -1.0;
  std::vector<Complex> chirp(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    chirp[static_cast<std::size_t>(j)] = std::polar(1.0, -sign * 2.0 * std::numbers::pi * c * j / n);
  }
  const double scale = in_grid.cell_weight() / (2.0 * std::numbers::pi);
  const Complex constant = std::polar(scale, sign * 2.0 * 2.0 * std::numbers::pi * c * c / n);

  // Column-major (ix, iy) storage is row-major for FFTW with iy slowest; the
  // transform is symmetric in the two axes, so no transpose is needed.
  ModeArray work(n, n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      work(ix, iy) = mode(ix, iy) * chirp[static_cast<std::size_t>(ix)] *
                     chirp[static_cast<std::size_t>(iy)];
    }
  }
  {
    FftPlan plan(n, work.data(), forward ? FFTW_BACKWARD : FFTW_FORWARD);
    plan.execute();
  }
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      work(ix, iy) *= constant * chirp[static_cast<std::size_t>(ix)] *
                      chirp[static_cast<std::size_t>(iy)];
    }
  }
  const Representation out_rep = forward ? Representation::kPosition : Representation::kMomentum;
  return TransverseMode(out_grid, out_rep, std::move(work));
}

}  // namespace biphoton
