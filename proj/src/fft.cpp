#include "afc/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace afc::fft {
namespace {

// The FFTW planner is not re-entrant; execution of a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  Plan(cvec& data, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
    if (!plan_) throw std::runtime_error("fftw: plan creation failed");
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void execute() { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

void transform(cvec& data, int sign) {
  if (data.empty()) return;
  Plan plan(data, sign);
  plan.execute();
}

}  // namespace

void forward_inplace(cvec& data) { transform(data, FFTW_FORWARD); }

void inverse_inplace(cvec& data) {
  transform(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& x : data) x *= scale;
}

}  // namespace afc::fft
