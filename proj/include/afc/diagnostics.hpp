// Error types and warning sink shared by all modules.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace afc {

/// A named numerical invariant was violated during a computation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectrum analysis found fewer than three teeth.
class NotACombError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Burn calibration target exceeds what the burn model can reach.
class UnreachableTargetError : public std::runtime_error {
 public:
  UnreachableTargetError(const std::string& what, double max_achievable)
      : std::runtime_error(what), max_achievable_(max_achievable) {}
  double max_achievable() const noexcept { return max_achievable_; }

 private:
  double max_achievable_;
};

using WarningSink = std::function<void(std::string_view)>;

// Default sink prints "warning: <msg>" to stderr.
void warn(std::string_view message);
WarningSink set_warning_sink(WarningSink sink);

// RAII helper that silences (or redirects) warnings for a scope.
class ScopedWarningSink {
 public:
  explicit ScopedWarningSink(WarningSink sink) : previous_(set_warning_sink(std::move(sink))) {}
  ~ScopedWarningSink() { set_warning_sink(std::move(previous_)); }
  ScopedWarningSink(const ScopedWarningSink&) = delete;
  ScopedWarningSink& operator=(const ScopedWarningSink&) = delete;

 private:
  WarningSink previous_;
};

}  // namespace afc
