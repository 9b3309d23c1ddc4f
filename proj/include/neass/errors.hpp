#pragma once

#include <stdexcept>
#include <string>

namespace neass {

/// Bad input data: malformed configs, inconsistent operators, out-of-range args.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested system exceeds the configured mode/memory budget.
struct SizeError : std::runtime_error {
  explicit SizeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Spectral gap closed (or became non-positive) where a gapped path is required.
struct GapError : std::runtime_error {
  explicit GapError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Adaptive integrator step size underflowed; the problem is too stiff at this eta.
struct StiffnessError : std::runtime_error {
  StiffnessError(const std::string& msg, double suggested_eta_floor)
      : std::runtime_error(msg), eta_floor(suggested_eta_floor) {}
  double eta_floor;
};

/// An operation was called outside its contract (e.g. NEASS drift on a ramped schedule).
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace neass
