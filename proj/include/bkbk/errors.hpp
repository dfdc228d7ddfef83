#ifndef BKBK_ERRORS_HPP
#define BKBK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bkbk {

// Depth dropped to or below the configured floor. Carries the offending
// minimum and its sample index; integrators add the step/time context.
class DepthUnderflow : public std::runtime_error {
 public:
  DepthUnderflow(double min_eta, std::size_t index)
      : std::runtime_error("depth underflow: min(eta)=" + std::to_string(min_eta) +
                           " at sample " + std::to_string(index)),
        min_eta(min_eta), index(index) {}
  DepthUnderflow(double min_eta, std::size_t index, int step, double t)
      : std::runtime_error("depth underflow: min(eta)=" + std::to_string(min_eta) +
                           " at sample " + std::to_string(index) +
                           " (step " + std::to_string(step) + ", t=" + std::to_string(t) + ")"),
        min_eta(min_eta), index(index), step(step), t(t) {}

  double min_eta;
  std::size_t index;
  int step = -1;
  double t = 0.0;
};

class SpectralError : public std::runtime_error {
 public:
  explicit SpectralError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class SnapshotError : public std::runtime_error {
 public:
  explicit SnapshotError(const std::string& what) : std::runtime_error(what) {}
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bkbk

#endif
