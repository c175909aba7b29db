#include "ginibre/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ginibre/errors.hpp"

namespace ginibre {

bool is_finite(ComplexPoint z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

namespace {

void require_finite(std::span<const ComplexPoint> points, const char* what) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!is_finite(points[i])) {
      throw InvalidArgument(std::string(what) + ": non-finite point at index " + std::to_string(i));
    }
  }
}

}  // namespace

Configuration::Configuration(std::vector<ComplexPoint> points) : points_(std::move(points)) {
  require_finite(points_, "Configuration");
}

RadialConfiguration::RadialConfiguration(std::vector<double> radii_sq) : radii_sq_(std::move(radii_sq)) {
  for (double y : radii_sq_) {
    if (!std::isfinite(y) || y < 0.0) {
      throw InvalidArgument("RadialConfiguration: entries must be finite and non-negative");
    }
  }
  std::sort(radii_sq_.begin(), radii_sq_.end());
}

PalmAnchor::PalmAnchor(std::vector<ComplexPoint> anchors) : anchors_(std::move(anchors)) {
  require_finite(anchors_, "PalmAnchor");
}

PalmAnchor PalmAnchor::origin(std::size_t ell) { return PalmAnchor(std::vector<ComplexPoint>(ell)); }

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw InvalidArgument("Partition: negative part");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidArgument("Partition: parts must be weakly decreasing");
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (int p : parts_) weight_ += p;
}

Partition Partition::conjugate() const {
  std::vector<int> conj(parts_.empty() ? 0 : static_cast<std::size_t>(parts_.front()), 0);
  for (int p : parts_) {
    for (int j = 0; j < p; ++j) ++conj[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(conj));
}

RadialConfiguration theta(const Configuration& config) {
  std::vector<double> radii;
  radii.reserve(config.size());
  for (const auto& s : config.points()) radii.push_back(std::norm(s));
  return RadialConfiguration(std::move(radii));
}

std::size_t count_in_disk(const Configuration& config, double r) {
  if (!(r >= 0.0)) throw InvalidArgument("count_in_disk: radius must be non-negative");
  const double r2 = r * r;
  return static_cast<std::size_t>(std::count_if(config.points().begin(), config.points().end(),
                                                [r2](const ComplexPoint& s) { return std::norm(s) <= r2; }));
}

}  // namespace ginibre
