#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ginibre {

using Complex = std::complex<double>;

// A point of the plane. Containers below reject non-finite coordinates.
using ComplexPoint = Complex;

bool is_finite(ComplexPoint z);

// Finite point configuration. Stored in sampling order; every consumer in
// this library is invariant under permutations of the points.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<ComplexPoint> points);

  std::span<const ComplexPoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const ComplexPoint& operator[](std::size_t i) const { return points_[i]; }

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<ComplexPoint> points_;
};

// Ascending squared moduli.
class RadialConfiguration {
 public:
  RadialConfiguration() = default;
  // Sorts the input. Throws InvalidArgument on negative or non-finite entries.
  explicit RadialConfiguration(std::vector<double> radii_sq);

  std::span<const double> radii_sq() const { return radii_sq_; }
  std::size_t size() const { return radii_sq_.size(); }
  bool empty() const { return radii_sq_.empty(); }
  double operator[](std::size_t i) const { return radii_sq_[i]; }

  bool operator==(const RadialConfiguration&) const = default;

 private:
  std::vector<double> radii_sq_;
};

// Ordered tuple of conditioning points; ell() == 0 means no conditioning.
class PalmAnchor {
 public:
  PalmAnchor() = default;
  explicit PalmAnchor(std::vector<ComplexPoint> anchors);
  static PalmAnchor origin(std::size_t ell);

  std::span<const ComplexPoint> anchors() const { return anchors_; }
  std::size_t ell() const { return anchors_.size(); }
  const ComplexPoint& operator[](std::size_t i) const { return anchors_[i]; }

  bool operator==(const PalmAnchor&) const = default;

 private:
  std::vector<ComplexPoint> anchors_;
};

// Integer partition. Trailing zero parts are dropped on construction, so two
// partitions compare equal iff they have the same nonzero parts.
class Partition {
 public:
  Partition() = default;
  // Throws InvalidArgument unless parts are weakly decreasing and >= 0.
  explicit Partition(std::vector<int> parts);

  std::span<const int> parts() const { return parts_; }
  // Number of nonzero parts.
  std::size_t length() const { return parts_.size(); }
  int weight() const { return weight_; }
  // Part i (0-based), zero beyond length().
  int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  Partition conjugate() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

RadialConfiguration theta(const Configuration& config);

// Points with |s| <= r.
std::size_t count_in_disk(const Configuration& config, double r);

}  // namespace ginibre
